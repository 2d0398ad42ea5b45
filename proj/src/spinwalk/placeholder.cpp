// Anchor translation unit for the static library; the exact-arithmetic
// combinatorics layer is header-only, heavier solvers get their own .cpp
// files as they are added.
namespace spinwalk {
int spinwalk_library_anchor() { return 0; }
}  // namespace spinwalk
