#pragma once

// Strict partitions (strictly decreasing parts) and the box moves on their
// shifted diagrams.  The shifted diagram S(lambda) places row i in columns
// i .. i+lambda_i-1; the content of a box (i,j) is j-i.  A strict partition
// belongs to the even class ("+") when n - l(lambda) is even and to the odd
// class ("-") otherwise.

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "spinwalk/partitions.hpp"

namespace spinwalk {

struct StrictPartition {
  std::vector<int> parts;  // strictly decreasing, all >= 1

  StrictPartition() = default;
  explicit StrictPartition(std::vector<int> p) : parts(std::move(p)) {
    validate();
  }

  void validate() const {
    for (size_t i = 0; i + 1 < parts.size(); ++i)
      if (parts[i] <= parts[i + 1])
        throw std::invalid_argument("StrictPartition: parts must strictly decrease");
    if (!parts.empty() && parts.back() < 1)
      throw std::invalid_argument("StrictPartition: parts must be positive");
  }

  int n() const { return part_sum(parts); }
  int length() const { return static_cast<int>(parts.size()); }
  // true  <=>  n - l even  <=>  membership in the "+" class
  bool even_class() const { return (n() - length()) % 2 == 0; }

  bool operator==(const StrictPartition& o) const { return parts == o.parts; }
  bool operator<(const StrictPartition& o) const { return parts < o.parts; }

  std::string str() const {
    std::string s = "(";
    for (size_t i = 0; i < parts.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(parts[i]);
    }
    return s + ")";
  }
};

// All strict partitions of n in reverse-lexicographic order,
// e.g. 6 -> (6), (5,1), (4,2), (3,2,1).
inline std::vector<StrictPartition> enumerate_strict_partitions(int n) {
  if (n < 0) throw std::invalid_argument("enumerate_strict_partitions: n < 0");
  std::vector<StrictPartition> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int rem, int mx) -> void {
    if (rem == 0) {
      out.emplace_back(StrictPartition{cur});
      return;
    }
    for (int first = std::min(rem, mx); first >= 1; --first) {
      cur.push_back(first);
      self(self, rem - first, first - 1);  // strictly smaller next part
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

// A box move on the shifted diagram: the resulting partition together with
// the content of the added/removed box.
struct BoxMove {
  StrictPartition result;
  int content = 0;  // c = j - i of the box; c = 0 exactly for a new/removed
                    // final row of length 1
};

// All mu with lambda -> mu by adding one box, listed by increasing row index
// (equivalently decreasing content).  Contents are pairwise distinct.
inline std::vector<BoxMove> addable_boxes(const StrictPartition& lambda) {
  std::vector<BoxMove> out;
  const auto& p = lambda.parts;
  const int l = lambda.length();
  for (int i = 0; i < l; ++i) {
    bool ok = (i == 0) || (p[i] + 1 < p[i - 1]);
    if (ok) {
      std::vector<int> q = p;
      q[i] += 1;
      out.push_back({StrictPartition{q}, p[i]});  // box (i+1, i+1+p[i]) has content p[i]
    }
  }
  // A new final row of length 1 keeps the parts strictly decreasing iff the
  // current last part is >= 2 (or lambda is empty).
  if (l == 0 || p[l - 1] >= 2) {
    std::vector<int> q = p;
    q.push_back(1);
    out.push_back({StrictPartition{q}, 0});
  }
  return out;
}

// All nu with lambda -> nu by removing one box, listed by increasing row index.
inline std::vector<BoxMove> removable_boxes(const StrictPartition& lambda) {
  std::vector<BoxMove> out;
  const auto& p = lambda.parts;
  const int l = lambda.length();
  for (int i = 0; i < l; ++i) {
    bool ok;
    if (i + 1 < l)
      ok = (p[i] - 1 > p[i + 1]);
    else
      ok = true;  // last row may always shrink (and vanish when it is 1)
    if (!ok) continue;
    std::vector<int> q = p;
    q[i] -= 1;
    if (q[i] == 0) q.pop_back();
    out.push_back({StrictPartition{q}, p[i] - 1});  // removed box content
  }
  return out;
}

// Does lambda -> mu hold (mu = lambda plus one box)?
inline bool covers(const StrictPartition& mu, const StrictPartition& lambda) {
  for (const auto& mv : addable_boxes(lambda))
    if (mv.result == mu) return true;
  return false;
}

}  // namespace spinwalk
