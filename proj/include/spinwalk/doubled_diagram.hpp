#pragma once

// The doubled diagram D(lambda) of a strict partition: the shifted diagram
// S(lambda) glued to its reflection across the main diagonal, shifted down by
// one row.  Explicitly, D(lambda) contains every box (i,j) of S(lambda)
// together with (j+1, i).  The union is an ordinary Young diagram with 2n
// boxes whose profile (in content coordinates) has valleys and peaks that
// strictly interlace; the valley set away from 0 is closed under the pairing
// c <-> -c-1, and a valley sits at 0 exactly when the last part is >= 2.

#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "spinwalk/strict_partition.hpp"

namespace spinwalk {

struct DoubledDiagram {
  StrictPartition source;
  std::vector<int> rows;     // row lengths of D(lambda), weakly decreasing
  std::vector<int> valleys;  // contents of the inward corners, increasing
  std::vector<int> peaks;    // contents of the outward corners, increasing

  int total_boxes() const {
    int s = 0;
    for (int r : rows) s += r;
    return s;
  }
};

namespace detail {

// Column lengths (conjugate) of a row-length vector.
inline std::vector<int> conjugate_rows(const std::vector<int>& rows) {
  std::vector<int> cols(rows.empty() ? 0 : rows[0], 0);
  for (size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < rows[i]; ++j) cols[j] += 1;
  return cols;
}

}  // namespace detail

// Build D(lambda) from its explicit box set and walk its boundary.  Going up
// the staircase from the bottom-left, the walk turns inward (a valley) where
// a longer row starts above a shorter one -- i.e. at the addable corners of
// the union diagram -- and outward (a peak) at its removable corners.  The
// content of a box (i,j) is j-i throughout.
inline DoubledDiagram doubled_profile(const StrictPartition& lambda) {
  DoubledDiagram D;
  D.source = lambda;

  // Explicit box set: S(lambda) and its reflected copy.
  std::set<std::pair<int, int>> boxes;  // (row, col), 1-based
  const auto& p = lambda.parts;
  for (int i = 1; i <= lambda.length(); ++i)
    for (int j = i; j <= i + p[i - 1] - 1; ++j) {
      boxes.insert({i, j});
      boxes.insert({j + 1, i});
    }
  if (static_cast<int>(boxes.size()) != 2 * lambda.n())
    throw std::logic_error("doubled_profile: reflected copy overlaps the shifted diagram");

  // Collapse to row lengths, checking each row is left-justified contiguous.
  std::map<int, std::vector<int>> byrow;
  for (auto& b : boxes) byrow[b.first].push_back(b.second);
  int expect_row = 1;
  for (auto& [r, cols] : byrow) {
    if (r != expect_row++)
      throw std::logic_error("doubled_profile: rows are not contiguous");
    std::sort(cols.begin(), cols.end());
    for (size_t k = 0; k < cols.size(); ++k)
      if (cols[k] != static_cast<int>(k) + 1)
        throw std::logic_error("doubled_profile: row not left-justified");
    D.rows.push_back(static_cast<int>(cols.size()));
  }
  for (size_t i = 0; i + 1 < D.rows.size(); ++i)
    if (D.rows[i] < D.rows[i + 1])
      throw std::logic_error("doubled_profile: row lengths not weakly decreasing");

  // Boundary walk.  Row i (1-based) contributes an inward corner at box
  // (i, rows_i + 1), content rows_i + 1 - i, whenever the row above is longer
  // (or i = 1), and an outward corner at box (i, rows_i), content rows_i - i,
  // whenever the row below is shorter (or i is the last row).  The walk ends
  // with the inward corner below the last row, box (L+1, 1), content -L.
  const int L = static_cast<int>(D.rows.size());
  for (int i = 1; i <= L; ++i) {
    bool inward = (i == 1) || (D.rows[i - 1] < D.rows[i - 2]);
    if (inward) D.valleys.push_back(D.rows[i - 1] + 1 - i);
    bool outward = (i == L) || (D.rows[i - 1] > D.rows[i]);
    if (outward) D.peaks.push_back(D.rows[i - 1] - i);
  }
  D.valleys.push_back(-L);
  std::sort(D.valleys.begin(), D.valleys.end());
  std::sort(D.peaks.begin(), D.peaks.end());

  // Interlacing sanity: v_1 < p_1 < v_2 < ... < p_{r-1} < v_r.
  if (D.valleys.size() != D.peaks.size() + 1)
    throw std::logic_error("doubled_profile: corner counts do not interlace");
  for (size_t k = 0; k < D.peaks.size(); ++k)
    if (!(D.valleys[k] < D.peaks[k] && D.peaks[k] < D.valleys[k + 1]))
      throw std::logic_error("doubled_profile: corners out of order");
  return D;
}

// The valley multiset minus an optional 0 must be closed under c <-> -c-1.
inline bool valleys_mirror_symmetric(const DoubledDiagram& D) {
  std::multiset<int> v(D.valleys.begin(), D.valleys.end());
  v.erase(0);
  for (int c : v)
    if (v.count(-c - 1) != v.count(c)) return false;
  return true;
}

}  // namespace spinwalk
