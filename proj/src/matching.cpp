#include "gmf/matching.hpp"

#include <functional>

namespace gmf {

MatchingResult maximum_matching(const SupportPattern& support) {
  const int n = static_cast<int>(support.size());
  MatchingResult out;
  out.row_to_col.assign(static_cast<std::size_t>(n), -1);
  std::vector<int> col_to_row(static_cast<std::size_t>(n), -1);

  std::vector<bool> seen;
  std::function<bool(int)> augment = [&](int r) {
    for (int c = 0; c < n; ++c) {
      if (!support[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] || seen[static_cast<std::size_t>(c)]) continue;
      seen[static_cast<std::size_t>(c)] = true;
      const int owner = col_to_row[static_cast<std::size_t>(c)];
      if (owner < 0 || augment(owner)) {
        out.row_to_col[static_cast<std::size_t>(r)] = c;
        col_to_row[static_cast<std::size_t>(c)] = r;
        return true;
      }
    }
    return false;
  };
  for (int r = 0; r < n; ++r) {
    seen.assign(static_cast<std::size_t>(n), false);
    if (augment(r)) ++out.size;
  }
  out.perfect = out.size == n;
  if (out.perfect) return out;

  // Koenig: Z = vertices reachable from free rows by alternating paths. The
  // cover is (rows not in Z) + (cols in Z); its complement (rows in Z) x
  // (cols not in Z) is a zero block of size 2n - |cover| >= n + 1.
  std::vector<bool> row_z(static_cast<std::size_t>(n), false);
  std::vector<bool> col_z(static_cast<std::size_t>(n), false);
  std::vector<int> stack;
  for (int r = 0; r < n; ++r) {
    if (out.row_to_col[static_cast<std::size_t>(r)] < 0) {
      row_z[static_cast<std::size_t>(r)] = true;
      stack.push_back(r);
    }
  }
  while (!stack.empty()) {
    const int r = stack.back();
    stack.pop_back();
    for (int c = 0; c < n; ++c) {
      if (!support[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] || col_z[static_cast<std::size_t>(c)]) continue;
      col_z[static_cast<std::size_t>(c)] = true;
      const int next = col_to_row[static_cast<std::size_t>(c)];
      if (next >= 0 && !row_z[static_cast<std::size_t>(next)]) {
        row_z[static_cast<std::size_t>(next)] = true;
        stack.push_back(next);
      }
    }
  }
  for (int r = 0; r < n; ++r) {
    if (row_z[static_cast<std::size_t>(r)]) out.zero_block.rows.push_back(r);
  }
  for (int c = 0; c < n; ++c) {
    if (!col_z[static_cast<std::size_t>(c)]) out.zero_block.cols.push_back(c);
  }
  // Trim to exactly n + 1 indices; any sub-block of a zero block is zero.
  while (static_cast<int>(out.zero_block.rows.size() + out.zero_block.cols.size()) > n + 1) {
    if (out.zero_block.cols.size() > 1 || out.zero_block.rows.size() <= 1) {
      out.zero_block.cols.pop_back();
    } else {
      out.zero_block.rows.pop_back();
    }
  }
  return out;
}

}  // namespace gmf
