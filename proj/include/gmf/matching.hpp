#pragma once

#include <vector>

namespace gmf {

/// Support pattern of a square matrix: support[i][j] is true when entry (i, j)
/// is treated as nonzero.
using SupportPattern = std::vector<std::vector<bool>>;

struct ZeroBlock {
  std::vector<int> rows;  // 0-based
  std::vector<int> cols;
};

struct MatchingResult {
  int size = 0;
  std::vector<int> row_to_col;  // -1 when unmatched
  bool perfect = false;
  /// When the matching is not perfect: rows and columns with rows.size() +
  /// cols.size() == n + 1 whose crossing entries are all zero.
  ZeroBlock zero_block;
};

/// Maximum bipartite matching rows -> columns by augmenting paths, plus the
/// zero block read off a minimum vertex cover.
MatchingResult maximum_matching(const SupportPattern& support);

}  // namespace gmf
