#pragma once

#include <algorithm>
#include <vector>

#include "groth/errors.hpp"
#include "groth/partition.hpp"

namespace groth {

// Semistandard Young tableau over the alphabet 1..N, stored by rows.
class Tableau {
 public:
  const std::vector<std::vector<int>>& rows() const { return rows_; }

  Partition shape() const {
    std::vector<long> parts;
    for (const auto& r : rows_) parts.push_back(long(r.size()));
    return Partition(std::move(parts));
  }

  bool semistandard() const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      for (std::size_t c = 0; c + 1 < rows_[r].size(); ++c)
        if (rows_[r][c] > rows_[r][c + 1]) return false;
      if (r > 0 && rows_[r].size() > rows_[r - 1].size()) return false;
      if (r > 0)
        for (std::size_t c = 0; c < rows_[r].size(); ++c)
          if (rows_[r - 1][c] >= rows_[r][c]) return false;
    }
    return true;
  }

  // Schensted row insertion: the letter bumps the leftmost entry strictly
  // greater than it, the bumped entry descends to the next row.
  void row_insert(int letter) {
    int x = letter;
    for (std::size_t r = 0;; ++r) {
      if (r == rows_.size()) {
        rows_.push_back({x});
        return;
      }
      auto& row = rows_[r];
      auto it = std::upper_bound(row.begin(), row.end(), x);
      if (it == row.end()) {
        row.push_back(x);
        return;
      }
      std::swap(x, *it);
    }
  }

  // Dual insertion used for the 0/1 stage: the letter enters column 1 and
  // bumps the topmost entry >= it; the bumped entry moves to the next column.
  // Equivalently, row insertion with weak bumping in the transposed diagram.
  void dual_insert(int letter) {
    int x = letter;
    for (std::size_t c = 0;; ++c) {
      std::size_t r = 0;
      bool bumped = false;
      for (; r < rows_.size() && rows_[r].size() > c; ++r) {
        if (rows_[r][c] >= x) {
          std::swap(x, rows_[r][c]);
          bumped = true;
          break;
        }
      }
      if (!bumped) {
        if (r == rows_.size())
          rows_.push_back({x});
        else
          rows_[r].push_back(x);
        return;
      }
    }
  }

 private:
  std::vector<std::vector<int>> rows_;
};

// Insert the word 1^{c_1} 2^{c_2} ... N^{c_N} by Schensted row insertion.
inline void rsk_insert_word(Tableau& t, const std::vector<long>& counts) {
  for (std::size_t j = 0; j < counts.size(); ++j)
    for (long c = 0; c < counts[j]; ++c) t.row_insert(int(j) + 1);
}

// Insert the 0/1 word (letters with bit set, in increasing order) by dual insertion.
inline void dual_rsk_insert_word(Tableau& t, const std::vector<int>& bits) {
  for (std::size_t j = 0; j < bits.size(); ++j)
    if (bits[j]) t.dual_insert(int(j) + 1);
}

}  // namespace groth
