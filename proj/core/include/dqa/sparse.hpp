#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "dqa/field.hpp"

namespace dqa {

// Sparse vector: sorted (index, coefficient) pairs, zero coefficients pruned.
template <class K>
using SpVec = std::vector<std::pair<int, K>>;

template <class K>
void spvec_add(SpVec<K>& dst, const SpVec<K>& src, const K& c) {
  if (is_zero(c)) return;
  SpVec<K> out;
  out.reserve(dst.size() + src.size());
  size_t i = 0, j = 0;
  while (i < dst.size() || j < src.size()) {
    if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
      out.push_back(dst[i++]);
    } else if (i == dst.size() || dst[i].first > src[j].first) {
      out.emplace_back(src[j].first, c * src[j].second);
      ++j;
    } else {
      K v = dst[i].second + c * src[j].second;
      if (!is_zero(v)) out.emplace_back(dst[i].first, v);
      ++i;
      ++j;
    }
  }
  dst = std::move(out);
}

// Column-major sparse matrix, enough for rank and image computations on the
// differentials of graded complexes.
template <class K>
struct SpMat {
  int rows = 0;
  int cols = 0;
  std::vector<SpVec<K>> col;

  SpMat() = default;
  SpMat(int r, int c) : rows(r), cols(c), col(c) {}

  void set_col(int j, SpVec<K> v) { col[j] = std::move(v); }

  size_t nnz() const {
    size_t n = 0;
    for (const auto& c : col) n += c.size();
    return n;
  }

  bool empty() const { return rows == 0 || cols == 0 || nnz() == 0; }

  // y = m * x for a sparse x.
  SpVec<K> apply(const SpVec<K>& x) const {
    SpVec<K> y;
    for (const auto& [j, c] : x) spvec_add(y, col[j], c);
    return y;
  }
};

// Exact sparse rank by row elimination. The pivot column is the leftmost one
// of minimal active population, the pivot row the shortest row meeting it;
// both choices are deterministic.
template <class K>
int sp_rank(const SpMat<K>& m) {
  if (m.rows == 0 || m.cols == 0) return 0;
  std::vector<SpVec<K>> row(m.rows);
  for (int j = 0; j < m.cols; ++j)
    for (const auto& [i, v] : m.col[j]) row[i].emplace_back(j, v);
  // col_rows[j] over-approximates the active rows with an entry at j
  std::vector<std::vector<int>> col_rows(m.cols);
  std::vector<int> cnt(m.cols, 0);  // exact active populations
  for (int i = 0; i < m.rows; ++i)
    for (const auto& [j, v] : row[i]) {
      col_rows[j].push_back(i);
      ++cnt[j];
    }
  std::vector<bool> row_done(m.rows, false), col_done(m.cols, false);

  auto row_has = [&](int i, int j, K* out) {
    auto it = std::lower_bound(
        row[i].begin(), row[i].end(), j,
        [](const std::pair<int, K>& e, int col) { return e.first < col; });
    if (it == row[i].end() || it->first != j) return false;
    if (out) *out = it->second;
    return true;
  };

  int rank = 0;
  for (;;) {
    int best_c = -1, best_len = INT32_MAX;
    for (int j = 0; j < m.cols; ++j) {
      if (col_done[j] || cnt[j] == 0) continue;
      if (cnt[j] < best_len) {
        best_len = cnt[j];
        best_c = j;
        if (best_len == 1) break;
      }
    }
    if (best_c < 0) break;
    int best_r = -1;
    size_t best_rlen = SIZE_MAX;
    for (int i : col_rows[best_c]) {
      if (row_done[i] || !row_has(i, best_c, nullptr)) continue;
      if (row[i].size() < best_rlen) {
        best_rlen = row[i].size();
        best_r = i;
      }
    }
    K piv;
    row_has(best_r, best_c, &piv);
    K piv_inv = inv(piv);
    std::vector<int> touched = col_rows[best_c];
    for (int i : touched) {
      if (i == best_r || row_done[i]) continue;
      K coeff;
      if (!row_has(i, best_c, &coeff)) continue;
      K factor = -(coeff * piv_inv);
      SpVec<K> before = std::move(row[i]);
      row[i] = before;
      spvec_add(row[i], row[best_r], factor);
      for (const auto& [j, v] : before) --cnt[j];
      for (const auto& [j, v] : row[i]) ++cnt[j];
      // register fill-in in the column index
      size_t bi = 0;
      for (const auto& [j, v] : row[i]) {
        while (bi < before.size() && before[bi].first < j) ++bi;
        if (bi >= before.size() || before[bi].first != j)
          col_rows[j].push_back(i);
      }
    }
    for (const auto& [j, v] : row[best_r]) --cnt[j];
    row_done[best_r] = true;
    col_done[best_c] = true;
    ++rank;
  }
  return rank;
}

// Dense image basis of a sparse matrix (coordinates in the target space),
// echelonized. Only used where dimensions are small.
template <class K>
std::vector<std::vector<K>> sp_image_rows(const SpMat<K>& m) {
  std::vector<std::vector<K>> rows;
  for (int j = 0; j < m.cols; ++j) {
    if (m.col[j].empty()) continue;
    std::vector<K> r(m.rows);
    for (const auto& [i, v] : m.col[j]) r[i] = v;
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace dqa
