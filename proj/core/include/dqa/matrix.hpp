#pragma once

#include <cassert>
#include <optional>
#include <utility>
#include <vector>

#include "dqa/field.hpp"

namespace dqa {

// Dense matrix over an exact field. Elimination always picks the first
// nonzero entry in the leftmost unfinished column, so echelon forms, ranks
// and kernel bases are reproducible bit for bit.
template <class K>
struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<K> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

  K& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const K& at(int i, int j) const {
    return a[static_cast<size_t>(i) * cols + j];
  }

  static Mat identity(int n, const K& one) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = one;
    return m;
  }

  Mat transpose() const {
    Mat t(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  friend Mat operator*(const Mat& x, const Mat& y) {
    assert(x.cols == y.rows);
    Mat z(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
      for (int k = 0; k < x.cols; ++k) {
        if (is_zero(x.at(i, k))) continue;
        for (int j = 0; j < y.cols; ++j) {
          if (is_zero(y.at(k, j))) continue;
          z.at(i, j) += x.at(i, k) * y.at(k, j);
        }
      }
    return z;
  }

  friend bool operator==(const Mat& x, const Mat& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
  }

  bool is_zero_matrix() const {
    for (const auto& e : a)
      if (!is_zero(e)) return false;
    return true;
  }
};

// In-place reduced row echelon form; returns the pivot columns.
template <class K>
std::vector<int> rref(Mat<K>& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols && row < m.rows; ++col) {
    int pr = -1;
    for (int i = row; i < m.rows; ++i)
      if (!is_zero(m.at(i, col))) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    if (pr != row)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(pr, j), m.at(row, j));
    K piv_inv = inv(m.at(row, col));
    for (int j = col; j < m.cols; ++j) m.at(row, j) = m.at(row, j) * piv_inv;
    for (int i = 0; i < m.rows; ++i) {
      if (i == row || is_zero(m.at(i, col))) continue;
      K f = m.at(i, col);
      for (int j = col; j < m.cols; ++j)
        m.at(i, j) -= f * m.at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class K>
int rank(Mat<K> m) {
  return static_cast<int>(rref(m).size());
}

// Basis of the right kernel {x : m x = 0}, one column vector per free
// column, normalized so the free coordinate is 1.
template <class K>
std::vector<std::vector<K>> kernel_basis(Mat<K> m, const FieldSpec& fs) {
  std::vector<int> piv = rref(m);
  std::vector<bool> is_piv(m.cols, false);
  for (int c : piv) is_piv[c] = true;
  std::vector<std::vector<K>> out;
  for (int c = 0; c < m.cols; ++c) {
    if (is_piv[c]) continue;
    std::vector<K> v(m.cols);
    v[c] = scalar_of_long<K>(1, fs);
    for (size_t r = 0; r < piv.size(); ++r)
      v[piv[r]] = -m.at(static_cast<int>(r), c);
    out.push_back(std::move(v));
  }
  return out;
}

// Some solution of m x = b, or nullopt when inconsistent.
template <class K>
std::optional<std::vector<K>> solve(const Mat<K>& m, const std::vector<K>& b) {
  if (static_cast<int>(b.size()) != m.rows)
    throw std::invalid_argument("solve: dimension mismatch");
  Mat<K> aug(m.rows, m.cols + 1);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols) = b[i];
  }
  std::vector<int> piv = rref(aug);
  if (!piv.empty() && piv.back() == m.cols) return std::nullopt;
  std::vector<K> x(m.cols);
  for (size_t r = 0; r < piv.size(); ++r)
    x[piv[r]] = aug.at(static_cast<int>(r), m.cols);
  return x;
}

template <class K>
std::optional<Mat<K>> inverse(const Mat<K>& m, const FieldSpec& fs) {
  assert(m.rows == m.cols);
  int n = m.rows;
  Mat<K> aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = scalar_of_long<K>(1, fs);
  }
  std::vector<int> piv = rref(aug);
  if (static_cast<int>(piv.size()) != n || piv.back() != n - 1)
    return std::nullopt;
  Mat<K> out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.at(i, j) = aug.at(i, n + j);
  return out;
}

// Row span helper: echelonizes a list of coordinate rows and drops zero
// rows. Used to normalize bases of subspaces deterministically.
template <class K>
std::vector<std::vector<K>> echelon_rows(std::vector<std::vector<K>> rows) {
  if (rows.empty()) return rows;
  int cols = static_cast<int>(rows[0].size());
  Mat<K> m(static_cast<int>(rows.size()), cols);
  for (size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < cols; ++j) m.at(static_cast<int>(i), j) = rows[i][j];
  std::vector<int> piv = rref(m);
  std::vector<std::vector<K>> out;
  for (size_t r = 0; r < piv.size(); ++r) {
    std::vector<K> v(cols);
    for (int j = 0; j < cols; ++j) v[j] = m.at(static_cast<int>(r), j);
    out.push_back(std::move(v));
  }
  return out;
}

// true iff every row of sub lies in the row span of sup.
template <class K>
bool rows_contained(const std::vector<std::vector<K>>& sub,
                    const std::vector<std::vector<K>>& sup) {
  std::vector<std::vector<K>> all = sup;
  for (const auto& r : sub) all.push_back(r);
  return echelon_rows(all).size() == echelon_rows(sup).size();
}

}  // namespace dqa
