#pragma once

// Smith normal form over Z with unimodular transforms: U * M * V = D with
// D diagonal, non-negative, and d_1 | d_2 | ... .

#include <cstddef>
#include <optional>
#include <utility>

#include "dcover/matrix.hpp"

namespace dcover {

template <class T>
struct SmithForm {
  Matrix<T> U;
  Matrix<T> D;
  Matrix<T> V;

  std::size_t rank() const {
    std::size_t r = 0;
    for (std::size_t i = 0; i < D.rows() && i < D.cols(); ++i)
      if (D(i, i) != 0) ++r;
    return r;
  }
};

namespace detail {

template <class T>
T abs_value(const T& v) { return v < 0 ? T(-v) : v; }

// Smallest non-zero |entry| in the lower-right block starting at t, ties
// broken by row-major order.
template <class T>
std::optional<std::pair<std::size_t, std::size_t>> min_pivot(const Matrix<T>& a, std::size_t t) {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  T best_val{};
  for (std::size_t i = t; i < a.rows(); ++i)
    for (std::size_t j = t; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      T v = abs_value(a(i, j));
      if (!best || v < best_val) {
        best = {i, j};
        best_val = v;
      }
    }
  return best;
}

}  // namespace detail

/// Deterministic: identical input matrices produce identical (U, D, V).
template <class T>
SmithForm<T> smith_normal_form(const Matrix<T>& m) {
  SmithForm<T> f{Matrix<T>::identity(m.rows()), m, Matrix<T>::identity(m.cols())};
  Matrix<T>& a = f.D;
  const std::size_t n = std::min(a.rows(), a.cols());

  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      auto pivot = detail::min_pivot(a, t);
      if (!pivot) return f;  // remaining block is zero
      a.swap_rows(t, pivot->first);
      f.U.swap_rows(t, pivot->first);
      a.swap_cols(t, pivot->second);
      f.V.swap_cols(t, pivot->second);

      bool clean = true;
      for (std::size_t i = t + 1; i < a.rows(); ++i) {
        if (a(i, t) == 0) continue;
        T q = a(i, t) / a(t, t);
        a.add_row(i, t, T(-q));
        f.U.add_row(i, t, T(-q));
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < a.cols(); ++j) {
        if (a(t, j) == 0) continue;
        T q = a(t, j) / a(t, t);
        a.add_col(j, t, T(-q));
        f.V.add_col(j, t, T(-q));
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility: pull in a row whose entries the pivot does not divide.
      std::optional<std::size_t> bad_row;
      for (std::size_t i = t + 1; i < a.rows() && !bad_row; ++i)
        for (std::size_t j = t + 1; j < a.cols(); ++j)
          if (a(i, j) % a(t, t) != 0) {
            bad_row = i;
            break;
          }
      if (!bad_row) break;
      a.add_row(t, *bad_row, T(1));
      f.U.add_row(t, *bad_row, T(1));
    }
    if (a(t, t) < 0) {
      a.negate_row(t);
      f.U.negate_row(t);
    }
  }
  return f;
}

}  // namespace dcover
