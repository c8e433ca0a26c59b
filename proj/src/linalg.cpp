#include "msymp/linalg.hpp"

#include <utility>

namespace msymp::linalg {

Echelon row_reduce(const Matrix& m) {
  Matrix a = m;
  Matrix t(m.rows(), m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) t(r, r) = 1;

  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t sel = row;
    while (sel < a.rows() && a(sel, col).is_zero()) ++sel;
    if (sel == a.rows()) continue;
    if (sel != row) {
      for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(sel, c), a(row, c));
      for (std::size_t c = 0; c < t.cols(); ++c) std::swap(t(sel, c), t(row, c));
    }
    Rational inv = Rational(1) / a(row, col);
    for (std::size_t c = 0; c < a.cols(); ++c) a(row, c) *= inv;
    for (std::size_t c = 0; c < t.cols(); ++c) t(row, c) *= inv;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row || a(r, col).is_zero()) continue;
      Rational factor = a(r, col);
      for (std::size_t c = 0; c < a.cols(); ++c) {
        if (!a(row, c).is_zero()) a(r, c) -= factor * a(row, c);
      }
      for (std::size_t c = 0; c < t.cols(); ++c) {
        if (!t(row, c).is_zero()) t(r, c) -= factor * t(row, c);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return Echelon{std::move(a), std::move(t), std::move(pivots)};
}

std::size_t rank(const Matrix& m) { return row_reduce(m).pivots.size(); }

std::vector<std::vector<Rational>> nullspace(const Matrix& m) {
  Echelon e = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;

  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> z(m.cols());
    z[free] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) z[e.pivots[r]] = -e.reduced(r, free);
    basis.push_back(std::move(z));
  }
  return basis;
}

}  // namespace msymp::linalg
