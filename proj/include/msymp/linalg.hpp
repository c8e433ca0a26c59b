#pragma once

#include <cstddef>
#include <vector>

#include "msymp/rational.hpp"

namespace msymp::linalg {

/// Dense row-major matrix over the rationals.
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Rational> data_;
};

/// Reduced row echelon form with the pivot column of each nonzero row and the
/// row operations that produced it (transform * original = reduced).
struct Echelon {
  Matrix reduced;
  Matrix transform;
  std::vector<std::size_t> pivots;
};

Echelon row_reduce(const Matrix& m);

std::size_t rank(const Matrix& m);

/// Basis of { z : m z = 0 }, one vector per free column.
std::vector<std::vector<Rational>> nullspace(const Matrix& m);

}  // namespace msymp::linalg
