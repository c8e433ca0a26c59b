#pragma once

// Dense full-basis model of forms and multivectors used as an oracle for the
// sparse kernels. A degree-k object is a coefficient per k-subset of the
// coordinates, indexed by bitmask; every sign comes from popcounts.

#include <cstdint>
#include <vector>

#include "msymp/exterior.hpp"

namespace msymp::dense {

struct Dense {
  Space space;
  int degree;
  std::vector<Poly> coeff;  ///< size 2^dim, nonzero only on masks with popcount == degree
};

Dense zero(const Space& s, int degree);
Dense from_form(const Form& a);
Dense from_multivector(const MultiVector& X);
Form to_form(const Dense& a);

Dense wedge(const Dense& a, const Dense& b);
Dense d(const Dense& a);
/// X given as a dense multivector; X_1 inserted first: i_X a = a(X_1, ..., X_r, ...).
Dense contract(const Dense& X, const Dense& a);
/// Classical Lie derivative of a form along a vector field, coefficient by coefficient.
Dense lie_vector(const Dense& X, const Dense& a);

bool equal(const Dense& a, const Dense& b);

/// Rank of the linear map Z -> i_Z a(pt) on constant r-multivectors, by
/// fraction-exact elimination on the brute-force matrix.
std::size_t contraction_rank(const Form& a, int r, const Point& pt);

}  // namespace msymp::dense
