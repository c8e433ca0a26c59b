#pragma once

// Graded exterior objects over a coordinate Space: differential forms with
// basis covectors dxi_A and multivector fields with basis vectors d/dxi_A.
// Both are sparse maps from strictly increasing index tuples to Poly.

#include <cstdint>
#include <initializer_list>
#include <map>
#include <vector>

#include "msymp/poly.hpp"

namespace msymp {

using BasisTuple = std::vector<std::uint16_t>;

enum class Grading : std::uint8_t { Form, MultiVector };

/// Sorts `indices` in place. Returns the permutation sign, or 0 when an index repeats.
int sort_with_sign(BasisTuple& indices);

template <Grading G>
class Graded {
 public:
  using TermMap = std::map<BasisTuple, Poly>;

  /// A zero object of the given degree. Degrees outside [0, dim] are allowed
  /// and can only hold zero.
  Graded(Space space, int degree) : space_(space), degree_(degree) {}

  /// Degree-0 object with the given coefficient.
  static Graded scalar(const Poly& p);
  /// coefficient * (basis elements in the given order); reordering signs applied.
  static Graded basis(Space space, std::initializer_list<std::size_t> indices, const Poly& coefficient);
  static Graded basis(Space space, std::initializer_list<std::size_t> indices);

  const Space& space() const { return space_; }
  int degree() const { return degree_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  /// Coefficient of a strictly increasing tuple (zero when absent).
  Poly coefficient(const BasisTuple& sorted) const;

  /// Adds coefficient * (basis elements in the order given); length must equal degree().
  void add_term(BasisTuple indices, const Poly& coefficient);

  Graded operator-() const;
  Graded& operator+=(const Graded& rhs);
  Graded& operator-=(const Graded& rhs);
  Graded& operator*=(const Rational& c);
  Graded& operator*=(const Poly& c);

  friend Graded operator+(Graded a, const Graded& b) { return a += b; }
  friend Graded operator-(Graded a, const Graded& b) { return a -= b; }
  friend Graded operator*(Graded a, const Rational& c) { return a *= c; }
  friend Graded operator*(const Rational& c, Graded a) { return a *= c; }
  friend Graded operator*(const Poly& c, Graded a) { return a *= c; }

  friend bool operator==(const Graded& a, const Graded& b) {
    if (!(a.space_ == b.space_)) return false;
    // Zero objects compare equal regardless of nominal degree.
    if (a.terms_.empty() && b.terms_.empty()) return true;
    return a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

 private:
  void check_compatible(const Graded& rhs, const char* context) const;

  Space space_;
  int degree_;
  TermMap terms_;
};

using Form = Graded<Grading::Form>;
using MultiVector = Graded<Grading::MultiVector>;

extern template class Graded<Grading::Form>;
extern template class Graded<Grading::MultiVector>;

/// Order in which the factors of a decomposable multivector are contracted.
enum class ContractionOrder : std::uint8_t {
  /// i_{X1^...^Xr} = i_{X1} o ... o i_{Xr}  (X_r is inserted first)
  LastFactorFirst,
  /// i_{X1^...^Xr} = i_{Xr} o ... o i_{X1}  (X_1 is inserted first, so
  /// i_{X1^...^Xr} a = a(X1, ..., Xr, ...))
  FirstFactorFirst,
};

/// The convention used throughout the library.
inline constexpr ContractionOrder kContractionOrder = ContractionOrder::FirstFactorFirst;

Form wedge(const Form& a, const Form& b);
MultiVector wedge(const MultiVector& a, const MultiVector& b);

Form exterior_derivative(const Form& a);

/// Interior product of a multivector into a form. Result degree is
/// deg a - deg X (zero when negative). Degree-0 multivectors act by multiplication.
Form contract(const MultiVector& X, const Form& a, ContractionOrder order = kContractionOrder);

/// L_X a = d i_X a - (-1)^p i_X d a for a p-multivector X.
Form lie_derivative(const MultiVector& X, const Form& a);

/// Schouten bracket, degree p + q - 1. Reduces to the Lie bracket on vector
/// fields and satisfies i_[X,Y] = (-1)^{(p-1)q} L_X i_Y - i_Y L_X.
MultiVector schouten(const MultiVector& X, const MultiVector& Y);

bool is_closed(const Form& a);

/// Coefficients evaluated at a point (constant-coefficient result).
Form evaluate_at(const Form& a, const Point& pt);
MultiVector evaluate_at(const MultiVector& X, const Point& pt);

/// All strictly increasing k-tuples of {0, ..., dim-1} in lexicographic order.
std::vector<BasisTuple> basis_tuples(std::size_t dim, int k);

struct KernelBasis {
  Point point;
  int degree;
  std::vector<MultiVector> basis;
};

/// Rational basis of the constant r-multivectors Z with i_Z a(pt) = 0.
KernelBasis kernel_at_point(const Form& a, int r, const Point& pt);

}  // namespace msymp
