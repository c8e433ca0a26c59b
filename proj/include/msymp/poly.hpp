#pragma once

// Sparse multivariate polynomials with exact rational coefficients over the
// coordinates of a multisymplectic phase space J*(E) or of the jet bundle J(E).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "msymp/rational.hpp"

namespace msymp {

enum class SpaceKind : std::uint8_t {
  Cojet,  ///< J*(E): (x^mu, q^i, p_i^mu, p)
  Jet,    ///< J(E):  (x^mu, q^i, q^i_mu)
};

enum class CoordKind : std::uint8_t { Base, Fiber, Momentum, Energy, Velocity };

/// A coordinate label. Indices are 1-based; unused indices are 0.
/// Momentum(i, mu) is p_i^mu, Velocity(i, mu) is the jet coordinate q^i_mu.
struct Coordinate {
  CoordKind kind;
  int i = 0;
  int mu = 0;

  static Coordinate base(int mu) { return {CoordKind::Base, 0, mu}; }
  static Coordinate fiber(int i) { return {CoordKind::Fiber, i, 0}; }
  static Coordinate momentum(int i, int mu) { return {CoordKind::Momentum, i, mu}; }
  static Coordinate energy() { return {CoordKind::Energy, 0, 0}; }
  static Coordinate velocity(int i, int mu) { return {CoordKind::Velocity, i, mu}; }

  friend bool operator==(const Coordinate&, const Coordinate&) = default;
};

/// The coordinate inventory of J*(E) or J(E) for base dimension n and fibre
/// dimension N. Coordinates are numbered in canonical order: Base(1..n),
/// Fiber(1..N), then Momentum/Velocity (i, mu) row-major in i, then Energy
/// (cojet only).
class Space {
 public:
  Space(SpaceKind kind, int n, int N);

  SpaceKind kind() const { return kind_; }
  int n() const { return n_; }
  int N() const { return N_; }
  /// (N+1)(n+1) for J*(E), n + N + nN for J(E).
  std::size_t dim() const;

  std::size_t index(const Coordinate& c) const;
  Coordinate coordinate(std::size_t index) const;
  bool contains(const Coordinate& c) const;

  std::size_t base_index(int mu) const { return index(Coordinate::base(mu)); }
  std::size_t fiber_index(int i) const { return index(Coordinate::fiber(i)); }
  std::size_t momentum_index(int i, int mu) const { return index(Coordinate::momentum(i, mu)); }
  std::size_t energy_index() const { return index(Coordinate::energy()); }
  std::size_t velocity_index(int i, int mu) const { return index(Coordinate::velocity(i, mu)); }

  /// Variable spelling used by the script language: x1, q2, p[1,2], en, u[1,2].
  std::string variable_name(std::size_t index) const;
  /// Basis covector spelling: dx1, dq2, dp[1,2], dp, du[1,2].
  std::string covector_name(std::size_t index) const;
  /// Basis vector spelling: e_x1, e_q2, e_p[1,2], e_p, e_u[1,2].
  std::string vector_name(std::size_t index) const;

  friend bool operator==(const Space&, const Space&) = default;

 private:
  SpaceKind kind_;
  int n_;
  int N_;
};

std::string to_string(const Space& space);

/// Throws BundleMismatch unless a == b.
void require_same_space(const Space& a, const Space& b, const char* context);

/// Product of coordinate powers; stored as (variable index, exponent > 0)
/// pairs sorted by index.
class Monomial {
 public:
  using Factor = std::pair<std::uint16_t, std::uint32_t>;

  Monomial() = default;
  static Monomial variable(std::size_t index, std::uint32_t exponent = 1);

  std::span<const Factor> factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }
  std::uint32_t degree() const;
  std::uint32_t exponent(std::size_t index) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  /// Lowers the exponent of `index` by one; requires exponent(index) > 0.
  Monomial without_one(std::size_t index) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Factor> factors_;
};

/// Degree-lexicographic order (total degree, then exponents compared in
/// canonical variable order). `DegLexGreater` sorts larger monomials first.
bool deglex_less(const Monomial& a, const Monomial& b);

struct DegLexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return deglex_less(b, a); }
};

class Point;

/// Polynomial in the coordinates of a Space. No zero coefficients are stored,
/// so structural equality is mathematical equality.
class Poly {
 public:
  using TermMap = std::map<Monomial, Rational, DegLexGreater>;

  explicit Poly(Space space) : space_(space) {}
  Poly(Space space, const Rational& constant);

  static Poly variable(Space space, std::size_t index);
  static Poly variable(Space space, const Coordinate& c) { return variable(space, space.index(c)); }
  static Poly monomial(Space space, Monomial m, Rational coefficient);

  const Space& space() const { return space_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  /// Returns the constant value when the polynomial has no variables.
  std::optional<Rational> constant_value() const;
  std::uint32_t total_degree() const;

  bool depends_on(std::size_t index) const;
  /// True iff every variable occurring satisfies `allowed`.
  bool depends_only_on(const std::function<bool(const Coordinate&)>& allowed) const;

  /// Adds `coefficient * m` in place.
  void add_term(const Monomial& m, const Rational& coefficient);

  Poly operator-() const;
  Poly& operator+=(const Poly& rhs);
  Poly& operator-=(const Poly& rhs);
  Poly& operator*=(const Rational& c);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.space_ == b.space_ && a.terms_ == b.terms_;
  }

  /// Reinterprets the polynomial over `target`. Every variable that occurs
  /// must have a coordinate of the same label in `target`.
  Poly rebased(const Space& target) const;

  /// Canonical text: terms in descending deglex order, e.g. "2*x1*q1^2 - 1/2*en + 3".
  std::string to_string() const;

 private:
  Space space_;
  TermMap terms_;
};

Poly pow(const Poly& base, unsigned exponent);

/// Formal partial derivative with respect to the coordinate with the given index.
Poly partial(const Poly& a, std::size_t index);
inline Poly partial(const Poly& a, const Coordinate& c) { return partial(a, a.space().index(c)); }

/// A total assignment of rational values to the coordinates of a Space.
class Point {
 public:
  /// `values` must have exactly space.dim() entries.
  Point(Space space, std::vector<Rational> values);
  /// Throws IncompletePoint when some coordinate has no assignment.
  static Point from_assignments(Space space, const std::vector<std::pair<Coordinate, Rational>>& values);

  const Space& space() const { return space_; }
  const Rational& operator[](std::size_t index) const { return values_.at(index); }
  std::span<const Rational> values() const { return values_; }

 private:
  Space space_;
  std::vector<Rational> values_;
};

Rational evaluate(const Poly& a, const Point& pt);

}  // namespace msymp
