#pragma once

// Multisymplectic phase space J*(E) of a fibre bundle E -> M with
// dim M = n and fibre dimension N: canonical forms, lifts of projectable
// vector fields and the multimomentum map.

#include <optional>
#include <vector>

#include "msymp/exterior.hpp"

namespace msymp {

class Bundle {
 public:
  Bundle(int n, int N) : space_(SpaceKind::Cojet, n, N) {}

  int n() const { return space_.n(); }
  int N() const { return space_.N(); }
  /// (N+1)(n+1)
  std::size_t dim() const { return space_.dim(); }
  const Space& space() const { return space_; }
  /// The jet bundle J(E) over the same E.
  Space jet_space() const { return Space(SpaceKind::Jet, n(), N()); }
  std::vector<Coordinate> coordinates() const;

  friend bool operator==(const Bundle&, const Bundle&) = default;

 private:
  Space space_;
};

/// Throws std::invalid_argument unless n >= 1 and N >= 1.
Bundle make_bundle(int n, int N);

/// Vector field X^mu d/dx^mu + X^i d/dq^i on E, with X^mu = X^mu(x) and
/// X^i = X^i(x, q). Components are polynomials over J*(E).
class ProjectableVF {
 public:
  const Bundle& bundle() const { return bundle_; }
  /// X^mu, mu = 1..n
  const Poly& base(int mu) const { return base_.at(static_cast<std::size_t>(mu - 1)); }
  /// X^i, i = 1..N
  const Poly& fiber(int i) const { return fiber_.at(static_cast<std::size_t>(i - 1)); }
  bool is_vertical() const;
  bool is_zero() const;

  /// The same field viewed as a vector field on J*(E).
  MultiVector as_multivector() const;

  friend ProjectableVF operator+(const ProjectableVF& a, const ProjectableVF& b);
  friend ProjectableVF operator*(const Rational& c, const ProjectableVF& a);
  friend bool operator==(const ProjectableVF&, const ProjectableVF&) = default;

 private:
  friend ProjectableVF make_projectable(const Bundle&, std::vector<Poly>, std::vector<Poly>);
  ProjectableVF(Bundle b, std::vector<Poly> base, std::vector<Poly> fiber)
      : bundle_(b), base_(std::move(base)), fiber_(std::move(fiber)) {}

  Bundle bundle_;
  std::vector<Poly> base_;
  std::vector<Poly> fiber_;
};

/// Validates the variable dependence of (X^mu) and (X^i); throws
/// NotProjectable naming the offending component.
ProjectableVF make_projectable(const Bundle& b, std::vector<Poly> base, std::vector<Poly> fiber);

/// Convenience: the zero field.
ProjectableVF zero_projectable(const Bundle& b);

/// [X, Y] on E, from the component formula [X,Y]^a = X^b d_b Y^a - Y^b d_b X^a.
ProjectableVF lie_bracket(const ProjectableVF& X, const ProjectableVF& Y);

/// f_0 = f_0^mu d^n x_mu with f_0^mu = f_0^mu(x, q).
class HorizontalNm1Form {
 public:
  const Bundle& bundle() const { return bundle_; }
  const Poly& component(int mu) const { return comps_.at(static_cast<std::size_t>(mu - 1)); }
  /// The pull-back to J*(E).
  Form pullback() const;

 private:
  friend HorizontalNm1Form make_horizontal(const Bundle&, std::vector<Poly>);
  HorizontalNm1Form(Bundle b, std::vector<Poly> comps) : bundle_(b), comps_(std::move(comps)) {}

  Bundle bundle_;
  std::vector<Poly> comps_;
};

/// Throws NotProjectable when a component depends on momenta or energy.
HorizontalNm1Form make_horizontal(const Bundle& b, std::vector<Poly> components);
HorizontalNm1Form zero_horizontal(const Bundle& b);

/// d^n x = dx^1 ^ ... ^ dx^n
Form volume_form(const Bundle& b);
/// d^n x_mu = i_{d/dx^mu} d^n x
Form volume_form(const Bundle& b, int mu);
/// d^n x_{mu nu} = i_{d/dx^nu} i_{d/dx^mu} d^n x, antisymmetric in (mu, nu).
Form volume_form(const Bundle& b, int mu, int nu);

/// theta = p_i^mu dq^i ^ d^n x_mu + p d^n x
Form theta(const Bundle& b);
/// omega = -d theta
Form omega(const Bundle& b);
/// dq^i ^ dp_i^mu ^ d^n x_mu - dp ^ d^n x, assembled term by term.
Form omega_explicit(const Bundle& b);

/// Lift of X to J(E); a vector field over b.jet_space().
MultiVector lift_jet(const ProjectableVF& X);
/// Contact forms dq^i - q^i_mu dx^mu on J(E), i = 1..N.
std::vector<Form> contact_forms(const Bundle& b);
/// True iff L_V sends every contact form into their span over polynomials.
bool preserves_contact_ideal(const Bundle& b, const MultiVector& V);

/// Lift of X to J*(E).
MultiVector lift_cojet(const ProjectableVF& X);

/// J(X) = i_{X_{J*(E)}} theta
Form momentum_map(const ProjectableVF& X);
/// (p_i^mu X^i + p X^mu) d^n x_mu - 1/2 (p_i^mu X^nu - p_i^nu X^mu) dq^i ^ d^n x_{mu nu}
Form momentum_map_closed_form(const ProjectableVF& X);

}  // namespace msymp
