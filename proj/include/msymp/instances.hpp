#pragma once

// Seeded random instances: small-integer polynomials of total degree <= 2
// and the exterior objects, vector fields and Hamiltonian forms built from them.

#include <functional>
#include <random>
#include <vector>

#include "msymp/bracket.hpp"

namespace msymp {

class Instances {
 public:
  explicit Instances(unsigned seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  /// Nonzero small-integer rational, occasionally with denominator 2.
  Rational coefficient() {
    int v = 0;
    while (v == 0) v = uniform(-3, 3);
    return uniform(0, 4) == 0 ? Rational(v, 2) : Rational(v);
  }

  /// Polynomial of total degree <= max_degree whose variables satisfy `allowed`.
  Poly poly(const Space& s, const std::function<bool(const Coordinate&)>& allowed, int max_terms = 3,
            int max_degree = 2) {
    std::vector<std::size_t> vars;
    for (std::size_t v = 0; v < s.dim(); ++v) {
      if (allowed(s.coordinate(v))) vars.push_back(v);
    }
    Poly p(s);
    int terms = uniform(0, max_terms);
    for (int t = 0; t < terms; ++t) {
      Monomial m;
      int deg = vars.empty() ? 0 : uniform(0, max_degree);
      for (int d = 0; d < deg; ++d) m = m * Monomial::variable(vars[static_cast<std::size_t>(uniform(0, static_cast<int>(vars.size()) - 1))]);
      p.add_term(m, coefficient());
    }
    return p;
  }

  Poly poly(const Space& s, int max_terms = 3, int max_degree = 2) {
    return poly(s, [](const Coordinate&) { return true; }, max_terms, max_degree);
  }

  template <Grading G>
  Graded<G> graded(const Space& s, int degree, int max_terms = 3) {
    Graded<G> out(s, degree);
    auto tuples = basis_tuples(s.dim(), degree);
    if (tuples.empty()) return out;
    int terms = uniform(1, max_terms);
    for (int t = 0; t < terms; ++t) {
      out.add_term(tuples[static_cast<std::size_t>(uniform(0, static_cast<int>(tuples.size()) - 1))], poly(s));
    }
    return out;
  }

  Form form(const Space& s, int degree, int max_terms = 3) { return graded<Grading::Form>(s, degree, max_terms); }
  MultiVector multivector(const Space& s, int degree, int max_terms = 3) {
    return graded<Grading::MultiVector>(s, degree, max_terms);
  }

  ProjectableVF projectable(const Bundle& b, bool vertical = false) {
    const Space& s = b.space();
    std::vector<Poly> base;
    std::vector<Poly> fiber;
    for (int mu = 1; mu <= b.n(); ++mu) {
      base.push_back(vertical ? Poly(s) : poly(s, [](const Coordinate& c) { return c.kind == CoordKind::Base; }, 2));
    }
    for (int i = 1; i <= b.N(); ++i) fiber.push_back(poly(s, on_e, 3));
    return make_projectable(b, std::move(base), std::move(fiber));
  }

  HorizontalNm1Form horizontal(const Bundle& b) {
    std::vector<Poly> comps;
    for (int mu = 1; mu <= b.n(); ++mu) comps.push_back(poly(b.space(), on_e, 2));
    return make_horizontal(b, std::move(comps));
  }

  /// Closed (n-1)-form: d of a random (n-2)-form, or a constant when n = 1.
  Form closed_nm1(const Bundle& b) {
    const Space& s = b.space();
    if (b.n() == 1) return Form::scalar(Poly(s, Rational(uniform(-2, 2))));
    return exterior_derivative(form(s, b.n() - 2, 2));
  }

  /// Hamiltonian (n-1)-form from a random generator triple.
  HamiltonianNm1Form hamiltonian(const Bundle& b, bool with_closed = false) {
    ProjectableVF X = projectable(b);
    HorizontalNm1Form f0 = horizontal(b);
    Form c = with_closed ? closed_nm1(b) : Form(b.space(), b.n() - 1);
    return build_hamiltonian_form(X, f0, c);
  }

  Point point(const Space& s) {
    std::vector<Rational> values;
    for (std::size_t v = 0; v < s.dim(); ++v) values.emplace_back(uniform(-3, 3));
    return Point(s, std::move(values));
  }

  std::mt19937& engine() { return rng_; }

 private:
  static bool on_e(const Coordinate& c) { return c.kind == CoordKind::Base || c.kind == CoordKind::Fiber; }

  std::mt19937 rng_;
};

}  // namespace msymp
