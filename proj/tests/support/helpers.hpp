#pragma once

#include "msymp/bracket.hpp"
#include "msymp/instances.hpp"

#include <optional>

namespace msymp::test {

using Gen = msymp::Instances;

inline Poly c(const Space& s, Rational v) { return Poly(s, v); }
inline Poly x(const Bundle& b, int mu) { return Poly::variable(b.space(), Coordinate::base(mu)); }
inline Poly q(const Bundle& b, int i) { return Poly::variable(b.space(), Coordinate::fiber(i)); }
inline Poly p(const Bundle& b, int i, int mu) { return Poly::variable(b.space(), Coordinate::momentum(i, mu)); }
inline Poly en(const Bundle& b) { return Poly::variable(b.space(), Coordinate::energy()); }

inline std::size_t ix(const Bundle& b, int mu) { return b.space().base_index(mu); }
inline std::size_t iq(const Bundle& b, int i) { return b.space().fiber_index(i); }
inline std::size_t ip(const Bundle& b, int i, int mu) { return b.space().momentum_index(i, mu); }
inline std::size_t ie(const Bundle& b) { return b.space().energy_index(); }

inline Form dform(const Space& s, std::initializer_list<std::size_t> idx, const Poly& coeff) {
  return Form::basis(s, idx, coeff);
}
inline MultiVector vec(const Space& s, std::initializer_list<std::size_t> idx, const Poly& coeff) {
  return MultiVector::basis(s, idx, coeff);
}

/// X = sum base d/dx^mu + fiber d/dq^i
inline ProjectableVF field(const Bundle& b, std::vector<Poly> base, std::vector<Poly> fiber) {
  while (base.size() < static_cast<std::size_t>(b.n())) base.emplace_back(b.space());
  while (fiber.size() < static_cast<std::size_t>(b.N())) fiber.emplace_back(b.space());
  return make_projectable(b, std::move(base), std::move(fiber));
}

inline const std::vector<Bundle>& desk_bundles() {
  static const std::vector<Bundle> all{Bundle(1, 1), Bundle(2, 1), Bundle(2, 2), Bundle(3, 2)};
  return all;
}

inline int sign_pow(int e) { return e % 2 == 0 ? 1 : -1; }

}  // namespace msymp::test

namespace msymp::test {

/// A certified pair whose form has degree `degree`: a random Hamiltonian
/// (n-1)-form for degree n-1, otherwise a random form with low-degree
/// coefficients for which i_Z omega = dF is solvable.
inline std::optional<HamiltonianPair> random_pair(const Bundle& b, Gen& g, int degree, int attempts = 60) {
  if (degree == b.n() - 1) return hamiltonian_pair(g.hamiltonian(b, g.uniform(0, 1) == 1));
  const Space& s = b.space();
  for (int t = 0; t < attempts; ++t) {
    Form F(s, degree);
    if (degree == 0) {
      auto on_e = [](const Coordinate& cc) { return cc.kind == CoordKind::Base || cc.kind == CoordKind::Fiber; };
      F = Form::scalar(g.poly(s, 3, 1) + g.poly(s, on_e, 2, 2));
    } else {
      F = g.form(s, degree, 2);
      bool affine = true;
      for (const auto& term : F.terms()) affine = affine && term.second.total_degree() <= 1;
      if (!affine) continue;
    }
    if (F.is_zero() || is_closed(F)) continue;
    if (auto pr = find_hamiltonian_pair(b, F)) return pr;
  }
  return std::nullopt;
}

}  // namespace msymp::test
