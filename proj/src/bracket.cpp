#include "msymp/bracket.hpp"

#include <map>
#include <random>
#include <stdexcept>

#include "msymp/errors.hpp"
#include "msymp/linalg.hpp"

namespace msymp {

namespace {

std::size_t flat(int n, int i, int mu, int nu) {
  return (static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(n) + static_cast<std::size_t>(mu - 1)) *
             static_cast<std::size_t>(n) +
         static_cast<std::size_t>(nu - 1);
}

/// The single (tuple, sign) of a basis-shaped form such as d^n x_mu.
std::pair<BasisTuple, int> single_term(const Form& f) {
  const auto& [t, c] = *f.terms().begin();
  return {t, c.constant_value()->sign()};
}

bool sign_odd(int e) { return ((e % 2) + 2) % 2 == 1; }

void require_generator_pair(const HamiltonianNm1Form& f, const HamiltonianNm1Form& g) {
  require_same_space(f.bundle().space(), g.bundle().space(), "bracket_coords");
  if (!f.generators() || !g.generators()) {
    throw std::invalid_argument("bracket_coords needs forms built from generator triples");
  }
  if (!f.generators()->closed.is_zero() || !g.generators()->closed.is_zero()) {
    throw std::invalid_argument("bracket_coords needs generator triples with zero closed part");
  }
}

}  // namespace

const Poly& Nm1Components::at(int i, int mu, int nu) const { return f_dq.at(flat(n, i, mu, nu)); }

Nm1Components decompose_nm1(const Bundle& b, const Form& a) {
  require_same_space(b.space(), a.space(), "decompose_nm1");
  const Space& s = b.space();
  const int n = b.n();
  const int N = b.N();
  if (!a.is_zero() && a.degree() != n - 1) {
    throw std::invalid_argument("expected an (n-1)-form, got degree " + std::to_string(a.degree()));
  }
  Nm1Components out{n, N, std::vector<Poly>(static_cast<std::size_t>(n), Poly(s)),
                    std::vector<Poly>(static_cast<std::size_t>(N * n * n), Poly(s)), Form(s, n - 1)};

  struct Slot {
    int mu;
    int nu;  // 0 for d^n x_mu
    int i;
    int sign;
  };
  std::map<BasisTuple, Slot> shapes;
  for (int mu = 1; mu <= n; ++mu) {
    auto [t, sign] = single_term(volume_form(b, mu));
    shapes.emplace(t, Slot{mu, 0, 0, sign});
  }
  for (int i = 1; i <= N; ++i) {
    Form dq = Form::basis(s, {s.fiber_index(i)});
    for (int mu = 1; mu <= n; ++mu) {
      for (int nu = mu + 1; nu <= n; ++nu) {
        auto [t, sign] = single_term(wedge(dq, volume_form(b, mu, nu)));
        shapes.emplace(t, Slot{mu, nu, i, sign});
      }
    }
  }

  for (const auto& [t, c] : a.terms()) {
    auto it = shapes.find(t);
    if (it == shapes.end()) {
      out.remainder.add_term(t, c);
      continue;
    }
    const Slot& slot = it->second;
    Poly value = slot.sign > 0 ? c : -c;
    if (slot.nu == 0) {
      out.f[static_cast<std::size_t>(slot.mu - 1)] = value;
    } else {
      // 1/2 (f^{mu nu} B_{mu nu} + f^{nu mu} B_{nu mu}) = f^{mu nu} B_{mu nu}
      out.f_dq[flat(n, slot.i, slot.mu, slot.nu)] = value;
      out.f_dq[flat(n, slot.i, slot.nu, slot.mu)] = -value;
    }
  }
  return out;
}

MultiVector field_from_components(const Bundle& b, const Nm1Components& comps) {
  const Space& s = b.space();
  const int n = b.n();
  MultiVector X(s, 1);
  auto add = [&](std::size_t index, const Poly& c) { X.add_term({static_cast<std::uint16_t>(index)}, c); };
  const std::size_t e = s.energy_index();

  for (int mu = 1; mu <= n; ++mu) add(s.base_index(mu), partial(comps.upper(mu), e));
  const Rational inv_n(1, n);
  for (int i = 1; i <= b.N(); ++i) {
    Poly c(s);
    for (int mu = 1; mu <= n; ++mu) c += partial(comps.upper(mu), s.momentum_index(i, mu));
    add(s.fiber_index(i), inv_n * c);
  }
  for (int i = 1; i <= b.N(); ++i) {
    for (int mu = 1; mu <= n; ++mu) {
      Poly c = partial(comps.upper(mu), s.fiber_index(i));
      for (int nu = 1; nu <= n; ++nu) c -= partial(comps.at(i, mu, nu), s.base_index(nu));
      add(s.momentum_index(i, mu), -c);
    }
  }
  Poly div(s);
  for (int mu = 1; mu <= n; ++mu) div += partial(comps.upper(mu), s.base_index(mu));
  add(e, -div);
  return X;
}

MultiVector field_from_generators(const ProjectableVF& X, const HorizontalNm1Form& f0) {
  const Bundle& b = X.bundle();
  const Space& s = b.space();
  const int n = b.n();
  auto p = [&](int i, int mu) { return Poly::variable(s, s.momentum_index(i, mu)); };
  const Poly energy = Poly::variable(s, s.energy_index());
  MultiVector out = X.as_multivector();
  Poly div(s);
  for (int nu = 1; nu <= n; ++nu) div += partial(X.base(nu), s.base_index(nu));

  for (int i = 1; i <= b.N(); ++i) {
    const std::size_t qi = s.fiber_index(i);
    for (int mu = 1; mu <= n; ++mu) {
      Poly c = div * p(i, mu) + partial(X.base(mu), qi) * energy + partial(f0.component(mu), qi);
      for (int j = 1; j <= b.N(); ++j) c += partial(X.fiber(j), qi) * p(j, mu);
      for (int nu = 1; nu <= n; ++nu) c -= partial(X.base(mu), s.base_index(nu)) * p(i, nu);
      out.add_term({static_cast<std::uint16_t>(s.momentum_index(i, mu))}, -c);
    }
  }
  Poly ce = div * energy;
  for (int mu = 1; mu <= n; ++mu) {
    const std::size_t xm = s.base_index(mu);
    for (int i = 1; i <= b.N(); ++i) ce += partial(X.fiber(i), xm) * p(i, mu);
    ce += partial(f0.component(mu), xm);
  }
  out.add_term({static_cast<std::uint16_t>(s.energy_index())}, -ce);
  return out;
}

std::optional<MultiVector> solve_hamiltonian_field(const Bundle& b, const Form& target, int r) {
  require_same_space(b.space(), target.space(), "solve_hamiltonian_field");
  const Space& s = b.space();
  const int out_degree = b.n() + 1 - r;
  if (r < 0 || out_degree < 0) throw std::invalid_argument("multivector degree out of range");
  if (target.is_zero()) return MultiVector(s, r);
  if (target.degree() != out_degree) return std::nullopt;

  const Form w = omega(b);
  auto cols = basis_tuples(s.dim(), r);
  auto rows = basis_tuples(s.dim(), out_degree);
  std::map<BasisTuple, std::size_t> row_index;
  for (std::size_t k = 0; k < rows.size(); ++k) row_index.emplace(rows[k], k);

  // Transposed contraction matrix: entry (column, row).
  linalg::Matrix mt(cols.size(), rows.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    MultiVector e(s, r);
    e.add_term(cols[c], Poly(s, 1));
    const Form image = contract(e, w);
    for (const auto& [t, coeff] : image.terms()) mt(c, row_index.at(t)) = *coeff.constant_value();
  }
  // Pivot columns of the transpose are independent rows of the system.
  const auto independent_rows = linalg::row_reduce(mt).pivots;

  linalg::Matrix sub(independent_rows.size(), cols.size());
  std::vector<Poly> rhs;
  rhs.reserve(independent_rows.size());
  for (std::size_t k = 0; k < independent_rows.size(); ++k) {
    const std::size_t row = independent_rows[k];
    for (std::size_t c = 0; c < cols.size(); ++c) sub(k, c) = mt(c, row);
    rhs.push_back(target.coefficient(rows[row]));
  }
  const auto ech = linalg::row_reduce(sub);

  MultiVector Z(s, r);
  for (std::size_t k = 0; k < ech.pivots.size(); ++k) {
    Poly value(s);
    for (std::size_t j = 0; j < rhs.size(); ++j) {
      if (!ech.transform(k, j).is_zero()) value += ech.transform(k, j) * rhs[j];
    }
    Z.add_term(cols[ech.pivots[k]], value);
  }
  if (contract(Z, w) == target) return Z;
  return std::nullopt;
}

MultiVector hamiltonian_vf(const Bundle& b, const Form& f) {
  const Form df = exterior_derivative(f);
  const Form w = omega(b);
  MultiVector candidate = field_from_components(b, decompose_nm1(b, f));
  if (contract(candidate, w) == df) return candidate;
  if (auto solved = solve_hamiltonian_field(b, df, 1)) return *solved;
  throw NotHamiltonian("no vector field X satisfies i_X omega = df");
}

HamiltonianNm1Form build_hamiltonian_form(const ProjectableVF& X, const HorizontalNm1Form& f0, const Form& c) {
  const Bundle& b = X.bundle();
  if (!(f0.bundle() == b)) throw BundleMismatch("generator triple over different bundles");
  require_same_space(b.space(), c.space(), "build_hamiltonian_form");
  if (!c.is_zero() && c.degree() != b.n() - 1) {
    throw std::invalid_argument("closed contribution must have degree n-1, got " + std::to_string(c.degree()));
  }
  if (!is_closed(c)) throw std::invalid_argument("third contribution is not closed");

  Form f = momentum_map(X) + f0.pullback() + c;
  MultiVector field = field_from_generators(X, f0);
  if (!(contract(field, omega(b)) == exterior_derivative(f))) {
    throw InternalInconsistency("generator field fails i_X omega = df");
  }
  Nm1Components comps = decompose_nm1(b, f);
  return HamiltonianNm1Form(b, std::move(f), std::move(field), std::move(comps), Generators{X, f0, c});
}

HamiltonianNm1Form as_hamiltonian(const Bundle& b, const Form& a) {
  MultiVector field = hamiltonian_vf(b, a);
  return HamiltonianNm1Form(b, a, std::move(field), decompose_nm1(b, a), std::nullopt);
}

HamiltonianPair hamiltonian_pair(const Bundle& b, Form form, MultiVector field) {
  bool ok = contract(field, omega(b)) == exterior_derivative(form);
  return HamiltonianPair{std::move(form), std::move(field), ok};
}

HamiltonianPair hamiltonian_pair(const HamiltonianNm1Form& f) { return {f.form(), f.field(), true}; }

std::optional<HamiltonianPair> find_hamiltonian_pair(const Bundle& b, const Form& form) {
  const int r = b.n() - form.degree();
  if (r < 0) return std::nullopt;
  auto field = solve_hamiltonian_field(b, exterior_derivative(form), r);
  if (!field) return std::nullopt;
  return HamiltonianPair{form, std::move(*field), true};
}

HamiltonianDecision decide_hamiltonian(const Bundle& b, const Form& a) {
  const Form da = exterior_derivative(a);
  const Form w = omega(b);
  MultiVector candidate = field_from_components(b, decompose_nm1(b, a));
  Form residual = contract(candidate, w) - da;
  if (residual.is_zero()) return HamiltonianPair{a, std::move(candidate), true};
  if (auto solved = solve_hamiltonian_field(b, da, 1)) return HamiltonianPair{a, std::move(*solved), true};
  return NotHamiltonianVerdict{std::move(residual)};
}

Form bracket_naive(const HamiltonianNm1Form& f, const HamiltonianNm1Form& g) {
  require_same_space(f.bundle().space(), g.bundle().space(), "bracket_naive");
  return contract(g.field(), contract(f.field(), omega(f.bundle())));
}

BracketResult bracket(const HamiltonianNm1Form& f, const HamiltonianNm1Form& g) {
  require_same_space(f.bundle().space(), g.bundle().space(), "bracket");
  const Bundle& b = f.bundle();
  const MultiVector& Xf = f.field();
  const MultiVector& Xg = g.field();
  Form naive = contract(Xg, contract(Xf, omega(b)));
  Form primitive = contract(Xg, f.form()) - contract(Xf, g.form()) - contract(Xg, contract(Xf, theta(b)));
  Form correction = exterior_derivative(primitive);
  Form value = naive + correction;
  return BracketResult{std::move(value), std::move(naive), std::move(correction), std::move(primitive)};
}

Form bracket_coords(const HamiltonianNm1Form& f, const HamiltonianNm1Form& g) {
  require_generator_pair(f, g);
  const Bundle& b = f.bundle();
  const Space& s = b.space();
  const int n = b.n();
  const int N = b.N();
  const ProjectableVF& X = f.generators()->field;
  const ProjectableVF& Y = g.generators()->field;
  const HorizontalNm1Form& f0 = f.generators()->horizontal;
  const HorizontalNm1Form& g0 = g.generators()->horizontal;
  const Poly energy = Poly::variable(s, s.energy_index());
  auto p = [&](int i, int mu) { return Poly::variable(s, s.momentum_index(i, mu)); };
  auto x = [&](int mu) { return s.base_index(mu); };
  auto q = [&](int i) { return s.fiber_index(i); };

  // Z = [X, Y] on E
  auto along = [&](const ProjectableVF& V, const Poly& a) {
    Poly c(s);
    for (int nu = 1; nu <= n; ++nu) c += V.base(nu) * partial(a, x(nu));
    for (int j = 1; j <= N; ++j) c += V.fiber(j) * partial(a, q(j));
    return c;
  };
  std::vector<Poly> zb;
  std::vector<Poly> zf;
  for (int mu = 1; mu <= n; ++mu) zb.push_back(along(X, Y.base(mu)) - along(Y, X.base(mu)));
  for (int i = 1; i <= N; ++i) zf.push_back(along(X, Y.fiber(i)) - along(Y, X.fiber(i)));
  auto z = [&](int mu) -> const Poly& { return zb[static_cast<std::size_t>(mu - 1)]; };

  // (L_V h)^mu for a horizontal h = h^mu d^n x_mu
  auto lie_horizontal = [&](const ProjectableVF& V, const HorizontalNm1Form& h, int mu) {
    Poly c = along(V, h.component(mu));
    for (int nu = 1; nu <= n; ++nu) {
      c += h.component(mu) * partial(V.base(nu), x(nu)) - h.component(nu) * partial(V.base(mu), x(nu));
    }
    return c;
  };

  // {f, g} = -J([X, Y]) - L_X g0 + L_Y f0
  Form out(s, n - 1);
  for (int mu = 1; mu <= n; ++mu) {
    Poly c = -(energy * z(mu)) - lie_horizontal(X, g0, mu) + lie_horizontal(Y, f0, mu);
    for (int i = 1; i <= N; ++i) c -= p(i, mu) * zf[static_cast<std::size_t>(i - 1)];
    out += c * volume_form(b, mu);
  }
  for (int i = 1; i <= N; ++i) {
    Form dq = Form::basis(s, {q(i)});
    for (int mu = 1; mu <= n; ++mu) {
      for (int nu = mu + 1; nu <= n; ++nu) {
        out += (p(i, mu) * z(nu) - p(i, nu) * z(mu)) * wedge(dq, volume_form(b, mu, nu));
      }
    }
  }
  return out;
}

Form bracket_coords_printed(const HamiltonianNm1Form& f, const HamiltonianNm1Form& g) {
  require_generator_pair(f, g);
  const Bundle& b = f.bundle();
  const Space& s = b.space();
  const int n = b.n();
  const int N = b.N();
  const ProjectableVF& X = f.generators()->field;
  const ProjectableVF& Y = g.generators()->field;
  const Poly energy = Poly::variable(s, s.energy_index());
  auto p = [&](int i, int mu) { return Poly::variable(s, s.momentum_index(i, mu)); };
  auto x = [&](int mu) { return s.base_index(mu); };
  auto q = [&](int i) { return s.fiber_index(i); };

  // f^mu = p_i^mu X^i + p X^mu + f_0^mu
  auto upper = [&](const ProjectableVF& V, const HorizontalNm1Form& h, int mu) {
    Poly c = energy * V.base(mu) + h.component(mu);
    for (int i = 1; i <= N; ++i) c += p(i, mu) * V.fiber(i);
    return c;
  };
  std::vector<Poly> fu;
  std::vector<Poly> gu;
  for (int mu = 1; mu <= n; ++mu) {
    fu.push_back(upper(X, f.generators()->horizontal, mu));
    gu.push_back(upper(Y, g.generators()->horizontal, mu));
  }
  Poly divX(s);
  Poly divY(s);
  for (int nu = 1; nu <= n; ++nu) {
    divX += partial(X.base(nu), x(nu));
    divY += partial(Y.base(nu), x(nu));
  }

  Form out(s, n - 1);
  for (int mu = 1; mu <= n; ++mu) {
    const Poly& fm = fu[static_cast<std::size_t>(mu - 1)];
    const Poly& gm = gu[static_cast<std::size_t>(mu - 1)];
    Poly c = divX * gm - fm * divY;
    for (int i = 1; i <= N; ++i) c += partial(fm, q(i)) * Y.fiber(i) - X.fiber(i) * partial(gm, q(i));
    out += c * volume_form(b, mu);
  }
  for (int i = 1; i <= N; ++i) {
    Form dq = Form::basis(s, {q(i)});
    for (int mu = 1; mu <= n; ++mu) {
      const Poly& fm = fu[static_cast<std::size_t>(mu - 1)];
      const Poly& gm = gu[static_cast<std::size_t>(mu - 1)];
      for (int nu = 1; nu <= n; ++nu) {
        if (mu == nu) continue;
        Poly c = partial(X.base(nu), q(i)) * gm - fm * partial(Y.base(nu), q(i));
        Poly transport(s);
        for (int rho = 1; rho <= n; ++rho) {
          transport += partial(X.base(nu), x(rho)) * Y.base(rho) - X.base(rho) * partial(Y.base(nu), x(rho));
        }
        c += p(i, mu) * transport;
        c -= energy * (partial(X.base(nu), q(i)) * Y.base(mu) - X.base(mu) * partial(Y.base(nu), q(i)));
        out -= c * wedge(dq, volume_form(b, mu, nu));
      }
    }
  }
  return out;
}

Form jacobi_sum(const HamiltonianNm1Form& f, const HamiltonianNm1Form& g, const HamiltonianNm1Form& h) {
  const Bundle& b = f.bundle();
  auto nested = [&](const HamiltonianNm1Form& a, const HamiltonianNm1Form& c, const HamiltonianNm1Form& d) {
    return bracket(a, as_hamiltonian(b, bracket(c, d).value)).value;
  };
  return nested(f, g, h) + nested(g, h, f) + nested(h, f, g);
}

Form naive_jacobi_sum(const HamiltonianNm1Form& f, const HamiltonianNm1Form& g, const HamiltonianNm1Form& h) {
  const Bundle& b = f.bundle();
  auto nested = [&](const HamiltonianNm1Form& a, const HamiltonianNm1Form& c, const HamiltonianNm1Form& d) {
    return bracket_naive(a, as_hamiltonian(b, bracket_naive(c, d)));
  };
  return nested(f, g, h) + nested(g, h, f) + nested(h, f, g);
}

Form jacobi_defect(const HamiltonianNm1Form& f, const HamiltonianNm1Form& g, const HamiltonianNm1Form& h) {
  const Bundle& b = f.bundle();
  Form triple = contract(wedge(wedge(f.field(), g.field()), h.field()), omega(b));
  Form defect = exterior_derivative(triple);
  if (!(defect == naive_jacobi_sum(f, g, h))) {
    throw InternalInconsistency("naive Jacobi sum differs from d(i_{Xf^Xg^Xh} omega)");
  }
  return defect;
}

GradedBracketResult graded_bracket(const Bundle& b, const HamiltonianPair& F, const HamiltonianPair& G) {
  if (!F.certified || !G.certified) throw std::invalid_argument("graded_bracket needs certified Hamiltonian pairs");
  const int r = F.field.degree();
  const int s = G.field.degree();
  const bool sym_odd = sign_odd((r - 1) * (s - 1));
  const bool theta_odd = sign_odd(s - 1);
  const Form th = theta(b);
  const Form w = omega(b);
  auto signed_by = [](Form a, bool odd) { return odd ? -a : a; };

  Form lie_form = signed_by(lie_derivative(G.field, F.form), sym_odd) - lie_derivative(F.field, G.form) +
                  signed_by(lie_derivative(wedge(G.field, F.field), th), theta_odd);

  Form primitive = signed_by(contract(G.field, F.form), sym_odd) - contract(F.field, G.form) +
                   signed_by(contract(F.field, contract(G.field, th)), theta_odd);
  Form contraction_form = signed_by(contract(F.field, contract(G.field, w)), sign_odd(r)) +
                          exterior_derivative(primitive);
  bool consistent = lie_form == contraction_form;
  return GradedBracketResult{std::move(lie_form), std::move(contraction_form), consistent};
}

HamiltonianPair graded_bracket_pair(const Bundle& b, const HamiltonianPair& F, const HamiltonianPair& G) {
  GradedBracketResult r = graded_bracket(b, F, G);
  if (!r.consistent) throw InternalInconsistency("graded bracket expressions disagree");
  return hamiltonian_pair(b, std::move(r.value), -schouten(F.field, G.field));
}

Form graded_jacobi_sum(const Bundle& b, const HamiltonianPair& F, const HamiltonianPair& G, const HamiltonianPair& H) {
  const HamiltonianPair* args[3] = {&F, &G, &H};
  Form sum(b.space(), 0);
  bool first = true;
  for (int c = 0; c < 3; ++c) {
    const HamiltonianPair& A = *args[c];
    const HamiltonianPair& B = *args[(c + 1) % 3];
    const HamiltonianPair& C = *args[(c + 2) % 3];
    HamiltonianPair inner = graded_bracket_pair(b, B, C);
    if (!inner.certified) throw InternalInconsistency("inner graded bracket is not certified");
    Form term = graded_bracket(b, A, inner).value;
    if (sign_odd((A.field.degree() - 1) * (C.field.degree() - 1))) term = -term;
    if (first) {
      sum = std::move(term);
      first = false;
    } else {
      sum += term;
    }
  }
  return sum;
}

PoissonVerdict is_poisson_form(const Bundle& b, const Form& F, const std::vector<Point>& points) {
  if (points.empty()) throw std::invalid_argument("is_poisson_form needs at least one point");
  const Form w = omega(b);
  for (const auto& pt : points) {
    const Form at = evaluate_at(F, pt);
    if (at.is_zero()) continue;
    for (int r = 1; r <= std::min(b.n(), F.degree()); ++r) {
      for (const auto& z : kernel_at_point(w, r, pt).basis) {
        if (!contract(z, at).is_zero()) return PoissonVerdict{false, PoissonVerdict::Counterexample{pt, z}};
      }
    }
  }
  return PoissonVerdict{true, std::nullopt};
}

std::vector<Point> sample_points(const Bundle& b, std::size_t count, unsigned seed) {
  std::mt19937 rng(seed);
  std::vector<Point> out;
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<Rational> values;
    for (std::size_t v = 0; v < b.dim(); ++v) values.emplace_back(static_cast<long>(rng() % 7) - 3);
    out.emplace_back(b.space(), std::move(values));
  }
  return out;
}

}  // namespace msymp
