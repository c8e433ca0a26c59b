#include "msymp/phase.hpp"

#include <stdexcept>

#include "msymp/errors.hpp"

namespace msymp {

std::vector<Coordinate> Bundle::coordinates() const {
  std::vector<Coordinate> out;
  out.reserve(dim());
  for (std::size_t k = 0; k < dim(); ++k) out.push_back(space_.coordinate(k));
  return out;
}

Bundle make_bundle(int n, int N) {
  if (n < 1 || N < 1) {
    throw std::invalid_argument("bundle dimensions must be positive (n=" + std::to_string(n) +
                                ", N=" + std::to_string(N) + ")");
  }
  return Bundle(n, N);
}

namespace {

bool is_base(const Coordinate& c) { return c.kind == CoordKind::Base; }
bool is_base_or_fiber(const Coordinate& c) { return c.kind == CoordKind::Base || c.kind == CoordKind::Fiber; }

}  // namespace

ProjectableVF make_projectable(const Bundle& b, std::vector<Poly> base, std::vector<Poly> fiber) {
  if (base.size() != static_cast<std::size_t>(b.n()) || fiber.size() != static_cast<std::size_t>(b.N())) {
    throw std::invalid_argument("projectable field needs n base and N fibre components");
  }
  for (std::size_t mu = 0; mu < base.size(); ++mu) {
    require_same_space(b.space(), base[mu].space(), "projectable field");
    if (!base[mu].depends_only_on(is_base)) {
      throw NotProjectable("base component X^" + std::to_string(mu + 1) +
                           " may depend on base coordinates only, got " + base[mu].to_string());
    }
  }
  for (std::size_t i = 0; i < fiber.size(); ++i) {
    require_same_space(b.space(), fiber[i].space(), "projectable field");
    if (!fiber[i].depends_only_on(is_base_or_fiber)) {
      throw NotProjectable("fibre component X^" + std::to_string(i + 1) +
                           " may not depend on momenta or energy, got " + fiber[i].to_string());
    }
  }
  return ProjectableVF(b, std::move(base), std::move(fiber));
}

ProjectableVF zero_projectable(const Bundle& b) {
  return make_projectable(b, std::vector<Poly>(static_cast<std::size_t>(b.n()), Poly(b.space())),
                          std::vector<Poly>(static_cast<std::size_t>(b.N()), Poly(b.space())));
}

bool ProjectableVF::is_vertical() const {
  for (const auto& c : base_) {
    if (!c.is_zero()) return false;
  }
  return true;
}

bool ProjectableVF::is_zero() const {
  if (!is_vertical()) return false;
  for (const auto& c : fiber_) {
    if (!c.is_zero()) return false;
  }
  return true;
}

MultiVector ProjectableVF::as_multivector() const {
  const Space& s = bundle_.space();
  MultiVector out(s, 1);
  for (int mu = 1; mu <= bundle_.n(); ++mu) out.add_term({static_cast<std::uint16_t>(s.base_index(mu))}, base(mu));
  for (int i = 1; i <= bundle_.N(); ++i) out.add_term({static_cast<std::uint16_t>(s.fiber_index(i))}, fiber(i));
  return out;
}

ProjectableVF operator+(const ProjectableVF& a, const ProjectableVF& b) {
  if (!(a.bundle_ == b.bundle_)) throw BundleMismatch("projectable field sum over different bundles");
  ProjectableVF out = a;
  for (std::size_t k = 0; k < out.base_.size(); ++k) out.base_[k] += b.base_[k];
  for (std::size_t k = 0; k < out.fiber_.size(); ++k) out.fiber_[k] += b.fiber_[k];
  return out;
}

ProjectableVF operator*(const Rational& c, const ProjectableVF& a) {
  ProjectableVF out = a;
  for (auto& p : out.base_) p *= c;
  for (auto& p : out.fiber_) p *= c;
  return out;
}

ProjectableVF lie_bracket(const ProjectableVF& X, const ProjectableVF& Y) {
  if (!(X.bundle() == Y.bundle())) throw BundleMismatch("lie_bracket over different bundles");
  const Bundle& b = X.bundle();
  const Space& s = b.space();
  // X(f) for a function f on E
  auto apply = [&](const ProjectableVF& V, const Poly& f) {
    Poly out(s);
    for (int mu = 1; mu <= b.n(); ++mu) out += V.base(mu) * partial(f, s.base_index(mu));
    for (int i = 1; i <= b.N(); ++i) out += V.fiber(i) * partial(f, s.fiber_index(i));
    return out;
  };
  std::vector<Poly> base;
  std::vector<Poly> fiber;
  for (int mu = 1; mu <= b.n(); ++mu) base.push_back(apply(X, Y.base(mu)) - apply(Y, X.base(mu)));
  for (int i = 1; i <= b.N(); ++i) fiber.push_back(apply(X, Y.fiber(i)) - apply(Y, X.fiber(i)));
  return make_projectable(b, std::move(base), std::move(fiber));
}

HorizontalNm1Form make_horizontal(const Bundle& b, std::vector<Poly> components) {
  if (components.size() != static_cast<std::size_t>(b.n())) {
    throw std::invalid_argument("horizontal (n-1)-form needs n components");
  }
  for (std::size_t mu = 0; mu < components.size(); ++mu) {
    require_same_space(b.space(), components[mu].space(), "horizontal form");
    if (!components[mu].depends_only_on(is_base_or_fiber)) {
      throw NotProjectable("horizontal component f_0^" + std::to_string(mu + 1) +
                           " may not depend on momenta or energy, got " + components[mu].to_string());
    }
  }
  return HorizontalNm1Form(b, std::move(components));
}

HorizontalNm1Form zero_horizontal(const Bundle& b) {
  return make_horizontal(b, std::vector<Poly>(static_cast<std::size_t>(b.n()), Poly(b.space())));
}

Form HorizontalNm1Form::pullback() const {
  Form out(bundle_.space(), bundle_.n() - 1);
  for (int mu = 1; mu <= bundle_.n(); ++mu) out += component(mu) * volume_form(bundle_, mu);
  return out;
}

// ---------------------------------------------------------------------------

Form volume_form(const Bundle& b) {
  const Space& s = b.space();
  BasisTuple t;
  for (int mu = 1; mu <= b.n(); ++mu) t.push_back(static_cast<std::uint16_t>(s.base_index(mu)));
  Form out(s, b.n());
  out.add_term(std::move(t), Poly(s, 1));
  return out;
}

namespace {

MultiVector base_vector(const Bundle& b, int mu) {
  return MultiVector::basis(b.space(), {b.space().base_index(mu)});
}

}  // namespace

Form volume_form(const Bundle& b, int mu) { return contract(base_vector(b, mu), volume_form(b)); }

Form volume_form(const Bundle& b, int mu, int nu) {
  return contract(base_vector(b, nu), contract(base_vector(b, mu), volume_form(b)));
}

Form theta(const Bundle& b) {
  const Space& s = b.space();
  Form out(s, b.n());
  for (int i = 1; i <= b.N(); ++i) {
    Form dq = Form::basis(s, {s.fiber_index(i)});
    for (int mu = 1; mu <= b.n(); ++mu) {
      out += Poly::variable(s, s.momentum_index(i, mu)) * wedge(dq, volume_form(b, mu));
    }
  }
  out += Poly::variable(s, s.energy_index()) * volume_form(b);
  return out;
}

Form omega(const Bundle& b) { return -exterior_derivative(theta(b)); }

Form omega_explicit(const Bundle& b) {
  const Space& s = b.space();
  Form out(s, b.n() + 1);
  for (int i = 1; i <= b.N(); ++i) {
    for (int mu = 1; mu <= b.n(); ++mu) {
      Form dq_dp = Form::basis(s, {s.fiber_index(i), s.momentum_index(i, mu)});
      out += wedge(dq_dp, volume_form(b, mu));
    }
  }
  out -= wedge(Form::basis(s, {s.energy_index()}), volume_form(b));
  return out;
}

MultiVector lift_jet(const ProjectableVF& X) {
  const Bundle& b = X.bundle();
  const Space& s = b.space();
  const Space js = b.jet_space();
  MultiVector out(js, 1);
  for (int mu = 1; mu <= b.n(); ++mu) {
    out.add_term({static_cast<std::uint16_t>(js.base_index(mu))}, X.base(mu).rebased(js));
  }
  for (int i = 1; i <= b.N(); ++i) {
    out.add_term({static_cast<std::uint16_t>(js.fiber_index(i))}, X.fiber(i).rebased(js));
  }
  // Prolongation: d_mu X^i + d_j X^i q^j_mu - d_mu X^nu q^i_nu along d/dq^i_mu.
  for (int i = 1; i <= b.N(); ++i) {
    for (int mu = 1; mu <= b.n(); ++mu) {
      Poly c = partial(X.fiber(i), s.base_index(mu)).rebased(js);
      for (int j = 1; j <= b.N(); ++j) {
        c += partial(X.fiber(i), s.fiber_index(j)).rebased(js) * Poly::variable(js, js.velocity_index(j, mu));
      }
      for (int nu = 1; nu <= b.n(); ++nu) {
        c -= partial(X.base(nu), s.base_index(mu)).rebased(js) * Poly::variable(js, js.velocity_index(i, nu));
      }
      out.add_term({static_cast<std::uint16_t>(js.velocity_index(i, mu))}, c);
    }
  }
  return out;
}

MultiVector lift_cojet(const ProjectableVF& X) {
  const Bundle& b = X.bundle();
  const Space& s = b.space();
  MultiVector out = X.as_multivector();
  auto p = [&](int i, int mu) { return Poly::variable(s, s.momentum_index(i, mu)); };
  const Poly energy = Poly::variable(s, s.energy_index());
  Poly divergence(s);
  for (int nu = 1; nu <= b.n(); ++nu) divergence += partial(X.base(nu), s.base_index(nu));

  for (int i = 1; i <= b.N(); ++i) {
    for (int mu = 1; mu <= b.n(); ++mu) {
      Poly c(s);
      for (int j = 1; j <= b.N(); ++j) c += partial(X.fiber(j), s.fiber_index(i)) * p(j, mu);
      for (int nu = 1; nu <= b.n(); ++nu) c -= partial(X.base(mu), s.base_index(nu)) * p(i, nu);
      c += divergence * p(i, mu);
      out.add_term({static_cast<std::uint16_t>(s.momentum_index(i, mu))}, -c);
    }
  }
  Poly ce = divergence * energy;
  for (int i = 1; i <= b.N(); ++i) {
    for (int mu = 1; mu <= b.n(); ++mu) ce += partial(X.fiber(i), s.base_index(mu)) * p(i, mu);
  }
  out.add_term({static_cast<std::uint16_t>(s.energy_index())}, -ce);
  return out;
}

Form momentum_map(const ProjectableVF& X) { return contract(lift_cojet(X), theta(X.bundle())); }

Form momentum_map_closed_form(const ProjectableVF& X) {
  const Bundle& b = X.bundle();
  const Space& s = b.space();
  auto p = [&](int i, int mu) { return Poly::variable(s, s.momentum_index(i, mu)); };
  const Poly energy = Poly::variable(s, s.energy_index());
  Form out(s, b.n() - 1);
  for (int mu = 1; mu <= b.n(); ++mu) {
    Poly c = energy * X.base(mu);
    for (int i = 1; i <= b.N(); ++i) c += p(i, mu) * X.fiber(i);
    out += c * volume_form(b, mu);
  }
  for (int i = 1; i <= b.N(); ++i) {
    Form dq = Form::basis(s, {s.fiber_index(i)});
    for (int mu = 1; mu <= b.n(); ++mu) {
      for (int nu = 1; nu <= b.n(); ++nu) {
        if (mu == nu) continue;
        Poly c = p(i, mu) * X.base(nu) - p(i, nu) * X.base(mu);
        out -= (Rational(1, 2) * c) * wedge(dq, volume_form(b, mu, nu));
      }
    }
  }
  return out;
}

std::vector<Form> contact_forms(const Bundle& b) {
  const Space js = b.jet_space();
  std::vector<Form> out;
  for (int i = 1; i <= b.N(); ++i) {
    Form c = Form::basis(js, {js.fiber_index(i)});
    for (int mu = 1; mu <= b.n(); ++mu) {
      c -= Poly::variable(js, js.velocity_index(i, mu)) * Form::basis(js, {js.base_index(mu)});
    }
    out.push_back(std::move(c));
  }
  return out;
}

bool preserves_contact_ideal(const Bundle& b, const MultiVector& V) {
  const Space js = b.jet_space();
  require_same_space(js, V.space(), "preserves_contact_ideal");
  const std::vector<Form> contact = contact_forms(b);
  for (const Form& c : contact) {
    Form residual = lie_derivative(V, c);
    const Form image = residual;
    for (int j = 1; j <= b.N(); ++j) {
      Poly coeff = image.coefficient({static_cast<std::uint16_t>(js.fiber_index(j))});
      if (!coeff.is_zero()) residual -= coeff * contact[static_cast<std::size_t>(j - 1)];
    }
    if (!residual.is_zero()) return false;
  }
  return true;
}

}  // namespace msymp
