#include "msymp/poly.hpp"

#include <algorithm>
#include <sstream>

#include "msymp/errors.hpp"

namespace msymp {

Space::Space(SpaceKind kind, int n, int N) : kind_(kind), n_(n), N_(N) {
  if (n < 1 || N < 1) throw std::invalid_argument("space dimensions must be positive");
}

std::size_t Space::dim() const {
  auto nn = static_cast<std::size_t>(n_);
  auto NN = static_cast<std::size_t>(N_);
  return kind_ == SpaceKind::Cojet ? (NN + 1) * (nn + 1) : nn + NN + nn * NN;
}

bool Space::contains(const Coordinate& c) const {
  switch (c.kind) {
    case CoordKind::Base:
      return c.mu >= 1 && c.mu <= n_;
    case CoordKind::Fiber:
      return c.i >= 1 && c.i <= N_;
    case CoordKind::Momentum:
      return kind_ == SpaceKind::Cojet && c.i >= 1 && c.i <= N_ && c.mu >= 1 && c.mu <= n_;
    case CoordKind::Velocity:
      return kind_ == SpaceKind::Jet && c.i >= 1 && c.i <= N_ && c.mu >= 1 && c.mu <= n_;
    case CoordKind::Energy:
      return kind_ == SpaceKind::Cojet;
  }
  return false;
}

std::size_t Space::index(const Coordinate& c) const {
  if (!contains(c)) throw BundleMismatch("coordinate outside " + to_string(*this));
  auto nn = static_cast<std::size_t>(n_);
  auto NN = static_cast<std::size_t>(N_);
  switch (c.kind) {
    case CoordKind::Base:
      return static_cast<std::size_t>(c.mu - 1);
    case CoordKind::Fiber:
      return nn + static_cast<std::size_t>(c.i - 1);
    case CoordKind::Momentum:
    case CoordKind::Velocity:
      return nn + NN + static_cast<std::size_t>(c.i - 1) * nn + static_cast<std::size_t>(c.mu - 1);
    case CoordKind::Energy:
      return nn + NN + nn * NN;
  }
  return 0;
}

Coordinate Space::coordinate(std::size_t index) const {
  if (index >= dim()) throw BundleMismatch("coordinate index out of range for " + to_string(*this));
  auto nn = static_cast<std::size_t>(n_);
  auto NN = static_cast<std::size_t>(N_);
  if (index < nn) return Coordinate::base(static_cast<int>(index) + 1);
  index -= nn;
  if (index < NN) return Coordinate::fiber(static_cast<int>(index) + 1);
  index -= NN;
  if (index < nn * NN) {
    int i = static_cast<int>(index / nn) + 1;
    int mu = static_cast<int>(index % nn) + 1;
    return kind_ == SpaceKind::Cojet ? Coordinate::momentum(i, mu) : Coordinate::velocity(i, mu);
  }
  return Coordinate::energy();
}

namespace {

std::string label(const Coordinate& c) {
  switch (c.kind) {
    case CoordKind::Base:
      return "x" + std::to_string(c.mu);
    case CoordKind::Fiber:
      return "q" + std::to_string(c.i);
    case CoordKind::Momentum:
      return "p[" + std::to_string(c.i) + "," + std::to_string(c.mu) + "]";
    case CoordKind::Velocity:
      return "u[" + std::to_string(c.i) + "," + std::to_string(c.mu) + "]";
    case CoordKind::Energy:
      return "p";
  }
  return "?";
}

}  // namespace

std::string Space::variable_name(std::size_t index) const {
  Coordinate c = coordinate(index);
  return c.kind == CoordKind::Energy ? "en" : label(c);
}

std::string Space::covector_name(std::size_t index) const { return "d" + label(coordinate(index)); }

std::string Space::vector_name(std::size_t index) const { return "e_" + label(coordinate(index)); }

std::string to_string(const Space& space) {
  std::ostringstream os;
  os << (space.kind() == SpaceKind::Cojet ? "J*(E)" : "J(E)") << "(n=" << space.n() << ",N=" << space.N()
     << ")";
  return os.str();
}

void require_same_space(const Space& a, const Space& b, const char* context) {
  if (!(a == b)) {
    throw BundleMismatch(std::string(context) + ": operands over " + to_string(a) + " and " + to_string(b));
  }
}

// ---------------------------------------------------------------------------

Monomial Monomial::variable(std::size_t index, std::uint32_t exponent) {
  Monomial m;
  if (exponent > 0) m.factors_.emplace_back(static_cast<std::uint16_t>(index), exponent);
  return m;
}

std::uint32_t Monomial::degree() const {
  std::uint32_t d = 0;
  for (const auto& f : factors_) d += f.second;
  return d;
}

std::uint32_t Monomial::exponent(std::size_t index) const {
  for (const auto& f : factors_) {
    if (f.first == index) return f.second;
  }
  return 0;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.factors_.reserve(a.factors_.size() + b.factors_.size());
  auto ia = a.factors_.begin();
  auto ib = b.factors_.begin();
  while (ia != a.factors_.end() || ib != b.factors_.end()) {
    if (ib == b.factors_.end() || (ia != a.factors_.end() && ia->first < ib->first)) {
      out.factors_.push_back(*ia++);
    } else if (ia == a.factors_.end() || ib->first < ia->first) {
      out.factors_.push_back(*ib++);
    } else {
      out.factors_.emplace_back(ia->first, ia->second + ib->second);
      ++ia;
      ++ib;
    }
  }
  return out;
}

Monomial Monomial::without_one(std::size_t index) const {
  Monomial out = *this;
  for (auto it = out.factors_.begin(); it != out.factors_.end(); ++it) {
    if (it->first == index) {
      if (--it->second == 0) out.factors_.erase(it);
      return out;
    }
  }
  throw std::logic_error("Monomial::without_one: variable absent");
}

bool deglex_less(const Monomial& a, const Monomial& b) {
  auto da = a.degree();
  auto db = b.degree();
  if (da != db) return da < db;
  auto fa = a.factors();
  auto fb = b.factors();
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < fa.size() || j < fb.size()) {
    if (i < fa.size() && j < fb.size() && fa[i].first == fb[j].first) {
      if (fa[i].second != fb[j].second) return fa[i].second < fb[j].second;
      ++i;
      ++j;
    } else if (j == fb.size() || (i < fa.size() && fa[i].first < fb[j].first)) {
      // a has a positive exponent where b has zero
      return false;
    } else {
      return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------

Poly::Poly(Space space, const Rational& constant) : space_(space) {
  if (!constant.is_zero()) terms_.emplace(Monomial(), constant);
}

Poly Poly::variable(Space space, std::size_t index) {
  if (index >= space.dim()) throw BundleMismatch("variable index out of range for " + msymp::to_string(space));
  Poly p(space);
  p.terms_.emplace(Monomial::variable(index), Rational(1));
  return p;
}

Poly Poly::monomial(Space space, Monomial m, Rational coefficient) {
  Poly p(space);
  p.add_term(m, coefficient);
  return p;
}

std::optional<Rational> Poly::constant_value() const {
  if (terms_.empty()) return Rational(0);
  if (terms_.size() == 1 && terms_.begin()->first.is_one()) return terms_.begin()->second;
  return std::nullopt;
}

std::uint32_t Poly::total_degree() const {
  // Terms are sorted by descending degree.
  return terms_.empty() ? 0 : terms_.begin()->first.degree();
}

bool Poly::depends_on(std::size_t index) const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [index](const auto& t) { return t.first.exponent(index) > 0; });
}

bool Poly::depends_only_on(const std::function<bool(const Coordinate&)>& allowed) const {
  for (const auto& [m, c] : terms_) {
    for (const auto& f : m.factors()) {
      if (!allowed(space_.coordinate(f.first))) return false;
    }
  }
  return true;
}

void Poly::add_term(const Monomial& m, const Rational& coefficient) {
  if (coefficient.is_zero()) return;
  if (!m.factors().empty() && m.factors().back().first >= space_.dim()) {
    throw BundleMismatch("monomial variable outside " + msymp::to_string(space_));
  }
  auto [it, inserted] = terms_.try_emplace(m, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& t : out.terms_) t.second = -t.second;
  return out;
}

Poly& Poly::operator+=(const Poly& rhs) {
  require_same_space(space_, rhs.space_, "poly add");
  for (const auto& [m, c] : rhs.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& rhs) {
  require_same_space(space_, rhs.space_, "poly subtract");
  for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  require_same_space(a.space_, b.space_, "poly multiply");
  Poly out(a.space_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  }
  return out;
}

Poly Poly::rebased(const Space& target) const {
  Poly out(target);
  for (const auto& [m, c] : terms_) {
    Monomial mapped;
    for (const auto& f : m.factors()) {
      Coordinate coord = space_.coordinate(f.first);
      if (!target.contains(coord)) {
        throw BundleMismatch("variable " + space_.variable_name(f.first) + " has no counterpart in " +
                             msymp::to_string(target));
      }
      mapped = mapped * Monomial::variable(target.index(coord), f.second);
    }
    out.add_term(mapped, c);
  }
  return out;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational mag = c.sign() < 0 ? -c : c;
    if (first) {
      if (c.sign() < 0) os << "-";
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    if (m.is_one() || !mag.is_one()) {
      os << mag.to_string();
      wrote = true;
    }
    for (const auto& f : m.factors()) {
      if (wrote) os << "*";
      os << space_.variable_name(f.first);
      if (f.second > 1) os << "^" << f.second;
      wrote = true;
    }
  }
  return os.str();
}

Poly pow(const Poly& base, unsigned exponent) {
  Poly result(base.space(), Rational(1));
  for (unsigned k = 0; k < exponent; ++k) result = result * base;
  return result;
}

Poly partial(const Poly& a, std::size_t index) {
  if (index >= a.space().dim()) throw BundleMismatch("partial: coordinate outside " + to_string(a.space()));
  Poly out(a.space());
  for (const auto& [m, c] : a.terms()) {
    std::uint32_t e = m.exponent(index);
    if (e == 0) continue;
    out.add_term(m.without_one(index), c * Rational(static_cast<long>(e)));
  }
  return out;
}

// ---------------------------------------------------------------------------

Point::Point(Space space, std::vector<Rational> values) : space_(space), values_(std::move(values)) {
  if (values_.size() != space_.dim()) {
    throw IncompletePoint("point has " + std::to_string(values_.size()) + " values, " + msymp::to_string(space_) +
                          " needs " + std::to_string(space_.dim()));
  }
}

Point Point::from_assignments(Space space, const std::vector<std::pair<Coordinate, Rational>>& values) {
  std::vector<std::optional<Rational>> slots(space.dim());
  for (const auto& [c, v] : values) {
    auto idx = space.index(c);
    if (slots[idx]) throw std::invalid_argument("coordinate " + space.variable_name(idx) + " assigned twice");
    slots[idx] = v;
  }
  std::vector<Rational> out;
  out.reserve(slots.size());
  for (std::size_t k = 0; k < slots.size(); ++k) {
    if (!slots[k]) throw IncompletePoint("point misses coordinate " + space.variable_name(k));
    out.push_back(*slots[k]);
  }
  return Point(space, std::move(out));
}

Rational evaluate(const Poly& a, const Point& pt) {
  require_same_space(a.space(), pt.space(), "evaluate");
  Rational sum(0);
  for (const auto& [m, c] : a.terms()) {
    Rational term = c;
    for (const auto& f : m.factors()) term *= pow(pt[f.first], f.second);
    sum += term;
  }
  return sum;
}

}  // namespace msymp
