#include "msymp/exterior.hpp"

#include <algorithm>
#include <stdexcept>

#include "msymp/errors.hpp"
#include "msymp/linalg.hpp"

namespace msymp {

int sort_with_sign(BasisTuple& indices) {
  int sign = 1;
  for (std::size_t i = 1; i < indices.size(); ++i) {
    for (std::size_t j = i; j > 0 && indices[j - 1] >= indices[j]; --j) {
      if (indices[j - 1] == indices[j]) return 0;
      std::swap(indices[j - 1], indices[j]);
      sign = -sign;
    }
  }
  return sign;
}

template <Grading G>
Graded<G> Graded<G>::scalar(const Poly& p) {
  Graded out(p.space(), 0);
  if (!p.is_zero()) out.terms_.emplace(BasisTuple{}, p);
  return out;
}

template <Grading G>
Graded<G> Graded<G>::basis(Space space, std::initializer_list<std::size_t> indices, const Poly& coefficient) {
  Graded out(space, static_cast<int>(indices.size()));
  BasisTuple t;
  for (auto i : indices) t.push_back(static_cast<std::uint16_t>(i));
  out.add_term(std::move(t), coefficient);
  return out;
}

template <Grading G>
Graded<G> Graded<G>::basis(Space space, std::initializer_list<std::size_t> indices) {
  return basis(space, indices, Poly(space, 1));
}

template <Grading G>
Poly Graded<G>::coefficient(const BasisTuple& sorted) const {
  auto it = terms_.find(sorted);
  return it == terms_.end() ? Poly(space_) : it->second;
}

template <Grading G>
void Graded<G>::add_term(BasisTuple indices, const Poly& coefficient) {
  if (static_cast<int>(indices.size()) != degree_) {
    throw std::invalid_argument("basis tuple length " + std::to_string(indices.size()) +
                                " does not match degree " + std::to_string(degree_));
  }
  require_same_space(space_, coefficient.space(), "exterior term");
  if (coefficient.is_zero()) return;
  for (auto i : indices) {
    if (i >= space_.dim()) throw BundleMismatch("basis index outside " + to_string(space_));
  }
  int sign = sort_with_sign(indices);
  if (sign == 0) return;
  auto it = terms_.find(indices);
  if (it == terms_.end()) {
    terms_.emplace(std::move(indices), sign > 0 ? coefficient : -coefficient);
    return;
  }
  if (sign > 0) {
    it->second += coefficient;
  } else {
    it->second -= coefficient;
  }
  if (it->second.is_zero()) terms_.erase(it);
}

template <Grading G>
void Graded<G>::check_compatible(const Graded& rhs, const char* context) const {
  require_same_space(space_, rhs.space_, context);
  if (degree_ != rhs.degree_ && !terms_.empty() && !rhs.terms_.empty()) {
    throw std::invalid_argument(std::string(context) + ": degree " + std::to_string(degree_) + " vs " +
                                std::to_string(rhs.degree_));
  }
}

template <Grading G>
Graded<G> Graded<G>::operator-() const {
  Graded out = *this;
  for (auto& t : out.terms_) t.second = -t.second;
  return out;
}

template <Grading G>
Graded<G>& Graded<G>::operator+=(const Graded& rhs) {
  check_compatible(rhs, "exterior add");
  if (terms_.empty()) degree_ = rhs.degree_;
  for (const auto& [t, c] : rhs.terms_) {
    auto it = terms_.find(t);
    if (it == terms_.end()) {
      terms_.emplace(t, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

template <Grading G>
Graded<G>& Graded<G>::operator-=(const Graded& rhs) {
  return *this += -rhs;
}

template <Grading G>
Graded<G>& Graded<G>::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

template <Grading G>
Graded<G>& Graded<G>::operator*=(const Poly& c) {
  require_same_space(space_, c.space(), "exterior scale");
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second = it->second * c;
    it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
  }
  return *this;
}

template class Graded<Grading::Form>;
template class Graded<Grading::MultiVector>;

namespace {

/// Sign of concatenating two sorted disjoint tuples into sorted order, or 0
/// when they share an index. The merged tuple is written to `out`.
int merge_sign(const BasisTuple& a, const BasisTuple& b, BasisTuple& out) {
  out.clear();
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t inversions = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i] < b[j])) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j] < a[i]) {
      inversions += a.size() - i;
      out.push_back(b[j++]);
    } else {
      return 0;
    }
  }
  return inversions % 2 == 0 ? 1 : -1;
}

template <Grading G>
Graded<G> wedge_impl(const Graded<G>& a, const Graded<G>& b) {
  require_same_space(a.space(), b.space(), "wedge");
  Graded<G> out(a.space(), a.degree() + b.degree());
  BasisTuple merged;
  for (const auto& [ta, ca] : a.terms()) {
    for (const auto& [tb, cb] : b.terms()) {
      int sign = merge_sign(ta, tb, merged);
      if (sign == 0) continue;
      Poly c = ca * cb;
      if (sign < 0) c = -c;
      out.add_term(merged, c);
    }
  }
  return out;
}

/// Removes `index` from the sorted tuple; returns (-1)^position, or 0 if absent.
int remove_with_sign(BasisTuple& t, std::uint16_t index) {
  auto it = std::lower_bound(t.begin(), t.end(), index);
  if (it == t.end() || *it != index) return 0;
  auto pos = static_cast<std::size_t>(it - t.begin());
  t.erase(it);
  return pos % 2 == 0 ? 1 : -1;
}

}  // namespace

Form wedge(const Form& a, const Form& b) { return wedge_impl(a, b); }
MultiVector wedge(const MultiVector& a, const MultiVector& b) { return wedge_impl(a, b); }

Form exterior_derivative(const Form& a) {
  const Space& s = a.space();
  Form out(s, a.degree() + 1);
  for (const auto& [t, c] : a.terms()) {
    for (std::size_t v = 0; v < s.dim(); ++v) {
      if (std::binary_search(t.begin(), t.end(), static_cast<std::uint16_t>(v))) continue;
      Poly dc = partial(c, v);
      if (dc.is_zero()) continue;
      BasisTuple nt;
      nt.reserve(t.size() + 1);
      nt.push_back(static_cast<std::uint16_t>(v));
      nt.insert(nt.end(), t.begin(), t.end());
      out.add_term(std::move(nt), dc);
    }
  }
  return out;
}

Form contract(const MultiVector& X, const Form& a, ContractionOrder order) {
  require_same_space(X.space(), a.space(), "contract");
  const int result_degree = a.degree() - X.degree();
  Form out(a.space(), std::max(result_degree, 0));
  if (result_degree < 0) return out;
  for (const auto& [tx, cx] : X.terms()) {
    for (const auto& [ta, ca] : a.terms()) {
      BasisTuple rest = ta;
      int sign = 1;
      auto step = [&](std::uint16_t idx) {
        if (sign != 0) sign *= remove_with_sign(rest, idx);
      };
      if (order == ContractionOrder::FirstFactorFirst) {
        for (auto it = tx.begin(); it != tx.end(); ++it) step(*it);
      } else {
        for (auto it = tx.rbegin(); it != tx.rend(); ++it) step(*it);
      }
      if (sign == 0) continue;
      Poly c = cx * ca;
      if (sign < 0) c = -c;
      out.add_term(std::move(rest), c);
    }
  }
  return out;
}

Form lie_derivative(const MultiVector& X, const Form& a) {
  Form first = exterior_derivative(contract(X, a));
  Form second = contract(X, exterior_derivative(a));
  const int result_degree = a.degree() - X.degree() + 1;
  Form out(a.space(), std::max(result_degree, 0));
  out += first;
  if (X.degree() % 2 == 0) {
    out -= second;
  } else {
    out += second;
  }
  return out;
}

MultiVector schouten(const MultiVector& X, const MultiVector& Y) {
  require_same_space(X.space(), Y.space(), "schouten");
  const Space& s = X.space();
  const int p = X.degree();
  const int q = Y.degree();
  MultiVector out(s, std::max(p + q - 1, 0));
  if (p + q - 1 < 0) return out;
  const bool swap_negative = ((p - 1) * (q - 1)) % 2 == 0;  // -(-1)^{(p-1)(q-1)} = -1

  // (A d<-/dzeta_a) ^ (d/dx^a B) summed over a, scaled by `factor`.
  auto accumulate = [&](const MultiVector& A, const MultiVector& B, int factor) {
    const int r = A.degree();
    BasisTuple merged;
    for (const auto& [ta, ca] : A.terms()) {
      for (std::size_t k = 0; k < ta.size(); ++k) {
        const std::uint16_t a = ta[k];
        BasisTuple reduced = ta;
        reduced.erase(reduced.begin() + static_cast<std::ptrdiff_t>(k));
        // zeta_I = (-1)^{r-1-k} zeta_{I\a} zeta_a
        int sign = ((r - 1 - static_cast<int>(k)) % 2 == 0) ? factor : -factor;
        for (const auto& [tb, cb] : B.terms()) {
          Poly db = partial(cb, a);
          if (db.is_zero()) continue;
          int msign = merge_sign(reduced, tb, merged);
          if (msign == 0) continue;
          Poly c = ca * db;
          if (sign * msign < 0) c = -c;
          out.add_term(merged, c);
        }
      }
    }
  };
  accumulate(X, Y, 1);
  accumulate(Y, X, swap_negative ? -1 : 1);
  return out;
}


bool is_closed(const Form& a) { return exterior_derivative(a).is_zero(); }

namespace {

template <Grading G>
Graded<G> evaluate_impl(const Graded<G>& a, const Point& pt) {
  require_same_space(a.space(), pt.space(), "evaluate_at");
  Graded<G> out(a.space(), a.degree());
  for (const auto& [t, c] : a.terms()) out.add_term(t, Poly(a.space(), evaluate(c, pt)));
  return out;
}

}  // namespace

Form evaluate_at(const Form& a, const Point& pt) { return evaluate_impl(a, pt); }
MultiVector evaluate_at(const MultiVector& X, const Point& pt) { return evaluate_impl(X, pt); }

std::vector<BasisTuple> basis_tuples(std::size_t dim, int k) {
  std::vector<BasisTuple> out;
  if (k < 0 || static_cast<std::size_t>(k) > dim) return out;
  BasisTuple t(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) t[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(i);
  while (true) {
    out.push_back(t);
    int i = k - 1;
    while (i >= 0 && t[static_cast<std::size_t>(i)] == dim - static_cast<std::size_t>(k - i)) --i;
    if (i < 0) break;
    ++t[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) t[static_cast<std::size_t>(j)] = t[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

KernelBasis kernel_at_point(const Form& a, int r, const Point& pt) {
  require_same_space(a.space(), pt.space(), "kernel_at_point");
  if (r < 0 || r > a.degree()) throw std::invalid_argument("kernel_at_point: degree out of range");
  const Space& s = a.space();
  Form at = evaluate_at(a, pt);
  auto columns = basis_tuples(s.dim(), r);
  auto rows = basis_tuples(s.dim(), a.degree() - r);
  std::map<BasisTuple, std::size_t> row_index;
  for (std::size_t i = 0; i < rows.size(); ++i) row_index.emplace(rows[i], i);

  linalg::Matrix m(rows.size(), columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    MultiVector e(s, r);
    e.add_term(columns[c], Poly(s, 1));
    const Form image = contract(e, at);
    for (const auto& [t, coeff] : image.terms()) {
      m(row_index.at(t), c) = *coeff.constant_value();
    }
  }
  KernelBasis out{pt, r, {}};
  for (const auto& z : linalg::nullspace(m)) {
    MultiVector v(s, r);
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (!z[c].is_zero()) v.add_term(columns[c], Poly(s, z[c]));
    }
    out.basis.push_back(std::move(v));
  }
  return out;
}

}  // namespace msymp
