#include "msymp/serialize.hpp"

#include <sstream>

namespace msymp {

namespace {

template <Grading G>
std::string serialize_graded(const Graded<G>& a) {
  if (a.is_zero()) return "0";
  const Space& s = a.space();
  std::ostringstream out;
  bool first = true;
  for (const auto& [t, c] : a.terms()) {
    if (!first) out << " + ";
    first = false;
    out << '(' << c.to_string() << ')';
    for (std::size_t k = 0; k < t.size(); ++k) {
      out << (k == 0 ? ' ' : '^');
      out << (G == Grading::Form ? s.covector_name(t[k]) : s.vector_name(t[k]));
    }
  }
  return out.str();
}

std::string coefficient_text(const Poly& p) {
  std::string text = p.to_string();
  if (p.size() == 1 && text.front() != '-') return text;
  return "(" + text + ")";
}

}  // namespace

std::string serialize(const Form& a) { return serialize_graded(a); }
std::string serialize(const MultiVector& X) { return serialize_graded(X); }
std::string serialize(const Poly& p) { return p.to_string(); }

std::optional<std::string> serialize_nm1(const Bundle& b, const Form& a) {
  if (!a.is_zero() && a.degree() != b.n() - 1) return std::nullopt;
  Nm1Components comps = decompose_nm1(b, a);
  if (!comps.remainder.is_zero()) return std::nullopt;
  std::vector<std::string> terms;
  for (int mu = 1; mu <= b.n(); ++mu) {
    if (!comps.upper(mu).is_zero()) terms.push_back(coefficient_text(comps.upper(mu)) + " dnx_" + std::to_string(mu));
  }
  for (int i = 1; i <= b.N(); ++i) {
    for (int mu = 1; mu <= b.n(); ++mu) {
      for (int nu = mu + 1; nu <= b.n(); ++nu) {
        const Poly& c = comps.at(i, mu, nu);
        if (c.is_zero()) continue;
        terms.push_back(coefficient_text(c) + " dq" + std::to_string(i) + "^dnx_" + std::to_string(mu) + "_" +
                        std::to_string(nu));
      }
    }
  }
  if (terms.empty()) return "0";
  std::string out = terms.front();
  for (std::size_t k = 1; k < terms.size(); ++k) out += " + " + terms[k];
  return out;
}

}  // namespace msymp
