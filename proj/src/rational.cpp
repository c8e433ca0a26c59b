#include "msymp/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace msymp {

namespace {

bool valid_integer(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rational::Rational(long numerator, long denominator) {
  if (denominator == 0) throw std::domain_error("rational with zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_integer(num) || !valid_integer(den) || den.front() == '-' || den.front() == '+') {
    throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
  }
  std::string n(num);
  if (!n.empty() && n.front() == '+') n.erase(0, 1);
  mpz_class zn(n, 10);
  mpz_class zd(std::string(den), 10);
  if (zd == 0) throw std::domain_error("rational with zero denominator");
  mpq_class q(zn, zd);
  q.canonicalize();
  return Rational(std::move(q));
}

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw std::domain_error("division by zero");
  value_ /= rhs.value_;
  return *this;
}

std::string Rational::to_string() const { return value_.get_str(10); }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

Rational pow(const Rational& base, unsigned exponent) {
  mpz_class num;
  mpz_class den;
  mpz_pow_ui(num.get_mpz_t(), base.raw().get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.raw().get_den_mpz_t(), exponent);
  return Rational(mpq_class(num, den));
}

}  // namespace msymp
