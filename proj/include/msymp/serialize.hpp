#pragma once

// Canonical text for forms and multivector fields.

#include <optional>
#include <string>

#include "msymp/bracket.hpp"

namespace msymp {

/// Terms in increasing basis-tuple order, each as "(coeff) b1^...^bk";
/// covectors dx1/dq1/dp[1,1]/dp, vectors e_x1/e_q1/e_p[1,1]/e_p; zero is "0".
std::string serialize(const Form& a);
std::string serialize(const MultiVector& X);
std::string serialize(const Poly& p);

/// f^mu d^n x_mu + 1/2 f_i^{mu nu} dq^i ^ d^n x_{mu nu} written as
/// "f^1 dnx_1 + ... + f_1^{12} dq1^dnx_1_2 + ...", one term per mu and per
/// pair mu < nu. Coefficients with one positive term are printed bare,
/// others in parentheses. nullopt when the form has terms of another shape.
std::optional<std::string> serialize_nm1(const Bundle& b, const Form& a);

}  // namespace msymp
