#pragma once

// Hamiltonian (n-1)-forms on J*(E), their Hamiltonian vector fields and the
// Poisson brackets between them; Hamiltonian pairs of arbitrary degree and
// the graded bracket for Poisson forms.

#include <optional>
#include <variant>
#include <vector>

#include "msymp/phase.hpp"

namespace msymp {

/// Coefficients of an (n-1)-form in the shape
///   f = f^mu d^n x_mu + 1/2 f_i^{mu nu} dq^i ^ d^n x_{mu nu}
/// plus whatever terms do not fit that shape.
struct Nm1Components {
  int n = 0;
  int N = 0;
  std::vector<Poly> f;     ///< f^mu, mu = 1..n
  std::vector<Poly> f_dq;  ///< f_i^{mu nu}, flattened; see at()
  Form remainder;          ///< terms of any other shape

  const Poly& upper(int mu) const { return f.at(static_cast<std::size_t>(mu - 1)); }
  const Poly& at(int i, int mu, int nu) const;
};

Nm1Components decompose_nm1(const Bundle& b, const Form& a);

/// The three contributions of the structure theorem: the Noether current of a
/// projectable field, the pull-back of a horizontal form, and a closed form.
struct Generators {
  ProjectableVF field;
  HorizontalNm1Form horizontal;
  Form closed;
};

/// An (n-1)-form f together with its certified Hamiltonian vector field X_f
/// (i_{X_f} omega = df, checked exactly at construction).
class HamiltonianNm1Form {
 public:
  const Bundle& bundle() const { return bundle_; }
  const Form& form() const { return form_; }
  const MultiVector& field() const { return field_; }
  const Nm1Components& components() const { return components_; }
  const std::optional<Generators>& generators() const { return generators_; }

 private:
  friend HamiltonianNm1Form build_hamiltonian_form(const ProjectableVF&, const HorizontalNm1Form&, const Form&);
  friend HamiltonianNm1Form as_hamiltonian(const Bundle&, const Form&);
  HamiltonianNm1Form(Bundle b, Form form, MultiVector field, Nm1Components comps, std::optional<Generators> gens)
      : bundle_(b),
        form_(std::move(form)),
        field_(std::move(field)),
        components_(std::move(comps)),
        generators_(std::move(gens)) {}

  Bundle bundle_;
  Form form_;
  MultiVector field_;
  Nm1Components components_;
  std::optional<Generators> generators_;
};

/// f = J(X) + f0 + c. Throws std::invalid_argument when c has the wrong degree
/// or is not closed.
HamiltonianNm1Form build_hamiltonian_form(const ProjectableVF& X, const HorizontalNm1Form& f0, const Form& c);

/// Wraps an arbitrary (n-1)-form; throws NotHamiltonian when no vector field solves i_X omega = da.
HamiltonianNm1Form as_hamiltonian(const Bundle& b, const Form& a);

/// X_f = df^mu/dp d_mu + 1/n df^mu/dp_i^mu d_i - (df^mu/dq^i - df_i^{mu nu}/dx^nu) d/dp_i^mu - df^mu/dx^mu d/dp
MultiVector field_from_components(const Bundle& b, const Nm1Components& comps);

/// X_f for f = J(X) + f0 written out in terms of X^mu, X^i and f_0^mu.
MultiVector field_from_generators(const ProjectableVF& X, const HorizontalNm1Form& f0);

/// Some r-multivector Z with i_Z omega = target, found by exact linear algebra
/// on the constant matrix of i_{e_J} omega. nullopt when none exists. For
/// r = 1 the solution is unique.
std::optional<MultiVector> solve_hamiltonian_field(const Bundle& b, const Form& target, int r);

/// Hamiltonian vector field of an (n-1)-form: the component formula when it
/// certifies, otherwise the exact solve. Throws NotHamiltonian.
MultiVector hamiltonian_vf(const Bundle& b, const Form& f);
inline const MultiVector& hamiltonian_vf(const HamiltonianNm1Form& f) { return f.field(); }

/// A form of degree n - r and an r-multivector related by i_X omega = dF.
struct HamiltonianPair {
  Form form;
  MultiVector field;
  bool certified;
};

HamiltonianPair hamiltonian_pair(const Bundle& b, Form form, MultiVector field);
HamiltonianPair hamiltonian_pair(const HamiltonianNm1Form& f);
/// Pair with a solved (generally non-unique) partner; nullopt when dF is not in the image.
std::optional<HamiltonianPair> find_hamiltonian_pair(const Bundle& b, const Form& form);

struct NotHamiltonianVerdict {
  Form residual;  ///< i_{candidate} omega - da
};

using HamiltonianDecision = std::variant<HamiltonianPair, NotHamiltonianVerdict>;

HamiltonianDecision decide_hamiltonian(const Bundle& b, const Form& a);

/// {f,g}' = i_{X_g} i_{X_f} omega
Form bracket_naive(const HamiltonianNm1Form& f, const HamiltonianNm1Form& g);

struct BracketResult {
  Form value;                 ///< naive_part + correction_part
  Form naive_part;            ///< i_{X_g} i_{X_f} omega
  Form correction_part;       ///< d(correction_primitive)
  Form correction_primitive;  ///< i_{X_g} f - i_{X_f} g - i_{X_g} i_{X_f} theta
};

/// {f,g} = i_{X_g} i_{X_f} omega + d(i_{X_g} f - i_{X_f} g - i_{X_g} i_{X_f} theta)
BracketResult bracket(const HamiltonianNm1Form& f, const HamiltonianNm1Form& g);

/// Coordinate expression of {f,g} in terms of the generators (X, f0) and (Y, g0):
///   {f,g} = -J([X,Y]) - L_X g0 + L_Y f0
/// with every term written out in components, no contractions involved.
/// Throws std::invalid_argument when a generator triple is missing or has a
/// nonzero closed part.
Form bracket_coords(const HamiltonianNm1Form& f, const HamiltonianNm1Form& g);

/// The long coordinate display
///   [dX^nu/dx^nu g^mu - f^mu dY^nu/dx^nu + df^mu/dq^i Y^i - X^i dg^mu/dq^i] d^n x_mu
///   - [(dX^nu/dq^i g^mu - f^mu dY^nu/dq^i) + p_i^mu (dX^nu/dx^rho Y^rho - X^rho dY^nu/dx^rho)
///      - p (dX^nu/dq^i Y^mu - X^mu dY^nu/dq^i)] dq^i ^ d^n x_{mu nu}
/// evaluated term by term. It agrees with bracket() only on part of the
/// generator space (see tests).
Form bracket_coords_printed(const HamiltonianNm1Form& f, const HamiltonianNm1Form& g);

/// {f,{g,h}} + {g,{h,f}} + {h,{f,g}} for the corrected bracket.
Form jacobi_sum(const HamiltonianNm1Form& f, const HamiltonianNm1Form& g, const HamiltonianNm1Form& h);

/// Cyclic sum of the naive bracket.
Form naive_jacobi_sum(const HamiltonianNm1Form& f, const HamiltonianNm1Form& g, const HamiltonianNm1Form& h);

/// d(i_{X_f ^ X_g ^ X_h} omega) = -d(i_{X_f} i_{X_g} i_{X_h} omega); throws
/// InternalInconsistency unless it equals naive_jacobi_sum(f, g, h).
Form jacobi_defect(const HamiltonianNm1Form& f, const HamiltonianNm1Form& g, const HamiltonianNm1Form& h);

struct GradedBracketResult {
  Form value;              ///< Lie-derivative expression
  Form contraction_value;  ///< contraction expression
  bool consistent;         ///< value == contraction_value
};

/// Bracket of Hamiltonian pairs with multivector degrees r and s:
///   (-1)^{(r-1)(s-1)} L_{X_G} F - L_{X_F} G + (-1)^{s-1} L_{X_G ^ X_F} theta
///   = (-1)^r i_{X_F} i_{X_G} omega
///     + d[(-1)^{(r-1)(s-1)} i_{X_G} F - i_{X_F} G + (-1)^{s-1} i_{X_F} i_{X_G} theta]
/// Throws std::invalid_argument on uncertified input.
GradedBracketResult graded_bracket(const Bundle& b, const HamiltonianPair& F, const HamiltonianPair& G);

/// Hamiltonian partner of graded_bracket(F, G): (value, -[X_F, X_G]), certified exactly.
HamiltonianPair graded_bracket_pair(const Bundle& b, const HamiltonianPair& F, const HamiltonianPair& G);

/// sum over cyclic (F, G, H) of (-1)^{(r_F - 1)(r_H - 1)} {F, {G, H}}, with r the
/// multivector degrees. Throws InternalInconsistency when an inner bracket
/// fails certification.
Form graded_jacobi_sum(const Bundle& b, const HamiltonianPair& F, const HamiltonianPair& G, const HamiltonianPair& H);

struct PoissonVerdict {
  bool poisson;
  struct Counterexample {
    Point point;
    MultiVector kernel_element;
  };
  std::optional<Counterexample> counterexample;
};

/// Checks i_Z omega = 0 => i_Z F = 0 for the kernel of omega in every degree 1..n at every point.
PoissonVerdict is_poisson_form(const Bundle& b, const Form& F, const std::vector<Point>& points);

/// Deterministic small-integer sample points.
std::vector<Point> sample_points(const Bundle& b, std::size_t count, unsigned seed);

}  // namespace msymp
