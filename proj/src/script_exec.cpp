#include <sstream>

#include "msymp/errors.hpp"
#include "msymp/script.hpp"
#include "msymp/serialize.hpp"

namespace msymp::script {

namespace {

struct Verdict {
  bool ok;
  std::string text;
};

class VerdictFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Runner {
 public:
  explicit Runner(const Script& s) : b_(s.bundle) {}

  ExitCode run(const Command& cmd, std::ostream& out) {
    out << "> " << cmd.text << '\n';
    try {
      Verdict v = dispatch(cmd, out);
      out << "status: " << (v.ok ? "ok: " : "FAIL: ") << v.text << "\n\n";
      return v.ok ? ExitCode::Clean : ExitCode::VerdictFailure;
    } catch (const VerdictFailure& e) {
      out << "status: FAIL: " << e.what() << "\n\n";
      return ExitCode::VerdictFailure;
    } catch (const std::exception& e) {
      out << "status: ERROR: " << e.what() << "\n\n";
      return ExitCode::Error;
    }
  }

 private:
  void print_form(std::ostream& out, const Form& f) {
    out << serialize(f) << '\n';
    if (!f.is_zero() && f.degree() == b_.n() - 1) {
      if (auto nm1 = serialize_nm1(b_, f)) out << "nm1: " << *nm1 << '\n';
    }
  }

  HamiltonianNm1Form hamiltonian(const Operand& op, std::ostream& out) {
    if (op.is_triple()) {
      return build_hamiltonian_form(op.field ? *op.field : zero_projectable(b_),
                                    op.horizontal ? *op.horizontal : zero_horizontal(b_),
                                    op.form ? *op.form : Form(b_.space(), b_.n() - 1));
    }
    HamiltonianDecision d = decide_hamiltonian(b_, *op.form);
    if (auto* rejected = std::get_if<NotHamiltonianVerdict>(&d)) {
      out << "residual: " << serialize(rejected->residual) << '\n';
      throw VerdictFailure(op.text + " is not Hamiltonian");
    }
    return as_hamiltonian(b_, *op.form);
  }

  HamiltonianPair pair(const Operand& op, std::ostream& out) {
    if (op.is_triple() || op.form->degree() == b_.n() - 1 || op.form->is_zero()) {
      return hamiltonian_pair(hamiltonian(op, out));
    }
    auto found = find_hamiltonian_pair(b_, *op.form);
    if (!found) throw VerdictFailure("no multivector field X with i_X omega = d(" + op.text + ")");
    return *found;
  }

  Verdict dispatch(const Command& cmd, std::ostream& out) {
    const std::string& name = cmd.name;
    const auto& ops = cmd.operands;
    const Form w = omega(b_);

    if (name == "theta") {
      Form t = theta(b_);
      out << serialize(t) << '\n';
      return {exterior_derivative(t) == -w, "d theta = -omega"};
    }
    if (name == "omega") {
      out << serialize(w) << '\n';
      bool ok = w == omega_explicit(b_) && is_closed(w);
      return {ok, "omega = -d theta = term-by-term sum, d omega = 0"};
    }
    if (name == "lift") {
      MultiVector L = lift_cojet(*ops[0].field);
      out << serialize(L) << '\n';
      bool ok = lie_derivative(L, theta(b_)).is_zero() && lie_derivative(L, w).is_zero();
      return {ok, "L_X theta = 0, L_X omega = 0"};
    }
    if (name == "lift-jet") {
      MultiVector L = lift_jet(*ops[0].field);
      out << serialize(L) << '\n';
      return {preserves_contact_ideal(b_, L), "contact ideal preserved"};
    }
    if (name == "momentum") {
      const ProjectableVF& X = *ops[0].field;
      Form J = momentum_map(X);
      print_form(out, J);
      bool ok = J == momentum_map_closed_form(X) && contract(lift_cojet(X), w) == exterior_derivative(J);
      return {ok, "matches the coordinate expression, i_X omega = dJ"};
    }
    if (name == "hamvf") {
      HamiltonianNm1Form f = hamiltonian(ops[0], out);
      out << serialize(f.field()) << '\n';
      return {contract(f.field(), w) == exterior_derivative(f.form()), "certified i_X omega = df"};
    }
    if (name == "bracket") {
      HamiltonianNm1Form f = hamiltonian(ops[0], out);
      HamiltonianNm1Form g = hamiltonian(ops[1], out);
      BracketResult r = bracket(f, g);
      print_form(out, r.value);
      out << "terms: naive " << r.naive_part.size() << ", correction " << r.correction_part.size() << ", total "
          << r.value.size() << '\n';
      HamiltonianDecision d = decide_hamiltonian(b_, r.value);
      const auto* pr = std::get_if<HamiltonianPair>(&d);
      bool ok = pr != nullptr && schouten(f.field(), g.field()) == -pr->field;
      return {ok, "value is Hamiltonian, [X_f, X_g] = -X_{f,g}"};
    }
    if (name == "bracket-naive") {
      HamiltonianNm1Form f = hamiltonian(ops[0], out);
      HamiltonianNm1Form g = hamiltonian(ops[1], out);
      Form v = bracket_naive(f, g);
      print_form(out, v);
      HamiltonianDecision d = decide_hamiltonian(b_, v);
      const auto* pr = std::get_if<HamiltonianPair>(&d);
      bool ok = pr != nullptr && schouten(f.field(), g.field()) == -pr->field;
      return {ok, "value is Hamiltonian, [X_f, X_g] = -X_{f,g}'"};
    }
    if (name == "bracket-coords") {
      HamiltonianNm1Form f = hamiltonian(ops[0], out);
      HamiltonianNm1Form g = hamiltonian(ops[1], out);
      Form v = bracket_coords(f, g);
      print_form(out, v);
      return {v == bracket(f, g).value, "agrees with bracket"};
    }
    if (name == "jacobi" || name == "defect") {
      HamiltonianNm1Form f = hamiltonian(ops[0], out);
      HamiltonianNm1Form g = hamiltonian(ops[1], out);
      HamiltonianNm1Form h = hamiltonian(ops[2], out);
      if (name == "jacobi") {
        Form sum = jacobi_sum(f, g, h);
        out << serialize(sum) << '\n';
        return {sum.is_zero(), "cyclic sum of the bracket vanishes"};
      }
      Form defect = jacobi_defect(f, g, h);
      out << serialize(defect) << '\n';
      return {true, "cyclic sum of the naive bracket = d(i_{X_f^X_g^X_h} omega)"};
    }
    if (name == "graded-bracket") {
      HamiltonianPair F = pair(ops[0], out);
      HamiltonianPair G = pair(ops[1], out);
      GradedBracketResult r = graded_bracket(b_, F, G);
      out << serialize(r.value) << '\n';
      if (!r.consistent) out << "contraction expression: " << serialize(r.contraction_value) << '\n';
      std::string degrees = "degrees (" + std::to_string(F.field.degree()) + "," + std::to_string(G.field.degree()) + ")";
      return {r.consistent, "Lie-derivative and contraction expressions agree, " + degrees};
    }
    if (name == "poisson-check") {
      Form F = ops[0].is_triple() ? hamiltonian(ops[0], out).form() : *ops[0].form;
      const std::size_t count = 8;
      PoissonVerdict v = is_poisson_form(b_, F, sample_points(b_, count, 1));
      if (v.poisson) {
        out << "poisson at " << count << " sampled points\n";
        return {true, "i_Z omega = 0 implies i_Z F = 0 at every sampled point"};
      }
      out << "kernel element " << serialize(v.counterexample->kernel_element) << " at (";
      const auto values = v.counterexample->point.values();
      for (std::size_t k = 0; k < values.size(); ++k) {
        out << (k ? ", " : "") << b_.space().variable_name(k) << "=" << values[k];
      }
      out << ")\n";
      return {false, "not a Poisson form"};
    }
    if (name == "verify-multisymplectic") {
      MultiVector X = ops[0].is_triple() || ops[0].form ? hamiltonian(ops[0], out).field() : lift_cojet(*ops[0].field);
      Form L = lie_derivative(X, w);
      out << serialize(L) << '\n';
      return {L.is_zero(), "L_X omega = 0"};
    }
    if (name == "eval") {
      const Point& pt = *cmd.point;
      if (cmd.poly) {
        out << evaluate(*cmd.poly, pt) << '\n';
      } else {
        const Operand& op = ops[0];
        if (op.field) {
          out << serialize(evaluate_at(op.field->as_multivector(), pt)) << '\n';
        } else if (op.horizontal) {
          out << serialize(evaluate_at(op.horizontal->pullback(), pt)) << '\n';
        } else {
          out << serialize(evaluate_at(*op.form, pt)) << '\n';
        }
      }
      return {true, "evaluated"};
    }
    throw std::logic_error("unhandled command " + name);
  }

  Bundle b_;
};

}  // namespace

ExecResult execute(const Script& s) {
  std::ostringstream out;
  Runner runner(s);
  ExitCode worst = ExitCode::Clean;
  for (const Command& cmd : s.commands) {
    ExitCode code = runner.run(cmd, out);
    if (static_cast<int>(code) > static_cast<int>(worst)) worst = code;
  }
  return {out.str(), worst};
}

}  // namespace msymp::script
