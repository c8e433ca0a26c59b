#include "msymp/selftest.hpp"

#include <functional>
#include <sstream>

#include "msymp/instances.hpp"

namespace msymp {

namespace {

using Check = std::function<bool(const Bundle&, Instances&)>;

bool schouten_relations(const Bundle& b, Instances& gen) {
  const Space& s = b.space();
  for (int p = 1; p <= 2; ++p) {
    for (int q = 1; q <= 2; ++q) {
      MultiVector X = gen.multivector(s, p, 2);
      MultiVector Y = gen.multivector(s, q, 2);
      Form a = gen.form(s, std::min<int>(p + q, static_cast<int>(s.dim())), 2);
      MultiVector Z = schouten(X, Y);
      Form rhs19 = lie_derivative(X, contract(Y, a));
      if ((p - 1) * q % 2) rhs19 = -rhs19;
      rhs19 -= contract(Y, lie_derivative(X, a));
      if (!(contract(Z, a) == rhs19)) return false;
      Form rhs20 = lie_derivative(X, lie_derivative(Y, a));
      if ((p - 1) * (q - 1) % 2) rhs20 = -rhs20;
      rhs20 -= lie_derivative(Y, lie_derivative(X, a));
      if (!(lie_derivative(Z, a) == rhs20)) return false;
    }
  }
  return true;
}

std::vector<std::pair<std::string, Check>> checks() {
  std::vector<std::pair<std::string, Check>> out;
  out.emplace_back("omega = -d theta = term-by-term sum", [](const Bundle& b, Instances&) {
    return omega(b) == -exterior_derivative(theta(b)) && omega(b) == omega_explicit(b);
  });
  out.emplace_back("d omega = 0", [](const Bundle& b, Instances&) { return is_closed(omega(b)); });
  out.emplace_back("dim J*(E) = (N+1)(n+1)", [](const Bundle& b, Instances&) {
    return b.dim() == static_cast<std::size_t>((b.N() + 1) * (b.n() + 1)) && b.coordinates().size() == b.dim();
  });
  out.emplace_back("ker omega on vectors = 0", [](const Bundle& b, Instances& gen) {
    return kernel_at_point(omega(b), 1, gen.point(b.space())).basis.empty();
  });
  out.emplace_back("L_X theta = L_X omega = 0 for lifts", [](const Bundle& b, Instances& gen) {
    MultiVector L = lift_cojet(gen.projectable(b));
    return lie_derivative(L, theta(b)).is_zero() && lie_derivative(L, omega(b)).is_zero();
  });
  out.emplace_back("jet lift preserves contact ideal", [](const Bundle& b, Instances& gen) {
    return preserves_contact_ideal(b, lift_jet(gen.projectable(b)));
  });
  out.emplace_back("lift respects brackets", [](const Bundle& b, Instances& gen) {
    ProjectableVF X = gen.projectable(b);
    ProjectableVF Y = gen.projectable(b);
    return lift_cojet(lie_bracket(X, Y)) == schouten(lift_cojet(X), lift_cojet(Y));
  });
  out.emplace_back("J(X) = coordinate expression", [](const Bundle& b, Instances& gen) {
    ProjectableVF X = gen.projectable(b);
    return momentum_map(X) == momentum_map_closed_form(X);
  });
  out.emplace_back("i_{X_f} omega = df", [](const Bundle& b, Instances& gen) {
    HamiltonianNm1Form f = gen.hamiltonian(b, true);
    return contract(f.field(), omega(b)) == exterior_derivative(f.form()) &&
           field_from_components(b, f.components()) == f.field();
  });
  out.emplace_back("d L_X = (-1)^(p-1) L_X d", [](const Bundle& b, Instances& gen) {
    const Space& s = b.space();
    for (int p = 1; p <= 3; ++p) {
      MultiVector X = gen.multivector(s, p, 2);
      Form a = gen.form(s, p, 2);
      Form rhs = lie_derivative(X, exterior_derivative(a));
      if ((p - 1) % 2) rhs = -rhs;
      if (!(exterior_derivative(lie_derivative(X, a)) == rhs)) return false;
    }
    return true;
  });
  out.emplace_back("Schouten relations for i and L", schouten_relations);
  out.emplace_back("naive Jacobi sum = d(i_{Xf^Xg^Xh} omega)", [](const Bundle& b, Instances& gen) {
    HamiltonianNm1Form f = gen.hamiltonian(b);
    HamiltonianNm1Form g = gen.hamiltonian(b);
    HamiltonianNm1Form h = gen.hamiltonian(b);
    return jacobi_defect(f, g, h) == naive_jacobi_sum(f, g, h);
  });
  out.emplace_back("bracket antisymmetric", [](const Bundle& b, Instances& gen) {
    HamiltonianNm1Form f = gen.hamiltonian(b, true);
    HamiltonianNm1Form g = gen.hamiltonian(b, true);
    return (bracket(f, g).value + bracket(g, f).value).is_zero();
  });
  out.emplace_back("bracket Jacobi identity", [](const Bundle& b, Instances& gen) {
    HamiltonianNm1Form f = gen.hamiltonian(b, true);
    HamiltonianNm1Form g = gen.hamiltonian(b, true);
    HamiltonianNm1Form h = gen.hamiltonian(b, true);
    return jacobi_sum(f, g, h).is_zero();
  });
  out.emplace_back("[X_f, X_g] = -X_{f,g}", [](const Bundle& b, Instances& gen) {
    HamiltonianNm1Form f = gen.hamiltonian(b, true);
    HamiltonianNm1Form g = gen.hamiltonian(b, true);
    return schouten(f.field(), g.field()) == -hamiltonian_vf(b, bracket(f, g).value);
  });
  out.emplace_back("bracket = coordinate expression", [](const Bundle& b, Instances& gen) {
    HamiltonianNm1Form f = gen.hamiltonian(b);
    HamiltonianNm1Form g = gen.hamiltonian(b);
    return bracket(f, g).value == bracket_coords(f, g);
  });
  out.emplace_back("graded bracket: both expressions agree", [](const Bundle& b, Instances& gen) {
    HamiltonianNm1Form f = gen.hamiltonian(b, true);
    HamiltonianNm1Form g = gen.hamiltonian(b, true);
    GradedBracketResult r = graded_bracket(b, hamiltonian_pair(f), hamiltonian_pair(g));
    return r.consistent && r.value == bracket(f, g).value;
  });
  return out;
}

}  // namespace

bool SelftestReport::all_passed() const {
  for (const auto& row : rows) {
    for (bool p : row.passed) {
      if (!p) return false;
    }
  }
  return true;
}

std::string SelftestReport::table() const {
  std::size_t width = 8;
  for (const auto& row : rows) width = std::max(width, row.identity.size());
  std::ostringstream out;
  out << "identity" << std::string(width - 8, ' ');
  for (const auto& [n, N] : bundles) out << "  (" << n << ',' << N << ')';
  out << '\n';
  std::size_t good = 0;
  for (const auto& row : rows) {
    out << row.identity << std::string(width - row.identity.size(), ' ');
    bool all = true;
    for (bool p : row.passed) {
      out << (p ? "   pass" : "   FAIL");
      all = all && p;
    }
    good += all ? 1 : 0;
    out << '\n';
  }
  out << "selftest: " << good << '/' << rows.size() << " identities passed\n";
  return out.str();
}

SelftestReport run_selftest(int instances) {
  SelftestReport report;
  report.bundles = {{1, 1}, {2, 1}, {2, 2}};
  for (const auto& [name, check] : checks()) {
    SelftestRow row{name, {}};
    for (const auto& [n, N] : report.bundles) {
      Bundle b = make_bundle(n, N);
      Instances gen(static_cast<unsigned>(1000 * n + 10 * N + 1));
      bool ok = true;
      for (int k = 0; k < instances && ok; ++k) {
        try {
          ok = check(b, gen);
        } catch (const std::exception&) {
          ok = false;
        }
      }
      row.passed.push_back(ok);
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace msymp
