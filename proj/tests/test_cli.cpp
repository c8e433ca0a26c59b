#include "doctest.h"
#include "msymp/script.hpp"
#include "msymp/serialize.hpp"
#include "support/helpers.hpp"

using namespace msymp;
using namespace msymp::test;
namespace sc = msymp::script;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out(1);
  for (char ch : text) {
    if (ch == '\n') {
      out.emplace_back();
    } else {
      out.back() += ch;
    }
  }
  return out;
}

bool span_inside(const sc::Span& sp, const std::vector<std::string>& lines) {
  if (sp.line < 1 || sp.line > static_cast<int>(lines.size())) return false;
  const int len = static_cast<int>(lines[static_cast<std::size_t>(sp.line - 1)].size());
  return sp.column >= 1 && sp.column <= len + 1 && sp.end_column > sp.column && sp.end_column <= len + 2;
}

std::string span_text(const std::string& text, const sc::Span& sp) {
  auto lines = lines_of(text);
  const std::string& l = lines.at(static_cast<std::size_t>(sp.line - 1));
  return l.substr(static_cast<std::size_t>(sp.column - 1), static_cast<std::size_t>(sp.end_column - sp.column));
}

sc::Diagnostic only_error(const std::string& text) {
  sc::ParseResult r = sc::parse(text);
  REQUIRE_FALSE(r.ok());
  REQUIRE(r.diagnostics.size() == 1);
  return r.diagnostics.front();
}

sc::ExecResult run(const std::string& text) {
  sc::ParseResult r = sc::parse(text);
  REQUIRE(r.ok());
  return sc::execute(*r.script);
}

std::vector<std::string> result_lines(const std::string& output) {
  std::vector<std::string> out;
  for (const std::string& l : lines_of(output)) {
    if (!l.empty() && l.rfind("> ", 0) != 0 && l.rfind("status:", 0) != 0 && l.rfind("nm1:", 0) != 0) out.push_back(l);
  }
  return out;
}

const char* kSample = R"(bundle(2,1)
vf X = { dq1: 1 }
vf Y = { dq1: q1 }
vf T = { dx1: 1 }
hform F = { mu1: q1^2 }
form c = d { dx2: q1*x1 }
momentum(X)
bracket(X, Y)
bracket(X + F, Y)
jacobi(X, Y, T)
graded-bracket(X, Y)
eval(q1^2 + en, q1 = 2, en = 3, rest = 0)
)";

}  // namespace

TEST_CASE("minimal program") {
  sc::ParseResult r = sc::parse("bundle(2,1)\nvf X = { dq1: 1 }\nmomentum(X)");
  REQUIRE(r.ok());
  CHECK(r.script->statement_count == 3);
  CHECK(r.script->bundle == Bundle(2, 1));
  REQUIRE(r.script->commands.size() == 1);
  CHECK(r.script->commands[0].name == "momentum");
}

TEST_CASE("projectability diagnostic") {
  std::string text = "bundle(2,1)\nvf X = { dx1: q1 }\n";
  const sc::Diagnostic d = only_error(text);
  CHECK(d.severity == sc::Severity::Error);
  CHECK(d.span.line == 2);
  CHECK(span_text(text, d.span) == "q1");
  CHECK(d.message.find("projectable") != std::string::npos);
}

TEST_CASE("index range diagnostic") {
  std::string text = "bundle(2,1)\neval(p[1,3], rest=0)\n";
  const sc::Diagnostic d = only_error(text);
  CHECK(span_text(text, d.span) == "p[1,3]");
  CHECK(d.message.find("out of range") != std::string::npos);
  CHECK(sc::format(d) == "2:6-12: " + std::string("error: ") + d.message);
}

TEST_CASE("unknown variable, undeclared and duplicate names") {
  std::string text = "bundle(1,1)\nvf X = { dq1: q2 }\nvf X = { dq1: 1 }\nvf X = { dq1: 2 }\nmomentum(W)\n";
  sc::ParseResult r = sc::parse(text);
  REQUIRE_FALSE(r.ok());
  REQUIRE(r.diagnostics.size() == 3);
  CHECK(span_text(text, r.diagnostics[0].span) == "q2");
  CHECK(r.diagnostics[1].span.line == 4);
  CHECK(span_text(text, r.diagnostics[1].span) == "X");
  CHECK(span_text(text, r.diagnostics[2].span) == "W");
}

TEST_CASE("the bundle comes first, arity and degree checks") {
  CHECK_FALSE(sc::parse("vf X = { dq1: 1 }\nbundle(2,1)\n").ok());
  CHECK_FALSE(sc::parse("bundle(0,1)\n").ok());
  CHECK_FALSE(sc::parse("bundle(2,1)\nvf X = { dq1: 1 }\nbracket(X)\n").ok());
  CHECK_FALSE(sc::parse("bundle(2,1)\nform c = { dx1^dx2: 1 }\nhamvf(c)\n").ok());
  CHECK_FALSE(sc::parse("bundle(2,1)\nvf X = { dq1: 1 }\nfrobnicate(X)\n").ok());
  CHECK_FALSE(sc::parse("bundle(2,1)\neval(q1, q1 = 2)\n").ok());
  CHECK(sc::parse("bundle(2,1)\n# comment only\n").ok());
}

TEST_CASE("execute examples") {
  sc::ExecResult m = run("bundle(2,1)\nvf X = { dq1: 1 }\nmomentum(X)\n");
  CHECK(m.exit_code == sc::ExitCode::Clean);
  CHECK(m.output.find("nm1: p[1,1] dnx_1 + p[1,2] dnx_2\n") != std::string::npos);

  sc::ExecResult j = run("bundle(2,1)\nvf X = { dq1: 1 }\nvf Y = { dq1: q1 }\nvf T = { dx1: x2 }\njacobi(X, Y, T)\n");
  CHECK(j.exit_code == sc::ExitCode::Clean);
  CHECK(result_lines(j.output) == std::vector<std::string>{"0"});

  sc::ExecResult f = run("bundle(2,1)\nvf X = { dq1: q1, dx1: x2 }\nbracket(X, X)\n");
  CHECK(f.exit_code == sc::ExitCode::Clean);
  CHECK(result_lines(f.output).front() == "0");

  sc::ExecResult e = run("bundle(2,1)\neval(q1^2 + en, q1 = 2, en = 3, rest = 0)\n");
  CHECK(result_lines(e.output) == std::vector<std::string>{"7"});
}

TEST_CASE("verdict failures and exit codes") {
  sc::ExecResult r = run("bundle(2,1)\nform a = { dx2: en*p[1,1] }\nhamvf(a)\n");
  CHECK(r.exit_code == sc::ExitCode::VerdictFailure);
  CHECK(r.output.find("status: FAIL:") != std::string::npos);
  CHECK(r.output.find("residual: ") != std::string::npos);
}

TEST_CASE("serialize examples") {
  Bundle b(1, 1);
  CHECK(serialize(omega(b)) == "(1) dx1^dp + (1) dq1^dp[1,1]");
  CHECK(serialize(Form(b.space(), 2)) == "0");
  CHECK(serialize(theta(b)) == "(en) dx1 + (p[1,1]) dq1");
  CHECK(serialize(lift_cojet(field(b, {}, {q(b, 1)}))) == "(q1) e_q1 + (-p[1,1]) e_p[1,1]");
  Bundle b21(2, 1);
  CHECK(serialize_nm1(b21, momentum_map(field(b21, {c(b21.space(), 1)}, {}))) == "en dnx_1 + p[1,2] dq1^dnx_1_2");
  CHECK_FALSE(serialize_nm1(b21, Form::basis(b21.space(), {b21.space().energy_index()})).has_value());
}

TEST_CASE("determinism") {
  sc::ExecResult a = run(kSample);
  sc::ExecResult b = run(kSample);
  CHECK(a.output == b.output);
  CHECK(a.exit_code == sc::ExitCode::Clean);
}

TEST_CASE("serialized polynomials parse back to the same polynomial") {
  Gen g(71);
  for (const Bundle& b : desk_bundles()) {
    for (int k = 0; k < 50; ++k) {
      Poly a = g.poly(b.space(), 4, 2);
      std::string text = "bundle(" + std::to_string(b.n()) + "," + std::to_string(b.N()) + ")\neval(" + serialize(a) +
                         ", rest=0)\n";
      sc::ParseResult r = sc::parse(text);
      REQUIRE(r.ok());
      REQUIRE(r.script->commands.front().poly.has_value());
      CHECK(*r.script->commands.front().poly == a);
    }
  }
}

TEST_CASE("every diagnostic span lies inside the input") {
  Gen g(72);
  const std::string base = kSample;
  const std::string alphabet = "(){}[],:+-*/^=# \nabdeqpxvfmu0123456789";
  int rejected = 0;
  for (int k = 0; k < 400; ++k) {
    std::string text = base;
    int edits = g.uniform(1, 4);
    for (int e = 0; e < edits; ++e) {
      auto pos = static_cast<std::size_t>(g.uniform(0, static_cast<int>(text.size()) - 1));
      switch (g.uniform(0, 2)) {
        case 0: text.erase(pos, 1); break;
        case 1: text.insert(pos, 1, alphabet[static_cast<std::size_t>(g.uniform(0, static_cast<int>(alphabet.size()) - 1))]); break;
        default: text[pos] = alphabet[static_cast<std::size_t>(g.uniform(0, static_cast<int>(alphabet.size()) - 1))]; break;
      }
    }
    sc::ParseResult r = sc::parse(text);
    if (r.ok()) continue;
    ++rejected;
    CHECK_FALSE(r.diagnostics.empty());
    const auto lines = lines_of(text);
    for (const sc::Diagnostic& d : r.diagnostics) {
      INFO(text);
      INFO(sc::format(d));
      CHECK(span_inside(d.span, lines));
    }
  }
  CHECK(rejected > 100);
}
