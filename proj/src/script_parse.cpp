#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "msymp/errors.hpp"
#include "msymp/script.hpp"

namespace msymp::script {

namespace {

enum class Tok : std::uint8_t { Ident, Int, Punct, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
  std::size_t offset;

  Span span() const { return {line, column, column + std::max<int>(1, static_cast<int>(text.size()))}; }
  bool is(char c) const { return kind == Tok::Punct && text[0] == c; }
  bool is_ident(std::string_view s) const { return kind == Tok::Ident && text == s; }
};

struct SyntaxError {
  Span span;
  std::string message;
};

std::vector<Token> lex(std::string_view src, std::vector<Diagnostic>& diags) {
  std::vector<Token> out;
  int line = 1;
  int column = 1;
  std::size_t k = 0;
  auto advance = [&] {
    if (src[k] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
    ++k;
  };
  while (k < src.size()) {
    char c = src[k];
    if (c == '#') {
      while (k < src.size() && src[k] != '\n') advance();
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
      continue;
    }
    Token t{Tok::Punct, std::string(1, c), line, column, k};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      t.kind = Tok::Ident;
      t.text.clear();
      while (k < src.size() && (std::isalnum(static_cast<unsigned char>(src[k])) || src[k] == '_')) {
        t.text += src[k];
        advance();
      }
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      t.kind = Tok::Int;
      t.text.clear();
      while (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
        t.text += src[k];
        advance();
      }
    } else if (std::string_view("(){}[],:+-*/^=").find(c) != std::string_view::npos) {
      advance();
    } else {
      diags.push_back({Severity::Error, {line, column, column + 1}, std::string("unexpected character '") + c + "'"});
      advance();
      continue;
    }
    out.push_back(std::move(t));
  }
  out.push_back({Tok::End, "", line, column, src.size()});
  return out;
}

/// "x12" -> 12 when `name` is `prefix` followed by digits only.
std::optional<int> suffix_index(const std::string& name, std::string_view prefix) {
  if (name.size() <= prefix.size() || name.compare(0, prefix.size(), prefix) != 0) return std::nullopt;
  int value = 0;
  for (std::size_t k = prefix.size(); k < name.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(name[k]))) return std::nullopt;
    if (value > 100000) return std::nullopt;
    value = value * 10 + (name[k] - '0');
  }
  return value;
}

bool looks_like_variable(const std::string& name) {
  return suffix_index(name, "x") || suffix_index(name, "q") || name == "en" || name == "p";
}

enum class Rule : std::uint8_t {
  None,       // no operands
  Field,      // a single vf
  Ham,        // Hamiltonian (n-1)-form
  Triple,     // Hamiltonian (n-1)-form with a generator triple and no closed part
  Pair,       // any form or generator triple
  FieldOrHam, // vf, or the field of a Hamiltonian (n-1)-form
  Eval,
};

struct CommandSpec {
  int arity;
  Rule rule;
};

const std::map<std::string, CommandSpec>& command_table() {
  static const std::map<std::string, CommandSpec> table = {
      {"theta", {0, Rule::None}},
      {"omega", {0, Rule::None}},
      {"lift", {1, Rule::Field}},
      {"lift-jet", {1, Rule::Field}},
      {"momentum", {1, Rule::Field}},
      {"hamvf", {1, Rule::Ham}},
      {"bracket", {2, Rule::Ham}},
      {"bracket-naive", {2, Rule::Ham}},
      {"bracket-coords", {2, Rule::Triple}},
      {"jacobi", {3, Rule::Ham}},
      {"defect", {3, Rule::Ham}},
      {"graded-bracket", {2, Rule::Pair}},
      {"poisson-check", {1, Rule::Pair}},
      {"verify-multisymplectic", {1, Rule::FieldOrHam}},
      {"eval", {-1, Rule::Eval}},
  };
  return table;
}

const std::set<std::string>& reserved_names() {
  static const std::set<std::string> names = {"bundle", "vf", "hform", "form", "d", "theta", "omega", "rest"};
  return names;
}

class Parser {
 public:
  Parser(std::string_view src, std::vector<Token> tokens, std::vector<Diagnostic>& diags)
      : src_(src), toks_(std::move(tokens)), diags_(diags) {}

  std::optional<Script> run() {
    std::optional<Bundle> bundle;
    std::size_t statements = 0;
    try {
      bundle = parse_bundle();
      ++statements;
    } catch (const SyntaxError& e) {
      diags_.push_back({Severity::Error, e.span, e.message});
      return std::nullopt;
    }
    space_.emplace(bundle->space());
    bundle_.emplace(*bundle);
    Script script{*bundle, 0, {}, {}};
    while (peek().kind != Tok::End) {
      const std::size_t start = pos_;
      try {
        parse_statement(script);
        ++statements;
      } catch (const SyntaxError& e) {
        diags_.push_back({Severity::Error, e.span, e.message});
        recover(start);
      }
    }
    script.statement_count = statements;
    for (const auto& d : diags_) {
      if (d.severity == Severity::Error) return std::nullopt;
    }
    return script;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  const Token& previous() const { return toks_[pos_ == 0 ? 0 : pos_ - 1]; }

  [[noreturn]] static void fail(const Span& span, std::string message) { throw SyntaxError{span, std::move(message)}; }

  const Token& expect(char c, const char* what) {
    if (!peek().is(c)) fail(peek().span(), std::string("expected '") + c + "' " + what + describe(peek()));
    return next();
  }

  static std::string describe(const Token& t) {
    if (t.kind == Tok::End) return ", found end of input";
    return ", found '" + t.text + "'";
  }

  int expect_int(const char* what) {
    if (peek().kind != Tok::Int) fail(peek().span(), std::string("expected integer ") + what + describe(peek()));
    const Token& t = next();
    if (t.text.size() > 6) fail(t.span(), "integer too large");
    return std::stoi(t.text);
  }

  Span join(const Span& a, const Span& b) const {
    if (a.line != b.line) return a;
    return {a.line, a.column, std::max(a.end_column, b.end_column)};
  }

  std::string source_text(std::size_t begin_tok, std::size_t end_tok) const {
    std::size_t begin = toks_[begin_tok].offset;
    const Token& last = toks_[end_tok - 1];
    std::size_t end = last.offset + last.text.size();
    std::string raw(src_.substr(begin, end - begin));
    std::string out;
    bool space = false;
    for (char c : raw) {
      if (std::isspace(static_cast<unsigned char>(c))) {
        space = true;
        continue;
      }
      if (space && !out.empty()) out += ' ';
      space = false;
      out += c;
    }
    return out;
  }

  /// Skips to the next identifier that starts a line outside any brackets.
  void recover(std::size_t start) {
    pos_ = start;
    int depth = 0;
    do {
      const Token& t = next();
      if (t.is('{') || t.is('(') || t.is('[')) ++depth;
      if (t.is('}') || t.is(')') || t.is(']')) depth = std::max(0, depth - 1);
    } while (peek().kind != Tok::End &&
             !(depth == 0 && peek().kind == Tok::Ident && peek().line > previous().line));
  }

  Bundle parse_bundle() {
    if (!peek().is_ident("bundle")) fail(peek().span(), "script must start with bundle(n,N)" + describe(peek()));
    next();
    expect('(', "after bundle");
    Span n_span = peek().span();
    int n = expect_int("for n");
    expect(',', "between n and N");
    Span big_span = peek().span();
    int N = expect_int("for N");
    expect(')', "after bundle dimensions");
    if (n < 1 || n > 6) fail(n_span, "base dimension n must be in 1..6");
    if (N < 1 || N > 6) fail(big_span, "fibre dimension N must be in 1..6");
    return make_bundle(n, N);
  }

  void parse_statement(Script& script) {
    const Token& t = peek();
    if (t.kind != Tok::Ident) fail(t.span(), "expected a declaration or command" + describe(t));
    if (t.is_ident("bundle")) fail(t.span(), "only one bundle declaration is allowed");
    if ((t.text == "vf" || t.text == "hform" || t.text == "form") && peek(1).kind == Tok::Ident) {
      parse_declaration(script);
      return;
    }
    script.commands.push_back(parse_command());
  }

  // ---- declarations ----

  void parse_declaration(Script& script) {
    std::string kind = next().text;
    const Token& name_tok = next();
    const std::string& name = name_tok.text;
    if (reserved_names().count(name) || looks_like_variable(name) || command_table().count(name)) {
      fail(name_tok.span(), "'" + name + "' is reserved and cannot be declared");
    }
    if (kinds_.count(name)) fail(name_tok.span(), "'" + name + "' is already declared");
    expect('=', "after declared name");
    if (kind == "vf") {
      vfs_.emplace(name, parse_vf_body());
    } else if (kind == "hform") {
      hforms_.emplace(name, parse_hform_body());
    } else {
      forms_.emplace(name, parse_form_body());
    }
    kinds_.emplace(name, kind);
    script.declared.push_back(name);
  }

  ProjectableVF parse_vf_body() {
    const Space& s = *space_;
    std::vector<Poly> base(static_cast<std::size_t>(s.n()), Poly(s));
    std::vector<Poly> fiber(static_cast<std::size_t>(s.N()), Poly(s));
    std::set<std::string> seen;
    expect('{', "to open vector field body");
    while (!peek().is('}')) {
      const Token& key = next();
      std::optional<int> mu = key.kind == Tok::Ident ? suffix_index(key.text, "dx") : std::nullopt;
      std::optional<int> i = key.kind == Tok::Ident ? suffix_index(key.text, "dq") : std::nullopt;
      if (!mu && !i) fail(key.span(), "expected component key dx<k> or dq<k>" + describe(key));
      if (mu && (*mu < 1 || *mu > s.n())) fail(key.span(), "index out of range: " + key.text + " in " + to_string(s));
      if (i && (*i < 1 || *i > s.N())) fail(key.span(), "index out of range: " + key.text + " in " + to_string(s));
      if (!seen.insert(key.text).second) fail(key.span(), "duplicate component " + key.text);
      expect(':', "after component key");
      Span value_span = peek().span();
      Poly value = parse_poly();
      value_span = join(value_span, previous().span());
      if (mu) {
        if (!value.depends_only_on([](const Coordinate& c) { return c.kind == CoordKind::Base; })) {
          fail(value_span, "base component " + key.text +
                               " depends on fibre or momentum coordinates; the vector field must be projectable");
        }
        base[static_cast<std::size_t>(*mu - 1)] = value;
      } else {
        if (!value.depends_only_on(
                [](const Coordinate& c) { return c.kind == CoordKind::Base || c.kind == CoordKind::Fiber; })) {
          fail(value_span, "fibre component " + key.text + " depends on momentum or energy coordinates");
        }
        fiber[static_cast<std::size_t>(*i - 1)] = value;
      }
      if (peek().is(',')) next();
    }
    next();
    return make_projectable(*bundle_, std::move(base), std::move(fiber));
  }

  HorizontalNm1Form parse_hform_body() {
    const Space& s = *space_;
    std::vector<Poly> comps(static_cast<std::size_t>(s.n()), Poly(s));
    std::set<int> seen;
    expect('{', "to open horizontal form body");
    while (!peek().is('}')) {
      const Token& key = next();
      std::optional<int> mu = key.kind == Tok::Ident ? suffix_index(key.text, "mu") : std::nullopt;
      if (!mu) fail(key.span(), "expected component key mu<k>" + describe(key));
      if (*mu < 1 || *mu > s.n()) fail(key.span(), "index out of range: " + key.text + " in " + to_string(s));
      if (!seen.insert(*mu).second) fail(key.span(), "duplicate component " + key.text);
      expect(':', "after component key");
      Span value_span = peek().span();
      Poly value = parse_poly();
      value_span = join(value_span, previous().span());
      if (!value.depends_only_on(
              [](const Coordinate& c) { return c.kind == CoordKind::Base || c.kind == CoordKind::Fiber; })) {
        fail(value_span, "horizontal component " + key.text + " depends on momentum or energy coordinates");
      }
      comps[static_cast<std::size_t>(*mu - 1)] = value;
      if (peek().is(',')) next();
    }
    next();
    return make_horizontal(*bundle_, std::move(comps));
  }

  std::size_t parse_covector() {
    const Space& s = *space_;
    const Token& t = next();
    if (t.kind != Tok::Ident) fail(t.span(), "expected basis covector" + describe(t));
    if (auto mu = suffix_index(t.text, "dx")) {
      if (*mu < 1 || *mu > s.n()) fail(t.span(), "index out of range: " + t.text + " in " + to_string(s));
      return s.base_index(*mu);
    }
    if (auto i = suffix_index(t.text, "dq")) {
      if (*i < 1 || *i > s.N()) fail(t.span(), "index out of range: " + t.text + " in " + to_string(s));
      return s.fiber_index(*i);
    }
    if (t.text == "dp") {
      if (!peek().is('[')) return s.energy_index();
      auto [i, mu] = parse_momentum_indices(t);
      return s.momentum_index(i, mu);
    }
    fail(t.span(), "expected basis covector dx<k>, dq<k>, dp[i,mu] or dp, found '" + t.text + "'");
  }

  Form parse_form_body() {
    const Space& s = *space_;
    bool differentiate = false;
    if (peek().is_ident("d") && peek(1).is('{')) {
      next();
      differentiate = true;
    }
    expect('{', "to open form body");
    std::optional<Form> out;
    std::set<BasisTuple> seen;
    while (!peek().is('}')) {
      Span key_span = peek().span();
      BasisTuple tuple;
      if (peek().kind == Tok::Int && peek().text == "1") {
        next();
      } else {
        tuple.push_back(static_cast<std::uint16_t>(parse_covector()));
        while (peek().is('^')) {
          next();
          tuple.push_back(static_cast<std::uint16_t>(parse_covector()));
        }
      }
      key_span = join(key_span, previous().span());
      BasisTuple sorted = tuple;
      if (sort_with_sign(sorted) == 0) fail(key_span, "basis element repeats a covector");
      if (!seen.insert(sorted).second) fail(key_span, "duplicate basis element");
      int degree = static_cast<int>(tuple.size());
      if (!out) out.emplace(s, degree);
      if (out->degree() != degree) {
        fail(key_span, "basis element of degree " + std::to_string(degree) + " in a form of degree " +
                           std::to_string(out->degree()));
      }
      expect(':', "after basis element");
      Poly value = parse_poly();
      out->add_term(tuple, value);
      if (peek().is(',')) next();
    }
    next();
    if (!out) out.emplace(s, s.n() - 1);
    return differentiate ? exterior_derivative(*out) : *out;
  }

  std::pair<int, int> parse_momentum_indices(const Token& head) {
    const Space& s = *space_;
    expect('[', "after p");
    int i = expect_int("for the fibre index");
    expect(',', "between momentum indices");
    int mu = expect_int("for the base index");
    const Token& close = expect(']', "after momentum indices");
    if (i < 1 || i > s.N() || mu < 1 || mu > s.n()) {
      fail(join(head.span(), close.span()), "index out of range: " + head.text + "[" + std::to_string(i) + "," +
                                                std::to_string(mu) + "] in " + to_string(s));
    }
    return {i, mu};
  }

  // ---- polynomials ----

  Poly parse_poly() {
    Poly acc = parse_term();
    while (peek().is('+') || peek().is('-')) {
      bool minus = next().is('-');
      Poly t = parse_term();
      if (minus) {
        acc -= t;
      } else {
        acc += t;
      }
    }
    return acc;
  }

  Poly parse_term() {
    Poly acc = parse_factor();
    for (;;) {
      if (peek().is('*')) {
        next();
        acc = acc * parse_factor();
      } else if (peek().is('/')) {
        next();
        Span d_span = peek().span();
        if (peek().kind != Tok::Int) fail(d_span, "division is only by an integer" + describe(peek()));
        Rational d = Rational::parse(next().text);
        if (d.is_zero()) fail(d_span, "division by zero");
        acc *= Rational(1) / d;
      } else {
        return acc;
      }
    }
  }

  Poly parse_factor() {
    if (peek().is('-')) {
      next();
      return -parse_factor();
    }
    if (peek().is('+')) {
      next();
      return parse_factor();
    }
    Poly base = parse_primary();
    if (peek().is('^')) {
      next();
      Span e_span = peek().span();
      int e = expect_int("as exponent");
      if (e > 32) fail(e_span, "exponent too large");
      base = pow(base, static_cast<unsigned>(e));
    }
    return base;
  }

  Poly parse_primary() {
    const Space& s = *space_;
    const Token& t = next();
    if (t.kind == Tok::Int) return Poly(s, Rational::parse(t.text));
    if (t.is('(')) {
      Poly inner = parse_poly();
      expect(')', "to close parenthesis");
      return inner;
    }
    if (t.kind == Tok::Ident) {
      if (auto mu = suffix_index(t.text, "x")) {
        if (*mu < 1 || *mu > s.n()) fail(t.span(), "index out of range: " + t.text + " in " + to_string(s));
        return Poly::variable(s, s.base_index(*mu));
      }
      if (auto i = suffix_index(t.text, "q")) {
        if (*i < 1 || *i > s.N()) fail(t.span(), "index out of range: " + t.text + " in " + to_string(s));
        return Poly::variable(s, s.fiber_index(*i));
      }
      if (t.text == "en") return Poly::variable(s, s.energy_index());
      if (t.text == "p") {
        if (!peek().is('[')) fail(t.span(), "momentum variable needs indices p[i,mu]; the energy is spelled en");
        auto [i, mu] = parse_momentum_indices(t);
        return Poly::variable(s, s.momentum_index(i, mu));
      }
      fail(t.span(), "unknown variable '" + t.text + "' for " + to_string(s));
    }
    fail(t.span(), "expected a polynomial" + describe(t));
  }

  // ---- commands ----

  Command parse_command() {
    const std::size_t begin = pos_;
    const Token& head = next();
    std::string name = head.text;
    Span name_span = head.span();
    // Hyphenated names: adjacent tokens without whitespace.
    while (peek().is('-') && peek().line == previous().line &&
           peek().offset == previous().offset + previous().text.size() && peek(1).kind == Tok::Ident &&
           peek(1).offset == peek().offset + 1) {
      next();
      name += "-" + next().text;
      name_span = join(name_span, previous().span());
    }
    auto it = command_table().find(name);
    if (it == command_table().end()) {
      if (peek().is('=')) fail(name_span, "declarations start with vf, hform or form");
      fail(name_span, "unknown command '" + name + "'");
    }
    const CommandSpec& spec = it->second;
    expect('(', "after command name");
    Command cmd{name, "", name_span, {}, std::nullopt, std::nullopt};

    if (spec.rule == Rule::Eval) {
      parse_eval_args(cmd);
    } else {
      std::size_t count = 0;
      std::vector<Span> spans;
      while (!peek().is(')')) {
        if (count > 0) expect(',', "between arguments");
        spans.push_back(peek().span());
        cmd.operands.push_back(parse_operand(spec.rule));
        ++count;
      }
      if (static_cast<int>(count) != spec.arity) {
        fail(join(name_span, peek().span()), name + " expects " + std::to_string(spec.arity) + " argument" +
                                                 (spec.arity == 1 ? "" : "s") + ", got " + std::to_string(count));
      }
    }
    const Token& close = expect(')', "to close argument list");
    cmd.span = join(name_span, close.span());
    cmd.text = source_text(begin, pos_);
    return cmd;
  }

  Operand parse_operand(Rule rule) {
    const std::size_t begin = pos_;
    Operand op{peek().span(), "", std::nullopt, std::nullopt, std::nullopt};
    for (;;) {
      const Token& t = next();
      if (t.kind != Tok::Ident) fail(t.span(), "expected a declared name" + describe(t));
      auto add_form = [&](Form f) {
        if (op.form) fail(t.span(), "argument already has a form part");
        op.form.emplace(std::move(f));
      };
      if (t.text == "theta") {
        add_form(theta(*bundle_));
      } else if (t.text == "omega") {
        add_form(omega(*bundle_));
      } else {
        auto kind = kinds_.find(t.text);
        if (kind == kinds_.end()) fail(t.span(), "'" + t.text + "' is not declared");
        if (kind->second == "vf") {
          if (op.field) fail(t.span(), "argument already has a vector field part");
          op.field.emplace(vfs_.at(t.text));
        } else if (kind->second == "hform") {
          if (op.horizontal) fail(t.span(), "argument already has a horizontal part");
          op.horizontal.emplace(hforms_.at(t.text));
        } else {
          add_form(forms_.at(t.text));
        }
      }
      if (!peek().is('+')) break;
      next();
    }
    op.span = join(op.span, previous().span());
    op.text = source_text(begin, pos_);
    validate_operand(op, rule);
    return op;
  }

  void validate_operand(const Operand& op, Rule rule) {
    const int n = space_->n();
    const bool sum = (op.field ? 1 : 0) + (op.horizontal ? 1 : 0) + (op.form ? 1 : 0) > 1;
    auto form_degree_ok = [&](int deg) { return op.form->is_zero() || op.form->degree() == deg; };
    switch (rule) {
      case Rule::None:
      case Rule::Eval:
        return;
      case Rule::Field:
        if (!op.field || sum) fail(op.span, "expected a single vector field");
        return;
      case Rule::FieldOrHam:
        if (op.field && !sum) return;
        break;
      case Rule::Pair:
        if (!op.is_triple()) {
          if (op.form->degree() > n) fail(op.span, "form degree exceeds n");
          return;
        }
        break;
      default:
        break;
    }
    if (op.is_triple()) {
      if (op.form) {
        if (!form_degree_ok(n - 1)) fail(op.span, "closed part of a Hamiltonian form must have degree n-1");
        if (!is_closed(*op.form)) fail(op.span, "third contribution '" + op.text + "' contains a form that is not closed");
        if (rule == Rule::Triple && !op.form->is_zero()) {
          fail(op.span, "bracket-coords needs generator triples without a closed part");
        }
      }
      return;
    }
    if (rule == Rule::Triple) fail(op.span, "bracket-coords needs a generator triple (vf and/or hform)");
    if (!form_degree_ok(n - 1)) {
      fail(op.span, "expected an (n-1)-form, got degree " + std::to_string(op.form->degree()));
    }
  }

  void parse_eval_args(Command& cmd) {
    const Space& s = *space_;
    const Token& first = peek();
    if (first.kind == Tok::Ident && (kinds_.count(first.text) || first.text == "theta" || first.text == "omega") &&
        (peek(1).is(',') || peek(1).is(')'))) {
      cmd.operands.push_back(parse_operand(Rule::Eval));
    } else {
      cmd.poly = parse_poly();
    }
    std::vector<std::optional<Rational>> values(s.dim());
    std::optional<Rational> rest;
    while (peek().is(',')) {
      next();
      const Token& var = next();
      std::optional<std::size_t> index;
      if (var.is_ident("rest")) {
        // handled below
      } else if (var.kind == Tok::Ident && var.text == "p" && peek().is('[')) {
        auto [i, mu] = parse_momentum_indices(var);
        index = s.momentum_index(i, mu);
      } else if (var.kind == Tok::Ident) {
        if (auto mu = suffix_index(var.text, "x"); mu && *mu >= 1 && *mu <= s.n()) {
          index = s.base_index(*mu);
        } else if (auto i = suffix_index(var.text, "q"); i && *i >= 1 && *i <= s.N()) {
          index = s.fiber_index(*i);
        } else if (var.text == "en") {
          index = s.energy_index();
        } else {
          fail(var.span(), "unknown coordinate '" + var.text + "' for " + to_string(s));
        }
      } else {
        fail(var.span(), "expected coordinate assignment" + describe(var));
      }
      expect('=', "in coordinate assignment");
      Span value_span = peek().span();
      Poly value = parse_poly();
      auto constant = value.constant_value();
      if (!constant) fail(join(value_span, previous().span()), "assigned value must be a rational constant");
      if (!index) {
        if (rest) fail(var.span(), "duplicate assignment for rest");
        rest = *constant;
      } else {
        if (values[*index]) fail(var.span(), "duplicate assignment for " + s.variable_name(*index));
        values[*index] = *constant;
      }
    }
    std::vector<Rational> filled;
    for (std::size_t v = 0; v < s.dim(); ++v) {
      if (!values[v] && !rest) {
        fail(join(first.span(), previous().span()),
             "incomplete point: no value for " + s.variable_name(v) + " (use rest=<value> for the others)");
      }
      filled.push_back(values[v] ? *values[v] : *rest);
    }
    cmd.point.emplace(s, std::move(filled));
  }

  std::string_view src_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<Diagnostic>& diags_;
  std::optional<Space> space_;
  std::optional<Bundle> bundle_;
  std::map<std::string, std::string> kinds_;
  std::map<std::string, ProjectableVF> vfs_;
  std::map<std::string, HorizontalNm1Form> hforms_;
  std::map<std::string, Form> forms_;
};

}  // namespace

std::string format(const Diagnostic& d) {
  std::ostringstream out;
  out << d.span.line << ':' << d.span.column << '-' << d.span.end_column << ": "
      << (d.severity == Severity::Error ? "error" : "warning") << ": " << d.message;
  return out.str();
}

ParseResult parse(std::string_view text) {
  ParseResult result;
  std::vector<Token> tokens = lex(text, result.diagnostics);
  Parser parser(text, std::move(tokens), result.diagnostics);
  std::optional<Script> script = parser.run();
  bool errors = false;
  for (const auto& d : result.diagnostics) errors = errors || d.severity == Severity::Error;
  if (!errors) result.script = std::move(script);
  return result;
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, spec] : command_table()) out.push_back(name);
    return out;
  }();
  return names;
}

}  // namespace msymp::script
