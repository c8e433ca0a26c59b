#pragma once

// The msymp script language: a bundle declaration, declarations of vector
// fields, horizontal forms and forms, and commands that run the library.
//
//   bundle(2,1)
//   vf X = { dq1: 1 }
//   hform F = { mu1: q1^2 }
//   form c = d { dx2: q1*x1 }
//   momentum(X)
//   bracket(X + F, X)

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "msymp/bracket.hpp"

namespace msymp::script {

/// 1-based line and columns; the column range is [column, end_column).
struct Span {
  int line = 1;
  int column = 1;
  int end_column = 2;
};

enum class Severity : std::uint8_t { Error, Warning };

struct Diagnostic {
  Severity severity;
  Span span;
  std::string message;
};

std::string format(const Diagnostic& d);

/// A sum of declared identifiers, at most one of each kind. A vector field
/// or horizontal form makes it a generator triple.
struct Operand {
  Span span;
  std::string text;
  std::optional<ProjectableVF> field;
  std::optional<HorizontalNm1Form> horizontal;
  std::optional<Form> form;

  bool is_triple() const { return field.has_value() || horizontal.has_value(); }
};

struct Command {
  std::string name;
  std::string text;  ///< source text of the whole command
  Span span;
  std::vector<Operand> operands;
  std::optional<Poly> poly;          ///< eval of an inline polynomial
  std::optional<Point> point;        ///< eval point
};

struct Script {
  Bundle bundle;
  std::size_t statement_count = 0;  ///< bundle, declarations and commands
  std::vector<std::string> declared;
  std::vector<Command> commands;
};

struct ParseResult {
  std::optional<Script> script;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return script.has_value(); }
};

/// Lexes, parses and validates. On failure `script` is empty and at least one
/// error diagnostic is present.
ParseResult parse(std::string_view text);

enum class ExitCode : int { Clean = 0, VerdictFailure = 1, Error = 2 };

struct ExecResult {
  std::string output;
  ExitCode exit_code;
};

/// Runs every command in order. Each command prints "> <source>", its
/// result, and a "status:" line.
ExecResult execute(const Script& s);

/// Names of the commands the language accepts.
const std::vector<std::string>& command_names();

}  // namespace msymp::script
