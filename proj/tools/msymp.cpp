#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "msymp/script.hpp"
#include "msymp/selftest.hpp"

namespace {

bool read_file(const std::string& path, std::string& text) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buf;
  buf << in.rdbuf();
  text = buf.str();
  return true;
}

int report(const std::string& path, const msymp::script::ParseResult& parsed) {
  for (const auto& d : parsed.diagnostics) std::cerr << path << ':' << msymp::script::format(d) << '\n';
  return parsed.ok() ? 0 : 2;
}

int run_file(const std::string& path, bool execute) {
  std::string text;
  if (!read_file(path, text)) {
    std::cerr << "msymp: cannot read " << path << '\n';
    return 2;
  }
  auto parsed = msymp::script::parse(text);
  if (int code = report(path, parsed); code != 0) return code;
  if (!execute) {
    std::cout << path << ": ok, " << parsed.script->statement_count << " statements\n";
    return 0;
  }
  auto result = msymp::script::execute(*parsed.script);
  std::cout << result.output;
  return static_cast<int>(result.exit_code);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact exterior calculus on multisymplectic phase space"};
  app.require_subcommand(1);

  std::string run_path;
  auto* run = app.add_subcommand("run", "Run a script and print every result");
  run->add_option("file", run_path, "Script file")->required();

  std::string check_path;
  auto* check = app.add_subcommand("check", "Parse and validate a script without running it");
  check->add_option("file", check_path, "Script file")->required();

  int instances = 3;
  auto* selftest = app.add_subcommand("selftest", "Check the identity suite on bundles (1,1), (2,1), (2,2)");
  selftest->add_option("--instances", instances, "Random instances per identity and bundle")->check(CLI::Range(1, 100));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return run_file(run_path, true);
    if (*check) return run_file(check_path, false);
    msymp::SelftestReport r = msymp::run_selftest(instances);
    std::cout << r.table();
    return r.all_passed() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "msymp: internal error: " << e.what() << '\n';
    return 2;
  }
}
