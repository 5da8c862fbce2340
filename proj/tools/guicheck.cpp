// guicheck: checks rendered-shape traces against GUI layout specifications.
//
// Exit codes: 0 every checked spec satisfied, 1 at least one violated,
// 2 usage/parse/resolve error, 3 internal error or exceeded budget.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "guicheck/guicheck.hpp"

namespace {

constexpr int kExitSatisfied = 0;
constexpr int kExitViolated = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw guicheck::LoadError(guicheck::LoadError::Kind::Io,
                              "cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct CommonOptions {
  std::string spec_path;
  std::string trace_path;
  std::string spec_name;
  std::vector<std::string> lib_dirs;
  bool lib_override = false;
  std::uint64_t budget = 1'000'000;
};

void add_common_options(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--spec", opts.spec_path, "specification file (.gspec)")->required();
  cmd->add_option("--trace", opts.trace_path, "trace file (.gtrace)")->required();
  cmd->add_option("--name", opts.spec_name,
                  "spec to check (default: every spec in the file)");
  cmd->add_option("--lib", opts.lib_dirs, "library directory of .gspec files (repeatable)");
  cmd->add_flag("--lib-override", opts.lib_override,
                "allow library directories to shadow built-in specs");
  cmd->add_option("--budget", opts.budget, "tuple budget for concrete expansions")
      ->check(CLI::PositiveNumber);
}

struct Inputs {
  guicheck::SpecDoc doc;
  guicheck::Library lib;
  guicheck::TraceDoc trace;
  std::vector<std::string> names;
};

Inputs load_inputs(const CommonOptions& opts) {
  Inputs in;
  try {
    in.doc = guicheck::parse_specs(read_file(opts.spec_path));
  } catch (const guicheck::ParseError& e) {
    throw guicheck::LoadError(guicheck::LoadError::Kind::Parse,
                              opts.spec_path + ":" + e.what());
  }
  try {
    in.trace = guicheck::parse_trace(read_file(opts.trace_path));
  } catch (const guicheck::ParseError& e) {
    throw guicheck::LoadError(guicheck::LoadError::Kind::Parse,
                              opts.trace_path + ":" + e.what());
  }
  std::vector<std::filesystem::path> dirs(opts.lib_dirs.begin(), opts.lib_dirs.end());
  in.lib = guicheck::load_library(dirs, opts.lib_override);
  if (!opts.spec_name.empty()) {
    in.names.push_back(opts.spec_name);
  } else {
    for (const guicheck::Spec& spec : in.doc.specs) in.names.push_back(spec.name);
    if (in.names.empty())
      throw guicheck::LoadError(guicheck::LoadError::Kind::Parse,
                                opts.spec_path + ": no specifications found");
  }
  return in;
}

int run_check(const CommonOptions& opts, bool verbose, const std::string& report_path) {
  Inputs in = load_inputs(opts);
  guicheck::SolveOptions solve_opts;
  solve_opts.tuple_budget = opts.budget;

  bool any_violated = false;
  std::string report;
  for (const std::string& name : in.names) {
    guicheck::FlattenedSpec spec = guicheck::resolve_spec(name, in.doc, in.lib);
    guicheck::Verdict verdict = guicheck::check_spec(spec, in.trace, solve_opts);
    if (verbose) std::cout << guicheck::render_log(verdict.log);
    std::cout << name << ": " << (verdict.satisfied ? "SATISFIED" : "VIOLATED") << "\n";
    if (!verdict.satisfied) {
      std::cerr << name << ": specification not met\n";
      any_violated = true;
    }
    if (!report_path.empty())
      report += guicheck::render_report(spec, verdict, in.trace);
  }
  if (!report_path.empty()) {
    std::ofstream out(report_path, std::ios::binary);
    if (!out)
      throw guicheck::LoadError(guicheck::LoadError::Kind::Io,
                                "cannot write " + report_path);
    out << report;
  }
  return any_violated ? kExitViolated : kExitSatisfied;
}

int run_oracle(const CommonOptions& opts, bool enumerate) {
  Inputs in = load_inputs(opts);
  bool any_violated = false;
  for (const std::string& name : in.names) {
    guicheck::FlattenedSpec spec = guicheck::resolve_spec(name, in.doc, in.lib);
    guicheck::OracleResult result = guicheck::brute_force_check(spec, in.trace, opts.budget);
    std::cout << name << ": " << (result.satisfied ? "SATISFIED" : "VIOLATED") << "\n";
    if (enumerate) {
      for (const guicheck::Assignment& a : result.assignments)
        std::cout << guicheck::tuple_to_string(guicheck::CandidateTuple{a}, spec, in.trace)
                  << "\n";
    }
    if (!result.satisfied) {
      std::cerr << name << ": specification not met\n";
      any_violated = true;
    }
  }
  return any_violated ? kExitViolated : kExitSatisfied;
}

int run_fmt(const std::string& path) {
  guicheck::SpecDoc doc;
  try {
    doc = guicheck::parse_specs(read_file(path));
  } catch (const guicheck::ParseError& e) {
    throw guicheck::LoadError(guicheck::LoadError::Kind::Parse, path + ":" + e.what());
  }
  std::cout << guicheck::print_specs(doc);
  return kExitSatisfied;
}

int run_stdlib_list() {
  for (const std::string& name : guicheck::builtin_library().names())
    std::cout << name << "\n";
  return kExitSatisfied;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"guicheck: GUI layout specification checker"};
  app.require_subcommand(1);

  CommonOptions check_opts;
  bool verbose = false;
  std::string report_path;
  CLI::App* check = app.add_subcommand("check", "check a trace against specifications");
  add_common_options(check, check_opts);
  check->add_flag("--verbose", verbose, "print the full solver log");
  check->add_option("--report", report_path, "write the machine report to this file");

  CommonOptions oracle_opts;
  bool enumerate = false;
  CLI::App* oracle =
      app.add_subcommand("oracle", "brute-force check (debugging reference)");
  add_common_options(oracle, oracle_opts);
  oracle->add_flag("--enumerate", enumerate, "list every satisfying assignment");

  std::string fmt_path;
  CLI::App* fmt = app.add_subcommand("fmt", "pretty-print a .gspec file");
  fmt->add_option("file", fmt_path, "specification file")->required();

  CLI::App* stdlib = app.add_subcommand("stdlib", "built-in specification library");
  CLI::App* stdlib_list = stdlib->add_subcommand("list", "list built-in spec names");
  stdlib->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (check->parsed()) return run_check(check_opts, verbose, report_path);
    if (oracle->parsed()) return run_oracle(oracle_opts, enumerate);
    if (fmt->parsed()) return run_fmt(fmt_path);
    if (stdlib_list->parsed()) return run_stdlib_list();
    return kExitUsage;
  } catch (const guicheck::EvalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == guicheck::EvalError::Kind::BudgetExceeded ? kExitInternal
                                                                 : kExitUsage;
  } catch (const guicheck::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const guicheck::ResolveError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const guicheck::LoadError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
