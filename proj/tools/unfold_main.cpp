#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "unfold/dsl/demo.hpp"
#include "unfold/dsl/desugar.hpp"
#include "unfold/dsl/parser.hpp"
#include "unfold/dsl/runner.hpp"

namespace {

using namespace unfold::dsl;

constexpr int kExitParse = 2;

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buf;
  buf << in.rdbuf();
  out = buf.str();
  return true;
}

void print(const Report& r, const std::string& format) {
  std::cout << (format == "json" ? format_json(r) : format_text(r));
}

int check(const std::string& path, bool trace, const std::string& format,
          std::uint64_t seed) {
  std::string source;
  if (!read_file(path, source)) {
    std::cerr << path << ": cannot read file\n";
    return kExitParse;
  }
  Scenario s;
  try {
    s = parse_scenario(source);
    desugar_scenario(s);
  } catch (const DslError& e) {
    std::cerr << path << ":" << e.what() << "\n";
    return kExitParse;
  }
  RunOptions options;
  options.seed = seed;
  if (trace) options.trace = [](const std::string& line) { std::cerr << line << "\n"; };
  const Report r = run_scenario(s, options);
  print(r, format);
  return r.exit_code();
}

int desugar_file(const std::string& path, const std::string& out_path) {
  std::string source;
  if (!read_file(path, source)) {
    std::cerr << path << ": cannot read file\n";
    return kExitParse;
  }
  std::string text;
  try {
    text = desugar_scenario(parse_scenario(source));
  } catch (const DslError& e) {
    std::cerr << path << ":" << e.what() << "\n";
    return kExitParse;
  }
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return 0;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << out_path << ": cannot write file\n";
    return kExitParse;
  }
  out << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Runtime-checked higher-order iterator specifications"};
  app.require_subcommand(1);

  std::string scenario, format = "text", spec, out;
  bool trace = false;
  std::uint64_t seed = 0;

  auto* check_cmd = app.add_subcommand("check", "Run a scenario file");
  check_cmd->add_option("scenario-file", scenario)->required();
  check_cmd->add_flag("--trace", trace, "Print every invariant, variant and next event");
  check_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  check_cmd->add_option("--seed", seed, "Seed for random collections");

  auto* desugar_cmd = app.add_subcommand("desugar", "Print the first-order skeleton");
  desugar_cmd->add_option("spec-file", spec)->required();
  desugar_cmd->add_option("-o", out, "Output file");

  auto* demo_cmd = app.add_subcommand("demo", "Run the built-in case studies");
  demo_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitParse;
  }

  if (*check_cmd) return check(scenario, trace, format, seed);
  if (*desugar_cmd) return desugar_file(spec, out);
  const Report r = run_demo();
  print(r, format);
  return r.exit_code();
}
