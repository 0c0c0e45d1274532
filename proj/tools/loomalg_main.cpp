#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "loomalg/dsl/parser.hpp"
#include "loomalg/dsl/printer.hpp"
#include "loomalg/dsl/runner.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAnalysis = 1;
constexpr int kExitParse = 2;

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

std::vector<long> parse_box(const std::string& text) {
  std::vector<long> r;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t used = 0;
    const long v = std::stol(item, &used);
    if (used != item.size() || v < 0) throw std::invalid_argument(item);
    r.push_back(v);
  }
  if (r.empty()) throw std::invalid_argument(text);
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace loomalg::dsl;
  CLI::App app{"loomalg: exact analysis of loop and multiloop algebras"};
  app.require_subcommand(1);

  std::string file, json_out, box_text;
  unsigned seed = 1;
  bool fail_fast = false, in_place = false;

  auto* run_cmd = app.add_subcommand("run", "Execute the commands of a .loom file");
  run_cmd->add_option("FILE", file, "Source file")->required();
  run_cmd->add_option("--box", box_text, "Window radii R1,R2,... (one value is broadcast)");
  run_cmd->add_option("--seed", seed, "Seed for Cartan search and sampling");
  run_cmd->add_flag("--fail-fast", fail_fast, "Stop at the first failing command");
  run_cmd->add_option("--json", json_out, "Write the JSON report to this path ('-' for stdout)");

  auto* fmt_cmd = app.add_subcommand("fmt", "Print a .loom file in canonical layout");
  fmt_cmd->add_option("FILE", file, "Source file")->required();
  fmt_cmd->add_flag("--in-place,-i", in_place, "Rewrite the file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParse;
  }

  std::string source;
  if (!read_file(file, source)) {
    std::cerr << file << ": cannot read file\n";
    return kExitParse;
  }
  const ParseResult parsed = parse(source);
  std::cerr << render_diagnostics(parsed.diagnostics, source, file);

  if (*fmt_cmd) {
    if (!parsed.ok()) return kExitParse;
    const std::string text = print(parsed.document);
    if (!in_place) {
      std::cout << text;
      return kExitOk;
    }
    std::ofstream out(file, std::ios::binary);
    out << text;
    return out ? kExitOk : kExitParse;
  }

  RunOptions options;
  options.seed = seed;
  options.fail_fast = fail_fast;
  options.source_name = file;
  if (!box_text.empty()) {
    try {
      options.box = parse_box(box_text);
    } catch (const std::exception&) {
      std::cerr << "--box: expected comma-separated nonnegative integers, got '" << box_text << "'\n";
      return kExitParse;
    }
  }

  const Json report = parsed.ok() ? run(parsed.document, options) : diagnostics_report(parsed.diagnostics, file);
  if (json_out == "-") {
    std::cout << report.dump(2) << "\n";
  } else {
    if (!json_out.empty()) {
      std::ofstream out(json_out, std::ios::binary);
      out << report.dump(2) << "\n";
      if (!out) {
        std::cerr << json_out << ": cannot write report\n";
        return kExitParse;
      }
    }
    if (parsed.ok()) std::cout << render_text(report);
  }
  if (!parsed.ok()) return kExitParse;
  return report["ok"].get<bool>() ? kExitOk : kExitAnalysis;
}
