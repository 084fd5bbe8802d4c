#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "supermech/problem.hpp"
#include "supermech/report.hpp"

using namespace supermech;

namespace {

bool read_file(const std::string& path, std::string& text) {
  std::ifstream in(path);
  if (!in) return false;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  text = buffer.str();
  return true;
}

template <typename Run>
int with_problem(const std::string& path, Run run) {
  std::string text;
  if (!read_file(path, text)) {
    std::cerr << "supermech: cannot read " << path << "\n";
    return 2;
  }
  Report report;
  try {
    report = run(parse_problem(text));
  } catch (const ParseError& e) {
    std::cerr << path << ":" << e.what() << "\n";
    report = parse_failure(e);
  } catch (const Error& e) {
    std::cerr << "supermech: " << error_kind(e) << ": " << e.what() << "\n";
    return 1;
  }
  std::cout << report.output;
  return report.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Higher-order Lagrangian supermechanics"};
  app.require_subcommand(1);

  std::string file;
  std::string emit = "json";
  auto* derive = app.add_subcommand("derive", "Cartan forms, energy and equations of motion");
  derive->add_option("file", file, "problem file")->required();
  derive->add_option("--emit", emit, "output format")->check(CLI::IsMember({"json", "latex"}));

  NoetherRequest request;
  auto* noether = app.add_subcommand("noether", "Noether charge of a symmetry, or the symmetry of a charge");
  noether->add_option("file", file, "problem file")->required();
  auto* sym = noether->add_option("--symmetry", request.symmetry, "symmetry block name");
  auto* charge = noether->add_option("--from-charge", request.charge, "constant of motion");
  sym->excludes(charge);
  noether->callback([&] {
    if (!request.symmetry && !request.charge) {
      throw CLI::ValidationError("noether needs --symmetry or --from-charge");
    }
  });

  SimulateOptions options;
  auto* simulate = app.add_subcommand("simulate", "RK4 run with a conservation report");
  simulate->add_option("file", file, "problem file")->required();
  simulate->add_option("--tol", options.tolerance, "drift tolerance")->check(CLI::PositiveNumber);
  simulate->add_option("--trajectory", options.trajectory_path, "write trajectory rows to this path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (derive->parsed()) {
    Emit mode = emit == "latex" ? Emit::latex : Emit::json;
    return with_problem(file, [&](const ProblemFile& p) { return run_derive(p, mode); });
  }
  if (noether->parsed()) {
    return with_problem(file, [&](const ProblemFile& p) { return run_noether(p, request); });
  }
  return with_problem(file, [&](const ProblemFile& p) { return run_simulate(p, options); });
}
