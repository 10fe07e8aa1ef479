#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "divis/report.hpp"

namespace {

bool read_input(const std::string& path, std::string& out) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    out = ss.str();
    return true;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"divisibility analysis of finitely supported probability measures"};
  app.fallthrough();
  app.require_subcommand(1);

  divis::Options opt;
  bool as_text = false;
  app.add_option("--t-max", opt.t_max, "largest exponent probed")->capture_default_str();
  app.add_option("--n-max", opt.n_max, "largest rational denominator probed")
      ->capture_default_str();
  app.add_option("--mesh", opt.mesh, "uniform probe spacing")->capture_default_str();
  app.add_option("--grid", opt.grid, "dual sampling size, rounded up as the group needs")
      ->capture_default_str();
  double window = 0.0;
  auto* window_opt =
      app.add_option("--window", window, "half-width of the dual window (lattice measures)");
  app.add_flag("--json", "emit the report as JSON (the default)");
  app.add_flag("--text", as_text, "render the report as indented text instead");
  app.add_option("--seed", opt.seed, "seed forwarded to randomized harnesses");

  std::string spec_path;
  const auto add_spec = [&](CLI::App* sub) {
    sub->add_option("spec", spec_path, "measure spec JSON path, or - for stdin")->required();
  };

  auto* analyze =
      app.add_subcommand("analyze", "admissibility, constraints, and a divisibility scan");
  add_spec(analyze);
  auto* lscan = app.add_subcommand("lambda-scan", "membership verdicts over the exponent grid");
  add_spec(lscan);
  auto* roots = app.add_subcommand("roots", "convolution roots");
  add_spec(roots);
  int root_n = 2;
  roots->add_option("--n", root_n, "root index")->capture_default_str();
  auto* winding = app.add_subcommand("winding", "phase winding and the exponent constraints");
  add_spec(winding);
  auto* t0 = app.add_subcommand("t0", "zero orders and the exponent lower bound");
  add_spec(t0);

  auto* z2 = app.add_subcommand("z2", "closed-form root weight on Z_2");
  double alpha = 0.0;
  int z2_n = 1;
  z2->add_option("--alpha", alpha, "weight of the point 0")->required();
  z2->add_option("--n", z2_n, "root index")->required();

  auto* d1 = app.add_subcommand("delta1", "exponent membership for the shift on Z_N");
  std::int64_t modulus = 0;
  std::string q_text;
  d1->add_option("--modulus", modulus, "group order N")->required();
  d1->add_option("--q", q_text, "exponent as m/l")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  opt.json = !as_text;
  if (*window_opt) opt.window = window;

  CLI::App* chosen = app.get_subcommands().front();
  const std::string command = chosen->get_name();

  std::string spec_text;
  if (chosen != z2 && chosen != d1) {
    if (!read_input(spec_path, spec_text)) {
      std::cerr << "cannot read spec input: " << spec_path << "\n";
      return 1;
    }
  }
  if (chosen == roots) opt.root_n = root_n;
  if (chosen == z2) {
    opt.alpha = alpha;
    opt.z2_n = z2_n;
  }
  if (chosen == d1) {
    opt.modulus = modulus;
    opt.q = q_text;
  }

  const divis::RunResult result = divis::run(command, spec_text, opt);
  std::cout << result.output;
  return result.exit_code;
}
