#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "chainlattice/commands.hpp"

namespace cli = chainlattice::cli;

int main(int argc, char** argv) {
  CLI::App app{"Ground states of 1D particle chains: equidistant vs bipartite"};
  app.require_subcommand(1);

  cli::Options opt;
  std::string out_path;

  struct Entry {
    const char* name;
    const char* help;
  };
  const Entry entries[] = {
      {"energy-curve", "ground-state and equidistant energy versus A"},
      {"phase-diagram", "critical A_c versus n at fixed m"},
      {"amin-limit", "A_min in the limit n -> m+ versus m"},
      {"delta-sweep", "stationary Delta versus A"},
      {"beta-fit", "order-parameter exponent fit near A_c"},
      {"hardcore-sweep", "constrained Delta versus A with a hard core"},
      {"tau-fit", "junction A* versus sigma - 1 and its exponent"},
      {"validate", "cross-validation report"},
  };
  for (const auto& e : entries) {
    auto* sub = app.add_subcommand(e.name, e.help);
    sub->add_option("--potential", opt.potential, "mie:n=..,m=..[,sigma=..] or riesz:c=..,s=..;..");
    sub->add_option("--a", opt.a, "A grid start:stop:count[:log]");
    sub->add_option("--sigma", opt.sigma, "hard-core radius");
    sub->add_option("--window", opt.window, "fit window lo:hi");
    sub->add_option("--points", opt.points, "number of fit points");
    sub->add_option("--digits", opt.digits, "significant digits in CSV output");
    sub->add_option("--out", out_path, "output file (default stdout)");
    sub->add_flag("--quick", opt.quick, "reduced validation subset");
    sub->add_option("--m", opt.m, "attractive exponent (phase-diagram)");
    sub->add_option("--n", opt.n, "n grid start:stop:count[:log] (phase-diagram)");
    sub->add_option("--m-grid", opt.m_grid, "m grid start:stop:count[:log] (amin-limit)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kExitOk : cli::kExitUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  if (out_path.empty()) return cli::run(command, opt, std::cout, std::cerr);
  std::ofstream file(out_path, std::ios::binary);
  if (!file) {
    std::cerr << "error: cannot open " << out_path << '\n';
    return cli::kExitUsage;
  }
  const int status = cli::run(command, opt, file, std::cerr);
  file.flush();
  if (!file) {
    std::cerr << "error: write to " << out_path << " failed\n";
    return cli::kExitFailure;
  }
  return status;
}
