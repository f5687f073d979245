#include "bdivisor/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  using bdivisor::cli::OutputFormat;
  using bdivisor::cli::RunConfig;

  CLI::App app{"Exact and numeric checks for the theta^8 b-divisor on E(N)"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string tol;
  std::string format = "json";
  std::string method = "exact";
  std::string out_file;

  const std::vector<std::pair<std::string, std::string>> commands{
      {"surface", "Invariants of the level and the base model"},
      {"tower", "Blow-up tower: recursion vs lattice, limit with tail bound"},
      {"zeta", "Tornheim sums and their Moebius factorization"},
      {"dim", "Jacobi cusp form dimensions against the Hilbert-Samuel target"},
      {"theta-check", "Theta oddness and invariance of the theta^8 norm"},
      {"residue", "Residue integral and the residue bookkeeping"},
      {"toric", "Volume of the toric stability set"},
      {"verify-all", "Every acceptance check; one consolidated report"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--level", cfg.level, "Level N >= 3")->capture_default_str();
    sub->add_option("--depth", cfg.depth, "Tower depth")->capture_default_str();
    sub->add_option("--window", cfg.window, "Summation window")->capture_default_str();
    sub->add_option("--ell", cfg.ells, "Values of ell for dim")->delimiter(',')->capture_default_str();
    sub->add_option("--tol", tol, "Replace every non-exact bound by this tolerance");
    sub->add_option("--precision", cfg.precision_digits, "Working precision in decimal digits")->capture_default_str();
    sub->add_option("--seed", cfg.seed, "Seed for sampled checks")->capture_default_str();
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    sub->add_option("--out", out_file, "Write the report to FILE");
    if (name == "toric") {
      sub->add_option("--method", method, "exact, quadrature or montecarlo")
          ->check(CLI::IsMember({"exact", "quadrature", "montecarlo"}))
          ->capture_default_str();
      sub->add_option("--panels", cfg.quadrature_panels, "Quadrature panels")->capture_default_str();
      sub->add_option("--samples", cfg.monte_carlo_samples, "Monte Carlo samples")->capture_default_str();
    }
    if (name == "residue") sub->add_option("--epsilon", cfg.epsilon, "Disk radius")->capture_default_str();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    if (app.get_subcommands().empty()) std::cerr << app.help();
    return 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  if (!tol.empty()) cfg.tolerance = tol;
  cfg.format = format == "csv" ? OutputFormat::Csv : OutputFormat::Json;
  cfg.method = *bdivisor::analysis::parse_volume_method(method);
  std::optional<std::string> out;
  if (!out_file.empty()) out = out_file;
  return bdivisor::cli::run_command(command, cfg, std::cout, std::cerr, out);
}
