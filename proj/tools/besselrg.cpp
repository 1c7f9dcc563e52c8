#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "besselrg/cli.hpp"

using namespace besselrg;
using namespace besselrg::cli;

int main(int argc, char** argv) {
  CLI::App app{"Bessel operator realizations through a cutoff-plus-counterterm flow"};
  app.require_subcommand(0, 1);
  app.fallthrough();

  std::string config_path, flow, kappa, nu, ladder, grid, out, format, mode, kind, function, points,
      alphas, representation;
  std::optional<double> alpha, kappa_phase, lambda0, value0, rel_tol, p_min, energy_min, energy_max,
      exponent;
  std::optional<std::size_t> n_nodes;
  std::optional<bool> cross;
  bool print_config = false;

  app.add_option("--config", config_path, "JSON run config")->check(CLI::ExistingFile);
  app.add_option("--alpha", alpha, "alpha = m^2");
  app.add_option("--flow", flow, "dirichlet or neumann");
  app.add_option("--representation", representation, "position, momentum-dirichlet or momentum-neumann");
  app.add_option("--kappa", kappa, "real boundary datum (\"inf\" allowed)");
  app.add_option("--kappa-phase,--kappa-arg", kappa_phase, "phase of the unimodular datum (alpha < 0)");
  app.add_option("--nu", nu, "boundary datum at alpha = 0 (\"inf\" allowed)");
  app.add_option("--lambda-ladder", ladder, "comma list or log:a:b:n");
  app.add_option("--lambda0", lambda0, "flow start scale");
  app.add_option("--value0", value0, "flow start value");
  app.add_option("--cross-blow-ups", cross, "continue flows through poles (true/false)");
  app.add_option("--rel-tol", rel_tol, "ODE relative tolerance");
  app.add_option("--grid", grid, "uniform, log or gauss");
  app.add_option("--n-nodes", n_nodes, "momentum grid size");
  app.add_option("--p-min", p_min, "smallest node of the log grid");
  app.add_option("--mode", mode, "spectrum: exact, numeric or both");
  app.add_option("--energy-min", energy_min, "lower end of the exact-spectrum window");
  app.add_option("--energy-max", energy_max, "upper end of the exact-spectrum window");
  app.add_option("--kind", kind, "transform: sine or cosine");
  app.add_option("--function", function, "transform: exp, gauss or power");
  app.add_option("--exponent", exponent, "transform: exponent of the power function");
  app.add_option("--points", points, "transform nodes (comma list or log:a:b:n)");
  app.add_option("--alphas", alphas, "phase-diagram alpha list (comma list)");
  app.add_option("--out", out, "output path (stdout when absent)");
  app.add_option("--format", format, "csv or json");
  app.add_flag("--print-config", print_config, "print the effective config and exit");

  for (const char* name : {"flow", "fixed-points", "spectrum", "converge", "transform", "phase-diagram"})
    app.add_subcommand(name)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  RunConfig config;
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      std::stringstream ss;
      ss << in.rdbuf();
      config = parse_config(ss.str());
    }
    if (!app.get_subcommands().empty()) config.command = app.get_subcommands().front()->get_name();
    if (alpha) config.alpha = alpha;
    if (!flow.empty()) config.flow = parse_flow(flow);
    if (!representation.empty()) {
      RunConfig probe = parse_config("{\"representation\": \"" + representation + "\"}");
      config.representation = probe.representation;
    }
    if (!kappa.empty()) config.kappa = parse_extended_real(kappa);
    if (kappa_phase) config.kappa_phase = kappa_phase;
    if (!nu.empty()) config.nu = parse_extended_real(nu);
    if (!ladder.empty()) config.lambda_ladder = parse_ladder(ladder);
    if (lambda0) config.lambda0 = lambda0;
    if (value0) config.value0 = value0;
    if (cross) config.cross_blow_ups = *cross;
    if (rel_tol) config.rel_tol = *rel_tol;
    if (!grid.empty()) config.grid = parse_grid(grid);
    if (n_nodes) config.n_nodes = n_nodes;
    if (p_min) config.p_min = p_min;
    if (!mode.empty()) config.spectrum_mode = mode;
    if (energy_min) config.energy_min = *energy_min;
    if (energy_max) config.energy_max = *energy_max;
    if (!kind.empty()) config.transform_kind = kind;
    if (!function.empty()) config.transform_function = function;
    if (exponent) config.exponent = *exponent;
    if (!points.empty()) config.points = parse_ladder(points);
    if (!alphas.empty()) config.alphas = parse_ladder(alphas);
    if (!out.empty()) config.out = out;
    if (!format.empty()) config.format = parse_format(format);
  } catch (const besselrg::Error& e) {
    std::cerr << "besselrg: " << e.what() << "\n";
    return 1;
  }

  if (print_config) {
    std::cout << serialize_config(config);
    return 0;
  }

  const CommandResult res = run_command(config);
  if (config.out && res.exit_code != 1) {
    std::ofstream f(*config.out, std::ios::binary);
    if (!f) {
      std::cerr << "besselrg: cannot write " << *config.out << "\n";
      return 1;
    }
    f << res.output;
  } else {
    std::cout << res.output;
  }
  if (!res.message.empty()) std::cerr << "besselrg: " << res.message << "\n";
  return res.exit_code;
}
