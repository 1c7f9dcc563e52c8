#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "besselrg/core.hpp"
#include "besselrg/rgflow.hpp"

namespace besselrg::cli {

enum class OutputFormat { Csv, Json };

struct RunConfig {
  std::string command;  // flow, fixed-points, spectrum, converge, transform, phase-diagram
  std::optional<double> alpha;
  FlowKind flow = FlowKind::Dirichlet;

  // Boundary datum; which one applies depends on the phase.
  Representation representation = Representation::Position;
  std::optional<ExtendedReal> kappa;
  std::optional<double> kappa_phase;  // unimodular kappa = exp(i*phase)
  std::optional<ExtendedReal> nu;

  std::vector<double> lambda_ladder;
  std::optional<double> lambda0;  // flow start; defaults to the first ladder entry
  std::optional<double> value0;   // flow start value; defaults to the datum's coupling
  bool cross_blow_ups = true;
  double rel_tol = 1e-12;

  GridScheme grid = GridScheme::LogSpaced;
  std::optional<std::size_t> n_nodes;
  std::optional<double> p_min;

  std::string spectrum_mode = "both";  // exact, numeric, both
  double energy_min = -1e6;
  double energy_max = -1e-6;

  std::string transform_kind = "sine";    // sine, cosine
  std::string transform_function = "exp";  // exp, gauss, power
  double exponent = -0.5;
  std::vector<double> points;

  std::vector<double> alphas;

  std::optional<std::string> out;
  OutputFormat format = OutputFormat::Csv;

  bool operator==(const RunConfig&) const = default;
};

std::string serialize_config(const RunConfig& config);
// ConfigError on malformed JSON or unknown enum tokens.
RunConfig parse_config(const std::string& text);

// ConfigError when the config cannot drive its command.
void validate_config(const RunConfig& config);

// "1,10,100" or "log:a:b:n" (n geometric points from a to b).
std::vector<double> parse_ladder(const std::string& text);

FlowKind parse_flow(const std::string& text);
GridScheme parse_grid(const std::string& text);
OutputFormat parse_format(const std::string& text);

struct CommandResult {
  std::string output;
  int exit_code = 0;
  std::string message;  // for stderr
};

// Validates, dispatches on config.command and formats the output.  Numerical
// events end in exit code 2 with whatever was computed up to that point.
CommandResult run_command(const RunConfig& config);

std::string format_double(double v);

}  // namespace besselrg::cli
