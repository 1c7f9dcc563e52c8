#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "besselrg/core.hpp"
#include "besselrg/matrix.hpp"
#include "besselrg/momentum_op.hpp"
#include "besselrg/rgflow.hpp"

namespace besselrg {

struct EigenResult {
  std::vector<double> values;                // ascending
  std::vector<std::vector<double>> vectors;  // vectors[k] belongs to values[k]
};

// All eigenvalues (and optionally eigenvectors) of a symmetric matrix.
EigenResult symmetric_eigensolve(const Matrix& m, bool want_vectors = false);
// Only the eigenvalues in (lower, upper].
EigenResult symmetric_eigensolve_range(const Matrix& m, double lower, double upper,
                                       bool want_vectors = false);

double frobenius_norm(const Matrix& m);

enum class SpectrumSource { ExactOracle, CutoffNumeric };

struct EnergyWindow {
  double lower = -std::numeric_limits<double>::infinity();
  double upper = 0.0;
};

struct SpectrumReport {
  std::vector<double> bound_energies;  // negative, descending (shallowest first)
  // Grid-sampled eigenfunctions psi(p_i), sum_i w_i psi_i^2 = 1.
  std::vector<std::vector<double>> eigenvectors;
  std::vector<double> nodes;
  std::vector<double> weights;
  SpectrumSource source = SpectrumSource::ExactOracle;
  double cutoff = 0.0;
  std::size_t n_nodes = 0;
  std::optional<double> coupling;
  std::optional<double> ladder_ratio;  // Solid phase: E_n / E_{n+1}
  BesselParameter param = BesselParameter::from_alpha(0.0);
  std::optional<ExtensionParameter> ext;
};

// Point spectrum of the position-space realization.  `ext` may be empty only
// for alpha >= 1.  Solid-phase ladders are cut to `window`.
SpectrumReport exact_point_spectrum(const BesselParameter& param,
                                    const std::optional<ExtensionParameter>& ext,
                                    EnergyWindow window = {});

// Change of representation of the boundary datum.
ExtensionParameter map_extension(const ExtensionParameter& ext, Representation to,
                                 const BesselParameter& param);

// Multiplier r with kappa~ = r kappa (real or unimodular complex).
cplx kappa_dictionary_ratio(FlowKind flow, const BesselParameter& param);

std::size_t default_node_count(double cutoff, double p_min);
double default_p_min(FlowKind flow, double cutoff);

struct NumericOptions {
  GridScheme scheme = GridScheme::LogSpaced;
  std::optional<std::size_t> n_nodes;  // default_node_count when empty
  std::optional<double> p_min;         // default_p_min when empty (log grid)
  bool want_vectors = false;
  // Solid phase: keep states with 100|E| <= Lambda^2 and sqrt|E| >= 10 p_1.
  bool solid_window = true;
};

MomentumGrid make_grid(double cutoff, FlowKind flow, const NumericOptions& opts);

// `ext` in any representation; it is mapped to the flow's momentum one.
SpectrumReport numeric_bound_states(FlowKind flow, const BesselParameter& param,
                                    const ExtensionParameter& ext, double cutoff,
                                    const NumericOptions& opts = {});

struct ConvergenceRow {
  double cutoff;
  std::size_t n_nodes;
  double e_numeric;  // NaN when no bound state was found
  double e_exact;    // NaN when the exact spectrum is empty
  double rel_err;    // NaN unless both energies exist
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  bool monotone = true;
};

// Exact level followed along the ladder: `target` if given, otherwise the
// ground state (Liquid, Critical) or the level closest to |E| = 1 (Solid).
ConvergenceTable convergence_study(FlowKind flow, const BesselParameter& param,
                                   const ExtensionParameter& ext_position,
                                   const std::vector<double>& ladder,
                                   const NumericOptions& opts = {},
                                   std::optional<double> target = std::nullopt);

// Thread cap from BESSELRG_THREADS (defaults to the hardware concurrency).
unsigned thread_limit();

}  // namespace besselrg
