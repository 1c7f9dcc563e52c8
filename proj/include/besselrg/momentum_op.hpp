#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "besselrg/core.hpp"
#include "besselrg/matrix.hpp"
#include "besselrg/rgflow.hpp"

namespace besselrg {

// (alpha - 1/4) min(p,q) for Dirichlet, -(alpha - 1/4) max(p,q) for Neumann.
double kernel_min_max(FlowKind flow, const BesselParameter& param, double p, double q);

// Nystrom matrix M_ij = p_i^2 delta_ij + sqrt(w_i w_j) k(p_i, p_j) with
//   Dirichlet: k = (alpha - 1/4) min(p,q) + (f/Lambda) p q,
//   Neumann:   k = -(alpha - 1/4) max(p,q) - Lambda g,
// where g runs with Lambda dg/dLambda = -(g + 1/4 + alpha)^2 + alpha.
struct CutoffHamiltonian {
  MomentumGrid grid;
  FlowKind flow;
  BesselParameter param;
  double coupling;
  Matrix matrix;

  // Coefficient of the rank-one counterterm v v^T inside the matrix.
  double counterterm_weight() const;
};

double counterterm_weight(FlowKind flow, double coupling, double cutoff);

CutoffHamiltonian assemble_cutoff(const MomentumGrid& grid, FlowKind flow,
                                  const BesselParameter& param, double coupling);

// v_i = sqrt(w_i) p_i (Dirichlet) or sqrt(w_i) (Neumann).
std::vector<double> counterterm_vector(const MomentumGrid& grid, FlowKind flow);
Matrix counterterm_matrix(const MomentumGrid& grid, FlowKind flow);

// A momentum-space function that coincides with its declared large-p tail
// beyond lambda0:
//   PowerPair: c_plus p^{-3/2-m} + c_minus p^{-3/2+m}
//   LogPair:   c_plus p^{-3/2} log p + c_minus p^{-3/2}        (m = 0)
//   Single:    c_plus p^{-1} (Dirichlet) or c_plus p^{-2} (Neumann), alpha = 1/4
struct TailFunction {
  enum class Kind { PowerPair, LogPair, Single };

  std::vector<double> grid;
  std::vector<cplx> samples;
  cplx c_plus;
  cplx c_minus;
  Kind kind = Kind::PowerPair;
  double lambda0 = 0.0;

  cplx tail(FlowKind flow, const BesselParameter& param, double p) const;
};

// Regularized maximal-operator action at the sample nodes.  The integral is
// cut at `working_cutoff` (default: twice the largest of lambda0 and the last
// node) and the matching counterterms are added, so the result does not
// depend on that choice.
std::vector<cplx> apply_maximal(FlowKind flow, const BesselParameter& param,
                                const TailFunction& psi,
                                std::optional<double> working_cutoff = std::nullopt);

}  // namespace besselrg
