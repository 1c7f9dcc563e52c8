#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "besselrg/core.hpp"

namespace besselrg {

// Dirichlet: coupling f, counterterm weight f/Lambda on |p><p|.
// Neumann:   coupling g, counterterm weight -Lambda*g on |1><1| (see momentum_op.hpp).
enum class FlowKind { Dirichlet, Neumann };

std::string to_string(FlowKind flow);

struct InitialCondition {
  double lambda0;
  double value0;
};

struct TrajectorySample {
  double lambda;
  double value;
};

struct CouplingTrajectory {
  enum class Form { ClosedForm, Numerical };
  FlowKind flow;
  BesselParameter param;
  InitialCondition init;
  Form form;
  std::vector<TrajectorySample> samples;
};

enum class Stability { Attractive, Repulsive, Marginal };

std::string to_string(Stability s);

struct FixedPoint {
  double value;
  Stability stability;
  double slope;  // d(rhs)/d(value) at the root
};

struct FixedPointReport {
  std::vector<FixedPoint> points;  // ascending by value
  std::optional<double> cycle_period;
};

// Lambda * d(value)/dLambda.
double flow_rhs(FlowKind flow, const BesselParameter& param, double value);

// Analytic continuation of the trajectory through (Lambda0, value0).  Poles
// of the trajectory are crossed; BlowUpError only when Lambda sits on one.
double closed_form_coupling(FlowKind flow, const BesselParameter& param,
                            InitialCondition init, double lambda);

// First scale strictly between Lambda0 and Lambda (in either direction) at
// which the trajectory escapes to infinity.
std::optional<double> first_blow_up(FlowKind flow, const BesselParameter& param,
                                    InitialCondition init, double lambda);

// Coupling selecting the realization labelled by `ext` (a momentum
// representation matching `flow`).
double coupling_for_extension(FlowKind flow, const BesselParameter& param,
                              const ExtensionParameter& ext, double lambda);

struct IntegrationOptions {
  double rel_tol = 1e-12;
  double abs_tol = 1e-12;
  double blow_up_threshold = 1e8;
  int max_steps = 1000000;
  // Follow the trajectory through its poles instead of raising BlowUpError;
  // samples that land on a pole come back as +-inf.
  bool cross_blow_ups = false;
};

// Dormand-Prince 5(4) in s = log Lambda, landing exactly on each requested
// sample scale (visited in the given order, starting from Lambda0).
CouplingTrajectory integrate_flow(FlowKind flow, const BesselParameter& param,
                                  InitialCondition init,
                                  const std::vector<double>& sample_lambdas,
                                  const IntegrationOptions& opts = {});

FixedPointReport fixed_points(FlowKind flow, const BesselParameter& param);

struct WilsonCheck {
  double gamma;      // f / Lambda
  double rhs_gamma;  // [gamma - (1/4 - alpha)/Lambda]^2, i.e. d(gamma)/dLambda
  double residual;   // Lambda^2 * rhs_gamma + f - flow_rhs(Dirichlet, f)
};

WilsonCheck wilson_gamma_equivalence(const BesselParameter& param, double f, double lambda);

}  // namespace besselrg
