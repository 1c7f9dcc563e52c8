#include "besselrg/rgflow.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace besselrg {

std::string to_string(FlowKind flow) {
  return flow == FlowKind::Dirichlet ? "dirichlet" : "neumann";
}

std::string to_string(Stability s) {
  switch (s) {
    case Stability::Attractive: return "attractive";
    case Stability::Repulsive: return "repulsive";
    case Stability::Marginal: return "marginal";
  }
  return "?";
}

double flow_rhs(FlowKind flow, const BesselParameter& param, double value) {
  const double a = param.alpha();
  const double u = value + 0.25 + a;
  const double r = u * u - a;
  return flow == FlowKind::Dirichlet ? r : -r;
}

namespace {

constexpr double kBlowUp = 1e8;

// Solution of du/ds = u^2 - alpha after a signed step ds.  The Neumann flow is
// the same equation run backwards in s.
double riccati_step(double alpha, double u0, double ds) {
  if (alpha > 0.0) {
    const double m = std::sqrt(alpha);
    const double x = 2.0 * m * ds;
    const double p = u0 + m, q = u0 - m;
    if (x > 0.0) {
      const double e = std::exp(-x);
      return m * (p * e + q) / (p * e - q);
    }
    const double e = std::exp(x);
    return m * (p + q * e) / (p - q * e);
  }
  if (alpha < 0.0) {
    const double mi = std::sqrt(-alpha);
    return mi * std::tan(std::atan(u0 / mi) + mi * ds);
  }
  return u0 / (1.0 - u0 * ds);
}

// Smallest |ds*| in the direction of ds with |ds*| < |ds| at which u blows up.
std::optional<double> riccati_pole(double alpha, double u0, double ds) {
  if (ds == 0.0) return std::nullopt;
  const double dir = ds > 0.0 ? 1.0 : -1.0;
  std::optional<double> hit;
  if (alpha > 0.0) {
    const double m = std::sqrt(alpha);
    const double p = u0 + m, q = u0 - m;
    if (q != 0.0 && p / q > 0.0) hit = std::log(p / q) / (2.0 * m);
  } else if (alpha < 0.0) {
    const double mi = std::sqrt(-alpha);
    const double th = std::atan(u0 / mi);
    // Poles at th + mi*ds = pi/2 + k*pi.
    const double pi = std::numbers::pi;
    double k = dir > 0.0 ? std::ceil((th - pi / 2.0) / pi) : std::floor((th - pi / 2.0) / pi);
    double target = pi / 2.0 + k * pi;
    if ((target - th) * dir <= 0.0) target += dir * pi;
    hit = (target - th) / mi;
  } else if (u0 != 0.0) {
    hit = 1.0 / u0;
  }
  if (hit && *hit * dir > 0.0 && std::abs(*hit) < std::abs(ds)) return hit;
  return std::nullopt;
}

double sign_of(FlowKind flow) { return flow == FlowKind::Dirichlet ? 1.0 : -1.0; }

}  // namespace

double closed_form_coupling(FlowKind flow, const BesselParameter& param, InitialCondition init,
                            double lambda) {
  if (!(lambda > 0.0) || !(init.lambda0 > 0.0)) throw DomainError("scales must be positive");
  const double c = 0.25 + param.alpha();
  const double ds = sign_of(flow) * std::log(lambda / init.lambda0);
  const double u = riccati_step(param.alpha(), init.value0 + c, ds);
  const double v = u - c;
  if (!std::isfinite(v) || std::abs(v) > kBlowUp)
    throw BlowUpError("closed-form trajectory is at a blow-up", lambda);
  return v;
}

std::optional<double> first_blow_up(FlowKind flow, const BesselParameter& param,
                                    InitialCondition init, double lambda) {
  const double c = 0.25 + param.alpha();
  const double sg = sign_of(flow);
  const double ds = sg * std::log(lambda / init.lambda0);
  auto hit = riccati_pole(param.alpha(), init.value0 + c, ds);
  if (!hit) return std::nullopt;
  return init.lambda0 * std::exp(sg * *hit);
}

double coupling_for_extension(FlowKind flow, const BesselParameter& param,
                              const ExtensionParameter& ext, double lambda) {
  if (param.alpha() >= 1.0) throw UnsupportedError("no running coupling for alpha >= 1");
  if (!(lambda > 0.0)) throw DomainError("Lambda must be positive");
  const Representation want = flow == FlowKind::Dirichlet ? Representation::MomentumDirichlet
                                                          : Representation::MomentumNeumann;
  if (ext.representation != want)
    throw DomainError("extension parameter is not in the flow's momentum representation");
  validate_extension(param, ext);
  const bool dir = flow == FlowKind::Dirichlet;
  const double pi = std::numbers::pi;

  double value = 0.0;
  if (const auto* uk = std::get_if<UnderlinedKappa>(&ext.datum)) {
    // alpha = 1/4: f = -Lambda*kappa/(Lambda*kappa + pi/2),
    // g = -1/(1 + Lambda*pi*kappa/2).
    if (uk->value.is_infinite()) {
      value = dir ? -1.0 : 0.0;
    } else {
      const double k = uk->value.value();
      value = dir ? -lambda * k / (lambda * k + pi / 2.0) : -1.0 / (1.0 + lambda * pi * k / 2.0);
    }
  } else if (const auto* nu = std::get_if<Nu>(&ext.datum)) {
    if (nu->value.is_infinite()) {
      value = -0.25;
    } else {
      const double l = std::log(lambda) + nu->value.value();
      value = dir ? -(l + 2.0) / (4.0 * (l - 2.0)) : -(l - 2.0) / (4.0 * (l + 2.0));
    }
  } else {
    // Real or imaginary m: with a = 1/2 - m, b = 1/2 + m (swapped for
    // Neumann) and t = kappa~ (a/b) Lambda^{2m}, the coupling is
    // -(a^2 + t b^2)/(1 + t).
    const cplx m = param.m();
    cplx a = 0.5 - m, b = 0.5 + m;
    if (!dir) std::swap(a, b);
    bool infinite = false;
    cplx kt;
    if (const auto* k = std::get_if<Kappa>(&ext.datum)) {
      infinite = k->value.is_infinite();
      if (!infinite) kt = k->value.value();
    } else {
      kt = std::get<UnimodularKappa>(ext.datum).value();
    }
    cplx f;
    if (infinite) {
      f = -b * b;
    } else {
      const cplx t = kt * (a / b) * std::exp(2.0 * m * std::log(lambda));
      f = std::abs(t) > 1.0 ? -(a * a / t + b * b) / (1.0 / t + 1.0) : -(a * a + t * b * b) / (1.0 + t);
    }
    value = f.real();
  }
  if (!std::isfinite(value) || std::abs(value) > kBlowUp)
    throw BlowUpError("coupling trajectory is at a blow-up", lambda);
  return value;
}

namespace {

// Dormand-Prince 5(4) tableau (the flow is autonomous in s, so no c_i).
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace

CouplingTrajectory integrate_flow(FlowKind flow, const BesselParameter& param,
                                  InitialCondition init, const std::vector<double>& sample_lambdas,
                                  const IntegrationOptions& opts) {
  if (!(init.lambda0 > 0.0)) throw DomainError("Lambda0 must be positive");
  for (double l : sample_lambdas)
    if (!(l > 0.0)) throw DomainError("sample scales must be positive");

  CouplingTrajectory traj{flow, param, init, CouplingTrajectory::Form::Numerical, {}};
  const double a = param.alpha();
  const double c = 0.25 + a;
  const double sg = sign_of(flow);
  // Chart 0 integrates u = value + c, chart 1 integrates w = -1/u, for which
  // dw/ds = sg (1 - alpha w^2) stays regular where u blows up.
  int chart = 0;
  auto rhs = [&](double y) { return chart == 0 ? sg * (y * y - a) : sg * (1.0 - a * y * y); };
  auto value_of = [&](double y) { return chart == 0 ? y - c : -1.0 / y - c; };
  auto partial = [&]() {
    std::vector<std::pair<double, double>> out;
    for (const auto& smp : traj.samples) out.emplace_back(smp.lambda, smp.value);
    return out;
  };
  const double scale = 1.0 + std::sqrt(std::abs(a));

  double s = std::log(init.lambda0);
  double y = init.value0 + c;
  double h = 1e-3;
  int steps = 0;
  for (double target_lambda : sample_lambdas) {
    const double target = std::log(target_lambda);
    const double dir = target >= s ? 1.0 : -1.0;
    h = dir * std::abs(h);
    while ((target - s) * dir > 0.0) {
      if (++steps > opts.max_steps) throw ConvergenceError("flow integration exceeded step budget");
      if (opts.cross_blow_ups) {
        if (chart == 0 && std::abs(y) > 4.0 * scale) {
          chart = 1;
          y = -1.0 / y;
        } else if (chart == 1 && std::abs(y) > 0.5 / scale) {
          chart = 0;
          y = -1.0 / y;
        }
      }
      bool last = false;
      if ((s + h - target) * dir >= 0.0) {
        h = target - s;
        last = true;
      }
      const double k1 = rhs(y);
      const double k2 = rhs(y + h * a21 * k1);
      const double k3 = rhs(y + h * (a31 * k1 + a32 * k2));
      const double k4 = rhs(y + h * (a41 * k1 + a42 * k2 + a43 * k3));
      const double k5 = rhs(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
      const double k6 = rhs(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
      const double y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      const double k7 = rhs(y5);
      const double err_est = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
      const double tol = opts.abs_tol + opts.rel_tol * std::max(std::abs(y), std::abs(y5));
      const double err = std::isfinite(err_est) ? std::abs(err_est) / tol : 1e300;
      if (err <= 1.0 && std::isfinite(y5)) {
        s = last ? target : s + h;
        y = y5;
        if (!opts.cross_blow_ups && std::abs(value_of(y)) > opts.blow_up_threshold)
          throw BlowUpError("trajectory exceeded the blow-up threshold", std::exp(s), partial());
        const double grow = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
        if (!last) h *= grow;
        else h = dir * std::max(std::abs(h), 1e-6);
      } else {
        h *= std::clamp(0.9 * std::pow(err, -0.25), 0.1, 0.5);
        if (std::abs(h) < 1e-14 * std::max(1.0, std::abs(s)))
          throw BlowUpError("step size collapsed near a blow-up", std::exp(s), partial());
      }
    }
    const double v = value_of(y);
    traj.samples.push_back({target_lambda, std::isfinite(v) ? v : std::copysign(HUGE_VAL, v)});
  }
  return traj;
}

FixedPointReport fixed_points(FlowKind flow, const BesselParameter& param) {
  FixedPointReport rep;
  const double a = param.alpha();
  const double sg = sign_of(flow);
  auto label = [](double slope) {
    if (slope < 0.0) return Stability::Attractive;
    if (slope > 0.0) return Stability::Repulsive;
    return Stability::Marginal;
  };
  if (a < 0.0) {
    rep.cycle_period = std::numbers::pi / param.m_imag();
    return rep;
  }
  if (a == 0.0) {
    rep.points.push_back({-0.25, Stability::Marginal, 0.0});
    return rep;
  }
  const double m = param.m_real();
  // u = value + c = -m, +m; the slope of the rhs is sg * 2u.
  const double lo = -(0.5 + m) * (0.5 + m);
  const double hi = 0.0 - (0.5 - m) * (0.5 - m);  // +0 at m = 1/2
  rep.points.push_back({lo, label(-2.0 * m * sg), -2.0 * m * sg});
  rep.points.push_back({hi, label(2.0 * m * sg), 2.0 * m * sg});
  return rep;
}

WilsonCheck wilson_gamma_equivalence(const BesselParameter& param, double f, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("Lambda must be positive");
  const double a = param.alpha();
  WilsonCheck w{};
  w.gamma = f / lambda;
  const double d = w.gamma - (0.25 - a) / lambda;
  w.rhs_gamma = d * d;
  w.residual = lambda * lambda * w.rhs_gamma + f - flow_rhs(FlowKind::Dirichlet, param, f);
  return w;
}

}  // namespace besselrg
