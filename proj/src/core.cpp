#include "besselrg/core.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <numbers>

namespace besselrg {

BesselParameter BesselParameter::from_alpha(double alpha) {
  if (!std::isfinite(alpha)) throw DomainError("alpha must be finite");
  if (alpha >= 0.0) return {alpha, std::sqrt(alpha), Branch::Real};
  return {alpha, std::sqrt(-alpha), Branch::Imaginary};
}

double BesselParameter::m_real() const {
  if (is_imaginary()) throw DomainError("m is imaginary for alpha < 0");
  return mu_;
}

double BesselParameter::m_imag() const {
  if (!is_imaginary()) throw DomainError("m is real for alpha >= 0");
  return mu_;
}

Phase classify_phase(const BesselParameter& param) {
  const double a = param.alpha();
  if (a < 0.0) return Phase::Solid;
  if (a == 0.0) return Phase::Critical;
  if (a < 1.0) return Phase::Liquid;
  if (a == 1.0) return Phase::Boundary;
  return Phase::Gas;
}

std::string to_string(Phase phase) {
  switch (phase) {
    case Phase::Gas: return "Gas";
    case Phase::Boundary: return "Boundary";
    case Phase::Liquid: return "Liquid";
    case Phase::Critical: return "Critical";
    case Phase::Solid: return "Solid";
  }
  return "?";
}

ExtendedReal::ExtendedReal(double v) : value_(v), infinite_(false) {
  if (!std::isfinite(v)) throw DomainError("use ExtendedReal::infinity() for ∞");
}

double ExtendedReal::value() const {
  if (infinite_) throw DomainError("extended real is infinite");
  return value_;
}

ExtendedReal ExtendedReal::reciprocal() const {
  if (infinite_) return ExtendedReal(0.0);
  if (value_ == 0.0) return infinity();
  return ExtendedReal(1.0 / value_);
}

std::string to_string(const ExtendedReal& x) {
  if (x.is_infinite()) return "inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x.value());
  return buf;
}

ExtendedReal parse_extended_real(const std::string& text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)))
      t += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (t == "inf" || t == "+inf" || t == "infinity" || t == "+infinity")
    return ExtendedReal::infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw ConfigError("not an extended real: '" + text + "'");
  }
  if (used != t.size() || !std::isfinite(v))
    throw ConfigError("not an extended real: '" + text + "'");
  return ExtendedReal(v);
}

std::string to_string(Representation rep) {
  switch (rep) {
    case Representation::Position: return "position";
    case Representation::MomentumDirichlet: return "momentum-dirichlet";
    case Representation::MomentumNeumann: return "momentum-neumann";
  }
  return "?";
}

void validate_extension(const BesselParameter& param, const ExtensionParameter& ext) {
  const double a = param.alpha();
  const bool quarter = (a == 0.25);
  if (std::holds_alternative<Kappa>(ext.datum)) {
    if (param.is_imaginary() || a <= 0.0 || a >= 1.0)
      throw DomainError("kappa requires 0 < m < 1 real");
    if (quarter && ext.representation != Representation::Position)
      throw DomainError("alpha = 1/4 in a momentum representation uses the underlined kappa");
  } else if (std::holds_alternative<UnimodularKappa>(ext.datum)) {
    if (!param.is_imaginary()) throw DomainError("unimodular kappa requires alpha < 0");
  } else if (std::holds_alternative<Nu>(ext.datum)) {
    if (a != 0.0) throw DomainError("nu requires alpha = 0");
  } else {
    if (!quarter) throw DomainError("underlined kappa requires alpha = 1/4");
  }
}

Realization canonical_realization(double m, ExtendedReal kappa) {
  if (!(std::abs(m) > 0.0 && std::abs(m) < 1.0))
    throw DomainError("canonical_realization needs 0 < |m| < 1");
  if (m < 0.0) {
    m = -m;
    kappa = kappa.reciprocal();
  }
  return {BesselParameter::from_alpha(m * m), {Representation::Position, Kappa{kappa}}};
}

Realization canonical_imaginary_realization(double m_imag, double phase) {
  if (m_imag == 0.0) throw DomainError("imaginary order must be nonzero");
  if (m_imag < 0.0) {
    m_imag = -m_imag;
    phase = -phase;
  }
  // Phase reduced to (-pi, pi] so equal kappas compare equal as data.
  phase = std::remainder(phase, 2.0 * std::numbers::pi);
  if (phase <= -std::numbers::pi) phase += 2.0 * std::numbers::pi;
  return {BesselParameter::from_alpha(-m_imag * m_imag),
          {Representation::Position, UnimodularKappa{phase}}};
}

std::string to_string(GridScheme scheme) {
  switch (scheme) {
    case GridScheme::Uniform: return "uniform";
    case GridScheme::LogSpaced: return "log";
    case GridScheme::GaussLegendre: return "gauss";
  }
  return "?";
}

MomentumGrid MomentumGrid::uniform(double cutoff, std::size_t n) {
  if (!(cutoff > 0.0) || n == 0) throw DomainError("uniform grid needs cutoff > 0, n > 0");
  MomentumGrid g;
  g.cutoff = cutoff;
  g.scheme = GridScheme::Uniform;
  const double h = cutoff / static_cast<double>(n);
  g.nodes.resize(n);
  g.weights.assign(n, h);
  for (std::size_t i = 0; i < n; ++i) g.nodes[i] = (static_cast<double>(i) + 0.5) * h;
  return g;
}

MomentumGrid MomentumGrid::log_spaced(double cutoff, std::size_t n, double p_min) {
  if (!(cutoff > 0.0) || n < 2 || !(p_min > 0.0) || !(p_min < cutoff))
    throw DomainError("log grid needs 0 < p_min < cutoff and n >= 2");
  MomentumGrid g;
  g.cutoff = cutoff;
  g.scheme = GridScheme::LogSpaced;
  g.nodes.resize(n);
  g.weights.resize(n);
  const double u0 = std::log(p_min);
  const double h = (std::log(cutoff) - u0) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    g.nodes[i] = std::exp(u0 + h * static_cast<double>(i));
    g.weights[i] = g.nodes[i] * h;
  }
  g.nodes.back() = cutoff;
  g.weights.back() = 0.5 * cutoff * h;
  g.weights.front() = 0.5 * g.weights.front() + 0.5 * p_min;
  return g;
}

void gauss_legendre_rule(std::size_t n, double a, double b, std::vector<double>& x,
                         std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const std::size_t nh = (n + 1) / 2;
  for (std::size_t i = 0; i < nh; ++i) {
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (std::size_t j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / static_cast<double>(j);
      }
      dp = static_cast<double>(n) * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    const double wi = 2.0 / ((1.0 - z * z) * dp * dp);
    x[i] = mid - half * z;
    x[n - 1 - i] = mid + half * z;
    w[i] = w[n - 1 - i] = half * wi;
  }
}

MomentumGrid MomentumGrid::gauss_legendre(double cutoff, std::size_t n) {
  if (!(cutoff > 0.0) || n == 0) throw DomainError("Gauss grid needs cutoff > 0, n > 0");
  MomentumGrid g;
  g.cutoff = cutoff;
  g.scheme = GridScheme::GaussLegendre;
  gauss_legendre_rule(n, 0.0, cutoff, g.nodes, g.weights);
  return g;
}

MomentumGrid scale_grid(const MomentumGrid& grid, double tau) {
  const double s = std::exp(tau);
  MomentumGrid g = grid;
  g.cutoff *= s;
  for (auto& p : g.nodes) p *= s;
  for (auto& w : g.weights) w *= s;
  return g;
}

}  // namespace besselrg
