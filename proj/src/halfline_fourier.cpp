#include "besselrg/halfline_fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "besselrg/core.hpp"
#include "besselrg/special.hpp"
#include "quadrature.hpp"

namespace besselrg {

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;
const double kNorm = std::sqrt(2.0 / kPi);

// int_0^h t^k e^{i p t} dt for k = 0, 1, 2.
void exp_moments(double p, double h, cd out[3]) {
  const double theta = p * h;
  if (std::abs(theta) < 1.0) {
    const cd it(0.0, theta);
    for (int k = 0; k < 3; ++k) {
      cd term = 1.0, sum = 0.0;
      for (int n = 0; n < 30; ++n) {
        sum += term / static_cast<double>(n + k + 1);
        term *= it / static_cast<double>(n + 1);
      }
      out[k] = sum * std::pow(h, k + 1);
    }
    return;
  }
  const cd e = std::polar(1.0, theta);
  const cd ip(0.0, p);
  out[0] = (e - 1.0) / ip;
  out[1] = (h * e - out[0]) / ip;
  out[2] = (h * h * e - 2.0 * out[1]) / ip;
}

// Adds int_u^v q(x) e^{i p x} dx to acc, q the quadratic through (t_j, f_j).
template <class Acc>
void panel(double p, const double t[3], double u, double v, cd eu, Acc&& acc) {
  cd mom[3];
  exp_moments(p, v - u, mom);
  for (int j = 0; j < 3; ++j) {
    const double a = t[(j + 1) % 3] - u, b = t[(j + 2) % 3] - u, tj = t[j] - u;
    const cd w = (mom[2] - (a + b) * mom[1] + a * b * mom[0]) / ((tj - a) * (tj - b));
    acc(j, w * eu);
  }
}

void check_tail(TransformKind kind, const std::optional<HomogeneousTail>& tail) {
  if (!tail) return;
  const double lim = kind == TransformKind::Sine ? -2.0 : -1.0;
  if (!(tail->exponent > lim))
    throw TailExponentError("tail exponent outside the oscillatory range of the transform");
}

}  // namespace

double homogeneous_transform_closed_form(TransformKind kind, double lambda) {
  const bool sine = kind == TransformKind::Sine;
  const double lim = sine ? -2.0 : -1.0;
  if (lambda == lim) throw PoleError("closed form has a pole at this exponent");
  if (lambda < lim) throw DomainError("exponent below the oscillatory range");
  if (lambda > -0.5) {
    const double g = gamma_real(1.0 + lambda);
    return sine ? kNorm * g * std::cos(kPi * lambda / 2.0) : -kNorm * g * std::sin(kPi * lambda / 2.0);
  }
  const double s = std::sqrt(kPi / 2.0);
  const double g = gamma_real(-lambda);
  return sine ? -s / (std::sin(kPi * lambda / 2.0) * g) : s / (std::cos(kPi * lambda / 2.0) * g);
}

cd homogeneous_tail_transform(TransformKind kind, double lambda, double x_start, double p) {
  const bool sine = kind == TransformKind::Sine;
  if (!(p > 0.0)) throw DomainError("tail transform needs p > 0");
  const double z = p * x_start;
  if (z >= 2.0) {
    // int_X^inf x^l e^{ipx} dx = (i/p)^{l+1} Gamma(l+1, -ipX).
    const cd j = std::pow(p, -lambda - 1.0) * std::polar(1.0, kPi * (lambda + 1.0) / 2.0) *
                 upper_incomplete_gamma(lambda + 1.0, cd(0.0, -z));
    return kNorm * (sine ? j.imag() : j.real());
  }
  const double total = homogeneous_transform_closed_form(kind, lambda) * std::pow(p, -lambda - 1.0);
  if (x_start == 0.0) return total;
  // Head int_0^X x^l {sin,cos}(px) dx by its power series.
  double head = 0.0, fact = 1.0;
  for (int n = sine ? 1 : 0, k = 0; k < 40; n += 2, ++k) {
    if (n > 1) fact *= static_cast<double>(n) * static_cast<double>(n - 1);
    const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
    head += sgn * std::pow(p, n) * std::pow(x_start, lambda + n + 1.0) / (fact * (lambda + n + 1.0));
  }
  return total - kNorm * head;
}

SampledFunction half_line_transform(TransformKind kind, const SampledFunction& f,
                                    const std::vector<double>& p) {
  const std::size_t n = f.grid.size();
  if (n == 0 || f.values.size() != n) throw DomainError("sampled function is empty");
  if (f.grid.front() < 0.0) throw DomainError("grid must be non-negative");
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (!(f.grid[i] < f.grid[i + 1])) throw DomainError("grid must be strictly ascending");
  check_tail(kind, f.tail);
  const bool sine = kind == TransformKind::Sine;
  const auto& x = f.grid;

  SampledFunction out;
  out.grid = p;
  out.values.assign(p.size(), 0.0);
  std::vector<cd> ex(n);
  for (std::size_t k = 0; k < p.size(); ++k) {
    const double pk = p[k];
    if (pk < 0.0) throw DomainError("transform nodes must be non-negative");
    cd acc = 0.0;
    auto add = [&](const cd& w, const cd& fv) { acc += fv * (sine ? w.imag() : w.real()); };
    for (std::size_t i = 0; i < n; ++i) ex[i] = std::polar(1.0, pk * x[i]);
    if (x[0] > 0.0) {
      cd mom[3];
      exp_moments(pk, x[0], mom);
      add(mom[0], f.values[0]);
    }
    if (n == 2) {
      cd mom[3];
      exp_moments(pk, x[1] - x[0], mom);
      const double h = x[1] - x[0];
      add(ex[0] * (mom[0] - mom[1] / h), f.values[0]);
      add(ex[0] * (mom[1] / h), f.values[1]);
    }
    std::size_t i = 0;
    for (; n >= 3 && i + 2 < n; i += 2) {
      const double t[3] = {x[i], x[i + 1], x[i + 2]};
      panel(pk, t, x[i], x[i + 2], ex[i], [&](int j, const cd& w) { add(w, f.values[i + j]); });
    }
    if (n >= 3 && i + 1 < n) {
      const double t[3] = {x[i - 1], x[i], x[i + 1]};
      panel(pk, t, x[i], x[i + 1], ex[i], [&](int j, const cd& w) { add(w, f.values[i - 1 + j]); });
    }
    acc *= kNorm;
    if (f.tail) {
      if (pk == 0.0) {
        if (!sine) {
          if (!(f.tail->exponent < -1.0)) throw DomainError("cosine transform diverges at p = 0");
          acc += kNorm * f.tail->coefficient *
                 (-std::pow(x.back(), f.tail->exponent + 1.0) / (f.tail->exponent + 1.0));
        }
      } else {
        acc += f.tail->coefficient * homogeneous_tail_transform(kind, f.tail->exponent, x.back(), pk);
      }
    }
    out.values[k] = acc;
  }
  return out;
}

SampledFunction sine_transform(const SampledFunction& f, const std::vector<double>& p) {
  return half_line_transform(TransformKind::Sine, f, p);
}

SampledFunction cosine_transform(const SampledFunction& f, const std::vector<double>& p) {
  return half_line_transform(TransformKind::Cosine, f, p);
}

double mollifier(Mollifier kind, double t) {
  const double flat = kind == Mollifier::Standard ? 0.5 : 0.375;
  const double end = kind == Mollifier::Standard ? 1.0 : 0.75;
  if (t <= flat) return 1.0;
  if (t >= end) return 0.0;
  // Smooth step between exp(-1/y) bumps, y in (0, 1).
  const double y = (end - t) / (end - flat);
  const double a = std::exp(-1.0 / y), b = std::exp(-1.0 / (1.0 - y));
  return a / (a + b);
}

OscillatoryResult oscillatory_integral(const std::function<cd(double)>& f,
                                       const OscillatoryOptions& opts) {
  std::vector<double> gx, gw;
  gauss_legendre_rule(16, 0.0, 1.0, gx, gw);
  auto gl = [&](double a, double b, auto&& weight_fn) {
    cd s = 0.0;
    for (std::size_t k = 0; k < gx.size(); ++k) {
      const double t = a + (b - a) * gx[k];
      s += (b - a) * gw[k] * f(t) * weight_fn(t);
    }
    return s;
  };
  auto one = [](double) { return 1.0; };

  // [0, 1] with geometrically graded panels; independent of the mollifier
  // as long as the cutoff is at least 2.
  const double x0 = std::min(1.0, opts.start_cutoff / 2.0);
  cd near = 0.0;
  for (double b = x0; b > 1e-300; b *= 0.25) near += gl(0.25 * b, b, one);

  auto at = [&](double cutoff, Mollifier kind) {
    cd s = near;
    const int panels = static_cast<int>(std::ceil((cutoff - x0) / opts.panel_width));
    const double w = (cutoff - x0) / panels;
    for (int k = 0; k < panels; ++k) {
      const double a = x0 + w * k, b = a + w;
      if (a >= cutoff * (kind == Mollifier::Standard ? 1.0 : 0.75)) break;
      s += gl(a, b, [&](double t) { return mollifier(kind, t / cutoff); });
    }
    return s;
  };

  OscillatoryResult res;
  double cutoff = opts.start_cutoff;
  cd prev = at(cutoff, Mollifier::Standard);
  res.ladder.emplace_back(cutoff, prev);
  for (int level = 1; level <= opts.max_levels; ++level) {
    cutoff *= 2.0;
    const cd cur = at(cutoff, Mollifier::Standard);
    res.ladder.emplace_back(cutoff, cur);
    if (std::abs(cur - prev) <= opts.rel_tol * std::max(std::abs(cur), 1e-8)) {
      res.value = cur;
      res.alternate = at(cutoff, Mollifier::Narrow);
      res.mollifier_discrepancy = std::abs(res.value - res.alternate) / std::max(std::abs(cur), 1e-300);
      return res;
    }
    prev = cur;
  }
  throw NonConvergenceError("oscillatory integral did not settle along the cutoff ladder");
}

TailAntiderivatives tail_antiderivatives(const SampledFunction& psi) {
  if (!psi.tail) throw DomainError("tail_antiderivatives needs a declared tail");
  const double l = psi.tail->exponent;
  if (l == -1.0 || l == -2.0) throw ExponentError("exponent -1 and -2 have logarithmic primitives");
  const std::size_t n = psi.grid.size();
  if (n < 2 || psi.values.size() != n) throw DomainError("need at least two samples");
  const cd c = psi.tail->coefficient;
  const double end = psi.grid.back();

  TailAntiderivatives out;
  const auto c0 = detail::cumulative_integral(psi.grid, psi.values);
  out.psi1.grid = psi.grid;
  out.psi1.values.resize(n);
  const cd p1_end = c * std::pow(end, l + 1.0) / (l + 1.0);
  for (std::size_t i = 0; i < n; ++i) out.psi1.values[i] = p1_end - (c0.back() - c0[i]);
  out.psi1.tail = HomogeneousTail{l + 1.0, c / (l + 1.0)};

  const auto c1 = detail::cumulative_integral(psi.grid, out.psi1.values);
  out.psi2.grid = psi.grid;
  out.psi2.values.resize(n);
  const cd p2_end = c * std::pow(end, l + 2.0) / ((l + 1.0) * (l + 2.0));
  for (std::size_t i = 0; i < n; ++i) out.psi2.values[i] = p2_end - (c1.back() - c1[i]);
  out.psi2.tail = HomogeneousTail{l + 2.0, c / ((l + 1.0) * (l + 2.0))};
  return out;
}

}  // namespace besselrg
