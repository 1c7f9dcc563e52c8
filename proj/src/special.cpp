#include "besselrg/special.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace besselrg {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

std::complex<double> lanczos(std::complex<double> z) {
  z -= 1.0;
  std::complex<double> a = kLanczos[0];
  for (std::size_t k = 1; k < kLanczos.size(); ++k) a += kLanczos[k] / (z + static_cast<double>(k));
  const std::complex<double> t = z + kLanczosG + 0.5;
  return std::sqrt(2.0 * std::numbers::pi) * std::exp((z + 0.5) * std::log(t) - t) * a;
}

}  // namespace

std::complex<double> gamma_complex(std::complex<double> z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::nearbyint(z.real()))
    throw PoleError("Gamma has a pole at a non-positive integer");
  if (z.real() < 0.5) {
    const double pi = std::numbers::pi;
    return pi / (std::sin(pi * z) * lanczos(1.0 - z));
  }
  return lanczos(z);
}

double gamma_real(double x) { return gamma_complex({x, 0.0}).real(); }

double euler_gamma() { return std::numbers::egamma; }

double macdonald_k(std::complex<double> order, double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("macdonald_k needs x > 0");
  const bool real_order = order.imag() == 0.0;
  if (!real_order && order.real() != 0.0)
    throw DomainError("macdonald_k supports real or purely imaginary order only");
  const double nu = real_order ? std::abs(order.real()) : std::abs(order.imag());

  // Trapezoid rule on the even, entire integrand e^{-x cosh t} cosh(nu t)
  // (cos for imaginary order); the error decays like exp(-2 pi d / h).
  double t_max = std::acosh(1.0 + 40.0 / x);
  while (x * (std::cosh(t_max) - 1.0) - (real_order ? nu * t_max : 0.0) < 40.0) t_max += 0.5;
  const double h = 0.04;
  const int n = static_cast<int>(std::ceil(t_max / h));
  double sum = 0.5;  // t = 0 term, scaled by e^{x}
  for (int k = 1; k <= n; ++k) {
    const double t = h * k;
    const double decay = std::exp(-x * (std::cosh(t) - 1.0));
    const double osc = real_order ? std::cosh(nu * t) : std::cos(nu * t);
    sum += decay * osc;
  }
  return std::exp(-x) * h * sum;
}

std::complex<double> upper_incomplete_gamma(double a, std::complex<double> z) {
  constexpr double tiny = 1e-300;
  constexpr double eps = 1e-16;
  std::complex<double> b = z + 1.0 - a;
  std::complex<double> c = 1.0 / tiny;
  std::complex<double> d = 1.0 / b;
  std::complex<double> h = d;
  for (int i = 1; i < 100000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const std::complex<double> del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < eps) return std::exp(-z + a * std::log(z)) * h;
  }
  throw ConvergenceError("incomplete gamma continued fraction did not converge");
}

}  // namespace besselrg
