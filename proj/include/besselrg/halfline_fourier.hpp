#pragma once

#include <complex>
#include <functional>
#include <utility>
#include <optional>
#include <vector>

#include "besselrg/errors.hpp"

namespace besselrg {

// f(x) = coefficient * x^exponent for x beyond the last grid node.
struct HomogeneousTail {
  double exponent;
  std::complex<double> coefficient;
};

struct SampledFunction {
  std::vector<double> grid;  // ascending, grid[0] >= 0
  std::vector<std::complex<double>> values;
  std::optional<HomogeneousTail> tail;
};

enum class TransformKind { Sine, Cosine };

// sqrt(2/pi) int_0^inf {sin,cos}(p x) f(x) dx at the given p.  The sampled
// part is integrated exactly against its piecewise-quadratic interpolant
// (with f held at f(grid[0]) on [0, grid[0]]); the tail is done in closed form.
SampledFunction half_line_transform(TransformKind kind, const SampledFunction& f,
                                    const std::vector<double>& p);
SampledFunction sine_transform(const SampledFunction& f, const std::vector<double>& p);
SampledFunction cosine_transform(const SampledFunction& f, const std::vector<double>& p);

// c with transform(x^lambda) = c p^{-lambda-1}: sine c = -sqrt(pi/2)/(sin(pi lambda/2) Gamma(-lambda)),
// cosine c = sqrt(pi/2)/(cos(pi lambda/2) Gamma(-lambda)), continued through
// removable singularities.
double homogeneous_transform_closed_form(TransformKind kind, double lambda);

// sqrt(2/pi) int_X^inf {sin,cos}(p x) x^lambda dx, p > 0.
std::complex<double> homogeneous_tail_transform(TransformKind kind, double lambda, double x_start,
                                                double p);

// Smooth cut-offs equal to 1 near 0: `Standard` is 1 on [0, 1/2] and vanishes
// from 1 on; `Narrow` is 1 on [0, 3/8] and vanishes from 3/4 on.
enum class Mollifier { Standard, Narrow };
double mollifier(Mollifier kind, double t);

struct OscillatoryOptions {
  double start_cutoff = 64.0;
  int max_levels = 12;         // cutoffs start_cutoff * 2^k
  double rel_tol = 1e-10;      // Cauchy criterion between consecutive cutoffs
  double panel_width = 1.0;    // quadrature panel length on the oscillatory range
};

struct OscillatoryResult {
  std::complex<double> value;
  std::complex<double> alternate;  // same limit with the Narrow mollifier
  double mollifier_discrepancy;    // |value - alternate| / max(|value|, 1e-300)
  std::vector<std::pair<double, std::complex<double>>> ladder;
};

// lim_{L->inf} int_0^inf f(p) phi(p/L) dp.  NonConvergenceError when the
// ladder fails the Cauchy test.
OscillatoryResult oscillatory_integral(const std::function<std::complex<double>(double)>& f,
                                       const OscillatoryOptions& opts = {});

struct TailAntiderivatives {
  SampledFunction psi1;  // psi1' = psi, psi1 = c p^{l+1}/(l+1) beyond the grid
  SampledFunction psi2;  // psi2' = psi1, psi2 = c p^{l+2}/((l+1)(l+2)) beyond the grid
};

// psi must carry a tail; ExponentError for lambda in {-1, -2}.
TailAntiderivatives tail_antiderivatives(const SampledFunction& psi);

}  // namespace besselrg
