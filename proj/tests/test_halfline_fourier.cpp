#include <cmath>
#include <numbers>

#include "besselrg/halfline_fourier.hpp"
#include "besselrg/spectral.hpp"
#include "doctest.h"

using namespace besselrg;
using cd = std::complex<double>;

namespace {
constexpr double kPi = std::numbers::pi;
const double kNorm = std::sqrt(2.0 / kPi);

SampledFunction sample(double end, double h, auto&& fn) {
  SampledFunction f;
  const auto n = static_cast<int>(std::llround(end / h));
  for (int i = 0; i <= n; ++i) {
    const double x = h * i;
    f.grid.push_back(x);
    f.values.push_back(fn(x));
  }
  return f;
}

double l2_rel(const SampledFunction& a, const SampledFunction& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    num += std::norm(a.values[i] - b.values[i]);
    den += std::norm(b.values[i]);
  }
  return std::sqrt(num / den);
}
}  // namespace

TEST_SUITE("halfline_fourier") {
  TEST_CASE("exponential pairs") {
    const auto f = sample(60.0, 0.005, [](double x) { return std::exp(-x); });
    const std::vector<double> ps{0.01, 0.3, 1.0, 2.5, 7.0, 20.0};
    const auto s = sine_transform(f, ps);
    const auto c = cosine_transform(f, ps);
    for (std::size_t k = 0; k < ps.size(); ++k) {
      const double p = ps[k];
      CHECK(std::abs(s.values[k] - kNorm * p / (1 + p * p)) < 1e-8);
      CHECK(std::abs(c.values[k] - kNorm / (1 + p * p)) < 1e-8);
    }
  }

  TEST_CASE("homogeneous closed forms") {
    CHECK(homogeneous_transform_closed_form(TransformKind::Sine, -0.5) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(homogeneous_transform_closed_form(TransformKind::Cosine, -0.5) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(homogeneous_transform_closed_form(TransformKind::Sine, -2.0), PoleError);
    CHECK_THROWS_AS(homogeneous_transform_closed_form(TransformKind::Cosine, -1.0), PoleError);
    CHECK_THROWS_AS(homogeneous_transform_closed_form(TransformKind::Cosine, -1.5), DomainError);
    // Both branches of the formula agree where they overlap.
    for (double l : {-1.5, -0.7, -0.3, 0.2, 0.6, 1.4}) {
      const double s1 = -std::sqrt(kPi / 2) / (std::sin(kPi * l / 2) * std::tgamma(-l));
      CHECK(homogeneous_transform_closed_form(TransformKind::Sine, l) == doctest::Approx(s1).epsilon(1e-12));
    }
    for (double l : {-0.7, -0.3, 0.2, 0.6}) {
      const double c1 = std::sqrt(kPi / 2) / (std::cos(kPi * l / 2) * std::tgamma(-l));
      CHECK(homogeneous_transform_closed_form(TransformKind::Cosine, l) == doctest::Approx(c1).epsilon(1e-12));
    }
    // Sine transform of x^{1/2 - m}, x^{1/2 + m}: their ratio, with the Gamma(-1/2 -+ m)
    // factors of the small-x expansion removed, is the Dirichlet kappa dictionary.
    for (double m : {0.1, 0.3, 0.7}) {
      const auto p = BesselParameter::from_alpha(m * m);
      const double cp = homogeneous_transform_closed_form(TransformKind::Sine, 0.5 + m);
      const double cm = homogeneous_transform_closed_form(TransformKind::Sine, 0.5 - m);
      // c(l) = Gamma(1+l) cos(pi l/2) sqrt(2/pi) for the regular branch, so
      // c(1/2+m)/c(1/2-m) = Gamma(3/2+m) sin(pi/4 - pi m/2) / (Gamma(3/2-m) sin(pi/4 + pi m/2)).
      const double expect = std::tgamma(1.5 + m) * std::sin(kPi / 4 - kPi * m / 2) /
                            (std::tgamma(1.5 - m) * std::sin(kPi / 4 + kPi * m / 2));
      CHECK(cp / cm == doctest::Approx(expect).epsilon(1e-12));
      // kappa~ / kappa times c(1/2+m)/c(1/2-m) is the Gamma-only ratio.
      const double kr = kappa_dictionary_ratio(FlowKind::Dirichlet, p).real();
      CHECK(kr * cp / cm ==
            doctest::Approx(std::tgamma(-0.5 - m) * std::tgamma(1.5 + m) / (std::tgamma(-0.5 + m) * std::tgamma(1.5 - m)))
                .epsilon(1e-12));
    }
  }

  TEST_CASE("pure tails and self-reciprocity") {
    for (auto kind : {TransformKind::Sine, TransformKind::Cosine}) {
      SampledFunction f;
      for (int i = 0; i < 8000; ++i) {
        const double x = 1e-10 * std::pow(4e10, i / 7999.0);
        f.grid.push_back(x);
        f.values.push_back(1.0 / std::sqrt(x));
      }
      f.tail = HomogeneousTail{-0.5, 1.0};
      // Gap [0, x0] carries the constant f(x0); subtract its error analytically.
      const double x0 = f.grid.front();
      for (double p : {0.5, 1.0, 3.0}) {
        const auto t = half_line_transform(kind, f, {p});
        double gap_err;
        if (kind == TransformKind::Sine)
          gap_err = kNorm * (1.0 / std::sqrt(x0)) * (1 - std::cos(p * x0)) / p - kNorm * 2.0 / 3.0 * p * std::pow(x0, 1.5);
        else
          gap_err = kNorm * (1.0 / std::sqrt(x0)) * std::sin(p * x0) / p - kNorm * 2.0 * std::sqrt(x0);
        CHECK(std::abs(t.values[0].real() - gap_err - 1.0 / std::sqrt(p)) < 1e-6);
      }
    }
    // Tail part on its own, against the closed form.
    for (auto kind : {TransformKind::Sine, TransformKind::Cosine})
      for (double l : {-0.9, -0.5, -0.1, 0.3}) {
        for (double x0 : {0.5, 3.0}) {
          const double p = 1.3;
          const cd tail = homogeneous_tail_transform(kind, l, x0, p);
          // Head int_0^x0 by Gauss-Legendre after t = x^{l+2} (sine) / x^{l+1} (cosine).
          const bool sine = kind == TransformKind::Sine;
          const double beta = l + (sine ? 2.0 : 1.0);
          std::vector<double> gx, gw;
          gauss_legendre_rule(40, 0.0, 1.0, gx, gw);
          double head = 0.0;
          const double tend = std::pow(x0, beta);
          for (double b = tend; b > 1e-200; b *= 0.2)
            for (std::size_t k = 0; k < gx.size(); ++k) {
              const double t = 0.2 * b + 0.8 * b * gx[k];
              const double x = std::pow(t, 1.0 / beta);
              const double h = sine ? std::sin(p * x) / x : std::cos(p * x);
              head += 0.8 * b * gw[k] * h / beta;
            }
          const double total = homogeneous_transform_closed_form(kind, l) * std::pow(p, -l - 1.0);
          CHECK(std::abs(kNorm * head + tail.real() - total) < 1e-9);
        }
      }
    CHECK_THROWS_AS(sine_transform(SampledFunction{{1.0, 2.0}, {1.0, 1.0}, HomogeneousTail{-2.0, 1.0}}, {1.0}),
                    TailExponentError);
    CHECK_THROWS_AS(cosine_transform(SampledFunction{{1.0, 2.0}, {1.0, 1.0}, HomogeneousTail{-1.0, 1.0}}, {1.0}),
                    TailExponentError);
  }

  TEST_CASE("involution on gaussian-polynomial functions") {
    for (int k = 0; k < 5; ++k) {
      const auto odd = sample(14.0, 0.01, [&](double x) { return std::pow(x, 2 * k + 1) * std::exp(-x * x / 2); });
      const auto twice = sine_transform(sine_transform(odd, odd.grid), odd.grid);
      CHECK(l2_rel(twice, odd) <= 1e-5);
      const auto even = sample(14.0, 0.01, [&](double x) { return std::pow(x, 2 * k) * std::exp(-x * x / 2); });
      const auto twice_c = cosine_transform(cosine_transform(even, even.grid), even.grid);
      CHECK(l2_rel(twice_c, even) <= 1e-5);
    }
  }

  TEST_CASE("sine transform diagonalizes the dirichlet laplacian") {
    // f supported in [1, 3]; -f'' by finite differences vs p^2 F_D f.
    auto f = [](double x) { return (x > 1 && x < 3) ? std::pow((x - 1) * (3 - x), 4) : 0.0; };
    auto f2 = [](double x) {
      if (!(x > 1 && x < 3)) return 0.0;
      const double u = (x - 1) * (3 - x), du = 4 - 2 * x;
      return 12 * u * u * du * du + 4 * u * u * u * (-2.0);
    };
    const auto sf = sample(4.0, 1e-3, f);
    const auto sd = sample(4.0, 1e-3, [&](double x) { return -f2(x); });
    const std::vector<double> ps{0.5, 1.0, 2.0, 4.0};
    const auto a = sine_transform(sf, ps);
    const auto b = sine_transform(sd, ps);
    for (std::size_t k = 0; k < ps.size(); ++k)
      CHECK(std::abs(b.values[k] - ps[k] * ps[k] * a.values[k]) <= 1e-3 * std::abs(b.values[k]) + 1e-9);
  }

  TEST_CASE("cosine transforms have vanishing odd derivatives at zero") {
    // F(p) = F(0) + O(p^2): the difference quotient is linear in h with no constant.
    const auto f = sample(40.0, 0.005, [](double x) { return std::exp(-x) * (1 + x); });
    const auto c = cosine_transform(f, {1e-12, 1e-2, 2e-2});
    const double d1 = (c.values[1] - c.values[0]).real() / 1e-2;
    const double d2 = (c.values[2] - c.values[0]).real() / 2e-2;
    CHECK(std::abs(2.0 * d1 - d2) < 1e-4);
    // Third derivative by the same extrapolation on (F(h) - F(0))/h^2.
    const auto e = cosine_transform(f, {1e-12, 0.05, 0.1, 0.15});
    const double q1 = (e.values[1] - e.values[0]).real() / (0.05 * 0.05);
    const double q2 = (e.values[2] - e.values[0]).real() / (0.1 * 0.1);
    const double q3 = (e.values[3] - e.values[0]).real() / (0.15 * 0.15);
    // q(h) = a + b h^2 + ... has no linear term exactly when the third derivative vanishes.
    CHECK(std::abs((q2 - q1) / (q3 - q1) - 3.0 / 8.0) < 1e-2);
  }

  TEST_CASE("oscillatory integrals") {
    // Integrable: int_0^inf e^{-p} dp = 1.
    const auto a = oscillatory_integral([](double p) { return cd(std::exp(-p)); });
    CHECK(std::abs(a.value - 1.0) < 1e-10);
    const auto b = oscillatory_integral([](double p) { return cd(p == 0.0 ? 1.0 : std::sin(p) / p); });
    CHECK(std::abs(b.value - kPi / 2) < 1e-8);
    CHECK(b.mollifier_discrepancy <= 1e-6);
    // Tails x^l against the closed form at p = 1.
    for (double l : {-0.9, -0.5, -0.1, 0.3}) {
      const auto r = oscillatory_integral([&](double x) { return cd(x == 0.0 ? 0.0 : kNorm * std::sin(x) * std::pow(x, l)); });
      CHECK(std::abs(r.value.real() / homogeneous_transform_closed_form(TransformKind::Sine, l) - 1.0) < 1e-4);
      CHECK(r.mollifier_discrepancy <= 1e-6);
    }
    for (double l : {-0.5, -0.1, 0.3}) {
      const auto r = oscillatory_integral([&](double x) { return cd(x == 0.0 ? 0.0 : kNorm * std::cos(x) * std::pow(x, l)); });
      CHECK(std::abs(r.value.real() / homogeneous_transform_closed_form(TransformKind::Cosine, l) - 1.0) < 1e-4);
    }
    CHECK(mollifier(Mollifier::Standard, 0.4) == 1.0);
    CHECK(mollifier(Mollifier::Standard, 1.0) == 0.0);
    CHECK(mollifier(Mollifier::Narrow, 0.75) == 0.0);
    CHECK(mollifier(Mollifier::Narrow, 0.5) > 0.0);
  }

  TEST_CASE("tail antiderivatives") {
    CHECK_THROWS_AS(tail_antiderivatives(SampledFunction{{1.0, 2.0}, {1.0, 0.5}, HomogeneousTail{-1.0, 1.0}}),
                    ExponentError);
    CHECK_THROWS_AS(tail_antiderivatives(SampledFunction{{1.0, 2.0}, {1.0, 0.25}, HomogeneousTail{-2.0, 1.0}}),
                    ExponentError);

    // Pure tail psi = p^l from 0 (l = -1/2): psi2 = p^{l+2}/((l+1)(l+2)) vanishes at 0.
    const double l = -0.5;
    SampledFunction pure;
    for (int i = 0; i < 6000; ++i) {
      const double p = 1e-12 * std::pow(4e12, i / 5999.0);
      pure.grid.push_back(p);
      pure.values.push_back(std::pow(p, l));
    }
    pure.tail = HomogeneousTail{l, 1.0};
    const auto pa = tail_antiderivatives(pure);
    CHECK(std::abs(pa.psi2.values.front()) < 1e-6);

    // Finite differences of psi2 against psi1 on a smooth function.
    const double lam0 = 4.0, lt = -1.5;
    SampledFunction s;
    for (int i = 0; i <= 8000; ++i) {
      const double p = 0.5 + 1e-3 * i;  // up to 8.5
      s.grid.push_back(p);
      s.values.push_back(p < lam0 ? std::pow(p, lt) * (1 + std::pow(lam0 - p, 4) / 10) : std::pow(p, lt));
    }
    s.tail = HomogeneousTail{lt, 1.0};
    const auto ad = tail_antiderivatives(s);
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < s.grid.size(); ++i) {
      if (i < 2 || i + 2 >= s.grid.size()) continue;
      const auto& v = ad.psi2.values;
      const double fd = (-v[i + 2] + 8.0 * v[i + 1] - 8.0 * v[i - 1] + v[i - 2]).real() / (12.0 * 1e-3);
      worst = std::max(worst, std::abs(fd - ad.psi1.values[i].real()));
    }
    CHECK(worst <= 1e-6);
    const double end = s.grid.back();
    CHECK(ad.psi1.values.back().real() == doctest::Approx(std::pow(end, lt + 1) / (lt + 1)).epsilon(1e-14));
    CHECK(ad.psi2.values.back().real() ==
          doctest::Approx(std::pow(end, lt + 2) / ((lt + 1) * (lt + 2))).epsilon(1e-14));
  }

  TEST_CASE("intertwining with x^2 under the boundary condition") {
    // psi = p^{-3/2} beyond lam0 = 4 and p^{-3/2} + b(p) below it, with the bump
    // b scaled so that psi2(0) = 0.
    const double lam0 = 4.0, l = -1.5;
    auto bump = [&](double p) { return p < lam0 ? std::pow(p * (lam0 - p), 3) : 0.0; };
    auto build = [&](double amp) {
      SampledFunction s;
      for (int i = 0; i <= 40000; ++i) {
        const double p = 1e-4 * i;
        s.grid.push_back(p);
        // Regularize p^{-3/2} below p = 1 by a smooth interpolant so psi is bounded.
        const double core = p >= 1.0 ? std::pow(p, l) : (1.0 + 1.5 * (1 - p) + 15.0 / 8 * (1 - p) * (1 - p));
        s.values.push_back(core + amp * bump(p));
      }
      s.tail = HomogeneousTail{l, 1.0};
      return s;
    };
    const double c0 = tail_antiderivatives(build(0.0)).psi2.values.front().real();
    const double c1 = tail_antiderivatives(build(1e-3)).psi2.values.front().real();
    const double amp = -c0 * 1e-3 / (c1 - c0);
    const auto psi = build(amp);
    const auto ad = tail_antiderivatives(psi);
    CHECK(std::abs(ad.psi2.values.front()) < 1e-10);
    std::vector<double> xs;
    for (double x = 0.1; x <= 10.0; x *= 1.6) xs.push_back(x);
    const auto lhs = sine_transform(psi, xs);
    const auto rhs = sine_transform(ad.psi2, xs);
    for (std::size_t k = 0; k < xs.size(); ++k)
      CHECK(std::abs(lhs.values[k] + xs[k] * xs[k] * rhs.values[k]) <= 1e-4 * std::abs(lhs.values[k]));
  }
}
