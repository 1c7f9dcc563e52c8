#include <cmath>
#include <numbers>
#include <random>

#include "besselrg/special.hpp"
#include "besselrg/spectral.hpp"
#include "doctest.h"

using namespace besselrg;

namespace {
constexpr double kPi = std::numbers::pi;
const auto D = FlowKind::Dirichlet;
const auto N = FlowKind::Neumann;

ExtensionParameter pos(ExtensionDatum d) { return {Representation::Position, d}; }

Matrix random_symmetric(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = g(rng);
  return m;
}

// Q from Gram-Schmidt on a Gaussian matrix.
Matrix random_orthogonal(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<std::vector<double>> cols(n, std::vector<double>(n));
  for (auto& c : cols)
    for (auto& v : c) v = g(rng);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < k; ++j) {
      double d = 0.0;
      for (std::size_t i = 0; i < n; ++i) d += cols[k][i] * cols[j][i];
      for (std::size_t i = 0; i < n; ++i) cols[k][i] -= d * cols[j][i];
    }
    double s = 0.0;
    for (double v : cols[k]) s += v * v;
    for (double& v : cols[k]) v /= std::sqrt(s);
  }
  Matrix q(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q(i, j) = cols[j][i];
  return q;
}

Matrix mul(const Matrix& a, const Matrix& b, bool transpose_a = false) {
  Matrix c(a.n);
  for (std::size_t i = 0; i < a.n; ++i)
    for (std::size_t k = 0; k < a.n; ++k) {
      const double aik = transpose_a ? a(k, i) : a(i, k);
      for (std::size_t j = 0; j < a.n; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}
}  // namespace

TEST_SUITE("spectral") {
  TEST_CASE("eigensolver small cases") {
    Matrix d(3);
    d(0, 0) = 1;
    d(1, 1) = 2;
    d(2, 2) = 3;
    const auto e = symmetric_eigensolve(d);
    REQUIRE(e.values.size() == 3);
    CHECK(e.values[0] == doctest::Approx(1.0));
    CHECK(e.values[2] == doctest::Approx(3.0));
    Matrix x(2);
    x(0, 1) = x(1, 0) = 1.0;
    const auto ex = symmetric_eigensolve(x, true);
    CHECK(ex.values[0] == doctest::Approx(-1.0));
    CHECK(ex.values[1] == doctest::Approx(1.0));
    CHECK(std::abs(ex.vectors[0][0] + ex.vectors[0][1]) < 1e-14);
    const auto r = symmetric_eigensolve_range(d, 1.5, 2.5);
    REQUIRE(r.values.size() == 1);
    CHECK(r.values[0] == doctest::Approx(2.0));
  }

  TEST_CASE("eigensolver trace identities and orthogonal invariance") {
    std::mt19937_64 rng(31);
    const auto m = random_symmetric(50, rng);
    const auto e = symmetric_eigensolve(m);
    double tr = 0.0, s1 = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < 50; ++i) tr += m(i, i);
    for (double v : e.values) {
      s1 += v;
      s2 += v * v;
    }
    const double f = frobenius_norm(m);
    CHECK(std::abs(s1 - tr) <= 1e-8 * f);
    CHECK(std::abs(s2 - f * f) <= 1e-8 * f * f);

    const auto q = random_orthogonal(50, rng);
    auto sim = mul(q, mul(m, q), true);
    for (std::size_t i = 0; i < 50; ++i)
      for (std::size_t j = 0; j < i; ++j) sim(i, j) = sim(j, i);
    const auto e2 = symmetric_eigensolve(sim);
    for (std::size_t i = 0; i < 50; ++i) CHECK(std::abs(e.values[i] - e2.values[i]) <= 1e-10 * f);
  }

  TEST_CASE("exact spectra") {
    const auto half = exact_point_spectrum(BesselParameter::from_alpha(0.25), pos(Kappa{-1.0}));
    REQUIRE(half.bound_energies.size() == 1);
    CHECK(std::abs(half.bound_energies[0] + 1.0) < 1e-10);
    // The same state is e^{-x} with eps = -1/kappa.
    for (double k : {-0.5, -2.0}) {
      const auto r = exact_point_spectrum(BesselParameter::from_alpha(0.25), pos(Kappa{k}));
      CHECK(r.bound_energies[0] == doctest::Approx(-1.0 / (k * k)).epsilon(1e-12));
    }
    CHECK(exact_point_spectrum(BesselParameter::from_alpha(0.09), pos(Kappa{2.0})).bound_energies.empty());
    CHECK(exact_point_spectrum(BesselParameter::from_alpha(0.09), pos(Kappa{ExtendedReal::infinity()}))
              .bound_energies.empty());
    const auto crit = exact_point_spectrum(BesselParameter::from_alpha(0.0), pos(Nu{euler_gamma()}));
    CHECK(std::abs(crit.bound_energies[0] + 4.0) < 1e-12);
    CHECK(exact_point_spectrum(BesselParameter::from_alpha(0.0), pos(Nu{ExtendedReal::infinity()}))
              .bound_energies.empty());
    CHECK(exact_point_spectrum(BesselParameter::from_alpha(2.0), std::nullopt).bound_energies.empty());
    CHECK_THROWS_AS(exact_point_spectrum(BesselParameter::from_alpha(2.0), pos(Kappa{1.0})), UnsupportedError);

    const auto s = exact_point_spectrum(BesselParameter::from_alpha(-1.0), pos(UnimodularKappa{0.7}),
                                        EnergyWindow{-1e8, -1e-8});
    REQUIRE(s.bound_energies.size() >= 4);
    for (std::size_t i = 0; i + 1 < s.bound_energies.size(); ++i) {
      CHECK(s.bound_energies[i] > s.bound_energies[i + 1]);
      CHECK(s.bound_energies[i + 1] / s.bound_energies[i] == doctest::Approx(std::exp(2 * kPi)).epsilon(1e-10));
    }
    CHECK(*s.ladder_ratio == doctest::Approx(std::exp(2 * kPi)).epsilon(1e-14));
    CHECK_THROWS_AS(exact_point_spectrum(BesselParameter::from_alpha(-1.0), pos(UnimodularKappa{0.7})),
                    DomainError);
  }

  TEST_CASE("exact energies reproduce the boundary datum of the bessel solution") {
    // sqrt(kx) K_m(kx) ~ A x^{1/2-m} + B x^{1/2+m}: kappa = A/B.
    for (double m : {0.2, 0.3, 0.45, 0.7}) {
      for (double kappa : {-0.3, -1.0, -4.0}) {
        const auto r = exact_point_spectrum(BesselParameter::from_alpha(m * m), pos(Kappa{kappa}));
        REQUIRE(r.bound_energies.size() == 1);
        const double k = std::sqrt(-r.bound_energies[0]);
        const double x1 = 1e-7, x2 = 2e-7;
        auto f = [&](double x) { return std::sqrt(k * x) * std::cyl_bessel_k(m, k * x); };
        // Solve A x^{1/2-m} + B x^{1/2+m} = f at two points.
        const double a11 = std::pow(x1, 0.5 - m), a12 = std::pow(x1, 0.5 + m);
        const double a21 = std::pow(x2, 0.5 - m), a22 = std::pow(x2, 0.5 + m);
        const double det = a11 * a22 - a12 * a21;
        const double A = (f(x1) * a22 - a12 * f(x2)) / det;
        const double B = (a11 * f(x2) - f(x1) * a21) / det;
        CHECK(A / B == doctest::Approx(kappa).epsilon(1e-4));
      }
    }
    // m = 0: sqrt(kx) K_0(kx) ~ -sqrt(kx) (log x + nu).
    for (double nu : {-1.0, 0.3, 2.0}) {
      const auto r = exact_point_spectrum(BesselParameter::from_alpha(0.0), pos(Nu{nu}));
      const double k = std::sqrt(-r.bound_energies[0]);
      const double x = 1e-9;
      const double ratio = -std::cyl_bessel_k(0.0, k * x) - std::log(x);
      CHECK(ratio == doctest::Approx(nu).epsilon(1e-6));
    }
  }

  TEST_CASE("representation dictionaries") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> um(0.01, 0.99), uk(-10.0, 10.0);
    int done = 0;
    while (done < 100) {
      const double m = um(rng);
      if (std::abs(m - 0.5) < 0.05) continue;
      ++done;
      const auto p = BesselParameter::from_alpha(m * m);
      const auto e = pos(Kappa{uk(rng)});
      for (auto rep : {Representation::MomentumDirichlet, Representation::MomentumNeumann}) {
        const auto back = map_extension(map_extension(e, rep, p), Representation::Position, p);
        CHECK(std::get<Kappa>(back.datum).value.value() ==
              doctest::Approx(std::get<Kappa>(e.datum).value.value()).epsilon(1e-12));
      }
    }
    const auto p = BesselParameter::from_alpha(0.09);
    CHECK(std::get<Kappa>(map_extension(pos(Kappa{0.0}), Representation::MomentumDirichlet, p).datum).value ==
          ExtendedReal(0.0));
    CHECK(std::get<Kappa>(map_extension(pos(Kappa{ExtendedReal::infinity()}), Representation::MomentumNeumann, p)
                              .datum)
              .value.is_infinite());
    // Direct evaluation of the Gamma/sin ratio at m = 0.3.
    const double m = 0.3;
    const double ratio = std::sin(kPi / 4 + kPi * m / 2) * std::tgamma(-0.5 - m) /
                         (std::sin(kPi / 4 - kPi * m / 2) * std::tgamma(-0.5 + m));
    const auto kt = map_extension(pos(Kappa{-1.0}), Representation::MomentumDirichlet, p);
    CHECK(std::get<Kappa>(kt.datum).value.value() == doctest::Approx(-ratio).epsilon(1e-13));

    const auto z = BesselParameter::from_alpha(0.0);
    const double g = euler_gamma();
    const auto nd = map_extension(pos(Nu{0.4}), Representation::MomentumDirichlet, z);
    CHECK(std::get<Nu>(nd.datum).value.value() ==
          doctest::Approx(-0.4 - 2 + g + kPi / 2 + std::log(4.0)).epsilon(1e-14));
    const auto nn = map_extension(pos(Nu{0.4}), Representation::MomentumNeumann, z);
    CHECK(std::get<Nu>(nn.datum).value.value() ==
          doctest::Approx(-0.4 - 2 + g - kPi / 2 + std::log(4.0)).epsilon(1e-14));
    CHECK(std::get<Nu>(map_extension(nn, Representation::Position, z).datum).value.value() ==
          doctest::Approx(0.4).epsilon(1e-13));

    const auto q = BesselParameter::from_alpha(0.25);
    const auto u = map_extension(pos(Kappa{-1.5}), Representation::MomentumNeumann, q);
    CHECK(std::get<UnderlinedKappa>(u.datum).value == ExtendedReal(-1.5));

    const auto s = BesselParameter::from_alpha(-1.0);
    const auto us = map_extension(pos(UnimodularKappa{0.7}), Representation::MomentumDirichlet, s);
    CHECK(std::abs(std::abs(kappa_dictionary_ratio(D, s)) - 1.0) < 1e-12);
    CHECK(std::get<UnimodularKappa>(map_extension(us, Representation::Position, s).datum).phase ==
          doctest::Approx(0.7).epsilon(1e-13));
  }

  TEST_CASE("numeric bound states") {
    const auto half = BesselParameter::from_alpha(0.25);
    const auto free_ = numeric_bound_states(D, half, pos(Kappa{ExtendedReal::infinity()}), 100.0);
    for (double e : free_.bound_energies) CHECK(e > -1e-3);

    const auto p = BesselParameter::from_alpha(0.09);
    const auto ext = pos(Kappa{-1.0});
    const double e_exact = exact_point_spectrum(p, ext).bound_energies[0];
    NumericOptions o;
    o.n_nodes = 2000;
    o.want_vectors = true;
    const auto r = numeric_bound_states(D, p, ext, 1e3 * std::sqrt(-e_exact), o);
    REQUIRE(r.bound_energies.size() == 1);
    CHECK(std::abs(r.bound_energies[0] / e_exact - 1.0) <= 0.03);
    // Normalization and sign convention.
    double norm = 0.0;
    std::size_t arg = 0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
      norm += r.weights[i] * r.eigenvectors[0][i] * r.eigenvectors[0][i];
      if (std::abs(r.eigenvectors[0][i]) > std::abs(r.eigenvectors[0][arg])) arg = i;
    }
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(r.eigenvectors[0][arg] > 0.0);

    // The ground state's large-p decay is governed by the slower of the two
    // tail powers, p^{-3/2+m}.
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < r.nodes.size(); ++i)
      if (r.nodes[i] > 30.0 && r.nodes[i] < 300.0) {
        lx.push_back(std::log(r.nodes[i]));
        ly.push_back(std::log(std::abs(r.eigenvectors[0][i])));
      }
    double mx = 0, my = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) { mx += lx[i]; my += ly[i]; }
    mx /= lx.size();
    my /= ly.size();
    for (std::size_t i = 0; i < lx.size(); ++i) {
      sxx += (lx[i] - mx) * (lx[i] - mx);
      sxy += (lx[i] - mx) * (ly[i] - my);
    }
    CHECK(std::abs(sxy / sxx - (-1.5 + 0.3)) < 0.1);

    const auto crit = numeric_bound_states(N, BesselParameter::from_alpha(0.0), pos(Nu{euler_gamma()}), 200.0);
    REQUIRE_FALSE(crit.bound_energies.empty());
    CHECK(crit.bound_energies.back() == doctest::Approx(-4.0).epsilon(0.03));
  }

  TEST_CASE("convergence study") {
    const auto p = BesselParameter::from_alpha(0.09);
    const auto ext = pos(Kappa{-1.0});
    const double k = std::sqrt(-exact_point_spectrum(p, ext).bound_energies[0]);
    NumericOptions o;
    o.n_nodes = 1200;
    const auto t = convergence_study(D, p, ext, {10 * k, 30 * k, 100 * k, 300 * k}, o);
    CHECK(t.monotone);
    REQUIRE(t.rows.size() == 4);
    for (const auto& r : t.rows) CHECK(r.n_nodes == 1200);
    CHECK(t.rows.back().rel_err < t.rows.front().rel_err);

    const auto none = convergence_study(D, p, pos(Kappa{2.0}), {10.0, 100.0}, o);
    for (const auto& r : none.rows) CHECK(std::isnan(r.e_numeric));
    CHECK(default_node_count(1e3, 1e-1) == 800);
    CHECK(default_node_count(1e4, 1e-3) == 1400);
  }
}
