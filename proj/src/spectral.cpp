#include "besselrg/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>
#include <thread>

#include "besselrg/special.hpp"
#include "parallel.hpp"

namespace besselrg {

namespace {

constexpr double kPi = std::numbers::pi;

double nu_shift(FlowKind flow) {
  return -2.0 + euler_gamma() + std::log(4.0) + (flow == FlowKind::Dirichlet ? kPi / 2 : -kPi / 2);
}

FlowKind flow_of(Representation rep) {
  return rep == Representation::MomentumDirichlet ? FlowKind::Dirichlet : FlowKind::Neumann;
}

Representation rep_of(FlowKind flow) {
  return flow == FlowKind::Dirichlet ? Representation::MomentumDirichlet
                                     : Representation::MomentumNeumann;
}

ExtensionParameter to_momentum(const ExtensionParameter& ext, FlowKind flow,
                               const BesselParameter& param) {
  ExtensionParameter out{rep_of(flow), ext.datum};
  if (const auto* k = std::get_if<Kappa>(&ext.datum)) {
    if (param.alpha() == 0.25) {
      out.datum = UnderlinedKappa{k->value};
    } else if (!k->value.is_infinite()) {
      out.datum = Kappa{ExtendedReal(kappa_dictionary_ratio(flow, param).real() * k->value.value())};
    }
  } else if (const auto* u = std::get_if<UnimodularKappa>(&ext.datum)) {
    out.datum = UnimodularKappa{u->phase + std::arg(kappa_dictionary_ratio(flow, param))};
  } else if (const auto* nu = std::get_if<Nu>(&ext.datum)) {
    if (!nu->value.is_infinite())
      out.datum = Nu{ExtendedReal(-nu->value.value() + nu_shift(flow))};
  } else {
    throw DomainError("underlined kappa is a momentum-representation datum");
  }
  return out;
}

ExtensionParameter to_position(const ExtensionParameter& ext, const BesselParameter& param) {
  const FlowKind flow = flow_of(ext.representation);
  ExtensionParameter out{Representation::Position, ext.datum};
  if (const auto* k = std::get_if<Kappa>(&ext.datum)) {
    if (!k->value.is_infinite())
      out.datum = Kappa{ExtendedReal(k->value.value() / kappa_dictionary_ratio(flow, param).real())};
  } else if (const auto* u = std::get_if<UnimodularKappa>(&ext.datum)) {
    out.datum = UnimodularKappa{u->phase - std::arg(kappa_dictionary_ratio(flow, param))};
  } else if (const auto* nu = std::get_if<Nu>(&ext.datum)) {
    if (!nu->value.is_infinite())
      out.datum = Nu{ExtendedReal(-nu->value.value() + nu_shift(flow))};
  } else {
    out.datum = Kappa{std::get<UnderlinedKappa>(ext.datum).value};
  }
  return out;
}

}  // namespace

cplx kappa_dictionary_ratio(FlowKind flow, const BesselParameter& param) {
  const double a = param.alpha();
  if (a >= 1.0 || a == 0.0 || a == 0.25)
    throw UnsupportedError("kappa dictionary needs alpha < 1, alpha != 0, 1/4");
  const cplx m = param.m();
  const cplx up = kPi / 4.0 + kPi * m / 2.0, dn = kPi / 4.0 - kPi * m / 2.0;
  const cplx num_trig = flow == FlowKind::Dirichlet ? std::sin(up) : std::cos(up);
  const cplx den_trig = flow == FlowKind::Dirichlet ? std::sin(dn) : std::cos(dn);
  return num_trig * gamma_complex(-0.5 - m) / (den_trig * gamma_complex(-0.5 + m));
}

ExtensionParameter map_extension(const ExtensionParameter& ext, Representation to,
                                 const BesselParameter& param) {
  if (param.alpha() >= 1.0) throw UnsupportedError("no extension family for alpha >= 1");
  validate_extension(param, ext);
  if (ext.representation == to) return ext;
  const ExtensionParameter pos =
      ext.representation == Representation::Position ? ext : to_position(ext, param);
  if (to == Representation::Position) return pos;
  return to_momentum(pos, flow_of(to), param);
}

SpectrumReport exact_point_spectrum(const BesselParameter& param,
                                    const std::optional<ExtensionParameter>& ext,
                                    EnergyWindow window) {
  SpectrumReport rep;
  rep.source = SpectrumSource::ExactOracle;
  rep.param = param;
  rep.ext = ext;
  if (param.alpha() >= 1.0) {
    if (ext) throw UnsupportedError("alpha >= 1 has a unique realization");
    return rep;
  }
  if (!ext) throw DomainError("an extension parameter is required for alpha < 1");
  if (ext->representation != Representation::Position)
    throw DomainError("exact spectra take a position-representation datum");
  validate_extension(param, *ext);

  auto keep = [&](double e) { return e >= window.lower && e <= window.upper && e < 0.0; };
  const Phase phase = classify_phase(param);
  if (phase == Phase::Liquid) {
    const auto& k = std::get<Kappa>(ext->datum).value;
    if (!k.is_infinite() && k.value() < 0.0) {
      const double m = param.m_real();
      const double base = k.value() * gamma_real(-m) / gamma_real(m);
      const double e = -4.0 * std::pow(base, -1.0 / m);
      if (keep(e)) rep.bound_energies.push_back(e);
    }
  } else if (phase == Phase::Critical) {
    const auto& nu = std::get<Nu>(ext->datum).value;
    if (!nu.is_infinite()) {
      const double e = -4.0 * std::exp(2.0 * (nu.value() - euler_gamma()));
      if (keep(e)) rep.bound_energies.push_back(e);
    }
  } else {
    if (!std::isfinite(window.lower) || !(window.upper < 0.0))
      throw DomainError("the solid-phase ladder needs a finite window below 0");
    const double mi = param.m_imag();
    const cplx kappa = std::get<UnimodularKappa>(ext->datum).value();
    const double theta =
        std::arg(kappa * gamma_complex(cplx(0.0, -mi)) / gamma_complex(cplx(0.0, mi)));
    // E_n = -4 exp(-(theta + 2 pi n)/m_I); shallow states have large n.
    const double n_lo = std::ceil((-mi * std::log(-window.lower / 4.0) - theta) / (2.0 * kPi));
    const double n_hi = std::floor((-mi * std::log(-window.upper / 4.0) - theta) / (2.0 * kPi));
    for (double n = n_hi; n >= n_lo; n -= 1.0) {
      const double e = -4.0 * std::exp(-(theta + 2.0 * kPi * n) / mi);
      if (keep(e)) rep.bound_energies.push_back(e);
    }
    rep.ladder_ratio = std::exp(2.0 * kPi / mi);
  }
  return rep;
}

std::size_t default_node_count(double cutoff, double p_min) {
  const double n = 200.0 * std::log10(cutoff / p_min);
  return std::max<std::size_t>(800, static_cast<std::size_t>(std::ceil(n)));
}

double default_p_min(FlowKind flow, double cutoff) {
  return (flow == FlowKind::Dirichlet ? 1e-4 : 1e-7) * cutoff;
}

MomentumGrid make_grid(double cutoff, FlowKind flow, const NumericOptions& opts) {
  const double p_min = opts.p_min.value_or(default_p_min(flow, cutoff));
  const std::size_t n = opts.n_nodes.value_or(default_node_count(cutoff, p_min));
  switch (opts.scheme) {
    case GridScheme::Uniform: return MomentumGrid::uniform(cutoff, n);
    case GridScheme::GaussLegendre: return MomentumGrid::gauss_legendre(cutoff, n);
    case GridScheme::LogSpaced: break;
  }
  return MomentumGrid::log_spaced(cutoff, n, p_min);
}

SpectrumReport numeric_bound_states(FlowKind flow, const BesselParameter& param,
                                    const ExtensionParameter& ext, double cutoff,
                                    const NumericOptions& opts) {
  if (param.alpha() >= 1.0) throw UnsupportedError("cutoff flow needs alpha < 1");
  const ExtensionParameter ext_m = map_extension(ext, rep_of(flow), param);
  const double coupling = coupling_for_extension(flow, param, ext_m, cutoff);
  const MomentumGrid grid = make_grid(cutoff, flow, opts);
  const CutoffHamiltonian h = assemble_cutoff(grid, flow, param, coupling);

  const double norm = frobenius_norm(h.matrix);
  const double thr = 1e3 * std::numeric_limits<double>::epsilon() * norm;
  EigenResult eig = symmetric_eigensolve_range(h.matrix, -norm - 1.0, -thr, opts.want_vectors);

  SpectrumReport rep;
  rep.source = SpectrumSource::CutoffNumeric;
  rep.param = param;
  rep.ext = ext_m;
  rep.cutoff = cutoff;
  rep.n_nodes = grid.size();
  rep.coupling = coupling;
  rep.nodes = grid.nodes;
  rep.weights = grid.weights;
  const bool solid = classify_phase(param) == Phase::Solid && opts.solid_window;
  for (std::size_t k = eig.values.size(); k-- > 0;) {
    const double e = eig.values[k];
    if (solid && (100.0 * -e > cutoff * cutoff || std::sqrt(-e) < 10.0 * grid.nodes.front()))
      continue;
    rep.bound_energies.push_back(e);
    if (opts.want_vectors) {
      std::vector<double> psi(grid.size());
      std::size_t arg = 0;
      for (std::size_t i = 0; i < psi.size(); ++i) {
        psi[i] = eig.vectors[k][i] / std::sqrt(grid.weights[i]);
        if (std::abs(psi[i]) > std::abs(psi[arg])) arg = i;
      }
      if (psi[arg] < 0.0)
        for (double& v : psi) v = -v;
      rep.eigenvectors.push_back(std::move(psi));
    }
  }
  if (classify_phase(param) == Phase::Solid) rep.ladder_ratio = std::exp(2.0 * kPi / param.m_imag());
  return rep;
}

unsigned thread_limit() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("BESSELRG_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return hw;
}

ConvergenceTable convergence_study(FlowKind flow, const BesselParameter& param,
                                   const ExtensionParameter& ext_position,
                                   const std::vector<double>& ladder,
                                   const NumericOptions& opts, std::optional<double> target) {
  if (ladder.empty()) throw DomainError("empty cutoff ladder");
  for (std::size_t i = 0; i + 1 < ladder.size(); ++i)
    if (!(ladder[i] < ladder[i + 1])) throw DomainError("cutoff ladder must ascend");
  const double nan = std::numeric_limits<double>::quiet_NaN();

  double e_exact = nan;
  if (target) {
    e_exact = *target;
  } else {
    EnergyWindow w;
    if (classify_phase(param) == Phase::Solid) w = {-ladder.back() * ladder.back() / 100.0, -1e-300};
    const auto ex = exact_point_spectrum(param, ext_position, w);
    if (!ex.bound_energies.empty()) {
      if (classify_phase(param) == Phase::Solid) {
        e_exact = *std::min_element(ex.bound_energies.begin(), ex.bound_energies.end(),
                                    [](double a, double b) {
                                      return std::abs(std::log(-a)) < std::abs(std::log(-b));
                                    });
      } else {
        e_exact = ex.bound_energies.back();
      }
    }
  }

  ConvergenceTable table;
  table.rows.resize(ladder.size());
  detail::parallel_for(ladder.size(), thread_limit(), [&](std::size_t i) {
    const auto num = numeric_bound_states(flow, param, ext_position, ladder[i], opts);
    ConvergenceRow row{ladder[i], num.n_nodes, nan, e_exact, nan};
    if (!num.bound_energies.empty()) {
      if (std::isnan(e_exact)) {
        row.e_numeric = num.bound_energies.back();
      } else {
        row.e_numeric = *std::min_element(
            num.bound_energies.begin(), num.bound_energies.end(), [&](double a, double b) {
              return std::abs(std::log(a / e_exact)) < std::abs(std::log(b / e_exact));
            });
        row.rel_err = std::abs(row.e_numeric - e_exact) / std::abs(e_exact);
      }
    }
    table.rows[i] = row;
  });

  if (std::isnan(e_exact)) {
    for (const auto& r : table.rows)
      if (!std::isnan(r.e_numeric)) table.monotone = false;
    return table;
  }
  double prev = nan;
  for (const auto& r : table.rows) {
    if (r.cutoff * r.cutoff < 100.0 * std::abs(e_exact)) continue;
    if (std::isnan(r.rel_err)) {
      table.monotone = false;
      continue;
    }
    if (!std::isnan(prev) && r.rel_err > 1.1 * prev) table.monotone = false;
    prev = r.rel_err;
  }
  return table;
}

}  // namespace besselrg
