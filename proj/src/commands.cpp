#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "besselrg/cli.hpp"
#include "besselrg/halfline_fourier.hpp"
#include "besselrg/spectral.hpp"
#include "json.hpp"
#include "parallel.hpp"

namespace besselrg::cli {

using nlohmann::ordered_json;

namespace {

constexpr double kPi = std::numbers::pi;
const double kNan = std::nan("");

// JSON text with every float written at 17 significant digits.
void write_json(std::ostringstream& os, const ordered_json& j, int depth) {
  const std::string pad(2 * depth, ' '), inner(2 * depth + 2, ' ');
  switch (j.type()) {
    case ordered_json::value_t::object: {
      if (j.empty()) { os << "{}"; return; }
      os << "{\n";
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) os << ",\n";
        first = false;
        os << inner << ordered_json(k).dump() << ": ";
        write_json(os, v, depth + 1);
      }
      os << "\n" << pad << "}";
      return;
    }
    case ordered_json::value_t::array: {
      if (j.empty()) { os << "[]"; return; }
      os << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ",\n";
        os << inner;
        write_json(os, j[i], depth + 1);
      }
      os << "\n" << pad << "]";
      return;
    }
    case ordered_json::value_t::number_float: {
      const double v = j.get<double>();
      os << (std::isfinite(v) ? format_double(v) : std::string("null"));
      return;
    }
    default:
      os << j.dump();
  }
}

std::string json_text(const ordered_json& j) {
  std::ostringstream os;
  write_json(os, j, 0);
  os << "\n";
  return os.str();
}

ordered_json num_or_null(double v) {
  return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr);
}

std::string csv_line(const std::vector<std::string>& cells) {
  std::string s;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) s += ',';
    s += cells[i];
  }
  return s + "\n";
}

std::optional<ExtensionParameter> extension_from(const RunConfig& c, const BesselParameter& param) {
  const Phase phase = classify_phase(param);
  ExtensionParameter ext;
  ext.representation = c.representation;
  switch (phase) {
    case Phase::Gas:
    case Phase::Boundary:
      return std::nullopt;
    case Phase::Liquid:
      if (!c.kappa) return std::nullopt;
      if (param.alpha() == 0.25 && c.representation != Representation::Position)
        ext.datum = UnderlinedKappa{*c.kappa};
      else
        ext.datum = Kappa{*c.kappa};
      break;
    case Phase::Critical:
      if (!c.nu) return std::nullopt;
      ext.datum = Nu{*c.nu};
      break;
    case Phase::Solid:
      if (!c.kappa_phase) return std::nullopt;
      ext.datum = UnimodularKappa{*c.kappa_phase};
      break;
  }
  try {
    validate_extension(param, ext);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("boundary datum does not fit alpha: ") + e.what());
  }
  return ext;
}

Representation momentum_rep(FlowKind flow) {
  return flow == FlowKind::Dirichlet ? Representation::MomentumDirichlet
                                     : Representation::MomentumNeumann;
}

NumericOptions numeric_options(const RunConfig& c) {
  NumericOptions o;
  o.scheme = c.grid;
  o.n_nodes = c.n_nodes;
  if (c.p_min) o.p_min = c.p_min;
  return o;
}

CommandResult cmd_flow(const RunConfig& c) {
  const auto param = BesselParameter::from_alpha(*c.alpha);
  const auto ext = extension_from(c, param);
  std::optional<ExtensionParameter> mext;
  if (ext) mext = map_extension(*ext, momentum_rep(c.flow), param);
  const double lambda0 = c.lambda0.value_or(c.lambda_ladder.front());
  if (!c.value0 && !mext) throw ConfigError("flow needs value0 or a boundary datum for this alpha");
  const double value0 = c.value0 ? *c.value0 : coupling_for_extension(c.flow, param, *mext, lambda0);
  const InitialCondition init{lambda0, value0};

  IntegrationOptions io;
  io.rel_tol = c.rel_tol;
  io.cross_blow_ups = c.cross_blow_ups;
  std::vector<TrajectorySample> samples;
  std::string message;
  bool blew_up = false;
  try {
    samples = integrate_flow(c.flow, param, init, c.lambda_ladder, io).samples;
  } catch (const BlowUpError& e) {
    for (const auto& [l, v] : e.samples) samples.push_back({l, v});
    blew_up = true;
    message = std::string(e.what()) + " near Lambda = " + format_double(e.lambda);
  }
  if (!blew_up) {
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (std::abs(samples[i].value) > io.blow_up_threshold) {
        message = "trajectory blows up at Lambda = " + format_double(samples[i].lambda);
        samples.resize(i);
        blew_up = true;
        break;
      }
    }
  }

  ordered_json rows = ordered_json::array();
  std::string csv = csv_line({"lambda", "coupling", "closed_form", "ode_numeric", "abs_diff"});
  for (const auto& s : samples) {
    double closed = kNan;
    try {
      closed = closed_form_coupling(c.flow, param, init, s.lambda);
    } catch (const BlowUpError&) {
    }
    double coupling = closed;
    if (mext && !c.value0) {
      try {
        coupling = coupling_for_extension(c.flow, param, *mext, s.lambda);
      } catch (const Error&) {
        coupling = kNan;
      }
    }
    const double diff = std::abs(closed - s.value);
    csv += csv_line({format_double(s.lambda), format_double(coupling), format_double(closed),
                     format_double(s.value), format_double(diff)});
    rows.push_back({{"lambda", s.lambda},
                    {"coupling", num_or_null(coupling)},
                    {"closed_form", num_or_null(closed)},
                    {"ode_numeric", num_or_null(s.value)},
                    {"abs_diff", num_or_null(diff)}});
  }
  CommandResult r;
  if (c.format == OutputFormat::Csv) {
    r.output = csv;
  } else {
    ordered_json j;
    j["command"] = "flow";
    j["alpha"] = *c.alpha;
    j["flow"] = to_string(c.flow);
    j["lambda0"] = lambda0;
    j["value0"] = value0;
    j["complete"] = !blew_up;
    j["rows"] = rows;
    r.output = json_text(j);
  }
  if (blew_up) {
    r.exit_code = 2;
    r.message = message;
  }
  return r;
}

ordered_json fixed_point_json(FlowKind flow, const BesselParameter& param) {
  const auto rep = fixed_points(flow, param);
  ordered_json pts = ordered_json::array();
  for (const auto& fp : rep.points)
    pts.push_back({{"value", fp.value}, {"stability", to_string(fp.stability)}, {"slope", fp.slope}});
  ordered_json j;
  j["fixed_points"] = pts;
  j["cycle_period"] = rep.cycle_period ? ordered_json(*rep.cycle_period) : ordered_json(nullptr);
  return j;
}

CommandResult cmd_fixed_points(const RunConfig& c) {
  const auto param = BesselParameter::from_alpha(*c.alpha);
  CommandResult r;
  if (c.format == OutputFormat::Csv) {
    const auto rep = fixed_points(c.flow, param);
    r.output = csv_line({"value", "stability", "slope", "cycle_period"});
    const std::string period = rep.cycle_period ? format_double(*rep.cycle_period) : "";
    for (const auto& fp : rep.points)
      r.output += csv_line({format_double(fp.value), to_string(fp.stability), format_double(fp.slope), period});
    if (rep.points.empty()) r.output += csv_line({"", "", "", period});
    return r;
  }
  ordered_json j;
  j["command"] = "fixed-points";
  j["alpha"] = *c.alpha;
  j["flow"] = to_string(c.flow);
  j["phase"] = to_string(classify_phase(param));
  const auto fp = fixed_point_json(c.flow, param);
  for (const auto& [k, v] : fp.items()) j[k] = v;
  r.output = json_text(j);
  return r;
}

CommandResult cmd_spectrum(const RunConfig& c) {
  const auto param = BesselParameter::from_alpha(*c.alpha);
  const auto ext = extension_from(c, param);
  const bool want_exact = c.spectrum_mode != "numeric";
  const bool want_numeric = c.spectrum_mode != "exact";
  if (want_numeric && !ext) throw ConfigError("numeric spectra need a one-parameter family (alpha < 1)");

  std::optional<ExtensionParameter> pos;
  if (ext) pos = map_extension(*ext, Representation::Position, param);
  const auto exact = exact_point_spectrum(param, pos, EnergyWindow{c.energy_min, c.energy_max});

  struct Row {
    std::string source;
    double cutoff;
    std::size_t index;
    double energy;
    double rel_err;
  };
  std::vector<Row> rows;
  if (want_exact)
    for (std::size_t i = 0; i < exact.bound_energies.size(); ++i)
      rows.push_back({"exact", kNan, i, exact.bound_energies[i], 0.0});

  std::string message;
  int code = 0;
  if (want_numeric) {
    std::vector<SpectrumReport> reports(c.lambda_ladder.size());
    std::vector<std::string> errors(c.lambda_ladder.size());
    const auto opts = numeric_options(c);
    detail::parallel_for(c.lambda_ladder.size(), thread_limit(), [&](std::size_t k) {
      try {
        reports[k] = numeric_bound_states(c.flow, param, *ext, c.lambda_ladder[k], opts);
      } catch (const ConfigError&) {
        throw;
      } catch (const Error& e) {
        errors[k] = e.what();
      }
    });
    for (std::size_t k = 0; k < reports.size(); ++k) {
      if (!errors[k].empty()) {
        code = 2;
        message = "numeric spectrum failed at Lambda = " + format_double(c.lambda_ladder[k]) + ": " + errors[k];
        break;
      }
      const auto& rep = reports[k];
      for (std::size_t i = 0; i < rep.bound_energies.size(); ++i) {
        const double e = rep.bound_energies[i];
        double rel = kNan;
        double best = HUGE_VAL;
        for (double x : exact.bound_energies) {
          if (std::abs(x - e) < best) {
            best = std::abs(x - e);
            rel = best / std::abs(x);
          }
        }
        rows.push_back({"numeric", c.lambda_ladder[k], i, e, rel});
      }
    }
  }

  CommandResult r;
  r.exit_code = code;
  r.message = message;
  if (c.format == OutputFormat::Csv) {
    r.output = csv_line({"source", "cutoff", "index", "energy", "rel_err"});
    for (const auto& row : rows)
      r.output += csv_line({row.source, std::isfinite(row.cutoff) ? format_double(row.cutoff) : "",
                            std::to_string(row.index), format_double(row.energy),
                            format_double(row.rel_err)});
  } else {
    ordered_json j;
    j["command"] = "spectrum";
    j["alpha"] = *c.alpha;
    j["phase"] = to_string(classify_phase(param));
    j["flow"] = to_string(c.flow);
    j["ladder_ratio"] = exact.ladder_ratio ? ordered_json(*exact.ladder_ratio) : ordered_json(nullptr);
    ordered_json arr = ordered_json::array();
    for (const auto& row : rows)
      arr.push_back({{"source", row.source},
                     {"cutoff", num_or_null(row.cutoff)},
                     {"index", row.index},
                     {"energy", row.energy},
                     {"rel_err", num_or_null(row.rel_err)}});
    j["rows"] = arr;
    r.output = json_text(j);
  }
  return r;
}

CommandResult cmd_converge(const RunConfig& c) {
  const auto param = BesselParameter::from_alpha(*c.alpha);
  const auto ext = extension_from(c, param);
  if (!ext) throw ConfigError("converge needs a boundary datum");
  const auto pos = map_extension(*ext, Representation::Position, param);
  const auto table = convergence_study(c.flow, param, pos, c.lambda_ladder, numeric_options(c));

  CommandResult r;
  if (c.format == OutputFormat::Csv) {
    r.output = csv_line({"lambda", "n_nodes", "e_numeric", "e_exact", "rel_err"});
    for (const auto& row : table.rows)
      r.output += csv_line({format_double(row.cutoff), std::to_string(row.n_nodes),
                            format_double(row.e_numeric), format_double(row.e_exact),
                            format_double(row.rel_err)});
  } else {
    ordered_json j;
    j["command"] = "converge";
    j["alpha"] = *c.alpha;
    j["flow"] = to_string(c.flow);
    j["monotone"] = table.monotone;
    ordered_json arr = ordered_json::array();
    for (const auto& row : table.rows)
      arr.push_back({{"lambda", row.cutoff},
                     {"n_nodes", row.n_nodes},
                     {"e_numeric", num_or_null(row.e_numeric)},
                     {"e_exact", num_or_null(row.e_exact)},
                     {"rel_err", num_or_null(row.rel_err)}});
    j["rows"] = arr;
    r.output = json_text(j);
  }
  if (!table.monotone) {
    r.exit_code = 2;
    r.message = "relative error is not monotone along the ladder beyond the noise floor";
  }
  return r;
}

// sqrt(2/pi) int_0^1 x^lambda {sin,cos}(p x) dx after substituting t = x^beta,
// which leaves a regular integrand; graded panels towards t = 0.
double power_head(bool sine, double lambda, double p) {
  const double beta = lambda + (sine ? 2.0 : 1.0);
  std::vector<double> gx, gw;
  gauss_legendre_rule(20, 0.0, 1.0, gx, gw);
  auto h = [&](double t) {
    const double x = std::pow(t, 1.0 / beta);
    if (!sine) return std::cos(p * x);
    return x == 0.0 ? p : std::sin(p * x) / x;
  };
  double sum = 0.0;
  auto panel = [&](double a, double b) {
    for (std::size_t k = 0; k < gx.size(); ++k) sum += (b - a) * gw[k] * h(a + (b - a) * gx[k]);
  };
  const int uniform = std::max(1, static_cast<int>(std::ceil(p / 2.0)));
  const double first = 1.0 / uniform;
  for (int k = 1; k < uniform; ++k) panel(k * first, (k + 1) * first);
  for (double b = first; b > 1e-300; b *= 0.25) panel(0.25 * b, b);
  return std::sqrt(2.0 / kPi) * sum / beta;
}

CommandResult cmd_transform(const RunConfig& c) {
  const bool sine = c.transform_kind == "sine";
  const TransformKind kind = sine ? TransformKind::Sine : TransformKind::Cosine;
  const double norm = std::sqrt(2.0 / kPi);
  std::vector<double> numeric(c.points.size()), closed(c.points.size());

  if (c.transform_function == "power") {
    const double l = c.exponent;
    const double coef = homogeneous_transform_closed_form(kind, l);
    for (std::size_t k = 0; k < c.points.size(); ++k) {
      const double p = c.points[k];
      numeric[k] = power_head(sine, l, p) + homogeneous_tail_transform(kind, l, 1.0, p).real();
      closed[k] = coef * std::pow(p, -l - 1.0);
    }
  } else {
    const bool gauss = c.transform_function == "gauss";
    const double end = gauss ? 14.0 : 60.0;
    const double h = 0.005;
    SampledFunction f;
    const auto n = static_cast<std::size_t>(std::llround(end / h)) + 1;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = h * static_cast<double>(i);
      f.grid.push_back(x);
      const double v = gauss ? (sine ? x : 1.0) * std::exp(-x * x / 2.0) : std::exp(-x);
      f.values.push_back(v);
    }
    const auto t = half_line_transform(kind, f, c.points);
    for (std::size_t k = 0; k < c.points.size(); ++k) {
      const double p = c.points[k];
      numeric[k] = t.values[k].real();
      if (gauss)
        closed[k] = (sine ? p : 1.0) * std::exp(-p * p / 2.0);
      else
        closed[k] = norm * (sine ? p : 1.0) / (1.0 + p * p);
    }
  }

  CommandResult r;
  if (c.format == OutputFormat::Csv) {
    r.output = csv_line({"p", "numeric", "closed_form", "abs_diff"});
    for (std::size_t k = 0; k < c.points.size(); ++k)
      r.output += csv_line({format_double(c.points[k]), format_double(numeric[k]),
                            format_double(closed[k]), format_double(std::abs(numeric[k] - closed[k]))});
  } else {
    ordered_json j;
    j["command"] = "transform";
    j["kind"] = c.transform_kind;
    j["function"] = c.transform_function;
    if (c.transform_function == "power") j["exponent"] = c.exponent;
    ordered_json arr = ordered_json::array();
    for (std::size_t k = 0; k < c.points.size(); ++k)
      arr.push_back({{"p", c.points[k]},
                     {"numeric", numeric[k]},
                     {"closed_form", closed[k]},
                     {"abs_diff", std::abs(numeric[k] - closed[k])}});
    j["rows"] = arr;
    r.output = json_text(j);
  }
  return r;
}

CommandResult cmd_phase_diagram(const RunConfig& c) {
  ordered_json arr = ordered_json::array();
  std::string csv = csv_line({"alpha", "phase", "realizations", "bound_states", "fixed_points",
                              "stability", "cycle_period"});
  for (double a : c.alphas) {
    const auto param = BesselParameter::from_alpha(a);
    const Phase phase = classify_phase(param);
    std::string realizations, bound;
    switch (phase) {
      case Phase::Gas: realizations = "unique"; bound = "0"; break;
      case Phase::Boundary: realizations = "unique"; bound = "0"; break;
      case Phase::Liquid: realizations = "one-parameter"; bound = "0 or 1"; break;
      case Phase::Critical: realizations = "one-parameter"; bound = "0 or 1"; break;
      case Phase::Solid: realizations = "one-parameter"; bound = "infinite"; break;
    }
    const auto rep = fixed_points(FlowKind::Dirichlet, param);
    ordered_json e;
    e["alpha"] = a;
    e["phase"] = to_string(phase);
    e["m"] = param.abs_m();
    e["m_imaginary"] = param.is_imaginary();
    e["realizations"] = realizations;
    e["bound_states"] = bound;
    const auto fp = fixed_point_json(FlowKind::Dirichlet, param);
    for (const auto& [k, v] : fp.items()) e[k] = v;
    arr.push_back(e);

    std::string values, stab;
    for (std::size_t i = 0; i < rep.points.size(); ++i) {
      if (i) { values += ';'; stab += ';'; }
      values += format_double(rep.points[i].value);
      stab += to_string(rep.points[i].stability);
    }
    csv += csv_line({format_double(a), to_string(phase), realizations, bound, values, stab,
                     rep.cycle_period ? format_double(*rep.cycle_period) : ""});
  }
  CommandResult r;
  if (c.format == OutputFormat::Csv) {
    r.output = csv;
  } else {
    ordered_json j;
    j["command"] = "phase-diagram";
    j["flow"] = "dirichlet";
    j["entries"] = arr;
    r.output = json_text(j);
  }
  return r;
}

}  // namespace

CommandResult run_command(const RunConfig& config) {
  try {
    validate_config(config);
    if (config.command == "flow") return cmd_flow(config);
    if (config.command == "fixed-points") return cmd_fixed_points(config);
    if (config.command == "spectrum") return cmd_spectrum(config);
    if (config.command == "converge") return cmd_converge(config);
    if (config.command == "transform") return cmd_transform(config);
    return cmd_phase_diagram(config);
  } catch (const ConfigError& e) {
    return {"", 1, e.what()};
  } catch (const UnsupportedError& e) {
    return {"", 1, e.what()};
  } catch (const Error& e) {
    return {"", 2, e.what()};
  }
}

}  // namespace besselrg::cli
