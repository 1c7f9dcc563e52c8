#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "besselrg/cli.hpp"
#include "json.hpp"

namespace besselrg::cli {

using nlohmann::ordered_json;

namespace {

const std::set<std::string> kCommands = {"flow",      "fixed-points",  "spectrum",
                                         "converge",  "transform",     "phase-diagram"};

std::string lower(std::string s) {
  for (auto& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return s;
}

double parse_number(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError("not a number: '" + text + "'");
  }
  if (used != text.size()) throw ConfigError("not a number: '" + text + "'");
  return v;
}

ordered_json ext_to_json(const ExtendedReal& x) {
  if (x.is_infinite()) return "inf";
  return x.value();
}

ExtendedReal ext_from_json(const ordered_json& j) {
  if (j.is_string()) return parse_extended_real(j.get<std::string>());
  if (j.is_number()) return ExtendedReal(j.get<double>());
  throw ConfigError("extended real must be a number or \"inf\"");
}

Representation parse_representation(const std::string& text) {
  const std::string t = lower(text);
  if (t == "position") return Representation::Position;
  if (t == "momentum-dirichlet") return Representation::MomentumDirichlet;
  if (t == "momentum-neumann") return Representation::MomentumNeumann;
  throw ConfigError("unknown representation '" + text + "'");
}

template <class T>
T get(const ordered_json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(std::string("field '") + key + "' has the wrong type");
  }
}

}  // namespace

FlowKind parse_flow(const std::string& text) {
  const std::string t = lower(text);
  if (t == "dirichlet") return FlowKind::Dirichlet;
  if (t == "neumann") return FlowKind::Neumann;
  throw ConfigError("unknown flow '" + text + "'");
}

GridScheme parse_grid(const std::string& text) {
  const std::string t = lower(text);
  if (t == "uniform") return GridScheme::Uniform;
  if (t == "log") return GridScheme::LogSpaced;
  if (t == "gauss") return GridScheme::GaussLegendre;
  throw ConfigError("unknown grid scheme '" + text + "'");
}

OutputFormat parse_format(const std::string& text) {
  const std::string t = lower(text);
  if (t == "csv") return OutputFormat::Csv;
  if (t == "json") return OutputFormat::Json;
  throw ConfigError("unknown format '" + text + "'");
}

std::vector<double> parse_ladder(const std::string& text) {
  std::vector<double> out;
  if (text.rfind("log:", 0) == 0) {
    std::vector<std::string> parts;
    std::stringstream ss(text.substr(4));
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.size() != 3) throw ConfigError("log ladder must read log:a:b:n");
    const double a = parse_number(parts[0]), b = parse_number(parts[1]);
    const double nd = parse_number(parts[2]);
    if (!(a > 0.0 && b > 0.0) || nd < 1.0 || nd != std::floor(nd))
      throw ConfigError("log ladder needs positive ends and an integer count");
    const int n = static_cast<int>(nd);
    if (n == 1) return {a};
    for (int k = 0; k < n; ++k) out.push_back(k == n - 1 ? b : a * std::pow(b / a, double(k) / (n - 1)));
    return out;
  }
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (item.empty()) throw ConfigError("empty ladder entry");
    out.push_back(parse_number(item));
  }
  if (out.empty()) throw ConfigError("empty ladder");
  return out;
}

std::string serialize_config(const RunConfig& c) {
  ordered_json j;
  j["command"] = c.command;
  j["alpha"] = c.alpha ? ordered_json(*c.alpha) : ordered_json(nullptr);
  j["flow"] = to_string(c.flow);
  j["representation"] = to_string(c.representation);
  j["kappa"] = c.kappa ? ext_to_json(*c.kappa) : ordered_json(nullptr);
  j["kappa_phase"] = c.kappa_phase ? ordered_json(*c.kappa_phase) : ordered_json(nullptr);
  j["nu"] = c.nu ? ext_to_json(*c.nu) : ordered_json(nullptr);
  j["lambda_ladder"] = c.lambda_ladder;
  j["lambda0"] = c.lambda0 ? ordered_json(*c.lambda0) : ordered_json(nullptr);
  j["value0"] = c.value0 ? ordered_json(*c.value0) : ordered_json(nullptr);
  j["cross_blow_ups"] = c.cross_blow_ups;
  j["rel_tol"] = c.rel_tol;
  j["grid"] = c.grid == GridScheme::LogSpaced ? "log"
              : c.grid == GridScheme::Uniform ? "uniform"
                                              : "gauss";
  j["n_nodes"] = c.n_nodes ? ordered_json(*c.n_nodes) : ordered_json(nullptr);
  j["p_min"] = c.p_min ? ordered_json(*c.p_min) : ordered_json(nullptr);
  j["spectrum_mode"] = c.spectrum_mode;
  j["energy_min"] = c.energy_min;
  j["energy_max"] = c.energy_max;
  j["transform_kind"] = c.transform_kind;
  j["transform_function"] = c.transform_function;
  j["exponent"] = c.exponent;
  j["points"] = c.points;
  j["alphas"] = c.alphas;
  j["out"] = c.out ? ordered_json(*c.out) : ordered_json(nullptr);
  j["format"] = c.format == OutputFormat::Csv ? "csv" : "json";
  return j.dump(2) + "\n";
}

RunConfig parse_config(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  RunConfig c;
  auto has = [&](const char* k) { return j.contains(k) && !j.at(k).is_null(); };
  for (const auto& [key, _] : j.items()) {
    static const std::set<std::string> known = {
        "command",    "alpha",         "flow",          "representation", "kappa",
        "kappa_phase", "nu",           "lambda_ladder", "lambda0",        "value0",
        "cross_blow_ups", "rel_tol",   "grid",          "n_nodes",        "p_min",
        "spectrum_mode", "energy_min", "energy_max",    "transform_kind", "transform_function",
        "exponent",   "points",        "alphas",        "out",            "format"};
    if (!known.count(key)) throw ConfigError("unknown config field '" + key + "'");
  }
  if (has("command")) c.command = get<std::string>(j, "command");
  if (has("alpha")) c.alpha = get<double>(j, "alpha");
  if (has("flow")) c.flow = parse_flow(get<std::string>(j, "flow"));
  if (has("representation")) c.representation = parse_representation(get<std::string>(j, "representation"));
  if (has("kappa")) c.kappa = ext_from_json(j.at("kappa"));
  if (has("kappa_phase")) c.kappa_phase = get<double>(j, "kappa_phase");
  if (has("nu")) c.nu = ext_from_json(j.at("nu"));
  if (has("lambda_ladder")) {
    const auto& l = j.at("lambda_ladder");
    c.lambda_ladder = l.is_string() ? parse_ladder(l.get<std::string>()) : get<std::vector<double>>(j, "lambda_ladder");
  }
  if (has("lambda0")) c.lambda0 = get<double>(j, "lambda0");
  if (has("value0")) c.value0 = get<double>(j, "value0");
  if (has("cross_blow_ups")) c.cross_blow_ups = get<bool>(j, "cross_blow_ups");
  if (has("rel_tol")) c.rel_tol = get<double>(j, "rel_tol");
  if (has("grid")) c.grid = parse_grid(get<std::string>(j, "grid"));
  if (has("n_nodes")) c.n_nodes = get<std::size_t>(j, "n_nodes");
  if (has("p_min")) c.p_min = get<double>(j, "p_min");
  if (has("spectrum_mode")) c.spectrum_mode = get<std::string>(j, "spectrum_mode");
  if (has("energy_min")) c.energy_min = get<double>(j, "energy_min");
  if (has("energy_max")) c.energy_max = get<double>(j, "energy_max");
  if (has("transform_kind")) c.transform_kind = get<std::string>(j, "transform_kind");
  if (has("transform_function")) c.transform_function = get<std::string>(j, "transform_function");
  if (has("exponent")) c.exponent = get<double>(j, "exponent");
  if (has("points")) {
    const auto& l = j.at("points");
    c.points = l.is_string() ? parse_ladder(l.get<std::string>()) : get<std::vector<double>>(j, "points");
  }
  if (has("alphas")) {
    const auto& l = j.at("alphas");
    c.alphas = l.is_string() ? parse_ladder(l.get<std::string>()) : get<std::vector<double>>(j, "alphas");
  }
  if (has("out")) c.out = get<std::string>(j, "out");
  if (has("format")) c.format = parse_format(get<std::string>(j, "format"));
  return c;
}

void validate_config(const RunConfig& c) {
  if (!kCommands.count(c.command)) throw ConfigError("unknown command '" + c.command + "'");
  const bool needs_alpha = c.command != "phase-diagram" && c.command != "transform";
  if (needs_alpha && !c.alpha) throw ConfigError("--alpha is required for " + c.command);
  if (c.alpha && !std::isfinite(*c.alpha)) throw ConfigError("alpha must be finite");
  for (std::size_t i = 0; i < c.lambda_ladder.size(); ++i) {
    if (!(c.lambda_ladder[i] > 0.0) || !std::isfinite(c.lambda_ladder[i]))
      throw ConfigError("ladder entries must be positive and finite");
    if (i > 0 && !(c.lambda_ladder[i] > c.lambda_ladder[i - 1]))
      throw ConfigError("the Lambda ladder must be strictly ascending");
  }
  if (!(c.rel_tol > 0.0)) throw ConfigError("rel_tol must be positive");
  if (c.p_min && !(*c.p_min > 0.0)) throw ConfigError("p_min must be positive");
  if (c.n_nodes && *c.n_nodes < 2) throw ConfigError("n_nodes must be at least 2");

  if (c.command == "flow") {
    if (c.lambda_ladder.empty()) throw ConfigError("flow needs --lambda-ladder");
    if (c.lambda0 && !(*c.lambda0 > 0.0)) throw ConfigError("lambda0 must be positive");
    if (!c.value0 && !c.kappa && !c.kappa_phase && !c.nu)
      throw ConfigError("flow needs value0 or a boundary datum");
  }
  if (c.command == "spectrum" || c.command == "converge") {
    const auto phase = classify_phase(BesselParameter::from_alpha(*c.alpha));
    if (*c.alpha >= 1.0 && c.command == "converge")
      throw ConfigError("convergence needs a one-parameter family (alpha < 1)");
    if (phase == Phase::Liquid && !c.kappa) throw ConfigError("0 < alpha < 1 needs --kappa");
    if (phase == Phase::Critical && !c.nu) throw ConfigError("alpha = 0 needs --nu");
    if (phase == Phase::Solid && !c.kappa_phase) throw ConfigError("alpha < 0 needs --kappa-phase");
    if (c.spectrum_mode != "exact" && c.spectrum_mode != "numeric" && c.spectrum_mode != "both")
      throw ConfigError("spectrum mode must be exact, numeric or both");
    if ((c.command == "converge" || c.spectrum_mode != "exact") && c.lambda_ladder.empty())
      throw ConfigError(c.command + " needs --lambda-ladder");
    if (!(c.energy_min < c.energy_max) || !(c.energy_max <= 0.0))
      throw ConfigError("energy window must satisfy energy_min < energy_max <= 0");
  }
  if (c.command == "transform") {
    if (c.transform_kind != "sine" && c.transform_kind != "cosine")
      throw ConfigError("transform kind must be sine or cosine");
    if (c.transform_function != "exp" && c.transform_function != "gauss" &&
        c.transform_function != "power")
      throw ConfigError("transform function must be exp, gauss or power");
    if (c.points.empty()) throw ConfigError("transform needs --points");
    for (double p : c.points)
      if (!(p > 0.0) || !std::isfinite(p)) throw ConfigError("transform points must be positive");
  }
  if (c.command == "phase-diagram" && c.alphas.empty())
    throw ConfigError("phase-diagram needs --alphas");
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace besselrg::cli
