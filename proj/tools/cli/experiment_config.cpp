#include "experiment_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace qwalk::cli {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

std::optional<double> to_double(std::string_view text) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  return v;
}

template <typename T>
T get(const nlohmann::json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

std::string format_tag(OutputFormat f) { return f == OutputFormat::Csv ? "csv" : "json"; }

}  // namespace

DeltaChoice parse_delta(const std::string& text) {
  if (text == "tulsi") return DeltaChoice{true, 0.0};
  if (text == "pi/4") return DeltaChoice{false, std::numbers::pi / 4};
  if (const auto v = to_double(text)) {
    if (*v >= 0.0 && *v < std::numbers::pi / 2) return DeltaChoice{false, *v};
  }
  throw ConfigError("delta must be 'tulsi', 'pi/4' or radians in [0, pi/2), got '" + text + "'");
}

std::vector<CorrelationKind> parse_correlations(const std::string& text) {
  if (text == "all") return {std::begin(kAllCorrelationKinds), std::end(kAllCorrelationKinds)};
  std::vector<CorrelationKind> kinds;
  for (const auto& tag : split(text, ',')) {
    const auto kind = parse_correlation_kind(tag);
    if (!kind) throw ConfigError("unknown correlation kind '" + tag + "'");
    kinds.push_back(*kind);
  }
  return kinds;
}

OutputFormat parse_format(const std::string& text) {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  throw ConfigError("output format must be csv or json, got '" + text + "'");
}

Position parse_position(const std::string& text) {
  const auto parts = split(text, ',');
  int xy[2] = {0, 0};
  if (parts.size() != 2) throw ConfigError("target must be 'x,y', got '" + text + "'");
  for (int i = 0; i < 2; ++i) {
    const auto& p = parts[i];
    const auto [ptr, ec] = std::from_chars(p.data(), p.data() + p.size(), xy[i]);
    if (ec != std::errc{} || ptr != p.data() + p.size()) {
      throw ConfigError("target must be 'x,y', got '" + text + "'");
    }
  }
  return Position{xy[0], xy[1]};
}

IMAConfig ExperimentConfig::to_ima_config() const {
  IMAConfig c{GridGeometry(n_qubits)};
  c.delta = delta.resolve(c.geometry);
  c.target = target;
  c.lapse = lapse;
  c.k_max = k_max.value_or(default_kmax(c.geometry));
  c.success_target = success_target;
  c.mode = mode;
  c.trials = trials;
  c.seed = seed;
  c.correlations = correlations;
  return c;
}

SweepOptions ExperimentConfig::sweep_options() const {
  SweepOptions o;
  o.success_target = success_target;
  o.horizon_factor = horizon_factor;
  o.jobs = jobs;
  o.smoothing_window = smoothing_window;
  return o;
}

std::vector<LapseRule> ExperimentConfig::parsed_lapse_rules() const {
  std::vector<LapseRule> rules;
  for (const auto& r : lapse_rules) {
    try {
      rules.push_back(LapseRule::parse(r));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  return rules;
}

void apply_json(ExperimentConfig& config, const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
  for (const auto& [key, value] : j.items()) {
    const char* k = key.c_str();
    if (key == "n") {
      config.n_qubits = get<int>(j, k);
    } else if (key == "delta") {
      if (value.is_number()) {
        const double v = value.get<double>();
        if (!(v >= 0.0 && v < std::numbers::pi / 2)) throw ConfigError("delta must lie in [0, pi/2)");
        config.delta = DeltaChoice{false, v};
      } else {
        config.delta = parse_delta(get<std::string>(j, k));
      }
    } else if (key == "target") {
      const auto xy = get<std::vector<int>>(j, k);
      if (xy.size() != 2) throw ConfigError("config key 'target' needs [x, y]");
      config.target = Position{xy[0], xy[1]};
    } else if (key == "unitary") {
      config.unitary = get<bool>(j, k);
    } else if (key == "lapse") {
      config.lapse = get<int>(j, k);
    } else if (key == "k_max") {
      config.k_max = get<int>(j, k);
    } else if (key == "success_p") {
      config.success_target = get<double>(j, k);
    } else if (key == "mode") {
      const auto m = get<std::string>(j, k);
      if (m == "deterministic") {
        config.mode = RunMode::Deterministic;
      } else if (m == "monte_carlo") {
        config.mode = RunMode::MonteCarlo;
      } else {
        throw ConfigError("mode must be deterministic or monte_carlo");
      }
    } else if (key == "trials") {
      config.trials = get<int>(j, k);
    } else if (key == "seed") {
      config.seed = get<std::uint64_t>(j, k);
    } else if (key == "correlations") {
      if (value.is_string()) {
        config.correlations = parse_correlations(value.get<std::string>());
      } else {
        config.correlations.clear();
        for (const auto& tag : get<std::vector<std::string>>(j, k)) {
          const auto kind = parse_correlation_kind(tag);
          if (!kind) throw ConfigError("unknown correlation kind '" + tag + "'");
          config.correlations.push_back(*kind);
        }
      }
    } else if (key == "smooth") {
      config.smoothing_window = get<int>(j, k);
    } else if (key == "output") {
      config.output_path = get<std::string>(j, k);
    } else if (key == "format") {
      config.format = parse_format(get<std::string>(j, k));
    } else if (key == "exponents") {
      config.exponents = get<std::vector<int>>(j, k);
    } else if (key == "rules") {
      config.lapse_rules = get<std::vector<std::string>>(j, k);
    } else if (key == "m") {
      config.m_values = get<std::vector<double>>(j, k);
    } else if (key == "horizon_factor") {
      config.horizon_factor = get<double>(j, k);
    } else if (key == "jobs") {
      config.jobs = get<int>(j, k);
    } else if (key == "comment" || key == "command") {
      // Documentation fields, ignored.
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
}

namespace {

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace

ExperimentConfig load_config_file(const std::string& path) {
  ExperimentConfig config;
  apply_json(config, read_json_file(path));
  return config;
}

std::vector<ExperimentConfig> load_config_series(const std::string& path) {
  nlohmann::json j = read_json_file(path);
  if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
  nlohmann::json series = nlohmann::json::array();
  if (j.contains("series")) {
    series = j["series"];
    j.erase("series");
    if (!series.is_array() || series.empty()) throw ConfigError("'series' must be a non-empty array");
  }
  ExperimentConfig base;
  apply_json(base, j);
  if (series.empty()) return {base};
  std::vector<ExperimentConfig> out;
  for (const auto& entry : series) {
    ExperimentConfig c = base;
    apply_json(c, entry);
    out.push_back(std::move(c));
  }
  return out;
}

nlohmann::json to_json(const ExperimentConfig& config) {
  nlohmann::json j;
  j["n"] = config.n_qubits;
  j["delta"] = config.delta.tulsi ? nlohmann::json("tulsi") : nlohmann::json(config.delta.radians);
  j["target"] = {config.target.x, config.target.y};
  j["unitary"] = config.unitary;
  j["lapse"] = config.lapse;
  j["k_max"] = config.k_max ? nlohmann::json(*config.k_max) : nlohmann::json(nullptr);
  j["success_p"] = config.success_target;
  j["mode"] = config.mode == RunMode::Deterministic ? "deterministic" : "monte_carlo";
  j["trials"] = config.trials;
  j["seed"] = config.seed;
  auto tags = nlohmann::json::array();
  for (auto k : config.correlations) tags.push_back(std::string(to_string(k)));
  j["correlations"] = tags;
  j["smooth"] = config.smoothing_window ? nlohmann::json(*config.smoothing_window) : nlohmann::json(nullptr);
  j["format"] = format_tag(config.format);
  return j;
}

void check(const ExperimentConfig& config) {
  try {
    const IMAConfig ima = config.to_ima_config();
    validate(ima);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (config.smoothing_window && (*config.smoothing_window < 1 || *config.smoothing_window % 2 == 0)) {
    throw ConfigError("smoothing window must be odd and >= 1");
  }
  if (config.jobs < 1) throw ConfigError("jobs must be >= 1");
  if (!(config.horizon_factor >= 1.0)) throw ConfigError("horizon factor must be >= 1");
}

}  // namespace qwalk::cli
