#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace qwalk::cli {

namespace {

constexpr const char* kTraceSchema = "qwalk.trace/1";
constexpr const char* kMonteCarloSchema = "qwalk.montecarlo/1";
constexpr const char* kSweepSchema = "qwalk.sweep/1";

std::string num(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

nlohmann::json json_num(double v) { return std::isnan(v) ? nlohmann::json(nullptr) : nlohmann::json(v); }

std::string join(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += cells[i];
  }
  return line + '\n';
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + '\n'; }

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  // Text cells override numeric ones (column index -> per-row text).
  std::vector<std::pair<std::size_t, std::vector<std::string>>> text;
  // Columns written as JSON integers.
  std::vector<std::string> integer_columns;

  std::string text_at(std::size_t col, std::size_t row) const {
    for (const auto& [c, cells] : text)
      if (c == col) return cells[row];
    return num(rows[row][col]);
  }
  const std::vector<std::string>* text_column(std::size_t col) const {
    for (const auto& [c, cells] : text)
      if (c == col) return &cells;
    return nullptr;
  }

  std::string csv(const std::string& schema) const {
    std::string out = "# " + schema + '\n' + join(columns);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      std::vector<std::string> cells;
      for (std::size_t c = 0; c < columns.size(); ++c) cells.push_back(text_at(c, r));
      out += join(cells);
    }
    return out;
  }

  nlohmann::json json_rows() const {
    auto arr = nlohmann::json::array();
    for (std::size_t r = 0; r < rows.size(); ++r) {
      nlohmann::json obj = nlohmann::json::object();
      for (std::size_t c = 0; c < columns.size(); ++c) {
        if (const auto* t = text_column(c)) {
          obj[columns[c]] = (*t)[r].empty() ? nlohmann::json(nullptr) : nlohmann::json((*t)[r]);
        } else if (std::find(integer_columns.begin(), integer_columns.end(), columns[c]) !=
                   integer_columns.end()) {
          obj[columns[c]] = static_cast<long long>(rows[r][c]);
        } else {
          obj[columns[c]] = json_num(rows[r][c]);
        }
      }
      arr.push_back(std::move(obj));
    }
    return arr;
  }
};

std::string render_table(const Table& table, const char* schema, const ExperimentConfig& config,
                         const std::string& kind) {
  if (config.format == OutputFormat::Csv) return table.csv(schema);
  nlohmann::json j;
  j["schema"] = schema;
  if (!kind.empty()) j["kind"] = kind;
  j["config"] = to_json(config);
  j["columns"] = table.columns;
  j["rows"] = table.json_rows();
  return dump(j);
}

}  // namespace

std::string render_trace(const RunTrace& trace, const ExperimentConfig& config) {
  Table table;
  table.columns = {"k", "P_t", "P0", "survival", "P_c", "P1", "e"};
  table.integer_columns = {"k"};
  for (auto kind : trace.kinds) table.columns.emplace_back(to_string(kind));

  // e(k) is undefined at k = 0 and where P_c is 0 or 1.
  std::vector<double> e;
  for (const auto& r : trace.rows) {
    const bool defined = r.k >= 1 && r.p_cumulative > 0.0 && r.p_cumulative < 1.0;
    e.push_back(defined ? efficiency(r.k, r.p_cumulative, config.success_target)
                        : std::numeric_limits<double>::quiet_NaN());
  }

  std::vector<std::vector<double>> smoothed;
  if (config.smoothing_window) {
    table.columns.emplace_back("e_smooth");
    // Smoothed from k = 1 so the undefined k = 0 entry does not leak in.
    std::vector<double> tail(e.begin() + (e.empty() ? 0 : 1), e.end());
    for (auto& v : tail)
      if (std::isnan(v)) v = 0.0;
    std::vector<double> es = smooth(tail, *config.smoothing_window);
    es.insert(es.begin(), std::numeric_limits<double>::quiet_NaN());
    for (std::size_t i = 0; i < e.size(); ++i)
      if (std::isnan(e[i])) es[i] = e[i];
    smoothed.push_back(std::move(es));
    for (auto kind : trace.kinds) {
      table.columns.push_back(std::string(to_string(kind)) + "_smooth");
      smoothed.push_back(smooth(trace.correlation_series(kind), *config.smoothing_window));
    }
  }

  for (std::size_t i = 0; i < trace.rows.size(); ++i) {
    const auto& r = trace.rows[i];
    std::vector<double> row{static_cast<double>(r.k), r.p_target, r.p_zero, r.survival, r.p_cumulative,
                            r.p_control_one, e[i]};
    row.insert(row.end(), r.correlations.begin(), r.correlations.end());
    for (const auto& s : smoothed) row.push_back(s[i]);
    table.rows.push_back(std::move(row));
  }
  return render_table(table, kTraceSchema, config, config.unitary ? "unitary" : "ima");
}

std::string render_monte_carlo(const MonteCarloResult& mc, double deterministic_p_cumulative,
                               const ExperimentConfig& config) {
  Table table;
  table.columns = {"trials", "successes", "success_frequency", "standard_error", "P_c_deterministic"};
  table.integer_columns = {"trials", "successes"};
  table.rows.push_back({static_cast<double>(mc.trials), static_cast<double>(mc.successes),
                        mc.success_frequency, mc.standard_error, deterministic_p_cumulative});
  return render_table(table, kMonteCarloSchema, config, "monte_carlo");
}

std::string render_sweep(const SweepResult& sweep, const ExperimentConfig& config, const std::string& kind) {
  Table table;
  table.columns = {"N",  "n",         "rule",      "lapse", "m_ratio",   "m_pow2",        "k_max",
                   "P_c_final", "TS", "optimal_k", "TS_at_optimal", "TS_over_N",
                   "MI_coin_pos_kmax", "MI_coin_pos_opt"};
  for (double a : kFitAlphas) table.columns.push_back("f_" + num(a));
  table.integer_columns = {"N", "n", "k_max", "optimal_k"};

  std::vector<std::string> rule_cells;
  std::vector<std::string> lapse_cells;
  for (const auto& r : sweep.rows) {
    const double n = static_cast<double>(r.n_positions);
    std::vector<double> row{n,
                            static_cast<double>(r.n_qubits),
                            0.0,
                            0.0,
                            r.m,
                            std::isnan(r.m) ? r.m : std::log2(r.m),
                            static_cast<double>(r.k_max),
                            r.p_cumulative_final,
                            r.total_steps,
                            static_cast<double>(r.optimal_k),
                            r.total_steps_at_optimal,
                            r.total_steps / n,
                            r.mi_coin_pos_final,
                            r.mi_coin_pos_at_optimal};
    for (double a : kFitAlphas) row.push_back(r.total_steps / (std::sqrt(n) * std::pow(std::log2(n), a)));
    table.rows.push_back(std::move(row));
    rule_cells.push_back(r.rule);
    lapse_cells.push_back(r.lapse ? std::to_string(*r.lapse) : "unitary");
  }
  table.text = {{2, rule_cells}, {3, lapse_cells}};
  return render_table(table, kSweepSchema, config, kind);
}

std::string run_experiment(const ExperimentConfig& config) {
  check(config);
  const IMAConfig ima = config.to_ima_config();
  if (config.mode == RunMode::MonteCarlo) {
    IMAConfig det = ima;
    det.mode = RunMode::Deterministic;
    det.correlations.clear();
    const RunTrace trace = config.unitary ? run_unitary(det) : run_ima_deterministic(det);
    IMAConfig mc_config = ima;
    if (config.unitary) mc_config.lapse = mc_config.k_max + 1;  // never measures
    return render_monte_carlo(run_ima_monte_carlo(mc_config), trace.rows.back().p_cumulative, config);
  }
  const RunTrace trace = config.unitary ? run_unitary(ima) : run_ima_deterministic(ima);
  return render_trace(trace, config);
}

std::string run_sweep_lapse(const ExperimentConfig& config) {
  check(config);
  if (config.m_values.empty()) throw ConfigError("sweep-lapse needs at least one m value");
  std::vector<LapseRule> rules;
  for (double m : config.m_values) {
    if (!(m > 0.0)) throw ConfigError("m values must be positive");
    rules.push_back(LapseRule::sqrt_n_over(m));
  }
  const SweepResult sweep =
      sweep_lapse(GridGeometry(config.n_qubits), config.delta, rules, config.sweep_options());
  return render_sweep(sweep, config, "lapse");
}

std::string run_sweep_order(const ExperimentConfig& config) {
  if (config.exponents.empty()) throw ConfigError("sweep-order needs a non-empty exponent list");
  for (int n : config.exponents) {
    if (n < 2 || n % 2 != 0) throw ConfigError("sweep-order exponents must be even and >= 2");
  }
  ExperimentConfig probe = config;
  probe.n_qubits = config.exponents.front();
  check(probe);
  const auto rules = config.parsed_lapse_rules();
  if (rules.empty()) throw ConfigError("sweep-order needs at least one lapse rule");
  const SweepResult sweep = sweep_order(config.exponents, config.delta, rules, config.sweep_options());
  return render_sweep(sweep, config, "order");
}

void emit(const std::string& content, const std::string& path, std::ostream& fallback) {
  if (path.empty()) {
    fallback << content;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  out.close();
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace qwalk::cli
