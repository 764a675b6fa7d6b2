#include "config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "reputax/errors.hpp"

namespace reputax::cli {

namespace {

struct Value {
  std::string text;
  std::vector<std::string> items;
  bool is_list = false;
  int line = 0;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& key, int line, const std::string& msg) {
  throw ConfigError("line " + std::to_string(line) + ": " + key + ": " + msg);
}

double parse_double(const std::string& key, int line, const std::string& s) {
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) fail(key, line, "not a number: '" + s + "'");
  return v;
}

std::uint64_t parse_u64(const std::string& key, int line, const std::string& s) {
  std::uint64_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    fail(key, line, "not a nonnegative integer: '" + s + "'");
  return v;
}

int parse_int(const std::string& key, int line, const std::string& s) {
  int v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) fail(key, line, "not an integer: '" + s + "'");
  return v;
}

std::string num(double v) {
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

std::string num_list(const std::vector<double>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + num(v[i]);
  return s + "]";
}

double scalar(const std::string& key, const Value& v) {
  if (v.is_list) fail(key, v.line, "expected a scalar");
  return parse_double(key, v.line, v.text);
}

int integer(const std::string& key, const Value& v) {
  if (v.is_list) fail(key, v.line, "expected an integer");
  return parse_int(key, v.line, v.text);
}

std::vector<double> list(const std::string& key, const Value& v) {
  if (!v.is_list) fail(key, v.line, "expected a list [a, b, ...]");
  std::vector<double> out;
  for (const auto& item : v.items) out.push_back(parse_double(key, v.line, item));
  return out;
}

std::string word(const std::string& key, const Value& v) {
  if (v.is_list) fail(key, v.line, "expected a string");
  std::string s = v.text;
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

struct Field {
  std::string key;
  std::function<void(RunConfig&, const Value&)> set;
  std::function<std::string(const RunConfig&)> get;
};

#define SCALAR(name, member)                                                         \
  Field {                                                                            \
    name, [](RunConfig& c, const Value& v) { c.member = scalar(name, v); },          \
        [](const RunConfig& c) { return num(c.member); }                             \
  }
#define INTEGER(name, member)                                                        \
  Field {                                                                            \
    name, [](RunConfig& c, const Value& v) { c.member = integer(name, v); },         \
        [](const RunConfig& c) { return std::to_string(c.member); }                  \
  }
#define LIST(name, member)                                                           \
  Field {                                                                            \
    name, [](RunConfig& c, const Value& v) { c.member = list(name, v); },            \
        [](const RunConfig& c) { return num_list(c.member); }                        \
  }

const std::vector<Field>& fields() {
  static const std::vector<Field> f = {
      {"label", [](RunConfig& c, const Value& v) { c.label = word("label", v); },
       [](const RunConfig& c) { return c.label; }},
      {"backend",
       [](RunConfig& c, const Value& v) {
         const auto s = word("backend", v);
         if (s == "quant") c.solver.economy.backend = Backend::Quant;
         else if (s == "general") c.solver.economy.backend = Backend::General;
         else fail("backend", v.line, "expected quant or general");
       },
       [](const RunConfig& c) {
         return std::string(c.solver.economy.backend == Backend::Quant ? "quant" : "general");
       }},
      SCALAR("utility_curvature", solver.economy.primitives.utility_curvature),
      SCALAR("labor_disutility_power", solver.economy.primitives.labor_disutility_power),
      SCALAR("production_scale", solver.economy.primitives.production_scale),
      SCALAR("production_power", solver.economy.primitives.production_power),
      {"tau_max",
       [](RunConfig& c, const Value& v) {
         c.solver.economy.primitives.tau_max = scalar("tau_max", v);
         c.solver.grid.tau_max = c.solver.economy.primitives.tau_max;
       },
       [](const RunConfig& c) { return num(c.solver.grid.tau_max); }},
      INTEGER("grid_count_L", solver.grid.count_L),
      INTEGER("grid_count_B", solver.grid.count_B),
      SCALAR("beta", solver.beta),
      INTEGER("theta_grid_size", solver.theta_grid_size),
      SCALAR("stop_tol", solver.stop_tol),
      INTEGER("max_iters", solver.max_iters),
      {"signal",
       [](RunConfig& c, const Value& v) {
         const auto s = word("signal", v);
         if (s == "ratio") c.solver.monitoring.kind = SignalKind::Ratio;
         else if (s == "threshold") c.solver.monitoring.kind = SignalKind::Threshold;
         else fail("signal", v.line, "expected ratio or threshold");
       },
       [](const RunConfig& c) {
         return std::string(c.solver.monitoring.kind == SignalKind::Ratio ? "ratio" : "threshold");
       }},
      SCALAR("ratio_a_H", solver.monitoring.ratio.a_H),
      SCALAR("ratio_b_H", solver.monitoring.ratio.b_H),
      SCALAR("ratio_b_O", solver.monitoring.ratio.b_O),
      SCALAR("threshold_kappa", solver.monitoring.threshold.kappa),
      SCALAR("threshold_eps", solver.monitoring.threshold.eps),
      SCALAR("garble_eps", solver.monitoring.garble_eps),
      SCALAR("reveal_weight", solver.monitoring.reveal_weight),
      SCALAR("mix_w_L", solver.monitoring.mix_weights.labor),
      SCALAR("mix_w_B", solver.monitoring.mix_weights.broad),
      SCALAR("pi_HH", solver.transition.pi_HH),
      SCALAR("pi_OO", solver.transition.pi_OO),
      SCALAR("cost_L", solver.costs.c_L),
      SCALAR("cost_B", solver.costs.c_B),
      SCALAR("phi", solver.phi),
      LIST("theta_probes", theta_probes),
      LIST("history_probes", history_probes),
      LIST("value_probes", value_probes),
      INTEGER("sim_horizon", sim.horizon),
      INTEGER("sim_paths", sim.n_paths),
      {"seed",
       [](RunConfig& c, const Value& v) {
         if (v.is_list) fail("seed", v.line, "expected an integer");
         c.sim.seed = parse_u64("seed", v.line, v.text);
       },
       [](const RunConfig& c) { return std::to_string(c.sim.seed); }},
      SCALAR("sim_initial_theta", sim.initial_theta),
      SCALAR("sim_mimic_prob", sim.mimic_prob),
      LIST("garble_eps_list", garble_eps_list),
      LIST("lambda_list", lambda_list),
      LIST("phi_list", phi_list),
      LIST("persist_pi_HH", persist_pi_HH),
      LIST("persist_pi_OO", persist_pi_OO),
      LIST("mixinfo_w_L", mixinfo_w_L),
      LIST("mixinfo_w_B", mixinfo_w_B),
      SCALAR("mixinfo_theta", mixinfo_theta),
      {"policy_file",
       [](RunConfig& c, const Value& v) { c.policy_file = word("policy_file", v); },
       [](const RunConfig& c) { return c.policy_file; }},
  };
  return f;
}

#undef SCALAR
#undef INTEGER
#undef LIST

void check_ascending(const std::vector<double>& v, double lo, double hi, const std::string& key) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] >= lo && v[i] <= hi))
      throw ConfigError(key + ": values must lie in [" + num(lo) + ", " + num(hi) + "]");
    if (i > 0 && !(v[i] > v[i - 1])) throw ConfigError(key + ": must be strictly ascending");
  }
}

void check_range(const std::vector<double>& v, double lo, double hi, const std::string& key) {
  for (double x : v)
    if (!(x >= lo && x <= hi))
      throw ConfigError(key + ": values must lie in [" + num(lo) + ", " + num(hi) + "]");
}

void check(const RunConfig& c) {
  try {
    c.solver.validate();
    c.sim.validate();
    if (c.solver.economy.backend == Backend::Quant && c.solver.grid.tau_max > 0.99)
      throw ConfigError("tau_max: quant economy needs tau_max <= 0.99");
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  check_range(c.theta_probes, 0.0, 1.0, "theta_probes");
  check_range(c.value_probes, 0.0, 1.0, "value_probes");
  for (double p : c.history_probes)
    if (!(p > 0.0 && p < 1.0)) throw ConfigError("history_probes: values must lie in (0, 1)");
  if (c.garble_eps_list.empty()) throw ConfigError("garble_eps_list: must be nonempty");
  check_ascending(c.garble_eps_list, 0.0, 0.5, "garble_eps_list");
  if (c.lambda_list.empty() || c.phi_list.empty())
    throw ConfigError("lambda_list/phi_list: must be nonempty");
  check_ascending(c.lambda_list, 0.0, 1.0, "lambda_list");
  check_ascending(c.phi_list, 0.0, 1.0, "phi_list");
  if (c.persist_pi_HH.empty() || c.persist_pi_HH.size() != c.persist_pi_OO.size())
    throw ConfigError("persist_pi_HH/persist_pi_OO: need equal, nonzero lengths");
  check_range(c.persist_pi_HH, 0.0, 1.0, "persist_pi_HH");
  check_range(c.persist_pi_OO, 0.0, 1.0, "persist_pi_OO");
  for (std::size_t j = 1; j < c.persist_pi_HH.size(); ++j) {
    const bool up = c.persist_pi_HH[j] >= c.persist_pi_HH[j - 1] &&
                    c.persist_pi_OO[j] >= c.persist_pi_OO[j - 1];
    const bool same = c.persist_pi_HH[j] == c.persist_pi_HH[j - 1] &&
                      c.persist_pi_OO[j] == c.persist_pi_OO[j - 1];
    if (!up || same) throw ConfigError("persist_pi_HH/persist_pi_OO: levels must ascend");
  }
  if (c.mixinfo_w_L.empty() || c.mixinfo_w_L.size() != c.mixinfo_w_B.size())
    throw ConfigError("mixinfo_w_L/mixinfo_w_B: need equal, nonzero lengths");
  check_range(c.mixinfo_w_L, 0.0, 1e6, "mixinfo_w_L");
  check_range(c.mixinfo_w_B, 0.0, 1e6, "mixinfo_w_B");
  if (!(c.mixinfo_theta >= 0.0 && c.mixinfo_theta <= 1.0))
    throw ConfigError("mixinfo_theta: must lie in [0, 1]");
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& f : fields()) k.push_back(f.key);
    return k;
  }();
  return keys;
}

std::string RunConfig::params_line() const {
  std::string s = "# params:";
  for (const auto& f : fields()) s += " " + f.key + "=" + f.get(*this);
  return s;
}

RunConfig parse_config(std::istream& in) {
  std::map<std::string, Value> values;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    bool quoted = false;
    std::size_t cut = raw.size();
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (raw[i] == '"') quoted = !quoted;
      if (raw[i] == '#' && !quoted) {
        cut = i;
        break;
      }
    }
    const std::string text = trim(raw.substr(0, cut));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line) + ": expected key = value");
    const std::string key = trim(text.substr(0, eq));
    Value v;
    v.line = line;
    v.text = trim(text.substr(eq + 1));
    if (v.text.empty()) fail(key, line, "missing value");
    if (v.text.front() == '[') {
      if (v.text.back() != ']') fail(key, line, "unterminated list");
      v.is_list = true;
      std::stringstream body(v.text.substr(1, v.text.size() - 2));
      std::string item;
      while (std::getline(body, item, ',')) {
        item = trim(item);
        if (item.empty()) fail(key, line, "empty list element");
        v.items.push_back(item);
      }
    }
    if (values.count(key)) fail(key, line, "duplicate key");
    values.emplace(key, std::move(v));
  }

  RunConfig c;
  for (const auto& [key, v] : values) {
    bool known = false;
    for (const auto& f : fields()) {
      if (f.key == key) {
        f.set(c, v);
        known = true;
        break;
      }
    }
    if (!known) fail(key, v.line, "unknown key");
  }
  check(c);
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  return parse_config(in);
}

}  // namespace reputax::cli
