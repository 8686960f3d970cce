#include "uavcache/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

namespace uavcache {

const char* to_string(Policy p) {
  switch (p) {
    case Policy::kFd: return "fd";
    case Policy::kSec: return "sec";
    case Policy::kPbc: return "pbc";
    case Policy::kVbc: return "vbc";
    case Policy::kMabEps: return "mab-eps";
    case Policy::kMabUcb: return "mab-ucb";
  }
  return "?";
}

Policy policy_from_string(const std::string& name) {
  for (Policy p : {Policy::kFd, Policy::kSec, Policy::kPbc, Policy::kVbc, Policy::kMabEps, Policy::kMabUcb}) {
    if (name == to_string(p)) return p;
  }
  throw ConfigError({"policy: unknown value '" + name + "' (expected fd|sec|pbc|vbc|mab-eps|mab-ucb)"});
}

bool is_learning(Policy p) { return p == Policy::kMabEps || p == Policy::kMabUcb; }

double ScenarioConfig::resolved_epoch_period() const {
  if (epoch_period > 0.0) return epoch_period;
  if (n_groups() == 0) return trajectory_time;
  return trajectory_time / static_cast<double>(n_groups());
}

namespace {

std::string join(const std::vector<std::string>& v) {
  std::string s = "invalid configuration:";
  for (const auto& p : v) s += "\n  " + p;
  return s;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void bad(const std::string& key, const std::string& value, const char* expected) {
  throw ConfigError({key + ": cannot parse '" + value + "' as " + expected});
}

double parse_real(const std::string& key, const std::string& value) {
  const auto slash = value.find('/');
  const auto one = [&](std::string_view s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size()) bad(key, value, "a real number");
    return v;
  };
  if (slash == std::string::npos) return one(value);
  const double den = one(std::string_view(value).substr(slash + 1));
  if (den == 0.0) bad(key, value, "a fraction with non-zero denominator");
  return one(std::string_view(value).substr(0, slash)) / den;
}

std::uint64_t parse_uint(const std::string& key, const std::string& value) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(value.data(), value.data() + value.size(), v);
  if (value.empty() || res.ec != std::errc{} || res.ptr != value.data() + value.size()) {
    bad(key, value, "a non-negative integer");
  }
  return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  bad(key, value, "a boolean");
}

std::vector<TadOverride> parse_overrides(const std::string& key, const std::string& value) {
  std::vector<TadOverride> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ';')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto colon = item.find(':');
    const auto dash = item.find('-');
    if (colon == std::string::npos || dash == std::string::npos || dash > colon) {
      bad(key, value, "FIRST-LAST:RATIO entries separated by ';'");
    }
    TadOverride o;
    o.first = static_cast<ContentId>(parse_uint(key, trim(item.substr(0, dash))));
    o.last = static_cast<ContentId>(parse_uint(key, trim(item.substr(dash + 1, colon - dash - 1))));
    o.ratio = parse_real(key, trim(item.substr(colon + 1)));
    out.push_back(o);
  }
  return out;
}

std::string real_text(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

using Setter = std::function<void(ScenarioConfig&, const std::string&, const std::string&)>;

template <typename T>
Setter size_field(T ScenarioConfig::*field) {
  return [field](ScenarioConfig& c, const std::string& k, const std::string& v) {
    c.*field = static_cast<T>(parse_uint(k, v));
  };
}

Setter real_field(double ScenarioConfig::*field) {
  return [field](ScenarioConfig& c, const std::string& k, const std::string& v) { c.*field = parse_real(k, v); };
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"n_contents", size_field(&ScenarioConfig::n_contents)},
      {"n_anchors", size_field(&ScenarioConfig::n_anchors)},
      {"n_ferries", size_field(&ScenarioConfig::n_ferries)},
      {"group_size", size_field(&ScenarioConfig::group_size)},
      {"cache_anchor", size_field(&ScenarioConfig::cache_anchor)},
      {"cache_ferry", size_field(&ScenarioConfig::cache_ferry)},
      {"request_rate", real_field(&ScenarioConfig::request_rate)},
      {"hover_ratio", real_field(&ScenarioConfig::hover_ratio)},
      {"transit_ratio", real_field(&ScenarioConfig::transit_ratio)},
      {"zipf_alpha", real_field(&ScenarioConfig::zipf_alpha)},
      {"trajectory", [](ScenarioConfig& c, const std::string&, const std::string& v) { c.trajectory = v; }},
      {"trajectory_time", real_field(&ScenarioConfig::trajectory_time)},
      {"policy", [](ScenarioConfig& c, const std::string&, const std::string& v) { c.policy = policy_from_string(v); }},
      {"selective_caching",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.selective_caching = parse_bool(k, v); }},
      {"lambda", real_field(&ScenarioConfig::lambda)},
      {"kappa", real_field(&ScenarioConfig::kappa)},
      {"learning_rate", real_field(&ScenarioConfig::learning_rate)},
      {"learning_rate_schedule",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         if (v == "constant") c.learning_rate_schedule = LearningSchedule::kConstant;
         else if (v == "harmonic") c.learning_rate_schedule = LearningSchedule::kHarmonic;
         else bad(k, v, "constant|harmonic");
       }},
      {"alpha_u", real_field(&ScenarioConfig::alpha_u)},
      {"epsilon_initial", real_field(&ScenarioConfig::epsilon_initial)},
      {"epsilon_decay", real_field(&ScenarioConfig::epsilon_decay)},
      {"epsilon_floor", real_field(&ScenarioConfig::epsilon_floor)},
      {"r_tad", real_field(&ScenarioConfig::r_tad)},
      {"r_tad_overrides",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.r_tad_overrides = parse_overrides(k, v); }},
      {"n_profiles", size_field(&ScenarioConfig::n_profiles)},
      {"swap_prob", real_field(&ScenarioConfig::swap_prob)},
      {"swap_passes", size_field(&ScenarioConfig::swap_passes)},
      {"epochs", size_field(&ScenarioConfig::epochs)},
      {"epoch_period", real_field(&ScenarioConfig::epoch_period)},
      {"seed", size_field(&ScenarioConfig::seed)},
      {"inter_request_estimate",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         if (v == "analytic") c.inter_request_estimate = GapMode::kAnalytic;
         else if (v == "empirical") c.inter_request_estimate = GapMode::kEmpirical;
         else bad(k, v, "analytic|empirical");
       }},
      {"qtable_dump_interval", size_field(&ScenarioConfig::qtable_dump_interval)},
  };
  return table;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error(join(problems)), problems_(std::move(problems)) {}

void set_config_value(ScenarioConfig& cfg, const std::string& key, const std::string& value) {
  const auto it = setters().find(key);
  if (it == setters().end()) throw ConfigError({"unknown key '" + key + "'"});
  it->second(cfg, key, value);
}

ScenarioConfig parse_config(const std::string& document) {
  ScenarioConfig cfg;
  std::vector<std::string> problems;
  std::istringstream in(document);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      problems.push_back("line " + std::to_string(lineno) + ": expected key = value");
      continue;
    }
    try {
      set_config_value(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const ConfigError& e) {
      for (const auto& p : e.problems()) problems.push_back("line " + std::to_string(lineno) + ": " + p);
    }
  }
  if (!problems.empty()) throw ConfigError(problems);
  validate(cfg);
  return cfg;
}

void validate(const ScenarioConfig& c) {
  std::vector<std::string> p;
  const auto need = [&](bool ok, std::string msg) {
    if (!ok) p.push_back(std::move(msg));
  };
  const auto num = [](auto v) {
    if constexpr (std::is_floating_point_v<decltype(v)>) return real_text(v);
    else return std::to_string(v);
  };
  need(c.n_contents >= 1, "n_contents must be >= 1");
  need(c.n_anchors >= 1, "n_anchors must be >= 1");
  need(c.group_size >= 1, "group_size must be >= 1");
  need(c.n_ferries == 0 || c.group_size <= c.n_ferries,
       "group_size (" + num(c.group_size) + ") must not exceed n_ferries (" + num(c.n_ferries) + ")");
  need(c.cache_anchor >= 1 && c.cache_anchor <= c.n_contents,
       "cache_anchor (" + num(c.cache_anchor) + ") must lie in [1, n_contents=" + num(c.n_contents) + "]");
  need(c.cache_ferry >= 1 && c.cache_ferry <= c.n_contents,
       "cache_ferry (" + num(c.cache_ferry) + ") must lie in [1, n_contents=" + num(c.n_contents) + "]");
  need(c.request_rate > 0.0, "request_rate must be > 0");
  need(c.hover_ratio > 0.0 && c.hover_ratio <= 1.0, "hover_ratio must lie in (0, 1]");
  need(c.transit_ratio >= 0.0 && c.transit_ratio < 1.0, "transit_ratio must lie in [0, 1)");
  const double residual = static_cast<double>(c.n_anchors) * (c.hover_ratio + c.transit_ratio) - 1.0;
  need(std::abs(residual) <= 1e-9,
       "n_anchors*(hover_ratio+transit_ratio) must equal 1 (residual " + num(residual) + ")");
  need(c.zipf_alpha >= 0.0, "zipf_alpha must be >= 0");
  need(c.trajectory == "round-robin", "trajectory must be round-robin (got '" + c.trajectory + "')");
  need(c.trajectory_time > 0.0, "trajectory_time must be > 0");
  need(c.lambda >= 0.0 && c.lambda <= 1.0, "lambda must lie in [0, 1]");
  need(c.kappa > 0.0, "kappa must be > 0");
  need(c.learning_rate > 0.0 && c.learning_rate <= 1.0, "learning_rate must lie in (0, 1]");
  need(c.alpha_u >= 0.0, "alpha_u must be >= 0");
  need(c.epsilon_initial >= 0.0 && c.epsilon_initial <= 1.0, "epsilon_initial must lie in [0, 1]");
  need(c.epsilon_decay > 0.0 && c.epsilon_decay <= 1.0, "epsilon_decay must lie in (0, 1]");
  need(c.epsilon_floor >= 0.0 && c.epsilon_floor <= 1.0, "epsilon_floor must lie in [0, 1]");
  need(c.r_tad > 0.0, "r_tad must be > 0");
  for (const auto& o : c.r_tad_overrides) {
    need(o.first <= o.last && o.last < c.n_contents,
         "r_tad_overrides range " + num(o.first) + "-" + num(o.last) + " must lie within [0, n_contents)");
    need(o.ratio > 0.0, "r_tad_overrides ratio must be > 0");
  }
  need(c.n_profiles >= 1, "n_profiles must be >= 1");
  need(c.swap_prob >= 0.0 && c.swap_prob <= 1.0, "swap_prob must lie in [0, 1]");
  need(c.epoch_period >= 0.0, "epoch_period must be >= 0 (0 selects the ferry visit gap)");
  if (c.policy == Policy::kSec) {
    need(c.n_profiles == 1 || c.swap_prob == 0.0 || c.n_anchors == 1,
         "policy=sec requires homogeneous popularity (n_profiles=1 or swap_prob=0)");
  }
  if (!p.empty()) throw ConfigError(p);
}

std::string echo_config(const ScenarioConfig& c) {
  std::ostringstream o;
  o << "n_contents = " << c.n_contents << '\n'
    << "n_anchors = " << c.n_anchors << '\n'
    << "n_ferries = " << c.n_ferries << '\n'
    << "group_size = " << c.group_size << '\n'
    << "cache_anchor = " << c.cache_anchor << '\n'
    << "cache_ferry = " << c.cache_ferry << '\n'
    << "request_rate = " << real_text(c.request_rate) << '\n'
    << "hover_ratio = " << real_text(c.hover_ratio) << '\n'
    << "transit_ratio = " << real_text(c.transit_ratio) << '\n'
    << "zipf_alpha = " << real_text(c.zipf_alpha) << '\n'
    << "trajectory = " << c.trajectory << '\n'
    << "trajectory_time = " << real_text(c.trajectory_time) << '\n'
    << "policy = " << to_string(c.policy) << '\n'
    << "selective_caching = " << (c.selective_caching ? "true" : "false") << '\n'
    << "lambda = " << real_text(c.lambda) << '\n'
    << "kappa = " << real_text(c.kappa) << '\n'
    << "learning_rate = " << real_text(c.learning_rate) << '\n'
    << "learning_rate_schedule = "
    << (c.learning_rate_schedule == LearningSchedule::kHarmonic ? "harmonic" : "constant") << '\n'
    << "alpha_u = " << real_text(c.alpha_u) << '\n'
    << "epsilon_initial = " << real_text(c.epsilon_initial) << '\n'
    << "epsilon_decay = " << real_text(c.epsilon_decay) << '\n'
    << "epsilon_floor = " << real_text(c.epsilon_floor) << '\n'
    << "r_tad = " << real_text(c.r_tad) << '\n'
    << "r_tad_overrides = ";
  for (std::size_t i = 0; i < c.r_tad_overrides.size(); ++i) {
    const auto& ov = c.r_tad_overrides[i];
    o << (i ? ";" : "") << ov.first << '-' << ov.last << ':' << real_text(ov.ratio);
  }
  o << '\n'
    << "n_profiles = " << c.n_profiles << '\n'
    << "swap_prob = " << real_text(c.swap_prob) << '\n'
    << "swap_passes = " << c.swap_passes << '\n'
    << "epochs = " << c.epochs << '\n'
    << "epoch_period = " << real_text(c.epoch_period) << '\n'
    << "seed = " << c.seed << '\n'
    << "inter_request_estimate = " << (c.inter_request_estimate == GapMode::kEmpirical ? "empirical" : "analytic")
    << '\n'
    << "qtable_dump_interval = " << c.qtable_dump_interval << '\n';
  return o.str();
}

std::string config_hash(const ScenarioConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : echo_config(cfg)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<Seconds> resolved_tads(const ScenarioConfig& cfg) {
  return assign_tads(cfg.n_contents, cfg.r_tad, cfg.r_tad_overrides, cfg.trajectory_time);
}

}  // namespace uavcache
