#include "uavcache/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "uavcache/bandit.hpp"
#include "uavcache/engine.hpp"
#include "uavcache/ferry_policy.hpp"
#include "uavcache/rng.hpp"
#include "format.hpp"

namespace uavcache {

namespace fs = std::filesystem;

namespace {

std::ofstream open_output(const fs::path& p) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + p.string() + " for writing");
  return out;
}

void remove_outputs(const fs::path& dir) {
  std::error_code ec;
  for (const char* name : {kMetricsFile, kQTableFile, kFerryLogFile, kConfigEchoFile}) fs::remove(dir / name, ec);
}

// Runs and writes the files; throws on any failure.
MetricsLog execute(const ScenarioConfig& cfg, const fs::path& dir) {
  fs::create_directories(dir);
  auto qtable = open_output(dir / kQTableFile);
  auto ferry = open_output(dir / kFerryLogFile);
  write_qtable_header(qtable);
  write_ferry_log_header(ferry);
  MetricsLog log;
  {
    Simulation sim(cfg, EngineSinks{&qtable, &ferry});
    log = sim.run();
  }
  export_csv(dir / kMetricsFile, log);
  auto echo = open_output(dir / kConfigEchoFile);
  echo << echo_config(cfg);
  for (std::ostream* s : {static_cast<std::ostream*>(&qtable), static_cast<std::ostream*>(&ferry),
                          static_cast<std::ostream*>(&echo)}) {
    s->flush();
    if (!*s) throw std::runtime_error("failed writing outputs under " + dir.string());
  }
  return log;
}

std::optional<double> mean_delay(const MetricsLog& log) {
  double sum = 0.0;
  std::uint64_t hits = 0;
  for (const auto& r : log.rows) {
    if (!r.mean_delay_s) continue;
    sum += *r.mean_delay_s * static_cast<double>(r.hits);
    hits += r.hits;
  }
  if (hits == 0) return std::nullopt;
  return sum / static_cast<double>(hits);
}

std::uint64_t value_seed(std::uint64_t base, const std::string& value) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : value) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return rng::splitmix64(base ^ h);
}

}  // namespace

int run_experiment(const ScenarioConfig& cfg, const fs::path& output_dir, std::ostream& diag) {
  try {
    validate(cfg);
  } catch (const ConfigError& e) {
    diag << e.what() << '\n';
    return kExitConfig;
  }
  try {
    execute(cfg, output_dir);
  } catch (const std::exception& e) {
    diag << "run failed: " << e.what() << '\n';
    remove_outputs(output_dir);
    return kExitRuntime;
  }
  return kExitOk;
}

const std::vector<std::string>& sweepable_parameters() {
  static const std::vector<std::string> names = {"group_size", "r_tad", "lambda", "n_ferries", "alpha_u", "epsilon"};
  return names;
}

std::vector<SweepCell> run_sweep(const ScenarioConfig& base, const std::string& parameter,
                                 const std::vector<std::string>& values, const fs::path& output_dir,
                                 unsigned threads) {
  if (std::find(sweepable_parameters().begin(), sweepable_parameters().end(), parameter) ==
      sweepable_parameters().end()) {
    throw ConfigError({"sweep parameter '" + parameter + "' is not sweepable"});
  }
  std::vector<SweepCell> cells(values.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < values.size(); i = next++) {
      SweepCell& cell = cells[i];
      cell.value = values[i];
      try {
        ScenarioConfig cfg = base;
        if (parameter == "epsilon") {
          set_config_value(cfg, "epsilon_initial", values[i]);
        } else {
          set_config_value(cfg, parameter, values[i]);
        }
        cfg.seed = value_seed(base.seed, values[i]);
        validate(cfg);
        MetricsLog log;
        if (output_dir.empty()) {
          log = run(cfg);
        } else {
          log = execute(cfg, output_dir / (parameter + "=" + values[i]));
        }
        cell.converged_availability = converged_availability(log);
        cell.mean_cdo = tail_mean_cdo(log);
        cell.mean_delay_s = mean_delay(log);
      } catch (const std::exception& e) {
        std::string msg = e.what();
        std::replace(msg.begin(), msg.end(), '\n', ' ');
        std::replace(msg.begin(), msg.end(), ',', ';');
        cell.status = "failed: " + msg;
      }
    }
  };
  unsigned n = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  n = std::min<unsigned>(n, static_cast<unsigned>(std::max<std::size_t>(values.size(), 1)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  if (!output_dir.empty()) {
    fs::create_directories(output_dir);
    auto out = open_output(output_dir / "summary.csv");
    write_sweep_summary(out, cells);
  }
  return cells;
}

void write_sweep_summary(std::ostream& out, const std::vector<SweepCell>& cells) {
  out << "value,converged_availability,mean_cdo,mean_delay_s,status\n";
  const auto opt = [&](const std::optional<double>& v) {
    if (v) out << detail::fixed6(*v);
  };
  for (const auto& c : cells) {
    out << c.value << ',';
    opt(c.converged_availability);
    out << ',';
    opt(c.mean_cdo);
    out << ',';
    opt(c.mean_delay_s);
    out << ',' << c.status << '\n';
  }
}

}  // namespace uavcache
