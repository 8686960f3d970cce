#include "uavcache/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "format.hpp"

namespace uavcache {

std::optional<double> availability(std::uint64_t hits, std::uint64_t requests) {
  if (hits > requests) {
    throw std::invalid_argument("availability: hits (" + std::to_string(hits) + ") exceed requests (" +
                                std::to_string(requests) + ")");
  }
  if (requests == 0) return std::nullopt;
  return static_cast<double>(hits) / static_cast<double>(requests);
}

double quantize(double value) {
  const std::string s = detail::fixed6(value);
  double out = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), out);
  return out;
}

double jaro(std::span<const ContentId> a, std::span<const ContentId> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("jaro: sequences must be non-empty");
  const std::size_t longest = std::max(a.size(), b.size());
  const std::size_t window = longest / 2 > 0 ? longest / 2 - 1 : 0;

  std::vector<bool> a_hit(a.size(), false), b_hit(b.size(), false);
  std::size_t matches = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::size_t lo = i > window ? i - window : 0;
    const std::size_t hi = std::min(b.size(), i + window + 1);
    for (std::size_t j = lo; j < hi; ++j) {
      if (!b_hit[j] && a[i] == b[j]) {
        a_hit[i] = b_hit[j] = true;
        ++matches;
        break;
      }
    }
  }
  if (matches == 0) return 0.0;

  std::size_t half_transpositions = 0;
  for (std::size_t i = 0, j = 0; i < a.size(); ++i) {
    if (!a_hit[i]) continue;
    while (!b_hit[j]) ++j;
    if (a[i] != b[j]) ++half_transpositions;
    ++j;
  }
  const double m = static_cast<double>(matches);
  const double t = static_cast<double>(half_transpositions) / 2.0;
  return (m / static_cast<double>(a.size()) + m / static_cast<double>(b.size()) + (m - t) / m) / 3.0;
}

double jaro_winkler(std::span<const ContentId> a, std::span<const ContentId> b) {
  const double j = jaro(a, b);
  std::size_t prefix = 0;
  while (prefix < 4 && prefix < a.size() && prefix < b.size() && a[prefix] == b[prefix]) ++prefix;
  return j + static_cast<double>(prefix) * 0.1 * (1.0 - j);
}

double cdo(std::span<const ContentId> learned, std::span<const ContentId> benchmark) {
  return jaro_winkler(learned, benchmark);
}

DelayStats access_delay_stats(const MetricsLog& log) {
  struct Acc {
    double delay_sum = 0.0;
    std::uint64_t hits = 0;
    std::uint64_t downloads = 0;
  };
  std::map<std::uint64_t, Acc> by_epoch;
  for (const auto& r : log.rows) {
    Acc& acc = by_epoch[r.epoch];
    acc.hits += r.hits;
    acc.downloads += r.downloads;
    if (r.mean_delay_s) acc.delay_sum += *r.mean_delay_s * static_cast<double>(r.hits);
  }
  DelayStats out;
  for (const auto& [epoch, acc] : by_epoch) {
    out.epochs.push_back(epoch);
    out.hits.push_back(acc.hits);
    out.downloads.push_back(acc.downloads);
    out.mean_delay_s.push_back(acc.hits ? std::optional<double>(acc.delay_sum / static_cast<double>(acc.hits))
                                        : std::nullopt);
  }
  return out;
}

namespace {

std::vector<double> average_ranks(std::span<const double> v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

std::uint64_t tail_start(const MetricsLog& log, double tail_fraction) {
  const std::uint64_t n = epoch_count(log);
  const auto tail = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(tail_fraction * static_cast<double>(n))));
  return n > tail ? n - tail : 0;
}

}  // namespace

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("spearman: length mismatch");
  if (x.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return sxy / std::sqrt(sxx * syy);
}

std::uint64_t epoch_count(const MetricsLog& log) {
  std::uint64_t n = 0;
  for (const auto& r : log.rows) n = std::max(n, r.epoch + 1);
  return n;
}

std::optional<double> converged_availability(const MetricsLog& log, double tail_fraction,
                                             std::optional<AnchorId> anchor) {
  const std::uint64_t first = tail_start(log, tail_fraction);
  std::uint64_t hits = 0, requests = 0;
  for (const auto& r : log.rows) {
    if (r.epoch < first || (anchor && r.anchor != *anchor)) continue;
    hits += r.hits;
    requests += r.requests;
  }
  return availability(hits, requests);
}

std::optional<double> tail_mean_cdo(const MetricsLog& log, double tail_fraction, std::optional<AnchorId> anchor) {
  const std::uint64_t first = tail_start(log, tail_fraction);
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& r : log.rows) {
    if (r.epoch < first || !r.cdo || (anchor && r.anchor != *anchor)) continue;
    sum += *r.cdo;
    ++n;
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

std::optional<double> mean_regret(const MetricsLog& log, std::uint64_t first, std::uint64_t last) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& r : log.rows) {
    if (r.epoch < first || r.epoch >= last || !r.regret) continue;
    sum += *r.regret;
    ++n;
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

namespace {

void put_optional(std::ostream& out, const std::optional<double>& v) {
  if (v) out << detail::fixed6(*v);
}

}  // namespace

void export_csv(std::ostream& out, const MetricsLog& log) {
  out << "# config_hash=" << log.config_hash << ",seed=" << log.seed << '\n';
  out << kMetricsHeader << '\n';
  for (const auto& r : log.rows) {
    out << r.epoch << ',' << detail::fixed6(r.time_s) << ',' << r.anchor << ',' << r.requests << ',' << r.hits
        << ',' << r.downloads << ',';
    put_optional(out, r.availability);
    out << ',';
    put_optional(out, r.mean_delay_s);
    out << ',';
    put_optional(out, r.cdo);
    out << ',';
    put_optional(out, r.regret);
    out << '\n';
  }
}

void export_csv(const std::filesystem::path& path, const MetricsLog& log) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open metrics output " + path.string());
  export_csv(out, log);
  out.flush();
  if (!out) throw std::runtime_error("failed writing metrics output " + path.string());
}

namespace {

template <typename T>
T parse_number(std::string_view field, std::size_t line) {
  T value{};
  const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
  if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
    throw std::runtime_error("metrics csv line " + std::to_string(line) + ": bad number '" + std::string(field) + "'");
  }
  return value;
}

std::optional<double> parse_optional(std::string_view field, std::size_t line) {
  if (field.empty()) return std::nullopt;
  return parse_number<double>(field, line);
}

}  // namespace

MetricsLog parse_csv(std::istream& in) {
  MetricsLog log;
  std::string line;
  if (!std::getline(in, line) || line.rfind("# config_hash=", 0) != 0) {
    throw std::runtime_error("metrics csv: missing '# config_hash=...' header");
  }
  const auto comma = line.find(",seed=");
  if (comma == std::string::npos) throw std::runtime_error("metrics csv: header lacks seed");
  log.config_hash = line.substr(14, comma - 14);
  log.seed = parse_number<std::uint64_t>(std::string_view(line).substr(comma + 6), 1);
  if (!std::getline(in, line) || line != kMetricsHeader) {
    throw std::runtime_error("metrics csv: unexpected column header");
  }
  std::size_t lineno = 2;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string_view> f;
    std::string_view rest(line);
    for (;;) {
      const auto p = rest.find(',');
      f.push_back(rest.substr(0, p));
      if (p == std::string_view::npos) break;
      rest.remove_prefix(p + 1);
    }
    if (f.size() != 10) {
      throw std::runtime_error("metrics csv line " + std::to_string(lineno) + ": expected 10 fields, got " +
                               std::to_string(f.size()));
    }
    MetricsRow r;
    r.epoch = parse_number<std::uint64_t>(f[0], lineno);
    r.time_s = parse_number<double>(f[1], lineno);
    r.anchor = parse_number<AnchorId>(f[2], lineno);
    r.requests = parse_number<std::uint64_t>(f[3], lineno);
    r.hits = parse_number<std::uint64_t>(f[4], lineno);
    r.downloads = parse_number<std::uint64_t>(f[5], lineno);
    r.availability = parse_optional(f[6], lineno);
    r.mean_delay_s = parse_optional(f[7], lineno);
    r.cdo = parse_optional(f[8], lineno);
    r.regret = parse_optional(f[9], lineno);
    log.rows.push_back(r);
  }
  return log;
}

}  // namespace uavcache
