#include "ehs/sim.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "ehs/baseline.hpp"
#include "ehs/scheduler.hpp"

namespace ehs {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class KahanMean {
 public:
  void add(double x) {
    const double y = x - comp_;
    const double t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
    ++n_;
  }
  double mean() const { return n_ ? sum_ / static_cast<double>(n_) : std::numeric_limits<double>::quiet_NaN(); }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
  std::size_t n_ = 0;
};

const char* kHeader = "energy_level,opt_mean_T,opt_feasible_pct,ebs_mean_T,ebs_feasible_pct";

}  // namespace

void ExperimentConfig::check() const {
  if (trials == 0) throw std::invalid_argument("experiment: trials must be > 0");
  if (energy_levels.empty()) throw std::invalid_argument("experiment: energy level sweep is empty");
  for (double e : energy_levels)
    if (!(e > 0.0) || !std::isfinite(e)) throw std::invalid_argument("experiment: energy levels must be > 0");
  if (data_packets == 0 || energy_packets == 0)
    throw std::invalid_argument("experiment: need at least one data and one energy packet");
  if (!(horizon > 0.0)) throw std::invalid_argument("experiment: horizon must be > 0");
  if (!(c_max > 0.0)) throw std::invalid_argument("experiment: c_max must be > 0");
  if (qos_kind != QosSpec::Kind::None && qos_kind != QosSpec::Kind::Explicit && !(qos_value > 0.0))
    throw std::invalid_argument("experiment: QoS parameter must be > 0");
}

TrialStream::TrialStream(std::uint64_t seed, std::uint64_t trial)
    : key_(splitmix64(seed ^ splitmix64(trial + 0x632be59bd9b4e019ULL))) {}

double TrialStream::uniform() {
  const std::uint64_t bits = splitmix64(key_ + 0x9e3779b97f4a7c15ULL * ++counter_);
  return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

Scenario generate_scenario(const ExperimentConfig& cfg, std::uint64_t trial, double energy_level) {
  TrialStream rng(cfg.seed, trial);
  Scenario s;
  s.c_max = cfg.c_max;
  s.model = cfg.model;

  double raw_total = 0.0;
  for (std::size_t j = 0; j < cfg.energy_packets; ++j) {
    const double t = j == 0 ? 0.0 : rng.uniform() * cfg.horizon;
    const double e = rng.uniform();
    s.energy.push_back({t, e});
    raw_total += e;
  }
  for (auto& e : s.energy) e.amount *= energy_level / raw_total;

  for (std::size_t i = 0; i < cfg.data_packets; ++i) {
    const double t = rng.uniform() * cfg.horizon;
    s.data.push_back({t, rng.uniform()});
  }
  const auto by_time = [](const Jump& a, const Jump& b) { return a.time < b.time; };
  std::stable_sort(s.energy.begin(), s.energy.end(), by_time);
  std::stable_sort(s.data.begin(), s.data.end(), by_time);

  switch (cfg.qos_kind) {
    case QosSpec::Kind::None:
      break;
    case QosSpec::Kind::Deadline:
      s.qos = QosSpec::deadline({cfg.qos_value});
      break;
    case QosSpec::Kind::Buffer:
      s.qos = QosSpec::buffer_limit(cfg.qos_value);
      break;
    case QosSpec::Kind::Explicit: {
      const Staircase arrivals(s.data);
      std::vector<double> times;
      for (std::size_t k = 0; k < cfg.qos_events; ++k) times.push_back(rng.uniform() * cfg.horizon);
      std::sort(times.begin(), times.end());
      std::vector<Jump> reqs;
      double so_far = 0.0;
      for (double t : times) {
        const double target = rng.uniform() * arrivals.eval(t, Side::Left);
        if (target > so_far) reqs.push_back({t, target - so_far});
        so_far = std::max(so_far, target);
      }
      s.qos = QosSpec::explicit_curve(std::move(reqs));
      break;
    }
  }
  return s;
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg, std::vector<TrialRecord>* records) {
  cfg.check();
  std::vector<double> levels = cfg.energy_levels;
  std::sort(levels.begin(), levels.end());

  std::vector<ResultRow> rows;
  for (double level : levels) {
    ResultRow row;
    row.energy_level = level;
    KahanMean opt_mean;
    KahanMean ebs_mean;
    std::size_t opt_ok = 0;
    std::size_t ebs_ok = 0;
    for (std::uint64_t trial = 0; trial < cfg.trials; ++trial) {
      TrialRecord rec;
      rec.energy_level = level;
      rec.trial = trial;
      const Scenario sc = generate_scenario(cfg, trial, level);
      try {
        const SolveOutcome out = solve(sc);
        if (const auto* s = std::get_if<Schedule>(&out)) {
          rec.opt_feasible = true;
          rec.opt_t = s->completion_time / cfg.horizon;
        }
      } catch (const std::exception&) {
        rec.opt_error = true;
        ++row.opt_errors;
      }
      try {
        const SolveOutcome out = ebs_solve(sc);
        if (const auto* s = std::get_if<Schedule>(&out)) {
          rec.ebs_feasible = true;
          rec.ebs_t = s->completion_time / cfg.horizon;
        }
      } catch (const std::exception&) {
        rec.ebs_error = true;
        ++row.ebs_errors;
      }
      if (rec.opt_feasible) {
        ++opt_ok;
        opt_mean.add(rec.opt_t);
        if (rec.ebs_feasible) ebs_mean.add(rec.ebs_t);
      }
      if (rec.ebs_feasible) ++ebs_ok;
      if (records) records->push_back(rec);
    }
    const double n = static_cast<double>(cfg.trials);
    row.opt_mean_t = opt_mean.mean();
    row.ebs_mean_t = ebs_mean.mean();
    row.opt_feasible_pct = 100.0 * static_cast<double>(opt_ok) / n;
    row.ebs_feasible_pct = 100.0 * static_cast<double>(ebs_ok) / n;
    rows.push_back(row);
  }
  return rows;
}

std::string format_results(const std::vector<ResultRow>& rows) {
  std::ostringstream os;
  os.precision(12);
  os << kHeader << '\n';
  for (const auto& r : rows)
    os << r.energy_level << ',' << r.opt_mean_t << ',' << r.opt_feasible_pct << ',' << r.ebs_mean_t << ','
       << r.ebs_feasible_pct << '\n';
  return os.str();
}

void write_results(const std::vector<ResultRow>& rows, const std::filesystem::path& path) {
  if (rows.empty()) throw std::invalid_argument("write_results: no rows to write");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << format_results(rows);
  out.flush();
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::vector<ResultRow> read_results(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != kHeader)
    throw std::runtime_error(path.string() + ": missing or unexpected CSV header");
  std::vector<ResultRow> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> v;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        v.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": bad number '" + cell + "'");
      }
    }
    if (v.size() != 5) throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": expected 5 columns");
    rows.push_back({v[0], v[1], v[2], v[3], v[4], 0, 0});
  }
  return rows;
}

}  // namespace ehs
