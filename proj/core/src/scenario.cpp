#include "ehs/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ehs {

namespace {

void check_packets(const std::vector<Jump>& packets, const char* what) {
  for (const auto& p : packets) {
    if (!std::isfinite(p.time) || p.time < 0.0)
      throw std::domain_error(std::string(what) + " arrival time must be finite and >= 0");
    if (!std::isfinite(p.amount) || !(p.amount > 0.0))
      throw std::domain_error(std::string(what) + " amount must be finite and > 0");
  }
}

Staircase raw_qos(const QosSpec& qos, const std::vector<Jump>& data, const Staircase& arrivals) {
  switch (qos.kind) {
    case QosSpec::Kind::None:
      return {};
    case QosSpec::Kind::Explicit:
      check_packets(qos.requirements, "qos");
      return Staircase(qos.requirements);
    case QosSpec::Kind::Deadline: {
      if (qos.deadlines.size() == 1 && data.size() != 1) {
        std::vector<double> shared(data.size(), qos.deadlines.front());
        return qos_deadline(data, shared);
      }
      return qos_deadline(data, qos.deadlines);
    }
    case QosSpec::Kind::Buffer:
      return qos_buffer(arrivals, qos.buffer);
  }
  return {};
}

Staircase snap(const Staircase& curve, const std::vector<double>& canon, double eps) {
  std::vector<Jump> out;
  out.reserve(curve.jumps().size());
  for (const auto& j : curve.jumps()) {
    auto it = std::lower_bound(canon.begin(), canon.end(), j.time - eps);
    out.push_back({it != canon.end() ? *it : j.time, j.amount});
  }
  return Staircase(std::move(out), curve.base(), 0.0);
}

}  // namespace

PreparedScenario::PreparedScenario(const Scenario& s) : model_(s.model), c_max_(s.c_max) {
  if (!(s.c_max > 0.0) || !std::isfinite(s.c_max))
    throw std::domain_error("battery capacity c_max must be finite and > 0");
  check_packets(s.energy, "energy");
  check_packets(s.data, "data");
  if (s.energy.empty()) throw std::domain_error("scenario has no energy arrivals");

  const Staircase data_raw(s.data);
  const Staircase qos_raw = raw_qos(s.qos, s.data, data_raw);
  const Staircase energy_raw(s.energy);

  double horizon = 0.0;
  std::vector<double> times;
  for (const Staircase* c : {&data_raw, &qos_raw, &energy_raw})
    for (const auto& j : c->jumps()) {
      times.push_back(j.time);
      horizon = std::max(horizon, j.time);
    }
  time_eps_ = time_epsilon(horizon);

  // Cluster nearly-equal times; each cluster keeps its earliest member, and
  // anything within eps of zero becomes exactly zero.
  std::sort(times.begin(), times.end());
  std::vector<double> canon;
  for (double t : times) {
    if (canon.empty() || t - canon.back() > time_eps_) canon.push_back(t <= time_eps_ ? 0.0 : t);
  }

  data_ = snap(data_raw, canon, time_eps_);
  qos_ = snap(qos_raw, canon, time_eps_);
  const Staircase energy_snapped = snap(energy_raw, canon, time_eps_);
  energy_ = EnergyTimeline(std::vector<Jump>(energy_snapped.jumps().begin(), energy_snapped.jumps().end()));

  for (double t : canon) {
    unsigned tags = 0;
    const auto has = [t](const Staircase& c) {
      return std::any_of(c.jumps().begin(), c.jumps().end(), [t](const Jump& j) { return j.time == t; });
    };
    if (has(data_)) tags |= kDataEvent;
    if (has(energy_snapped)) tags |= kEnergyEvent;
    if (has(qos_)) tags |= kQosEvent;
    if (tags != 0) events_.push_back({t, tags});
  }
  horizon_ = events_.empty() ? 0.0 : events_.back().time;
}

bool PreparedScenario::is_event(double t) const {
  return std::any_of(events_.begin(), events_.end(),
                     [&](const EventTime& e) { return std::abs(e.time - t) <= time_eps_; });
}

}  // namespace ehs
