#include "ehs/validate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ehs {

namespace {

// Cumulative data and energy of a schedule at time t.
struct Profile {
  const Schedule& s;
  const PowerRateModel& model;

  double data(double t) const {
    double sum = 0.0;
    for (const auto& e : s.epochs) sum += e.rate * std::clamp(t - e.tau, 0.0, e.length);
    return sum;
  }
  double energy(double t) const {
    double sum = 0.0;
    for (const auto& e : s.epochs) sum += model.power(e.rate) * std::clamp(t - e.tau, 0.0, e.length);
    return sum;
  }
};

class Recorder {
 public:
  explicit Recorder(ValidationReport& r) : report_(r) {}
  CheckResult& operator[](const char* name) {
    for (auto& c : report_.checks)
      if (c.name == name) return c;
    report_.checks.push_back({name, true, 0.0, {}});
    return report_.checks.back();
  }
  void fail(const char* name, double t, const std::string& detail) {
    CheckResult& c = (*this)[name];
    if (!c.passed) return;
    c.passed = false;
    c.time = t;
    c.detail = detail;
  }

 private:
  ValidationReport& report_;
};

std::string fmt(const char* what, double lhs, const char* op, double rhs) {
  std::ostringstream os;
  os.precision(12);
  os << what << ": " << lhs << ' ' << op << ' ' << rhs;
  return os.str();
}

bool has_jump_at(const Staircase& c, double t) {
  return std::any_of(c.jumps().begin(), c.jumps().end(), [t](const Jump& j) { return j.time == t; });
}

// Battery and buffer condition observed at one checkpoint.
struct PointState {
  double time = 0.0;
  double data = 0.0;
  double battery_before = 0.0;  // after spending up to t, before an arrival at t
  double battery_after = 0.0;
  double overflow = 0.0;
  bool energy_arrival = false;
};

}  // namespace

bool ValidationReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

bool ValidationReport::constraints_ok() const {
  for (const char* name : {kCheckStructure, kCheckEnergyCausality, kCheckDataCausality, kCheckQos,
                           kCheckCompletion, kCheckOverflowRecord}) {
    const CheckResult* c = find(name);
    if (c && !c->passed) return false;
  }
  return true;
}

const CheckResult* ValidationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::vector<const CheckResult*> ValidationReport::failures() const {
  std::vector<const CheckResult*> out;
  for (const auto& c : checks)
    if (!c.passed) out.push_back(&c);
  return out;
}

ValidationReport validate(const Scenario& scenario, const Schedule& schedule, double tol) {
  ValidationReport report;
  Recorder rec(report);
  for (const char* name : {kCheckStructure, kCheckPiecewiseLinear, kCheckEnergyCausality, kCheckDataCausality,
                           kCheckQos, kCheckCompletion, kCheckOverflowRecord, kCheckBatteryEmpty,
                           kCheckOverflowBuffer, kCheckRateChange})
    rec[name];

  const PreparedScenario sc(scenario);
  const Profile prof{schedule, sc.model()};
  const double T = schedule.completion_time;
  const double dtol = tol * std::max(1.0, sc.total_data());
  const double etol = tol * std::max(1.0, sc.energy().total_harvested());
  const double ttol = 1e-9 * std::max({1.0, sc.horizon(), T});

  // Structure.
  double clock = 0.0;
  double spent = 0.0;
  for (const auto& e : schedule.epochs) {
    if (!(e.rate >= 0.0) || !std::isfinite(e.rate)) rec.fail(kCheckStructure, e.tau, fmt("rate", e.rate, "<", 0.0));
    if (!(e.length > 0.0) || !std::isfinite(e.length))
      rec.fail(kCheckStructure, e.tau, fmt("length", e.length, "<=", 0.0));
    if (std::abs(e.tau - clock) > ttol) rec.fail(kCheckStructure, e.tau, fmt("epoch start", e.tau, "!=", clock));
    clock = e.tau + e.length;
    if (e.rate >= 0.0) spent += sc.model().power(e.rate) * e.length;
  }
  if (std::abs(clock - T) > ttol) rec.fail(kCheckStructure, T, fmt("sum of epoch lengths", clock, "!=", T));
  if (std::abs(spent - schedule.energy_spent) > etol)
    rec.fail(kCheckStructure, T, fmt("energy spent", schedule.energy_spent, "!=", spent));
  if (!report.find(kCheckStructure)->passed) return report;

  // Checkpoints: every event, every epoch boundary, and T.
  // Epoch ends within ttol of an event are represented by the event itself.
  std::vector<double> points{0.0};
  for (const auto& e : sc.events()) points.push_back(e.time);
  const auto add_point = [&](double t) {
    if (std::none_of(points.begin(), points.end(), [&](double p) { return std::abs(p - t) <= ttol; }))
      points.push_back(t);
  };
  add_point(T);
  for (const auto& e : schedule.epochs) add_point(e.tau + e.length);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  const auto& arrivals = sc.energy().arrivals();
  std::vector<PointState> states;
  BatteryState battery{0.0, sc.c_max()};
  double prev = 0.0;
  for (double t : points) {
    PointState ps;
    ps.time = t;
    ps.data = prof.data(t);
    battery.level -= prof.energy(t) - prof.energy(prev);
    if (battery.level < -etol) rec.fail(kCheckEnergyCausality, t, fmt("battery", battery.level, "<", 0.0));
    battery.level = std::max(0.0, battery.level);
    ps.battery_before = battery.level;

    if (t > 0.0) {
      const double arrived = sc.data_arrivals().eval(t, Side::Left);
      if (ps.data > arrived + dtol) rec.fail(kCheckDataCausality, t, fmt("sent", ps.data, ">", arrived));
    } else if (ps.data > dtol) {
      rec.fail(kCheckDataCausality, t, fmt("sent", ps.data, ">", 0.0));
    }
    const double due = sc.qos().eval(t, Side::Right);
    if (ps.data < due - dtol) rec.fail(kCheckQos, t, fmt("sent", ps.data, "<", due));

    auto arr = std::find_if(arrivals.begin(), arrivals.end(), [t](const Jump& a) { return a.time == t; });
    if (arr != arrivals.end()) {
      ps.energy_arrival = true;
      ps.overflow = battery.charge(arr->amount);
      double recorded = 0.0;
      for (const auto& o : schedule.overflows)
        if (std::abs(o.time - t) <= ttol) recorded = o.amount;
      if (t <= T + ttol && std::abs(recorded - ps.overflow) > etol)
        rec.fail(kCheckOverflowRecord, t, fmt("recorded overflow", recorded, "!=", ps.overflow));
      if (ps.overflow > etol && t < T) {
        const bool buffer_empty = sc.data_arrivals().eval(t, Side::Left) - ps.data <= dtol;
        const bool unavoidable = ps.battery_before <= etol && arr->amount > sc.c_max();
        if (!buffer_empty && !unavoidable)
          rec.fail(kCheckOverflowBuffer, t, fmt("overflow", ps.overflow, "with buffered data",
                                               sc.data_arrivals().eval(t, Side::Left) - ps.data));
      }
    }
    ps.battery_after = battery.level;
    states.push_back(ps);
    prev = t;
  }
  for (const auto& o : schedule.overflows) {
    const bool at_arrival =
        std::any_of(arrivals.begin(), arrivals.end(), [&](const Jump& a) { return std::abs(a.time - o.time) <= ttol; });
    if (!at_arrival) rec.fail(kCheckOverflowRecord, o.time, "overflow recorded away from an energy arrival");
  }

  const double total = sc.total_data();
  if (std::abs(prof.data(T) - total) > dtol) rec.fail(kCheckCompletion, T, fmt("sent by T", prof.data(T), "!=", total));

  const auto at = [&](double t) -> const PointState& {
    return *std::find_if(states.begin(), states.end(), [&](const PointState& p) { return std::abs(p.time - t) <= ttol; });
  };
  if (T > 0.0) {
    const double left = at(T).battery_before;
    if (left > etol) rec.fail(kCheckBatteryEmpty, T, fmt("battery at T", left, ">", 0.0));
  }

  // Rate changes happen only at events, and each one is explained by a bound
  // the departure curve touches there.
  for (std::size_t k = 0; k + 1 < schedule.epochs.size(); ++k) {
    const double r1 = schedule.epochs[k].rate;
    const double r2 = schedule.epochs[k + 1].rate;
    const double b = schedule.epochs[k + 1].tau;
    const double rtol = tol * std::max({1.0, r1, r2});
    if (std::abs(r1 - r2) <= rtol) continue;
    if (!sc.is_event(b)) {
      rec.fail(kCheckPiecewiseLinear, b, fmt("rate change", r1, "->", r2));
      continue;
    }
    const PointState& ps = at(b);
    const double t = ps.time;
    const bool buffer_empty = sc.data_arrivals().eval(t, Side::Left) - ps.data <= dtol;
    const bool battery_empty = ps.battery_before <= etol;
    const bool qos_tight = ps.data - sc.qos().eval(t, Side::Right) <= dtol && sc.qos().eval(t, Side::Right) > 0.0;
    const bool battery_full = ps.energy_arrival && ps.battery_after >= sc.c_max() - etol;
    const bool upper = buffer_empty || battery_empty;
    const bool lower = qos_tight || battery_full;

    if (ps.overflow > etol && buffer_empty && !has_jump_at(sc.data_arrivals(), t)) {
      if (r2 > rtol) rec.fail(kCheckRateChange, t, fmt("rate after overflow with empty buffer", r2, ">", 0.0));
    } else if (upper && lower) {
      continue;
    } else if (upper) {
      if (r2 < r1) rec.fail(kCheckRateChange, t, fmt("upper touch but rate drops", r1, "->", r2));
    } else if (lower) {
      if (r2 > r1) rec.fail(kCheckRateChange, t, fmt("lower touch but rate rises", r1, "->", r2));
    } else {
      rec.fail(kCheckRateChange, t, fmt("rate change away from both bounds", r1, "->", r2));
    }
  }
  return report;
}

}  // namespace ehs
