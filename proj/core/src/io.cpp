#include "ehs/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace ehs {

namespace {

using nlohmann::json;

std::string index_path(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }
std::string key_path(const std::string& base, const std::string& key) {
  return base.empty() ? key : base + "." + key;
}

void require_object(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw InputError(path, "expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items())
    if (!ok.count(key)) throw InputError(key_path(path, key), "unknown field");
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) throw InputError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw InputError(path, "expected a finite number");
  return v;
}

double positive(const json& j, const std::string& path) {
  const double v = number(j, path);
  if (!(v > 0.0)) throw InputError(path, "must be > 0");
  return v;
}

// null stands for +inf.
double time_or_inf(const json& j, const std::string& path) {
  if (j.is_null()) return std::numeric_limits<double>::infinity();
  return number(j, path);
}
json inf_as_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

const json& field(const json& j, const std::string& path, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw InputError(key_path(path, key), "missing field");
  return *it;
}

std::vector<Jump> pairs(const json& j, const std::string& path) {
  if (!j.is_array()) throw InputError(path, "expected an array of [time, amount] pairs");
  std::vector<Jump> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = index_path(path, i);
    if (!j[i].is_array() || j[i].size() != 2) throw InputError(p, "expected [time, amount]");
    const double t = number(j[i][0], index_path(p, 0));
    if (t < 0.0) throw InputError(index_path(p, 0), "time must be >= 0");
    const double a = positive(j[i][1], index_path(p, 1));
    out.push_back({t, a});
  }
  return out;
}

json pairs_to_json(const std::vector<Jump>& v) {
  json out = json::array();
  for (const auto& p : v) out.push_back({p.time, p.amount});
  return out;
}

PowerRateModel model_from_json(const json& j, const std::string& path) {
  require_object(j, path, {"kind", "params"});
  const json& kind = field(j, path, "kind");
  if (!kind.is_string()) throw InputError(key_path(path, "kind"), "expected a string");
  const std::string pp = key_path(path, "params");
  const json params = j.contains("params") ? j["params"] : json::object();
  if (kind == "shannon") {
    require_object(params, pp, {"bandwidth", "noise"});
    ShannonModel m;
    if (params.contains("bandwidth")) m.bandwidth = positive(params["bandwidth"], key_path(pp, "bandwidth"));
    if (params.contains("noise")) m.noise = positive(params["noise"], key_path(pp, "noise"));
    return m;
  }
  if (kind == "monomial") {
    require_object(params, pp, {"exponent", "scale"});
    MonomialModel m;
    if (params.contains("exponent")) m.exponent = number(params["exponent"], key_path(pp, "exponent"));
    if (!(m.exponent > 1.0)) throw InputError(key_path(pp, "exponent"), "must be > 1");
    if (params.contains("scale")) m.scale = positive(params["scale"], key_path(pp, "scale"));
    return m;
  }
  throw InputError(key_path(path, "kind"), "unknown model '" + kind.get<std::string>() + "' (shannon|monomial)");
}

json model_to_json(const PowerRateModel& m) {
  if (const auto* s = std::get_if<ShannonModel>(&m.params()))
    return {{"kind", "shannon"}, {"params", {{"bandwidth", s->bandwidth}, {"noise", s->noise}}}};
  const auto& p = std::get<MonomialModel>(m.params());
  return {{"kind", "monomial"}, {"params", {{"exponent", p.exponent}, {"scale", p.scale}}}};
}

QosSpec::Kind qos_kind_from(const json& kind, const std::string& path) {
  if (!kind.is_string()) throw InputError(path, "expected a string");
  const auto k = kind.get<std::string>();
  if (k == "none") return QosSpec::Kind::None;
  if (k == "explicit") return QosSpec::Kind::Explicit;
  if (k == "deadline") return QosSpec::Kind::Deadline;
  if (k == "buffer") return QosSpec::Kind::Buffer;
  throw InputError(path, "unknown QoS kind '" + k + "' (none|explicit|deadline|buffer)");
}

const char* qos_kind_name(QosSpec::Kind k) {
  switch (k) {
    case QosSpec::Kind::None: return "none";
    case QosSpec::Kind::Explicit: return "explicit";
    case QosSpec::Kind::Deadline: return "deadline";
    case QosSpec::Kind::Buffer: return "buffer";
  }
  return "none";
}

QosSpec qos_from_json(const json& j, const std::string& path, std::size_t data_packets) {
  require_object(j, path, {"kind", "params"});
  const auto kind = qos_kind_from(field(j, path, "kind"), key_path(path, "kind"));
  const std::string pp = key_path(path, "params");
  const json params = j.contains("params") ? j["params"] : json::object();
  switch (kind) {
    case QosSpec::Kind::None:
      require_object(params, pp, {});
      return QosSpec::none();
    case QosSpec::Kind::Explicit:
      require_object(params, pp, {"requirements"});
      return QosSpec::explicit_curve(pairs(field(params, pp, "requirements"), key_path(pp, "requirements")));
    case QosSpec::Kind::Deadline: {
      require_object(params, pp, {"theta"});
      const std::string tp = key_path(pp, "theta");
      const json& theta = field(params, pp, "theta");
      std::vector<double> out;
      if (theta.is_array()) {
        for (std::size_t i = 0; i < theta.size(); ++i) out.push_back(number(theta[i], index_path(tp, i)));
        if (out.size() != data_packets && out.size() != 1)
          throw InputError(tp, "needs one deadline per data packet or a single shared one");
      } else {
        out.push_back(number(theta, tp));
      }
      for (std::size_t i = 0; i < out.size(); ++i)
        if (out[i] < 0.0) throw InputError(theta.is_array() ? index_path(tp, i) : tp, "must be >= 0");
      return QosSpec::deadline(std::move(out));
    }
    case QosSpec::Kind::Buffer:
      require_object(params, pp, {"beta"});
      return QosSpec::buffer_limit(positive(field(params, pp, "beta"), key_path(pp, "beta")));
  }
  return QosSpec::none();
}

json qos_to_json(const QosSpec& q) {
  json out{{"kind", qos_kind_name(q.kind)}};
  switch (q.kind) {
    case QosSpec::Kind::None: break;
    case QosSpec::Kind::Explicit: out["params"] = {{"requirements", pairs_to_json(q.requirements)}}; break;
    case QosSpec::Kind::Deadline: out["params"] = {{"theta", q.deadlines}}; break;
    case QosSpec::Kind::Buffer: out["params"] = {{"beta", q.buffer}}; break;
  }
  return out;
}

InfeasibleKind infeasible_kind_from(const json& j, const std::string& path) {
  if (!j.is_string()) throw InputError(path, "expected a string");
  const auto k = j.get<std::string>();
  for (auto kind : {InfeasibleKind::Energy, InfeasibleKind::Data, InfeasibleKind::EnergyExhausted})
    if (k == to_string(kind)) return kind;
  throw InputError(path, "unknown witness kind '" + k + "'");
}

}  // namespace

const char* to_string(InfeasibleKind kind) {
  switch (kind) {
    case InfeasibleKind::Energy: return "energy";
    case InfeasibleKind::Data: return "data";
    case InfeasibleKind::EnergyExhausted: return "energy_exhausted";
  }
  return "energy";
}

Scenario scenario_from_json(const json& j) {
  require_object(j, "", {"model", "c_max", "energy", "data", "qos"});
  Scenario s;
  if (j.contains("model")) s.model = model_from_json(j["model"], "model");
  s.c_max = positive(field(j, "", "c_max"), "c_max");
  s.energy = pairs(field(j, "", "energy"), "energy");
  s.data = pairs(field(j, "", "data"), "data");
  if (s.energy.empty()) throw InputError("energy", "needs at least one arrival");
  if (s.data.empty()) throw InputError("data", "needs at least one packet");
  if (s.energy.front().time != 0.0) throw InputError("energy[0][0]", "first energy arrival must be at t = 0");
  for (const char* key : {"energy", "data"}) {
    const auto& v = std::string(key) == "energy" ? s.energy : s.data;
    for (std::size_t i = 1; i < v.size(); ++i)
      if (v[i].time < v[i - 1].time) throw InputError(index_path(key, i), "arrival times must be non-decreasing");
  }
  if (j.contains("qos")) s.qos = qos_from_json(j["qos"], "qos", s.data.size());

  // Let the solver's own checks speak in terms of the file.
  try {
    PreparedScenario check(s);
  } catch (const std::exception& e) {
    throw InputError("", e.what());
  }
  return s;
}

json scenario_to_json(const Scenario& s) {
  return {{"model", model_to_json(s.model)},
          {"c_max", s.c_max},
          {"energy", pairs_to_json(s.energy)},
          {"data", pairs_to_json(s.data)},
          {"qos", qos_to_json(s.qos)}};
}

json outcome_to_json(const SolveOutcome& outcome) {
  if (const auto* bad = std::get_if<Infeasible>(&outcome)) {
    return {{"status", "infeasible"},
            {"witness",
             {{"kind", to_string(bad->kind)},
              {"time", inf_as_null(bad->time)},
              {"required", bad->required},
              {"achievable", bad->achievable},
              {"energy_available", bad->energy_available},
              {"origin", bad->origin}}}};
  }
  const auto& s = std::get<Schedule>(outcome);
  json epochs = json::array();
  for (const auto& e : s.epochs)
    epochs.push_back({{"tau", e.tau}, {"rate", e.rate}, {"length", e.length}, {"overflow_at_end", e.overflow_at_end}});
  return {{"status", "scheduled"},
          {"T", s.completion_time},
          {"energy_spent", s.energy_spent},
          {"epochs", std::move(epochs)},
          {"overflows", pairs_to_json(s.overflows)}};
}

SolveOutcome outcome_from_json(const json& j) {
  if (!j.is_object()) throw InputError("", "expected an object");
  const json& status = field(j, "", "status");
  if (status == "infeasible") {
    require_object(j, "", {"status", "witness"});
    const json& w = field(j, "", "witness");
    require_object(w, "witness", {"kind", "time", "required", "achievable", "energy_available", "origin"});
    Infeasible bad;
    bad.kind = infeasible_kind_from(field(w, "witness", "kind"), "witness.kind");
    bad.time = time_or_inf(field(w, "witness", "time"), "witness.time");
    bad.required = number(field(w, "witness", "required"), "witness.required");
    bad.achievable = number(field(w, "witness", "achievable"), "witness.achievable");
    bad.energy_available = number(field(w, "witness", "energy_available"), "witness.energy_available");
    bad.origin = number(field(w, "witness", "origin"), "witness.origin");
    return bad;
  }
  if (status != "scheduled") throw InputError("status", "expected \"scheduled\" or \"infeasible\"");
  require_object(j, "", {"status", "T", "energy_spent", "epochs", "overflows"});
  Schedule s;
  s.completion_time = number(field(j, "", "T"), "T");
  s.energy_spent = number(field(j, "", "energy_spent"), "energy_spent");
  const json& epochs = field(j, "", "epochs");
  if (!epochs.is_array()) throw InputError("epochs", "expected an array");
  for (std::size_t i = 0; i < epochs.size(); ++i) {
    const std::string p = index_path("epochs", i);
    require_object(epochs[i], p, {"tau", "rate", "length", "overflow_at_end"});
    Epoch e;
    e.tau = number(field(epochs[i], p, "tau"), key_path(p, "tau"));
    e.rate = number(field(epochs[i], p, "rate"), key_path(p, "rate"));
    e.length = number(field(epochs[i], p, "length"), key_path(p, "length"));
    if (epochs[i].contains("overflow_at_end"))
      e.overflow_at_end = number(epochs[i]["overflow_at_end"], key_path(p, "overflow_at_end"));
    s.epochs.push_back(e);
  }
  if (j.contains("overflows")) s.overflows = pairs(j["overflows"], "overflows");
  return s;
}

ExperimentConfig experiment_from_json(const json& j) {
  require_object(j, "", {"trials", "seed", "energy_levels", "data_packets", "energy_packets", "horizon", "c_max",
                         "model", "qos_kind", "qos_value", "qos_events"});
  ExperimentConfig c;
  const auto count = [&](const char* key) -> std::size_t {
    const json& v = j[key];
    if (!v.is_number_integer() || v.get<long long>() < 0) throw InputError(key, "expected a non-negative integer");
    return v.get<std::size_t>();
  };
  if (j.contains("trials")) c.trials = count("trials");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw InputError("seed", "expected a non-negative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("energy_levels")) {
    const json& v = j["energy_levels"];
    if (!v.is_array()) throw InputError("energy_levels", "expected an array");
    c.energy_levels.clear();
    for (std::size_t i = 0; i < v.size(); ++i) c.energy_levels.push_back(positive(v[i], index_path("energy_levels", i)));
  }
  if (j.contains("data_packets")) c.data_packets = count("data_packets");
  if (j.contains("energy_packets")) c.energy_packets = count("energy_packets");
  if (j.contains("qos_events")) c.qos_events = count("qos_events");
  if (j.contains("horizon")) c.horizon = positive(j["horizon"], "horizon");
  if (j.contains("c_max")) c.c_max = positive(j["c_max"], "c_max");
  if (j.contains("model")) c.model = model_from_json(j["model"], "model");
  if (j.contains("qos_kind")) c.qos_kind = qos_kind_from(j["qos_kind"], "qos_kind");
  if (j.contains("qos_value")) c.qos_value = number(j["qos_value"], "qos_value");
  return c;
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string(), "cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    if (auto pos = msg.find("syntax error"); pos != std::string::npos) msg = msg.substr(pos);
    throw InputError(path.string() + ":" + std::to_string(line) + ":" + std::to_string(col), msg);
  }
}

namespace {
template <class F>
auto with_file(const std::filesystem::path& path, F&& f) {
  const json j = read_json(path);
  try {
    return f(j);
  } catch (const InputError& e) {
    throw InputError(path.string() + (e.where().empty() ? "" : ": " + e.where()),
                     std::string(e.what()).substr(e.where().empty() ? 0 : e.where().size() + 2));
  }
}
}  // namespace

Scenario load_scenario(const std::filesystem::path& path) { return with_file(path, scenario_from_json); }
SolveOutcome load_outcome(const std::filesystem::path& path) { return with_file(path, outcome_from_json); }
ExperimentConfig load_experiment(const std::filesystem::path& path) { return with_file(path, experiment_from_json); }

}  // namespace ehs
