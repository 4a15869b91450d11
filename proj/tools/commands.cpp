#include "commands.hpp"

#include <cmath>
#include <iomanip>

#include "ehs/baseline.hpp"
#include "ehs/io.hpp"
#include "ehs/oracle.hpp"
#include "ehs/scheduler.hpp"
#include "ehs/validate.hpp"

namespace ehs::cli {

namespace {

void print_schedule(const Schedule& s, std::ostream& out) {
  out << "epochs:\n";
  out << "  " << std::setw(14) << "tau" << std::setw(16) << "rate" << std::setw(16) << "length" << std::setw(16)
      << "overflow" << '\n';
  for (const auto& e : s.epochs)
    out << "  " << std::setw(14) << e.tau << std::setw(16) << e.rate << std::setw(16) << e.length << std::setw(16)
        << e.overflow_at_end << '\n';
  out << "T = " << s.completion_time << '\n';
  out << "energy spent = " << s.energy_spent << '\n';
  if (s.overflows.empty()) {
    out << "overflows: none\n";
  } else {
    out << "overflows:\n";
    for (const auto& o : s.overflows) out << "  t = " << o.time << "  lost " << o.amount << " J\n";
  }
}

void print_witness(const Infeasible& w, std::ostream& out) {
  out << "infeasible (" << to_string(w.kind) << ")\n";
  if (std::isfinite(w.time))
    out << "witness q_k = " << w.time << '\n';
  else
    out << "witness q_k = inf (all energy has arrived)\n";
  out << "  required " << w.required << " bits, at most " << w.achievable << " achievable\n";
  out << "  energy available " << w.energy_available << " J from t = " << w.origin << '\n';
}

}  // namespace

int cmd_solve(const SolveOptions& opt, std::ostream& out, std::ostream& err) {
  if (opt.solver != "optimal" && opt.solver != "ebs") {
    err << "error: unknown solver '" << opt.solver << "' (optimal|ebs)\n";
    return kExitError;
  }
  SolveOutcome outcome;
  try {
    const Scenario sc = load_scenario(opt.scenario);
    outcome = opt.solver == "ebs" ? ebs_solve(sc) : solve(sc);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: solver failed: " << e.what() << '\n';
    return kExitError;
  }
  out << std::setprecision(12);
  if (opt.json)
    out << outcome_to_json(outcome).dump(2) << '\n';
  else if (const auto* s = std::get_if<Schedule>(&outcome))
    print_schedule(*s, out);
  else
    print_witness(std::get<Infeasible>(outcome), out);
  return std::holds_alternative<Schedule>(outcome) ? kExitOk : kExitInfeasible;
}

int cmd_validate(const ValidateOptions& opt, std::ostream& out, std::ostream& err) {
  Scenario sc;
  SolveOutcome outcome;
  try {
    sc = load_scenario(opt.scenario);
    outcome = load_outcome(opt.schedule);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  const auto* schedule = std::get_if<Schedule>(&outcome);
  if (!schedule) {
    err << "error: " << opt.schedule << " records an infeasible outcome, not a schedule\n";
    return kExitError;
  }
  const ValidationReport report = validate(sc, *schedule, opt.tol);
  out << std::setprecision(12);
  for (const auto& c : report.checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name;
    if (!c.passed) out << "  at t = " << c.time << ": " << c.detail;
    out << '\n';
  }
  const bool ok = report.constraints_ok();
  out << (ok ? "schedule satisfies all constraints" : "schedule violates constraints") << '\n';
  if (ok && !report.ok()) out << "note: optimality conditions failed (see above)\n";
  return ok ? kExitOk : kExitInvalid;
}

int cmd_oracle(const OracleOptions& opt, std::ostream& out, std::ostream& err) {
  OracleConfig cfg;
  cfg.dt = opt.dt;
  cfg.energy_quantum = opt.energy_quantum;
  cfg.data_quantum = opt.data_quantum;
  cfg.max_cells = opt.max_cells;
  if (opt.rate_step > 0.0) {
    const double dq = opt.rate_step * opt.dt;
    if (opt.data_quantum > 0.0 && std::abs(opt.data_quantum - dq) > 1e-12 * dq) {
      err << "error: --rgrid and --dquant disagree (rate step x dt must equal the data quantum)\n";
      return kExitError;
    }
    cfg.data_quantum = dq;
  }

  Scenario sc;
  try {
    sc = load_scenario(opt.scenario);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  OracleResult res;
  try {
    res = dp_min_time(sc, cfg);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }

  out << std::setprecision(12);
  out << "grid: " << res.slots << " slots of " << cfg.dt << " s, " << res.data_levels << " data levels\n";
  if (!res.feasible) {
    out << "oracle: infeasible\n";
    return kExitInfeasible;
  }
  out << "T_oracle = " << res.completion_time << '\n';
  try {
    const SolveOutcome exact = solve(sc);
    if (const auto* s = std::get_if<Schedule>(&exact)) {
      const double gap = res.completion_time - s->completion_time;
      out << "T_solve = " << s->completion_time << '\n';
      out << "gap = " << gap << " (" << (s->completion_time > 0.0 ? 100.0 * gap / s->completion_time : 0.0)
          << "%)\n";
    } else {
      out << "T_solve: infeasible\n";
    }
  } catch (const std::exception& e) {
    out << "T_solve: solver failed: " << e.what() << '\n';
  }
  return kExitOk;
}

int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    ExperimentConfig cfg = opt.config ? load_experiment(*opt.config) : ExperimentConfig{};
    if (opt.trials) cfg.trials = *opt.trials;
    if (opt.seed) cfg.seed = *opt.seed;
    const auto rows = run_experiment(cfg);
    std::size_t errors = 0;
    for (const auto& r : rows) errors += r.opt_errors + r.ebs_errors;
    if (opt.out_path.empty() || opt.out_path == "-")
      out << format_results(rows);
    else
      write_results(rows, opt.out_path);
    if (errors) err << "warning: " << errors << " trial runs raised errors and were counted as infeasible\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitOk;
}

}  // namespace ehs::cli
