// Copyright 2026 The ghzforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "ghzforge/commands.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "ghzforge/analytic.hpp"
#include "ghzforge/errors.hpp"
#include "ghzforge/output.hpp"
#include "ghzforge/scenario.hpp"
#include "ghzforge/selftest.hpp"
#include "ghzforge/units.hpp"
#include "json.hpp"

namespace ghzforge {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;
using nlohmann::ordered_json;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << text;
}

fs::path prepare_dir(const std::string& dir) {
  fs::path p(dir);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) throw InputError("cannot create output directory '" + dir + "': " + ec.message());
  return p;
}

std::string trajectory_csv(const Trajectory& traj, const Scenario& s) {
  std::ostringstream csv;
  write_trajectory_csv(csv, traj, s.convention, mode_names(s));
  return csv.str();
}

void check_budget(const Scenario& s, double wall) {
  if (s.time_budget_s > 0.0 && wall > s.time_budget_s) {
    warn("scenario '" + s.name + "' took " + format_number(wall) + " s, over its budget of " +
         format_number(s.time_budget_s) + " s");
  }
}

struct Grid {
  double start;
  double stop;
  std::size_t count;
};

Grid parse_grid(const std::string& text) {
  Grid g{};
  char c1 = 0;
  char c2 = 0;
  long count = 0;
  std::istringstream in(text);
  in.imbue(std::locale::classic());
  if (!(in >> g.start >> c1 >> g.stop >> c2 >> count) || c1 != ':' || c2 != ':' ||
      !(in >> std::ws).eof()) {
    throw InputError("phie grid '" + text + "': expected start:stop:count");
  }
  if (count < 2 || count > 1000000) throw InputError("phie grid: count must be in [2, 1e6]");
  if (!(g.stop > g.start)) throw InputError("phie grid: stop must exceed start");
  g.count = static_cast<std::size_t>(count);
  return g;
}

// Builds every variant on a tiny truncation so that precondition failures
// surface before any point is integrated.
void validate_point(const Scenario& s) {
  ScopedWarningCapture quiet;
  for (const auto& v : s.variants) {
    if (s.kind == CircuitKind::Single) {
      build_single(s.single,
                   v == "full" ? SingleVariant::Full
                   : v == "intermediate" ? SingleVariant::Intermediate
                                         : SingleVariant::Effective,
                   2);
    } else {
      build_coupled(s.coupled, v == "full" ? CoupledVariant::Full : CoupledVariant::Effective, 2);
    }
  }
}

// Peak of `f`, restricted to the dense window when the plan has one.
std::size_t peak_sample(const std::vector<double>& times, const std::vector<double>& f,
                        const SamplePlan& plan) {
  std::optional<std::size_t> best;
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (plan.has_window() &&
        (times[k] < plan.window_begin - 1e-9 || times[k] > plan.window_end + 1e-9)) {
      continue;
    }
    if (!best || f[k] > f[*best]) best = k;
  }
  return best.value_or(f.size() - 1);
}

}  // namespace

int guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const InputError& e) {
    err << "ghzforge: input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const PreconditionError& e) {
    err << "ghzforge: numerical precondition violated: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const UnsolvableConditionError& e) {
    err << "ghzforge: unsolvable condition: " << e.what() << '\n';
    return kExitUnsolvable;
  } catch (const std::exception& e) {
    err << "ghzforge: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        const Scenario s = load_scenario(options.scenario_path);
        const auto start = Clock::now();
        std::vector<Trajectory> trajectories;
        std::vector<TrajectorySummary> summaries;
        for (const auto& v : s.variants) {
          const auto t0 = Clock::now();
          trajectories.push_back(run_variant(s, v));
          summaries.push_back(summarize(trajectories.back(), s.convention, seconds_since(t0)));
        }
        const double wall = seconds_since(start);
        const fs::path dir = prepare_dir(options.out_dir);
        for (std::size_t i = 0; i < trajectories.size(); ++i) {
          write_file(dir / (s.name + "_" + s.variants[i] + ".csv"), trajectory_csv(trajectories[i], s));
        }
        const std::string summary = run_summary_json(s, summaries, wall);
        write_file(dir / (s.name + "_summary.json"), summary + "\n");
        out << summary << '\n';
        check_budget(s, wall);
        return kExitOk;
      },
      err);
}

int cmd_sweep(const SweepOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        const Scenario base = load_scenario(options.scenario_path);
        std::string param;
        std::vector<double> values;
        if (base.sweep) {
          param = base.sweep->param;
          values = base.sweep->values;
        }
        if (options.param) param = *options.param;
        if (options.values) values = *options.values;
        if (param.empty()) throw InputError("sweep: no parameter given (--param or scenario 'sweep')");
        if (values.empty()) throw InputError("sweep: value list is empty");
        std::vector<Scenario> points;
        for (double v : values) {
          points.push_back(with_sweep_value(base, param, v));
          validate_point(points.back());
        }
        const std::string variant = base.variants.front();
        const auto start = Clock::now();
        std::vector<Trajectory> trajectories(points.size());
        parallel_for(points.size(), options.workers,
                     [&](std::size_t i) { trajectories[i] = run_variant(points[i], variant); });
        const double wall = seconds_since(start);

        const fs::path dir = prepare_dir(options.out_dir);
        std::ostringstream table;
        table << "value,peak_fidelity,peak_time_ns,fidelity_final,convention\n";
        ordered_json rows = ordered_json::array();
        for (std::size_t i = 0; i < points.size(); ++i) {
          const Trajectory& tr = trajectories[i];
          const std::string stem = base.name + "_" + param + "=" + format_short(values[i]);
          write_file(dir / (stem + ".csv"), trajectory_csv(tr, base));
          const std::vector<double>& f = selected_fidelity(tr, base.convention);
          const std::size_t best = peak_sample(tr.times, f, base.samples);
          const TrajectorySummary sum = summarize(tr, base.convention, 0.0);
          table << format_number(values[i]) << ',' << format_number(f[best]) << ','
                << format_number(tr.times[best]) << ',' << format_number(f.back()) << ','
                << sum.convention << '\n';
          ordered_json r;
          r["value"] = values[i];
          r["peak_fidelity"] = f[best];
          r["peak_time_ns"] = tr.times[best];
          r["fidelity_final"] = f.back();
          r["convention"] = sum.convention;
          r["max_norm_drift"] = sum.max_norm_drift;
          rows.push_back(r);
        }
        write_file(dir / (base.name + "_sweep.csv"), table.str());
        ordered_json doc;
        doc["scenario"] = base.name;
        doc["variant"] = variant;
        doc["param"] = param;
        doc["points"] = rows;
        doc["parameters"] = ordered_json::parse(base.source_json);
        doc["wall_time_s"] = wall;
        const std::string summary = doc.dump(2);
        write_file(dir / (base.name + "_sweep.json"), summary + "\n");
        out << summary << '\n';
        check_budget(base, wall);
        return kExitOk;
      },
      err);
}

int cmd_coupler(const CouplerOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        const Grid grid = parse_grid(o.phie_grid);
        const SquidCoupler coupler(o.lc_ph, o.ic_ua, o.mca_ph, o.mcb_ph, o.l, o.ia0_na, o.ib0_na);
        std::ostringstream csv;
        csv << "phi_e,m_eff_ph,j_rad_per_ns,j_ghz\n";
        std::vector<double> phis;
        std::vector<double> ms;
        for (std::size_t i = 0; i < grid.count; ++i) {
          const double phi =
              grid.start + (grid.stop - grid.start) * static_cast<double>(i) /
                               static_cast<double>(grid.count - 1);
          const double m = coupler.m_eff(phi);
          const double j = coupler.j_coupling(phi);
          phis.push_back(phi);
          ms.push_back(m);
          csv << format_number(phi) << ',' << format_number(m) << ',' << format_number(j) << ','
              << format_number(units::angular_to_ghz(j)) << '\n';
        }
        std::size_t lo = 0;
        std::size_t hi = 0;
        ordered_json crossings = ordered_json::array();
        for (std::size_t i = 0; i < ms.size(); ++i) {
          if (ms[i] < ms[lo]) lo = i;
          if (ms[i] > ms[hi]) hi = i;
          if (i + 1 < ms.size() && ((ms[i] < 0.0 && ms[i + 1] > 0.0) || (ms[i] > 0.0 && ms[i + 1] < 0.0))) {
            crossings.push_back(phis[i] - ms[i] * (phis[i + 1] - phis[i]) / (ms[i + 1] - ms[i]));
          } else if (ms[i] == 0.0) {
            crossings.push_back(phis[i]);
          }
        }
        const fs::path dir = prepare_dir(o.out_dir);
        write_file(dir / "coupler.csv", csv.str());
        ordered_json doc;
        doc["beta_l"] = coupler.beta_l();
        doc["m_eff_bound_ph"] = coupler.m_eff_bound();
        doc["m_eff_at_zero_ph"] = coupler.m_eff(0.0);
        doc["j_at_zero_ghz"] = units::angular_to_ghz(coupler.j_coupling(0.0));
        doc["m_eff_min_ph"] = {{"phi_e", phis[lo]}, {"value", ms[lo]}};
        doc["m_eff_max_ph"] = {{"phi_e", phis[hi]}, {"value", ms[hi]}};
        doc["zero_crossings_phi_e"] = crossings;
        out << doc.dump(2) << '\n';
        return kExitOk;
      },
      err);
}

int cmd_solve(const SolveOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        if (!(o.g_ghz > 0.0)) throw InputError("solve: --g must be positive");
        const double g = units::ghz_to_angular(o.g_ghz);
        ordered_json doc;
        doc["mode"] = o.mode;
        doc["g_ghz"] = o.g_ghz;
        if (o.mode == "single") {
          const SingleConditionSolution s = solve_single_condition(g, o.n, o.m);
          doc["n"] = o.n;
          doc["m"] = o.m;
          doc["delta_ghz"] = {units::angular_to_ghz(s.delta_positive),
                              units::angular_to_ghz(s.delta_negative)};
          doc["gate_time_ns"] = s.gate_time;
          doc["pair_phase_rad"] = s.pair_phase;
          doc["residual"] = s.residual;
          doc["scenario_fragment"] = {
              {"circuit", "single"},
              {"qubits", {{{"gap_ghz", 10.1}, {"g_ghz", o.g_ghz}}, {{"gap_ghz", 10.1}, {"g_ghz", o.g_ghz}}}},
              {"drive_ghz", 10.1},
              {"resonator_ghz", 10.1 + units::angular_to_ghz(s.delta_negative)},
              {"t_final_ns", s.gate_time}};
        } else if (o.mode == "coupled") {
          const CoupledConditionSolution s = solve_coupled_condition(g, o.xi, o.n, o.m, o.l);
          doc["n"] = o.n;
          doc["m"] = o.m;
          doc["l"] = o.l;
          doc["xi"] = o.xi;
          doc["j_ghz"] = units::angular_to_ghz(s.j);
          doc["delta_prime_ghz"] = units::angular_to_ghz(s.delta_prime);
          doc["gate_time_ns"] = s.gate_time;
          doc["residual_same_resonator"] = s.residual_same;
          doc["residual_cross_resonator"] = s.residual_cross;
          doc["scenario_fragment"] = {
              {"circuit", "coupled"},
              {"coupling_j_ghz", units::angular_to_ghz(s.j)},
              {"qubits", {{{"gap_ghz", 10.1}, {"g_ghz", o.g_ghz}}, {{"gap_ghz", 10.1}, {"g_ghz", o.g_ghz}}}},
              {"drive_ghz", 10.1},
              {"resonator_ghz", 10.1 + units::angular_to_ghz(s.delta_prime)},
              {"t_final_ns", s.gate_time}};
        } else {
          throw InputError("solve: --mode must be single or coupled");
        }
        out << doc.dump(2) << '\n';
        return kExitOk;
      },
      err);
}

int cmd_selftest(const SelftestCommandOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        const auto results = run_selftest({o.quick, o.inject_fault});
        std::size_t failed = 0;
        for (const auto& r : results) {
          out << (r.passed ? "PASS  " : "FAIL  ") << r.name << ": " << r.detail << " ["
              << format_number(r.seconds) << " s]\n";
          if (!r.passed) ++failed;
        }
        out << (failed == 0 ? "selftest passed" : "selftest FAILED") << " (" << results.size() - failed
            << "/" << results.size() << ")\n";
        return failed == 0 ? kExitOk : kExitInternal;
      },
      err);
}

}  // namespace ghzforge
