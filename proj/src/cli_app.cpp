// Copyright 2026 The activeshadow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "asd/cli_app.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "asd/errors.hpp"
#include "asd/io.hpp"
#include "asd/observer_sim.hpp"
#include "asd/planner.hpp"
#include "asd/scenario.hpp"

namespace asd {

namespace {

namespace fs = std::filesystem;

struct CliOptions {
  std::vector<std::string> scenarios;
  std::optional<std::string> out_dir;
  std::optional<double> dt;
  std::optional<double> epsilon;
  std::optional<double> delta_t;
  std::optional<double> lookahead;
  std::optional<double> theta;
  bool allow_violations = false;
  bool enforce = false;
  std::string formats;  // comma separated, e.g. "csv,svg"
  int jobs = 1;
};

struct RunOutcome {
  int code = 0;
  std::string out;  // human summary for stdout
  std::string err;  // diagnostics for stderr
};

void apply_overrides(Scenario& sc, const CliOptions& opts) {
  if (opts.dt) {
    if (!(*opts.dt > 0.0) || !(*opts.dt < sc.scene.duration())) {
      throw std::invalid_argument("--dt must lie in (0, scene duration)");
    }
    sc.planner.dt = *opts.dt;
  }
  if (opts.epsilon) {
    if (!(*opts.epsilon > 0.0)) throw std::invalid_argument("--epsilon must be > 0");
    sc.constraint.epsilon = *opts.epsilon;
  }
  if (opts.delta_t) {
    if (!(*opts.delta_t > 0.0)) throw std::invalid_argument("--delta-t must be > 0");
    sc.constraint.delta_t = *opts.delta_t;
  }
  if (opts.lookahead) {
    if (!(*opts.lookahead > 0.0)) throw std::invalid_argument("--lookahead must be > 0");
    sc.planner.lookahead_k = *opts.lookahead;
  }
  if (opts.theta) {
    // Rebuild the observer with the overridden commit threshold; the model
    // validates the (0.5, 1] range itself.
    sc.observer = ObserverModel(sc.observer.beta(), sc.observer.prior(),
                                sc.observer.weighting(), *opts.theta);
  }
  if (opts.out_dir) sc.outputs.directory = *opts.out_dir;
  if (!opts.formats.empty()) {
    bool csv = false;
    bool svg = false;
    std::stringstream ss(opts.formats);
    std::string token;
    while (std::getline(ss, token, ',')) {
      if (token == "csv") {
        csv = true;
      } else if (token == "svg") {
        svg = true;
      } else {
        throw std::invalid_argument("--format accepts 'csv' and 'svg', got '" + token + "'");
      }
    }
    sc.outputs.csv = csv;
    sc.outputs.svg = svg;
  }
}

// Rewrite the plan with a rate-limited schedule: the shadow becomes whatever
// the clamped lights actually cast from the real robot poses, and the
// constraint report is re-audited (it then passes by construction).
std::size_t apply_enforcement(PlanResult& plan, const RateConstraint& constraint) {
  auto [lights, events] = enforce_rate_limit(plan.lights, constraint);
  std::vector<TimedPoint> shadow;
  shadow.reserve(plan.robot.size());
  for (std::size_t i = 0; i < plan.robot.size(); ++i) {
    const auto& rs = plan.robot.samples()[i];
    shadow.push_back({rs.t, project_shadow(rs.pose, lights.samples()[i].light)});
  }
  plan.shadow = ShadowTrajectory(std::move(shadow));
  plan.lights = std::move(lights);
  plan.constraint_report = evaluate_rate_constraint(plan.lights, constraint);
  return events.size();
}

RunOutcome run_one(const std::string& subcommand, const std::string& scenario_path,
                   const CliOptions& opts, bool scenario_subdirs) {
  RunOutcome outcome;
  try {
    Scenario sc = load_scenario(scenario_path);
    apply_overrides(sc, opts);

    const std::string goal = sc.intended_goal();
    const LegiblePlanParams plan_params{sc.planner.dt, sc.planner.optimizer};

    std::optional<PlanResult> plan;
    std::optional<ComparisonReport> report;
    if (subcommand == "plan-motion") {
      const Trajectory desired = straight_line(
          sc.scene.start(), sc.scene.goal(goal).position, sc.scene.duration(), sc.planner.dt);
      plan = plan_motion_illusion(sc.scene.start(), desired, sc.constraint, sc.planner.dt);
    } else if (subcommand == "plan-legible") {
      plan = plan_legible_illusion(sc.scene, goal, sc.observer, sc.constraint, plan_params);
    } else if (subcommand == "plan-foreshadow") {
      const Trajectory robot = straight_line(
          sc.scene.start(), sc.scene.goal(goal).position, sc.scene.duration(), sc.planner.dt);
      plan = plan_collision_foreshadow(robot, sc.planner.lookahead_k, sc.constraint);
    } else if (subcommand == "observe") {
      // No enhancement: a zero deviation budget pins the "legible" trajectory
      // to the straight line, so the shadow just follows the robot.
      LegiblePlanParams ne = plan_params;
      ne.optimizer.max_deviation = 0.0;
      plan = plan_legible_illusion(sc.scene, goal, sc.observer, sc.constraint, ne);
    } else if (subcommand == "compare") {
      plan = plan_legible_illusion(sc.scene, goal, sc.observer, sc.constraint, plan_params);
      report = compare_methods(sc.scene, goal, sc.observer, sc.constraint, plan_params);
    } else {
      throw std::invalid_argument("unknown subcommand '" + subcommand + "'");
    }

    std::size_t clamped = 0;
    if (opts.enforce) clamped = apply_enforcement(*plan, sc.constraint);

    // Prediction curve for posterior.csv: watching the robot for `observe`,
    // watching the shadow for everything else.
    std::optional<PredictionCurve> curve;
    std::string curve_note;
    if (subcommand == "observe") {
      curve = prediction_curve(plan->robot, sc.scene, sc.observer, sc.planner.dt);
    } else {
      try {
        curve = prediction_curve(plan->shadow, sc.scene, sc.observer, sc.planner.dt);
      } catch (const std::invalid_argument& e) {
        curve_note = std::string("note: posterior.csv skipped (") + e.what() + ")\n";
      }
    }

    fs::path dir = sc.outputs.directory;
    if (scenario_subdirs) dir /= fs::path(scenario_path).stem();

    std::vector<std::string> written;
    if (sc.outputs.csv) {
      write_file_atomic(dir / "plan.csv", plan_csv(*plan));
      written.push_back("plan.csv");
      if (curve) {
        std::vector<std::string> order;
        for (const auto& g : sc.scene.goals()) order.push_back(g.label);
        write_file_atomic(dir / "posterior.csv", posterior_csv(*curve, order));
        written.push_back("posterior.csv");
      }
      if (report) {
        write_file_atomic(dir / "report.csv", report_csv(*report));
        written.push_back("report.csv");
      }
    }
    if (sc.outputs.svg) {
      write_file_atomic(dir / "plan.svg", plan_svg(*plan, sc.scene));
      written.push_back("plan.svg");
    }

    std::size_t violated = 0;
    for (const auto& w : plan->constraint_report) {
      if (w.violated) ++violated;
    }
    const std::size_t infeasible = plan->infeasible_samples.size();

    std::ostringstream msg;
    msg << subcommand << " " << fs::path(scenario_path).stem().string() << ": "
        << plan->robot.size() << " samples, " << violated << "/"
        << plan->constraint_report.size() << " windows violated, " << infeasible
        << " infeasible";
    if (opts.enforce) msg << ", " << clamped << " samples rate-clamped";
    if (report) {
      for (const auto& row : report->rows) {
        msg << "; " << row.method << " zeta=" << format_double(row.zeta_cm2) << " commit=";
        if (row.commit_time_s) {
          msg << format_double(*row.commit_time_s) << "s";
        } else {
          msg << "never";
        }
      }
    }
    if (!written.empty()) {
      msg << "; wrote";
      for (const auto& f : written) msg << " " << (dir / f).string();
    }
    msg << "\n";
    outcome.out = msg.str();
    outcome.err = curve_note;

    if ((violated > 0 || infeasible > 0) && !opts.allow_violations) {
      outcome.err += "constraint violations or infeasible samples present; failing "
                     "(use --allow-violations to accept, --enforce to clamp)\n";
      outcome.code = 2;
    }
  } catch (const InfeasibleError& e) {
    outcome.err = std::string("infeasible: ") + e.what() + "\n";
    outcome.code = 2;
  } catch (const std::exception& e) {
    outcome.err = std::string("error: ") + e.what() + "\n";
    outcome.code = 1;
  }
  return outcome;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"active shadowing: virtual-shadow trajectory and light-schedule planner"};
  app.require_subcommand(1);

  CliOptions opts;
  app.add_option("--scenario", opts.scenarios, "scenario file(s) (.scn, JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  app.add_option("--out", opts.out_dir, "output directory (overrides the scenario)");
  app.add_option("--dt", opts.dt, "sampling step in seconds");
  app.add_option("--epsilon", opts.epsilon, "rate constraint: max degrees per window");
  app.add_option("--delta-t", opts.delta_t, "rate constraint: window length in seconds");
  app.add_option("--lookahead", opts.lookahead, "foreshadow lookahead in seconds");
  app.add_option("--theta", opts.theta, "observer commit threshold in (0.5, 1]");
  app.add_flag("--allow-violations", opts.allow_violations,
               "exit 0 even when constraint windows are violated");
  app.add_flag("--enforce", opts.enforce,
               "clamp the light schedule to the rate constraint before writing outputs");
  app.add_option("--format", opts.formats, "comma-separated outputs: csv,svg");
  app.add_option("--jobs", opts.jobs, "run scenarios in parallel")
      ->check(CLI::PositiveNumber);

  app.add_subcommand("plan-motion", "animate the parked robot's shadow along a desired path")
      ->fallthrough();
  app.add_subcommand("plan-legible", "straight robot, legibility-optimized shadow")
      ->fallthrough();
  app.add_subcommand("plan-foreshadow", "shadow previews the robot's pose k seconds ahead")
      ->fallthrough();
  app.add_subcommand("compare", "table comparing ASD / BIC / NE on the scenario")
      ->fallthrough();
  app.add_subcommand("observe", "prediction curve for the plain robot motion")
      ->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  const std::string subcommand = app.get_subcommands().front()->get_name();
  const bool subdirs = opts.scenarios.size() > 1;

  std::vector<RunOutcome> outcomes(opts.scenarios.size());
  const std::size_t jobs = std::min<std::size_t>(
      std::max(1, opts.jobs), opts.scenarios.size());
  if (jobs <= 1) {
    for (std::size_t i = 0; i < opts.scenarios.size(); ++i) {
      outcomes[i] = run_one(subcommand, opts.scenarios[i], opts, subdirs);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    for (std::size_t w = 0; w < jobs; ++w) {
      workers.emplace_back([&] {
        while (true) {
          const std::size_t i = next.fetch_add(1);
          if (i >= opts.scenarios.size()) break;
          outcomes[i] = run_one(subcommand, opts.scenarios[i], opts, subdirs);
        }
      });
    }
    for (auto& t : workers) t.join();
  }

  int code = 0;
  for (const auto& o : outcomes) {
    std::cout << o.out;
    std::cerr << o.err;
    code = std::max(code, o.code);
  }
  return code;
}

}  // namespace asd
