#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "talentplan/analysis.hpp"
#include "talentplan/distribution.hpp"
#include "talentplan/instance_json.hpp"
#include "talentplan/mps.hpp"
#include "talentplan/pipeline.hpp"
#include "talentplan/report.hpp"
#include "talentplan/topsis.hpp"

namespace {

// Exit codes: 0 success, 1 usage/internal error, 2 instance schema error,
// 3 infeasible model, 4 solver limit reached without proof of optimality.
constexpr int kExitSchema = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitLimit = 4;

struct GlobalFlags {
  std::optional<std::uint64_t> seed;
  std::optional<double> alpha1, alpha2;
  std::optional<int> scenarios;
  double gap = 1e-6;
  long nodes = 1'000'000;
  std::string time_mode = "scenario";
};

talentplan::pipeline::SolveOptions make_options(const GlobalFlags& flags) {
  talentplan::pipeline::SolveOptions opt;
  opt.time_mode = flags.time_mode == "normal"
                      ? talentplan::chance::TimeMode::NormalClosedForm
                      : talentplan::chance::TimeMode::Scenario;
  opt.alpha1 = flags.alpha1;
  opt.alpha2 = flags.alpha2;
  opt.scenario_count = flags.scenarios;
  opt.seed = flags.seed;
  opt.limits.rel_gap = flags.gap;
  opt.limits.max_nodes = flags.nodes;
  return opt;
}

int status_exit(talentplan::milp::MilpStatus status) {
  using talentplan::milp::MilpStatus;
  switch (status) {
    case MilpStatus::Optimal:
      return 0;
    case MilpStatus::Infeasible:
      return kExitInfeasible;
    case MilpStatus::GapLimit:
    case MilpStatus::NodeLimit:
      return kExitLimit;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace talentplan;

  CLI::App app{"Workforce pipeline planner: channel ranking, chance-constrained staffing "
               "optimization and stochastic analysis"};
  app.require_subcommand(1);

  GlobalFlags flags;
  if (const char* env_seed = std::getenv("TALENTPLAN_SEED")) {
    try {
      flags.seed = std::stoull(env_seed);
    } catch (...) {
      std::cerr << "warning: ignoring non-numeric TALENTPLAN_SEED\n";
    }
  }
  app.add_option("--seed", flags.seed, "Random seed (overrides instance and TALENTPLAN_SEED)");
  app.add_option("--alpha1", flags.alpha1, "Confidence level on the acceptance constraint");
  app.add_option("--alpha2", flags.alpha2, "Confidence level on the time-budget constraint");
  app.add_option("--scenarios", flags.scenarios, "Scenario count for the sampled reformulation");
  app.add_option("--gap", flags.gap, "Relative optimality gap for the solver");
  app.add_option("--nodes", flags.nodes, "Node limit for the solver");
  app.add_option("--time-mode", flags.time_mode, "Time-budget treatment: scenario|normal")
      ->check(CLI::IsMember({"scenario", "normal"}));

  std::string instance_path, out_dir = ".", out_file;

  auto* cmd_topsis = app.add_subcommand("topsis", "Rank recruitment channels");
  cmd_topsis->add_option("instance", instance_path, "Instance JSON file")->required();

  auto* cmd_solve = app.add_subcommand("solve", "Solve the staffing model");
  cmd_solve->add_option("instance", instance_path)->required();
  cmd_solve->add_option("-o,--out", out_dir, "Directory for report.json");

  auto* cmd_analyze = app.add_subcommand("analyze", "Stochastic value analysis");
  cmd_analyze->add_option("instance", instance_path)->required();
  cmd_analyze->add_option("-o,--out", out_dir, "Directory for zeta.csv and evpi.json");
  int analyze_samples = 0;
  cmd_analyze->add_option("--samples", analyze_samples,
                          "Realizations for the wait-and-see pass (default: config sample size)");

  auto* cmd_sense = app.add_subcommand("sensitivity", "Parameter sweeps");
  cmd_sense->add_option("instance", instance_path)->required();
  cmd_sense->add_option("-o,--out", out_dir, "Directory for sensitivity CSV files");
  std::string axis = "alpha1";
  cmd_sense
      ->add_option("--axis", axis,
                   "alpha1|alpha2|mean-doc-time|mean-interview-time|mean-acceptance")
      ->check(CLI::IsMember(
          {"alpha1", "alpha2", "mean-doc-time", "mean-interview-time", "mean-acceptance"}));
  std::vector<double> points;
  cmd_sense->add_option("--points", points, "Grid points (strictly increasing)");

  auto* cmd_mps = app.add_subcommand("export-mps", "Write the solvable model in MPS format");
  cmd_mps->add_option("instance", instance_path)->required();
  cmd_mps->add_option("-o,--out", out_file, "Output file (default: model.mps)");

  auto* cmd_sample = app.add_subcommand("sample-check", "Sampling fidelity summary");
  cmd_sample->add_option("instance", instance_path)->required();
  int sample_n = 10000;
  cmd_sample->add_option("--n", sample_n, "Draws per distribution");

  CLI11_PARSE(app, argc, argv);

  try {
    const Instance inst = io::ingest(instance_path);
    const auto options = make_options(flags);

    if (cmd_topsis->parsed()) {
      std::cout << std::fixed << std::setprecision(4);
      std::cout << "channel weights (relative closeness)\n";
      for (int i = 0; i < inst.channels(); ++i)
        std::cout << "  " << std::left << std::setw(16) << inst.channel_name(i)
                  << inst.channel_weight[i] << "\n";
      std::vector<int> order(static_cast<std::size_t>(inst.channels()));
      for (std::size_t k = 0; k < order.size(); ++k) order[k] = static_cast<int>(k);
      std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (inst.channel_weight[a] != inst.channel_weight[b])
          return inst.channel_weight[a] > inst.channel_weight[b];
        return a < b;
      });
      std::cout << "ranking:";
      for (int i : order) std::cout << " " << inst.channel_name(i);
      std::cout << "\n";
      return 0;
    }

    if (cmd_solve->parsed()) {
      const auto result = pipeline::solve_instance(inst, options);
      std::cout << io::format_run_report(inst, result);
      if (result.has_plan) {
        std::filesystem::create_directories(out_dir);
        const auto path = std::filesystem::path(out_dir) / "report.json";
        std::ofstream out(path);
        out << io::run_report_json(inst, result, options).dump(2) << "\n";
        std::cout << "raw report: " << path.string() << "\n";
      }
      return status_exit(result.status);
    }

    if (cmd_analyze->parsed()) {
      const int n = analyze_samples > 0 ? analyze_samples : inst.config.sample_size;
      const std::uint64_t seed = flags.seed.value_or(inst.config.rng_seed);
      const auto report = analysis::stochastic_report(inst, n, seed, options);
      std::filesystem::create_directories(out_dir);
      io::write_zeta_csv((std::filesystem::path(out_dir) / "zeta.csv").string(), report);
      nlohmann::json summary = {
          {"ws", report.ws},     {"vrp", report.vrp}, {"eev", report.eev},
          {"evpi", report.evpi}, {"realizations", n}, {"seed", static_cast<long long>(seed)},
      };
      if (!report.failed_cells.empty()) summary["failed_cells"] = report.failed_cells;
      std::ofstream out(std::filesystem::path(out_dir) / "evpi.json");
      out << summary.dump(2) << "\n";
      std::cout << std::fixed << std::setprecision(4);
      std::cout << "WS   " << report.ws << "\nVRP  " << report.vrp << "\nEEV  " << report.eev
                << "\nEVPI " << report.evpi << "\n";
      if (report.evpi < 0.0)
        std::cout << "warning: VRP is below the wait-and-see mean; the difference is reported "
                     "as defined\n";
      std::cout << "scenario satisfaction per period (required " << report.scenario_required
                << "):";
      for (int t = 0; t < report.scenario_satisfied.size(); ++t)
        std::cout << " " << report.scenario_satisfied[t];
      std::cout << "\n";
      return 0;
    }

    if (cmd_sense->parsed()) {
      analysis::SweepAxis sweep_axis = analysis::SweepAxis::Alpha1;
      Eigen::VectorXd grid;
      if (axis == "alpha1") {
        sweep_axis = analysis::SweepAxis::Alpha1;
        grid = Eigen::VectorXd::LinSpaced(7, 0.3, 0.9);
      } else if (axis == "alpha2") {
        sweep_axis = analysis::SweepAxis::Alpha2;
        grid.resize(7);
        grid << 0.1, 0.25, 0.4, 0.55, 0.7, 0.85, 0.95;
      } else {
        sweep_axis = axis == "mean-doc-time" ? analysis::SweepAxis::MeanScaleDocTime
                     : axis == "mean-interview-time"
                         ? analysis::SweepAxis::MeanScaleInterviewTime
                         : analysis::SweepAxis::MeanScaleAcceptance;
        grid.resize(5);
        grid << 0.5, 0.75, 1.0, 1.25, 1.5;
      }
      if (!points.empty()) {
        grid.resize(static_cast<Eigen::Index>(points.size()));
        for (std::size_t k = 0; k < points.size(); ++k)
          grid[static_cast<Eigen::Index>(k)] = points[k];
      }
      const auto result = analysis::sensitivity_sweep(inst, sweep_axis, grid, options);
      std::filesystem::create_directories(out_dir);
      const auto path = std::filesystem::path(out_dir) /
                        ("sensitivity_" + io::axis_name(sweep_axis) + ".csv");
      io::write_sensitivity_csv(path.string(), result);
      std::cout << "wrote " << path.string() << "\n";
      std::cout << std::fixed << std::setprecision(4);
      for (Eigen::Index k = 0; k < result.points.size(); ++k) {
        std::cout << "  " << result.points[k] << " -> ";
        if (result.solved[static_cast<std::size_t>(k)])
          std::cout << result.average[k] << "\n";
        else
          std::cout << "failed\n";
      }
      return 0;
    }

    if (cmd_mps->parsed()) {
      const auto built = pipeline::build_final_milp(inst, options);
      const std::string text = milp::write_mps(built.model);
      const std::string path = out_file.empty() ? "model.mps" : out_file;
      std::ofstream out(path);
      out << text;
      std::cout << "wrote " << path << " (" << built.model.cols() << " columns, "
                << built.model.num_rows() << " rows)\n";
      return 0;
    }

    if (cmd_sample->parsed()) {
      const std::uint64_t seed = flags.seed.value_or(inst.config.rng_seed);
      std::cout << std::fixed << std::setprecision(4);
      std::cout << std::left << std::setw(40) << "distribution" << std::right << std::setw(10)
                << "mean" << std::setw(12) << "sample" << std::setw(10) << "sd" << std::setw(12)
                << "sample" << std::setw(14) << "ks*sqrt(n)" << "\n";
      for (int j = 0; j < inst.jobs(); ++j) {
        const auto& spec = inst.stochastic[static_cast<std::size_t>(j)];
        int which = 0;
        for (const auto* d : {&spec.doc_time, &spec.interview_time, &spec.acceptance_rate}) {
          const auto batch =
              dist::sample(*d, sample_n, seed, static_cast<std::uint64_t>(j * 3 + which));
          const auto [mean, sd] = dist::empirical_stats(batch);
          const double ks = dist::ks_statistic(batch);
          std::cout << std::left << std::setw(40)
                    << (inst.job_name(j) + " " + dist::to_string(*d)) << std::right
                    << std::setw(10) << d->mean() << std::setw(12) << mean << std::setw(10)
                    << std::sqrt(d->variance()) << std::setw(12) << sd << std::setw(14)
                    << ks * std::sqrt(static_cast<double>(sample_n)) << "\n";
          ++which;
        }
      }
      return 0;
    }
  } catch (const io::SchemaError& e) {
    std::cerr << "instance error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
