#pragma once

// Orchestration behind the CLI subcommands, kept library-side so tests can
// drive the exact same pipeline.

#include <string>
#include <vector>

#include "dqnet/config.hpp"
#include "dqnet/formats.hpp"

namespace dqnet {

struct GenSummary {
  std::size_t rows{0};
  Point3 lo{};
  Point3 hi{};
};

// Integrates the configured system and writes the trajectory CSV.
GenSummary run_gen(const ExperimentConfig& config, const std::string& out_path);

struct TrainSummary {
  std::int64_t param_count{0};
  double initial_loss{0.0};
  double final_loss{0.0};
  std::size_t n_train{0};
};

// Trains the per-algebra MLP on the 10% split; writes checkpoint JSON and,
// when `loss_csv` is nonempty, the loss-history CSV.
TrainSummary run_train(const ExperimentConfig& config, Algebra algebra,
                       const std::string& trajectory_path, const std::string& checkpoint_path,
                       const std::string& loss_csv = "");

// Builds the four rigid-transformed test sets, evaluates the checkpointed
// model on each, writes the report and, when `pred_dir` is nonempty,
// per-variant predicted-vs-expected CSVs. `variants` may restrict which
// kinds are evaluated (empty = all four). `identity_transforms` replaces the
// drawn transforms with identities (diagnostic mode).
LorenzReport run_eval(const ExperimentConfig& config, const std::string& checkpoint_path,
                      const std::string& trajectory_path, const std::string& report_path,
                      const std::string& pred_dir = "",
                      const std::vector<VariantKind>& variants = {},
                      bool identity_transforms = false);

// Runs the synthetic pose study (all three algebras unless one is forced via
// `only`), writes the pose report.
PoseReport run_pose(const ExperimentConfig& config, const std::string& report_path,
                    const std::vector<Algebra>& only = {});

// Renders loaded reports as the MSE/prediction-gain table (one row per
// model); optionally writes the same table as CSV.
std::string run_report(const std::vector<std::string>& report_paths,
                       const std::string& csv_out = "");

}  // namespace dqnet
