#pragma once

// File formats: trajectory/prediction/loss CSVs, model checkpoints,
// evaluation reports and the pose JSON-lines format. All writes go through
// a temp file + rename so readers never see partial output. Floats in CSVs
// use 17 significant digits (lossless for doubles).

#include <cstdint>
#include <string>
#include <vector>

#include "dqnet/lorenz.hpp"
#include "dqnet/metrics.hpp"
#include "dqnet/nn.hpp"
#include "dqnet/seqmodels.hpp"

namespace dqnet {

struct Seeds {
  std::uint64_t data{0};
  std::uint64_t init{0};
  std::uint64_t transform{0};
};

void atomic_write(const std::string& path, const std::string& contents);

// --- CSV ---

// Header `t,x,y,z`; one row per point, t = t0 + i*dt.
void write_trajectory_csv(const std::string& path, const Trajectory& t);
Trajectory read_trajectory_csv(const std::string& path);

// Header `epoch,mse`.
void write_loss_history_csv(const std::string& path, const std::vector<double>& history);

// Header `epoch,total,recon,kl,lr`.
void write_vae_history_csv(const std::string& path, const std::vector<VaeEpochStats>& history);

// Header `t,x_pred,y_pred,z_pred,x_true,y_true,z_true`.
void write_prediction_csv(const std::string& path, double t0, double dt,
                          const std::vector<Point3>& pred, const std::vector<Point3>& truth);

// --- checkpoints ---

struct Checkpoint {
  Mlp model;
  TrainConfig train_config{};
  Seeds seeds{};
};

// JSON with layers as flat real arrays, row-major over (fan_out, fan_in),
// component-fastest; components ordered (w, x, y, z), primal before dual.
void save_checkpoint(const std::string& path, const Checkpoint& ckpt);
Checkpoint load_checkpoint(const std::string& path);

// --- evaluation reports ---

struct LorenzReport {
  Algebra algebra{Algebra::kReal};
  std::vector<EvalReport> variants;
};

void save_lorenz_report(const std::string& path, const LorenzReport& report);
LorenzReport load_lorenz_report(const std::string& path);  // MalformedReportError

struct PoseVariantResult {
  Algebra algebra{Algebra::kReal};
  double vim{0.0};
  double fde{0.0};
  double val_loss{0.0};
  std::int64_t param_count{0};
  std::int64_t weight_grid{0};
  double center_displacement_ratio{0.0};
};

struct PoseReport {
  std::vector<PoseVariantResult> variants;
};

void save_pose_report(const std::string& path, const PoseReport& report);
PoseReport load_pose_report(const std::string& path);

// --- pose data ---

// One frame per line: {"sequence": k, "center": [3], "joints": [13][3]}.
void write_pose_jsonl(const std::string& path, const std::vector<PoseSequence>& dataset);
std::vector<PoseSequence> read_pose_jsonl(const std::string& path, int t_obs, int t_fut);

}  // namespace dqnet
