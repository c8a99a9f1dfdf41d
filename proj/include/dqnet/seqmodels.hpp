#pragma once

// Sequence models for pose forecasting: the dual-quaternion pose encoding,
// an LSTM cell over algebra-valued affine maps, and the variational
// autoencoder that predicts future frames from an observed prefix.
//
// Frames are flattened with the same 8-reals-per-joint layout for all three
// algebras (primal quaternion carrying the center, dual quaternion carrying
// the joint offset), so the real/quaternion/dual-quaternion variants consume
// identical bytes and differ only in the product structure of their layers.

#include <array>
#include <cstdint>
#include <vector>

#include "dqnet/algebra.hpp"
#include "dqnet/metrics.hpp"
#include "dqnet/nn.hpp"

namespace dqnet {

inline constexpr int kPoseJoints = 13;

struct PoseFrame {
  Point3 center{};
  std::array<Point3, kPoseJoints> joints{};
};

struct PoseSequence {
  std::vector<PoseFrame> frames;
  int t_obs{0};
  int t_fut{0};
};

// One dual quaternion per joint: primal vector part = center, dual vector
// part = joint minus center; both scalar parts zero.
struct DqPoseVector {
  std::array<DualQuaternion, kPoseJoints> entries{};
};

DqPoseVector encode_pose(const PoseFrame& f);
// center = mean of the primal vector parts, joints = center + dual parts.
// Scalar parts are discarded (network output noise).
PoseFrame decode_pose(const DqPoseVector& v);

// Flat layouts used by the models (kPoseJoints * 8 reals).
std::vector<double> encode_frame_flat(const PoseFrame& f);
PoseFrame decode_frame_flat(const std::vector<double>& flat);

// Joint coordinates of the future frames, for VIM/FDE.
PoseSeq future_joints(const PoseSequence& seq);

// --- LSTM cell ---

// Standard LSTM recurrences with algebra-valued affine maps and split
// sigmoid/tanh gate nonlinearities. Gate order: input, forget, output,
// candidate. The affine sublayers are identity-activation dense layers; the
// gate nonlinearity is applied after summing the input and hidden branches.
struct DqLstmCell {
  Algebra algebra{Algebra::kReal};
  int input_size{0};
  int hidden_size{0};
  std::array<DenseLayer, 4> w;  // input -> gate
  std::array<DenseLayer, 4> u;  // hidden -> gate

  int hidden_width() const { return hidden_size * algebra_dim(algebra); }
  int input_width() const { return input_size * algebra_dim(algebra); }
};

DqLstmCell make_lstm_cell(Algebra a, int input_size, int hidden_size, Rng& rng);

struct LstmStepCache {
  std::array<DenseCache, 4> wx;
  std::array<DenseCache, 4> uh;
  std::array<std::vector<double>, 4> gates;  // post-nonlinearity i, f, o, g
  std::vector<double> c_prev;
  std::vector<double> tanh_c_new;
};

struct LstmState {
  std::vector<double> h;
  std::vector<double> c;
};

LstmState zero_state(const DqLstmCell& cell);

// One recurrence step; fills `cache` when given.
LstmState dqlstm_step(const DqLstmCell& cell, std::span<const double> x, const LstmState& state,
                      LstmStepCache* cache = nullptr);

struct LstmCellGrads {
  std::array<DenseGrads, 4> w;
  std::array<DenseGrads, 4> u;
};

LstmCellGrads zero_grads(const DqLstmCell& cell);

// Backward through one step. dh/dc are the incoming gradients w.r.t. this
// step's outputs; on return they hold the gradients w.r.t. the previous
// state, and dx receives the input gradient.
void dqlstm_backward_step(const DqLstmCell& cell, const LstmStepCache& cache,
                          std::vector<double>& dh, std::vector<double>& dc,
                          std::vector<double>& dx, LstmCellGrads& grads);

// --- variational autoencoder ---

struct DqVae {
  Algebra algebra{Algebra::kDualQuaternion};
  int input_units{0};
  int hidden_units{0};
  int latent_units{0};
  double kl_weight{1e-3};

  DqLstmCell encoder;
  DenseLayer mean_layer;
  DenseLayer logvar_layer;
  DqLstmCell dec1;  // latent -> hidden
  DqLstmCell dec2;  // hidden -> hidden
  DenseLayer output_layer;

  int input_width() const { return input_units * algebra_dim(algebra); }
  int latent_width() const { return latent_units * algebra_dim(algebra); }
};

DqVae make_dq_vae(Algebra a, int input_units, int hidden_units, int latent_units,
                  double kl_weight, Rng& rng);

// The paper-shaped pose model for one algebra: unit counts are scaled by
// 8/dim so all variants share the same real widths (13 joints in, dq_hidden
// and dq_latent given in dual-quaternion units).
DqVae make_corpof_vae(Algebra a, int dq_hidden, int dq_latent, double kl_weight, Rng& rng);

struct LatentMode {
  bool sample{false};
  std::uint64_t seed{0};

  static LatentMode mean_only() { return {false, 0}; }
  static LatentMode sampled(std::uint64_t seed) { return {true, seed}; }
};

struct VaeOutput {
  std::vector<std::vector<double>> predicted;  // t_fut frames
  std::vector<double> mean;
  std::vector<double> logvar;
};

// Encoder consumes the observed frames stepwise; the latent vector (mean, or
// mean + exp(logvar/2)*eta under Sample) conditions the decoder, which
// receives it at every one of the t_fut unrolled steps. logvar is clamped to
// [-10, 10] before exponentiation. Throws EmptySequenceError.
VaeOutput vae_forward(const DqVae& model, const std::vector<std::vector<double>>& observed,
                      int t_fut, const LatentMode& mode);

struct VaeLoss {
  double total{0.0};
  double recon{0.0};
  double kl{0.0};
};

// recon = sum of squared coordinate differences over the predicted frames;
// kl = 0.5 * sum(exp(logvar) + mean^2 - 1 - logvar); total = recon +
// kl_weight * kl. Throws ShapeMismatchError.
VaeLoss vae_loss(const std::vector<std::vector<double>>& pred,
                 const std::vector<std::vector<double>>& truth,
                 const std::vector<double>& mean, const std::vector<double>& logvar,
                 double kl_weight);

struct DqVaeGrads {
  LstmCellGrads encoder;
  DenseGrads mean_layer;
  DenseGrads logvar_layer;
  LstmCellGrads dec1;
  LstmCellGrads dec2;
  DenseGrads output_layer;
};

DqVaeGrads zero_grads(const DqVae& model);

// Forward + loss + full backward for one sequence; gradients are scaled by
// `loss_scale` and accumulated into `grads`.
VaeLoss vae_loss_and_gradients(const DqVae& model, const std::vector<std::vector<double>>& observed,
                               const std::vector<std::vector<double>>& future,
                               const LatentMode& mode, double loss_scale, DqVaeGrads& grads);

std::vector<double> flatten_params(const DqVae& model);
void set_params(DqVae& model, std::span<const double> flat);
std::vector<double> flatten_grads(const DqVaeGrads& grads);
std::int64_t param_count(const DqVae& model);
std::int64_t weight_grid_count(const DqVae& model);

// --- training ---

struct VaeTrainConfig {
  TrainConfig base{};             // optimizer, learning rate, epochs, seed
  double plateau_delta{1e-4};     // required improvement
  int plateau_patience{100};      // epochs without improvement before halving
  double lr_floor{1e-5};
};

struct VaeEpochStats {
  double total{0.0};
  double recon{0.0};
  double kl{0.0};
  double lr{0.0};
};

// Full-batch Adam (or SGD) over the dataset mean of the per-sequence loss,
// with a halve-on-plateau schedule. Deterministic given the seed.
std::vector<VaeEpochStats> train_vae(DqVae& model, const std::vector<PoseSequence>& dataset,
                                     const VaeTrainConfig& config);

// Predicted future frames for one sequence (MeanOnly), decoded to joints.
PoseSeq predict_future_joints(const DqVae& model, const PoseSequence& seq);

// --- synthetic pose data ---

struct SynthPoseConfig {
  int n_sequences{16};
  int t_obs{16};
  int t_fut{14};
  std::uint64_t seed{0};
  double dt{0.1};
  double velocity_scale{1.0};
  double curvature_scale{0.05};
  double rest_radius{0.5};
  double oscillation_amplitude{0.08};
};

// Center of mass on a random constant-velocity line plus a bounded sinusoidal
// wobble; joints oscillate about fixed rest offsets with random phase and
// frequency. Deterministic per seed.
std::vector<PoseSequence> synth_pose_dataset(const SynthPoseConfig& config);

}  // namespace dqnet
