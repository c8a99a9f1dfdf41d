#pragma once

// Feed-forward engine generic over three algebras (real, quaternion, dual
// quaternion). Layers hold algebra-valued weight grids acting by left
// multiplication; activations apply componentwise to the real coordinates
// ("split" activations). Backpropagation folds the gradient of the
// equivalent real block-structured layer back onto the algebra parameters,
// so analytic gradients equal the constrained-real ones exactly.
//
// Flattening convention everywhere: unit-major, component-fastest.
// Quaternion components are (w, x, y, z); dual quaternions are primal
// quaternion then dual quaternion.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dqnet/errors.hpp"
#include "dqnet/rng.hpp"

namespace dqnet {

enum class Algebra { kReal, kQuaternion, kDualQuaternion };

constexpr int algebra_dim(Algebra a) {
  switch (a) {
    case Algebra::kReal: return 1;
    case Algebra::kQuaternion: return 4;
    case Algebra::kDualQuaternion: return 8;
  }
  return 1;
}

std::string algebra_name(Algebra a);
Algebra algebra_from_name(const std::string& name);  // ConfigError on unknown names

enum class Activation { kIdentity, kSplitRelu, kSplitSigmoid, kSplitTanh };

std::string activation_name(Activation a);
Activation activation_from_name(const std::string& name);

// --- algebra kernels on flattened components ---

// out = w (x) x, both `dim` reals long.
void algebra_mul(Algebra a, const double* w, const double* x, double* out);

// Real dim x dim matrix (row-major) of left multiplication by w:
// flatten(w (x) x) = M * flatten(x) for all x. For the dual quaternion the
// matrix is 2x2 block lower triangular with equal diagonal blocks.
std::vector<double> block_matrix_of(const double* w, Algebra a);

// Gradient kernels for z = w (x) x given g = dL/dz: accumulate dL/dw into
// `gw` and dL/dx into `gx`.
void weight_grad_acc(Algebra a, const double* g, const double* x, double* gw);
void input_grad_acc(Algebra a, const double* w, const double* g, double* gx);

// --- layers ---

struct DenseLayer {
  Algebra algebra{Algebra::kReal};
  int fan_in{0};
  int fan_out{0};
  Activation activation{Activation::kIdentity};
  std::vector<double> weights;  // fan_out*fan_in*dim, index ((j*fan_in)+i)*dim + c
  std::vector<double> biases;   // fan_out*dim

  int dim() const { return algebra_dim(algebra); }
  int input_width() const { return fan_in * dim(); }
  int output_width() const { return fan_out * dim(); }
};

// Weights uniform in [-k, k] with k = 1/sqrt(dim*fan_in); biases zero.
DenseLayer make_dense_layer(Algebra a, int fan_in, int fan_out, Activation act, Rng& rng);
DenseLayer zero_dense_layer(Algebra a, int fan_in, int fan_out, Activation act);

struct DenseCache {
  std::vector<double> input;
  std::vector<double> preact;
};

struct DenseGrads {
  std::vector<double> weights;
  std::vector<double> biases;
};

DenseGrads zero_grads(const DenseLayer& layer);

// y = act(sum_i w_ji (x) x_i + b_j). Throws DimensionMismatchError.
std::vector<double> dense_forward(const DenseLayer& layer, std::span<const double> x,
                                  DenseCache* cache = nullptr);

// Given dL/dy, accumulates parameter gradients and returns dL/dx.
// Throws StaleCacheError when the cache does not match the layer.
std::vector<double> dense_backward(const DenseLayer& layer, const DenseCache& cache,
                                   std::span<const double> dy, DenseGrads& grads);

// --- multi-layer perceptron ---

struct Mlp {
  std::vector<DenseLayer> layers;

  Algebra algebra() const { return layers.empty() ? Algebra::kReal : layers.front().algebra; }
  int input_units() const { return layers.empty() ? 0 : layers.front().fan_in; }
  int output_units() const { return layers.empty() ? 0 : layers.back().fan_out; }
};

// widths = {in, hidden..., out} in algebra units.
Mlp make_mlp(Algebra a, const std::vector<int>& widths, Activation hidden, Activation output,
             Rng& rng);

struct MlpGrads {
  std::vector<DenseGrads> layers;
};

MlpGrads zero_grads(const Mlp& m);

std::vector<double> mlp_forward(const Mlp& m, std::span<const double> x,
                                std::vector<DenseCache>* caches = nullptr);

// Backward through all layers; returns dL/d(input).
std::vector<double> mlp_backward(const Mlp& m, const std::vector<DenseCache>& caches,
                                 std::span<const double> dLdy, MlpGrads& grads);

// Exact real parameter count: sum of dim*(fan_in*fan_out + fan_out).
std::int64_t param_count(const Mlp& m);
// Weight-grid entries only (biases excluded); used by the reduction-ratio checks.
std::int64_t weight_grid_count(const Mlp& m);

std::vector<double> flatten_params(const Mlp& m);
void set_params(Mlp& m, std::span<const double> flat);
std::vector<double> flatten_grads(const MlpGrads& g);

// --- optimizers & training ---

enum class OptimizerKind { kSgd, kAdam };

struct TrainConfig {
  int epochs{1};
  double learning_rate{1e-3};
  OptimizerKind optimizer{OptimizerKind::kSgd};
  double adam_beta1{0.9};
  double adam_beta2{0.999};
  double adam_eps{1e-8};
  std::uint64_t seed{0};
};

struct OptimizerState {
  std::int64_t step{0};
  std::vector<double> m;  // Adam first moment
  std::vector<double> v;  // Adam second moment
};

// In-place parameter update. SGD: p -= lr*g. Adam: bias-corrected moments.
// Throws ShapeMismatchError when params/grads disagree.
void optimizer_step(OptimizerState& state, std::vector<double>& params,
                    const std::vector<double>& grads, const TrainConfig& config);

// Supervised pairs of flattened algebra vectors (the 2-step sliding-window
// datasets of the Lorenz task, but nothing here is Lorenz-specific).
struct WindowDataset {
  Algebra algebra{Algebra::kReal};
  int input_units{0};
  int target_units{0};
  std::vector<std::vector<double>> inputs;
  std::vector<std::vector<double>> targets;

  std::size_t size() const { return inputs.size(); }
};

// Full-batch training. Loss is the mean over samples and real components of
// the squared residual; the returned history holds one pre-update loss per
// epoch. Deterministic (no randomness is drawn here).
// Throws EmptyDatasetError, AlgebraMismatchError, NonFiniteLossError.
std::vector<double> train_mlp(Mlp& m, const WindowDataset& data, const TrainConfig& config);

// Mean over samples and components of squared residual on the given data.
double mlp_dataset_mse(const Mlp& m, const WindowDataset& data);

}  // namespace dqnet
