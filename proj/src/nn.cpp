#include "dqnet/nn.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

namespace dqnet {

namespace {

// o += a (x) b (Hamilton product).
inline void qmul_acc(const double* a, const double* b, double* o) {
  o[0] += a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
  o[1] += a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2];
  o[2] += a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1];
  o[3] += a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0];
}

// o += a (x) conj(b)
inline void qmul_conj_rhs_acc(const double* a, const double* b, double* o) {
  o[0] += a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
  o[1] += -a[0] * b[1] + a[1] * b[0] - a[2] * b[3] + a[3] * b[2];
  o[2] += -a[0] * b[2] + a[1] * b[3] + a[2] * b[0] - a[3] * b[1];
  o[3] += -a[0] * b[3] - a[1] * b[2] + a[2] * b[1] + a[3] * b[0];
}

// o += conj(a) (x) b
inline void qmul_conj_lhs_acc(const double* a, const double* b, double* o) {
  o[0] += a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
  o[1] += a[0] * b[1] - a[1] * b[0] - a[2] * b[3] + a[3] * b[2];
  o[2] += a[0] * b[2] + a[1] * b[3] - a[2] * b[0] - a[3] * b[1];
  o[3] += a[0] * b[3] - a[1] * b[2] + a[2] * b[1] - a[3] * b[0];
}

inline void algebra_mul_acc(Algebra a, const double* w, const double* x, double* out) {
  switch (a) {
    case Algebra::kReal:
      out[0] += w[0] * x[0];
      return;
    case Algebra::kQuaternion:
      qmul_acc(w, x, out);
      return;
    case Algebra::kDualQuaternion:
      // (w0 + eps we)(x0 + eps xe) = w0 x0 + eps(w0 xe + we x0)
      qmul_acc(w, x, out);
      qmul_acc(w, x + 4, out + 4);
      qmul_acc(w + 4, x, out + 4);
      return;
  }
}

inline double activate(Activation act, double v) {
  switch (act) {
    case Activation::kIdentity: return v;
    case Activation::kSplitRelu: return v > 0.0 ? v : 0.0;
    case Activation::kSplitSigmoid: return 1.0 / (1.0 + std::exp(-v));
    case Activation::kSplitTanh: return std::tanh(v);
  }
  return v;
}

// Derivative as a function of the pre-activation value.
inline double activate_grad(Activation act, double v) {
  switch (act) {
    case Activation::kIdentity: return 1.0;
    case Activation::kSplitRelu: return v > 0.0 ? 1.0 : 0.0;
    case Activation::kSplitSigmoid: {
      const double s = 1.0 / (1.0 + std::exp(-v));
      return s * (1.0 - s);
    }
    case Activation::kSplitTanh: {
      const double t = std::tanh(v);
      return 1.0 - t * t;
    }
  }
  return 1.0;
}

}  // namespace

std::string algebra_name(Algebra a) {
  switch (a) {
    case Algebra::kReal: return "real";
    case Algebra::kQuaternion: return "quat";
    case Algebra::kDualQuaternion: return "dq";
  }
  return "real";
}

Algebra algebra_from_name(const std::string& name) {
  if (name == "real") return Algebra::kReal;
  if (name == "quat" || name == "quaternion") return Algebra::kQuaternion;
  if (name == "dq" || name == "dual_quaternion") return Algebra::kDualQuaternion;
  throw ConfigError("unknown algebra: " + name);
}

std::string activation_name(Activation a) {
  switch (a) {
    case Activation::kIdentity: return "identity";
    case Activation::kSplitRelu: return "split_relu";
    case Activation::kSplitSigmoid: return "split_sigmoid";
    case Activation::kSplitTanh: return "split_tanh";
  }
  return "identity";
}

Activation activation_from_name(const std::string& name) {
  if (name == "identity") return Activation::kIdentity;
  if (name == "split_relu") return Activation::kSplitRelu;
  if (name == "split_sigmoid") return Activation::kSplitSigmoid;
  if (name == "split_tanh") return Activation::kSplitTanh;
  throw ConfigError("unknown activation: " + name);
}

void algebra_mul(Algebra a, const double* w, const double* x, double* out) {
  std::fill(out, out + algebra_dim(a), 0.0);
  algebra_mul_acc(a, w, x, out);
}

std::vector<double> block_matrix_of(const double* w, Algebra a) {
  const int dim = algebra_dim(a);
  std::vector<double> m(static_cast<std::size_t>(dim) * dim, 0.0);
  // Column c is w (x) e_c.
  std::vector<double> basis(dim, 0.0);
  std::vector<double> col(dim, 0.0);
  for (int c = 0; c < dim; ++c) {
    basis[c] = 1.0;
    algebra_mul(a, w, basis.data(), col.data());
    basis[c] = 0.0;
    for (int r = 0; r < dim; ++r) m[static_cast<std::size_t>(r) * dim + c] = col[r];
  }
  return m;
}

void weight_grad_acc(Algebra a, const double* g, const double* x, double* gw) {
  switch (a) {
    case Algebra::kReal:
      gw[0] += g[0] * x[0];
      return;
    case Algebra::kQuaternion:
      qmul_conj_rhs_acc(g, x, gw);
      return;
    case Algebra::kDualQuaternion:
      // d/dw0 <g, w(x)x> = g0 conj(x0) + ge conj(xe); d/dwe = ge conj(x0)
      qmul_conj_rhs_acc(g, x, gw);
      qmul_conj_rhs_acc(g + 4, x + 4, gw);
      qmul_conj_rhs_acc(g + 4, x, gw + 4);
      return;
  }
}

void input_grad_acc(Algebra a, const double* w, const double* g, double* gx) {
  switch (a) {
    case Algebra::kReal:
      gx[0] += w[0] * g[0];
      return;
    case Algebra::kQuaternion:
      qmul_conj_lhs_acc(w, g, gx);
      return;
    case Algebra::kDualQuaternion:
      // d/dx0 = conj(w0) g0 + conj(we) ge; d/dxe = conj(w0) ge
      qmul_conj_lhs_acc(w, g, gx);
      qmul_conj_lhs_acc(w + 4, g + 4, gx);
      qmul_conj_lhs_acc(w, g + 4, gx + 4);
      return;
  }
}

DenseLayer make_dense_layer(Algebra a, int fan_in, int fan_out, Activation act, Rng& rng) {
  DenseLayer layer = zero_dense_layer(a, fan_in, fan_out, act);
  const double k = 1.0 / std::sqrt(static_cast<double>(algebra_dim(a)) * fan_in);
  for (double& w : layer.weights) w = rng.uniform(-k, k);
  return layer;
}

DenseLayer zero_dense_layer(Algebra a, int fan_in, int fan_out, Activation act) {
  DenseLayer layer;
  layer.algebra = a;
  layer.fan_in = fan_in;
  layer.fan_out = fan_out;
  layer.activation = act;
  const int dim = algebra_dim(a);
  layer.weights.assign(static_cast<std::size_t>(fan_out) * fan_in * dim, 0.0);
  layer.biases.assign(static_cast<std::size_t>(fan_out) * dim, 0.0);
  return layer;
}

DenseGrads zero_grads(const DenseLayer& layer) {
  return {std::vector<double>(layer.weights.size(), 0.0),
          std::vector<double>(layer.biases.size(), 0.0)};
}

std::vector<double> dense_forward(const DenseLayer& layer, std::span<const double> x,
                                  DenseCache* cache) {
  const int dim = layer.dim();
  if (static_cast<int>(x.size()) != layer.input_width()) {
    throw DimensionMismatchError("dense_forward: input width " + std::to_string(x.size()) +
                                 " != " + std::to_string(layer.input_width()));
  }
  std::vector<double> preact(layer.biases);
  for (int j = 0; j < layer.fan_out; ++j) {
    double* zj = preact.data() + static_cast<std::size_t>(j) * dim;
    const double* wrow = layer.weights.data() + static_cast<std::size_t>(j) * layer.fan_in * dim;
    for (int i = 0; i < layer.fan_in; ++i) {
      algebra_mul_acc(layer.algebra, wrow + static_cast<std::size_t>(i) * dim,
                      x.data() + static_cast<std::size_t>(i) * dim, zj);
    }
  }
  std::vector<double> y(preact.size());
  for (std::size_t i = 0; i < preact.size(); ++i) y[i] = activate(layer.activation, preact[i]);
  if (cache != nullptr) {
    cache->input.assign(x.begin(), x.end());
    cache->preact = std::move(preact);
  }
  return y;
}

std::vector<double> dense_backward(const DenseLayer& layer, const DenseCache& cache,
                                   std::span<const double> dy, DenseGrads& grads) {
  const int dim = layer.dim();
  if (static_cast<int>(cache.input.size()) != layer.input_width() ||
      static_cast<int>(cache.preact.size()) != layer.output_width()) {
    throw StaleCacheError("dense_backward: cache does not match layer shapes");
  }
  if (static_cast<int>(dy.size()) != layer.output_width()) {
    throw DimensionMismatchError("dense_backward: upstream gradient width mismatch");
  }
  if (grads.weights.size() != layer.weights.size() || grads.biases.size() != layer.biases.size()) {
    throw ShapeMismatchError("dense_backward: gradient buffers do not match layer");
  }

  // dL/dz through the split activation.
  std::vector<double> dz(dy.size());
  for (std::size_t i = 0; i < dz.size(); ++i) {
    dz[i] = dy[i] * activate_grad(layer.activation, cache.preact[i]);
  }

  std::vector<double> dx(cache.input.size(), 0.0);
  for (int j = 0; j < layer.fan_out; ++j) {
    const double* gj = dz.data() + static_cast<std::size_t>(j) * dim;
    double* bj = grads.biases.data() + static_cast<std::size_t>(j) * dim;
    for (int c = 0; c < dim; ++c) bj[c] += gj[c];
    const std::size_t row = static_cast<std::size_t>(j) * layer.fan_in * dim;
    for (int i = 0; i < layer.fan_in; ++i) {
      const std::size_t at = row + static_cast<std::size_t>(i) * dim;
      weight_grad_acc(layer.algebra, gj, cache.input.data() + static_cast<std::size_t>(i) * dim,
                      grads.weights.data() + at);
      input_grad_acc(layer.algebra, layer.weights.data() + at, gj,
                     dx.data() + static_cast<std::size_t>(i) * dim);
    }
  }
  return dx;
}

Mlp make_mlp(Algebra a, const std::vector<int>& widths, Activation hidden, Activation output,
             Rng& rng) {
  if (widths.size() < 2) throw DimensionMismatchError("make_mlp: need at least two widths");
  Mlp m;
  for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
    const Activation act = (l + 2 == widths.size()) ? output : hidden;
    m.layers.push_back(make_dense_layer(a, widths[l], widths[l + 1], act, rng));
  }
  return m;
}

MlpGrads zero_grads(const Mlp& m) {
  MlpGrads g;
  g.layers.reserve(m.layers.size());
  for (const auto& layer : m.layers) g.layers.push_back(zero_grads(layer));
  return g;
}

std::vector<double> mlp_forward(const Mlp& m, std::span<const double> x,
                                std::vector<DenseCache>* caches) {
  if (caches != nullptr) caches->resize(m.layers.size());
  std::vector<double> cur(x.begin(), x.end());
  for (std::size_t l = 0; l < m.layers.size(); ++l) {
    cur = dense_forward(m.layers[l], cur, caches != nullptr ? &(*caches)[l] : nullptr);
  }
  return cur;
}

std::vector<double> mlp_backward(const Mlp& m, const std::vector<DenseCache>& caches,
                                 std::span<const double> dLdy, MlpGrads& grads) {
  if (caches.size() != m.layers.size() || grads.layers.size() != m.layers.size()) {
    throw StaleCacheError("mlp_backward: cache/grad layer count mismatch");
  }
  std::vector<double> d(dLdy.begin(), dLdy.end());
  for (std::size_t l = m.layers.size(); l-- > 0;) {
    d = dense_backward(m.layers[l], caches[l], d, grads.layers[l]);
  }
  return d;
}

std::int64_t param_count(const Mlp& m) {
  std::int64_t n = 0;
  for (const auto& layer : m.layers) {
    n += static_cast<std::int64_t>(layer.dim()) *
         (static_cast<std::int64_t>(layer.fan_in) * layer.fan_out + layer.fan_out);
  }
  return n;
}

std::int64_t weight_grid_count(const Mlp& m) {
  std::int64_t n = 0;
  for (const auto& layer : m.layers) n += static_cast<std::int64_t>(layer.weights.size());
  return n;
}

std::vector<double> flatten_params(const Mlp& m) {
  std::vector<double> flat;
  for (const auto& layer : m.layers) {
    flat.insert(flat.end(), layer.weights.begin(), layer.weights.end());
    flat.insert(flat.end(), layer.biases.begin(), layer.biases.end());
  }
  return flat;
}

void set_params(Mlp& m, std::span<const double> flat) {
  std::size_t at = 0;
  for (auto& layer : m.layers) {
    if (at + layer.weights.size() + layer.biases.size() > flat.size()) {
      throw ShapeMismatchError("set_params: flat vector too short");
    }
    std::copy_n(flat.data() + at, layer.weights.size(), layer.weights.data());
    at += layer.weights.size();
    std::copy_n(flat.data() + at, layer.biases.size(), layer.biases.data());
    at += layer.biases.size();
  }
  if (at != flat.size()) throw ShapeMismatchError("set_params: flat vector too long");
}

std::vector<double> flatten_grads(const MlpGrads& g) {
  std::vector<double> flat;
  for (const auto& layer : g.layers) {
    flat.insert(flat.end(), layer.weights.begin(), layer.weights.end());
    flat.insert(flat.end(), layer.biases.begin(), layer.biases.end());
  }
  return flat;
}

void optimizer_step(OptimizerState& state, std::vector<double>& params,
                    const std::vector<double>& grads, const TrainConfig& config) {
  if (params.size() != grads.size()) {
    throw ShapeMismatchError("optimizer_step: params/grads size mismatch");
  }
  if (config.optimizer == OptimizerKind::kSgd) {
    for (std::size_t i = 0; i < params.size(); ++i) {
      params[i] -= config.learning_rate * grads[i];
    }
    return;
  }
  if (state.m.size() != params.size()) {
    state.m.assign(params.size(), 0.0);
    state.v.assign(params.size(), 0.0);
    state.step = 0;
  }
  state.step += 1;
  const double b1 = config.adam_beta1;
  const double b2 = config.adam_beta2;
  const double c1 = 1.0 - std::pow(b1, static_cast<double>(state.step));
  const double c2 = 1.0 - std::pow(b2, static_cast<double>(state.step));
  for (std::size_t i = 0; i < params.size(); ++i) {
    state.m[i] = b1 * state.m[i] + (1.0 - b1) * grads[i];
    state.v[i] = b2 * state.v[i] + (1.0 - b2) * grads[i] * grads[i];
    const double mhat = state.m[i] / c1;
    const double vhat = state.v[i] / c2;
    params[i] -= config.learning_rate * mhat / (std::sqrt(vhat) + config.adam_eps);
  }
}

namespace {

void check_dataset(const Mlp& m, const WindowDataset& data) {
  if (data.size() == 0) throw EmptyDatasetError("train_mlp: dataset is empty");
  if (data.algebra != m.algebra()) {
    throw AlgebraMismatchError("train_mlp: dataset encoded for " + algebra_name(data.algebra) +
                               " but model is " + algebra_name(m.algebra()));
  }
  if (data.input_units != m.input_units() || data.target_units != m.output_units()) {
    throw DimensionMismatchError("train_mlp: dataset widths do not match model");
  }
}

}  // namespace

double mlp_dataset_mse(const Mlp& m, const WindowDataset& data) {
  check_dataset(m, data);
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t s = 0; s < data.size(); ++s) {
    const std::vector<double> y = mlp_forward(m, data.inputs[s]);
    for (std::size_t c = 0; c < y.size(); ++c) {
      const double r = y[c] - data.targets[s][c];
      sum += r * r;
    }
    count += y.size();
  }
  return sum / static_cast<double>(count);
}

std::vector<double> train_mlp(Mlp& m, const WindowDataset& data, const TrainConfig& config) {
  check_dataset(m, data);
  if (config.epochs < 1) throw ConfigError("train_mlp: epochs must be >= 1");
  if (config.learning_rate < 0.0) throw ConfigError("train_mlp: negative learning rate");

  const std::size_t n = data.size();
  const double denom = static_cast<double>(n) * m.layers.back().output_width();

  std::vector<double> params = flatten_params(m);
  OptimizerState opt;
  std::vector<double> history;
  history.reserve(static_cast<std::size_t>(config.epochs));

  std::vector<DenseCache> caches;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    MlpGrads grads = zero_grads(m);
    double loss = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
      const std::vector<double> y = mlp_forward(m, data.inputs[s], &caches);
      std::vector<double> dLdy(y.size());
      for (std::size_t c = 0; c < y.size(); ++c) {
        const double r = y[c] - data.targets[s][c];
        loss += r * r;
        dLdy[c] = 2.0 * r / denom;
      }
      mlp_backward(m, caches, dLdy, grads);
    }
    loss /= denom;
    if (!std::isfinite(loss)) {
      throw NonFiniteLossError("train_mlp: loss diverged at epoch " + std::to_string(epoch));
    }
    history.push_back(loss);
    optimizer_step(opt, params, flatten_grads(grads), config);
    set_params(m, params);
  }
  return history;
}

}  // namespace dqnet
