#include "dqnet/seqmodels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <type_traits>

namespace dqnet {

namespace {

constexpr double kLogvarClamp = 10.0;

double clamp_logvar(double v) { return std::clamp(v, -kLogvarClamp, kLogvarClamp); }

void add_into(std::vector<double>& dst, const std::vector<double>& src) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
}

}  // namespace

DqPoseVector encode_pose(const PoseFrame& f) {
  DqPoseVector v;
  for (int j = 0; j < kPoseJoints; ++j) {
    const Point3 offset = f.joints[static_cast<std::size_t>(j)] - f.center;
    v.entries[static_cast<std::size_t>(j)] = {Quaternion::pure(f.center),
                                              Quaternion::pure(offset)};
  }
  return v;
}

PoseFrame decode_pose(const DqPoseVector& v) {
  PoseFrame f;
  Point3 center{};
  for (const DualQuaternion& e : v.entries) center = center + e.primal.vec();
  f.center = (1.0 / kPoseJoints) * center;
  for (int j = 0; j < kPoseJoints; ++j) {
    f.joints[static_cast<std::size_t>(j)] = f.center + v.entries[static_cast<std::size_t>(j)].dual.vec();
  }
  return f;
}

std::vector<double> encode_frame_flat(const PoseFrame& f) {
  const DqPoseVector v = encode_pose(f);
  std::vector<double> flat;
  flat.reserve(kPoseJoints * 8);
  for (const DualQuaternion& e : v.entries) {
    flat.insert(flat.end(), {e.primal.w, e.primal.x, e.primal.y, e.primal.z, e.dual.w, e.dual.x,
                             e.dual.y, e.dual.z});
  }
  return flat;
}

PoseFrame decode_frame_flat(const std::vector<double>& flat) {
  if (flat.size() != kPoseJoints * 8) {
    throw ShapeMismatchError("decode_frame_flat: expected " + std::to_string(kPoseJoints * 8) +
                             " reals");
  }
  DqPoseVector v;
  for (int j = 0; j < kPoseJoints; ++j) {
    const double* e = flat.data() + static_cast<std::size_t>(j) * 8;
    v.entries[static_cast<std::size_t>(j)] = {Quaternion{e[0], e[1], e[2], e[3]},
                                              Quaternion{e[4], e[5], e[6], e[7]}};
  }
  return decode_pose(v);
}

PoseSeq future_joints(const PoseSequence& seq) {
  PoseSeq out;
  out.reserve(static_cast<std::size_t>(seq.t_fut));
  for (int t = seq.t_obs; t < seq.t_obs + seq.t_fut; ++t) {
    const auto& joints = seq.frames[static_cast<std::size_t>(t)].joints;
    out.emplace_back(joints.begin(), joints.end());
  }
  return out;
}

// --- LSTM cell ---

DqLstmCell make_lstm_cell(Algebra a, int input_size, int hidden_size, Rng& rng) {
  DqLstmCell cell;
  cell.algebra = a;
  cell.input_size = input_size;
  cell.hidden_size = hidden_size;
  for (int k = 0; k < 4; ++k) {
    cell.w[static_cast<std::size_t>(k)] =
        make_dense_layer(a, input_size, hidden_size, Activation::kIdentity, rng);
    cell.u[static_cast<std::size_t>(k)] =
        make_dense_layer(a, hidden_size, hidden_size, Activation::kIdentity, rng);
  }
  return cell;
}

LstmState zero_state(const DqLstmCell& cell) {
  return {std::vector<double>(static_cast<std::size_t>(cell.hidden_width()), 0.0),
          std::vector<double>(static_cast<std::size_t>(cell.hidden_width()), 0.0)};
}

LstmState dqlstm_step(const DqLstmCell& cell, std::span<const double> x, const LstmState& state,
                      LstmStepCache* cache) {
  if (static_cast<int>(x.size()) != cell.input_width() ||
      static_cast<int>(state.h.size()) != cell.hidden_width()) {
    throw DimensionMismatchError("dqlstm_step: input/state width mismatch");
  }
  const std::size_t width = state.h.size();
  std::array<std::vector<double>, 4> gates;
  for (int k = 0; k < 4; ++k) {
    const auto ki = static_cast<std::size_t>(k);
    std::vector<double> z =
        dense_forward(cell.w[ki], x, cache != nullptr ? &cache->wx[ki] : nullptr);
    const std::vector<double> zu =
        dense_forward(cell.u[ki], state.h, cache != nullptr ? &cache->uh[ki] : nullptr);
    add_into(z, zu);
    gates[ki].resize(width);
    for (std::size_t i = 0; i < width; ++i) {
      gates[ki][i] = (k == 3) ? std::tanh(z[i]) : 1.0 / (1.0 + std::exp(-z[i]));
    }
  }
  LstmState next;
  next.c.resize(width);
  next.h.resize(width);
  std::vector<double> tanh_c(width);
  for (std::size_t i = 0; i < width; ++i) {
    next.c[i] = gates[1][i] * state.c[i] + gates[0][i] * gates[3][i];
    tanh_c[i] = std::tanh(next.c[i]);
    next.h[i] = gates[2][i] * tanh_c[i];
  }
  if (cache != nullptr) {
    cache->gates = gates;
    cache->c_prev = state.c;
    cache->tanh_c_new = std::move(tanh_c);
  }
  return next;
}

LstmCellGrads zero_grads(const DqLstmCell& cell) {
  LstmCellGrads g;
  for (int k = 0; k < 4; ++k) {
    const auto ki = static_cast<std::size_t>(k);
    g.w[ki] = zero_grads(cell.w[ki]);
    g.u[ki] = zero_grads(cell.u[ki]);
  }
  return g;
}

void dqlstm_backward_step(const DqLstmCell& cell, const LstmStepCache& cache,
                          std::vector<double>& dh, std::vector<double>& dc,
                          std::vector<double>& dx, LstmCellGrads& grads) {
  const std::size_t width = dh.size();
  const auto& i_g = cache.gates[0];
  const auto& f_g = cache.gates[1];
  const auto& o_g = cache.gates[2];
  const auto& g_g = cache.gates[3];

  // c' = f*c + i*g, h' = o*tanh(c')
  std::vector<double> dz(width);
  std::vector<double> dc_total(width);
  for (std::size_t n = 0; n < width; ++n) {
    const double th = cache.tanh_c_new[n];
    dc_total[n] = dc[n] + dh[n] * o_g[n] * (1.0 - th * th);
  }

  dx.assign(static_cast<std::size_t>(cell.input_width()), 0.0);
  std::vector<double> dh_prev(width, 0.0);

  for (int k = 0; k < 4; ++k) {
    const auto ki = static_cast<std::size_t>(k);
    for (std::size_t n = 0; n < width; ++n) {
      double dgate = 0.0;
      switch (k) {
        case 0: dgate = dc_total[n] * g_g[n]; break;          // input gate
        case 1: dgate = dc_total[n] * cache.c_prev[n]; break; // forget gate
        case 2: dgate = dh[n] * cache.tanh_c_new[n]; break;   // output gate
        case 3: dgate = dc_total[n] * i_g[n]; break;          // candidate
      }
      const double gv = cache.gates[ki][n];
      dz[n] = dgate * (k == 3 ? 1.0 - gv * gv : gv * (1.0 - gv));
    }
    const std::vector<double> dxk = dense_backward(cell.w[ki], cache.wx[ki], dz, grads.w[ki]);
    add_into(dx, dxk);
    const std::vector<double> dhk = dense_backward(cell.u[ki], cache.uh[ki], dz, grads.u[ki]);
    add_into(dh_prev, dhk);
  }

  for (std::size_t n = 0; n < width; ++n) dc[n] = dc_total[n] * f_g[n];
  dh = std::move(dh_prev);
}

// --- VAE ---

DqVae make_dq_vae(Algebra a, int input_units, int hidden_units, int latent_units,
                  double kl_weight, Rng& rng) {
  DqVae m;
  m.algebra = a;
  m.input_units = input_units;
  m.hidden_units = hidden_units;
  m.latent_units = latent_units;
  m.kl_weight = kl_weight;
  m.encoder = make_lstm_cell(a, input_units, hidden_units, rng);
  m.mean_layer = make_dense_layer(a, hidden_units, latent_units, Activation::kIdentity, rng);
  m.logvar_layer = make_dense_layer(a, hidden_units, latent_units, Activation::kIdentity, rng);
  m.dec1 = make_lstm_cell(a, latent_units, hidden_units, rng);
  m.dec2 = make_lstm_cell(a, hidden_units, hidden_units, rng);
  m.output_layer = make_dense_layer(a, hidden_units, input_units, Activation::kIdentity, rng);
  return m;
}

DqVae make_corpof_vae(Algebra a, int dq_hidden, int dq_latent, double kl_weight, Rng& rng) {
  const int scale = 8 / algebra_dim(a);
  return make_dq_vae(a, kPoseJoints * scale, dq_hidden * scale, dq_latent * scale, kl_weight, rng);
}

namespace {

struct VaeForwardCache {
  std::vector<LstmStepCache> enc_steps;
  DenseCache mean_cache;
  DenseCache logvar_cache;
  std::vector<double> eta;            // standard normal draws (Sample mode)
  std::vector<double> logvar_clamped;
  std::vector<double> z;
  std::vector<LstmStepCache> dec1_steps;
  std::vector<LstmStepCache> dec2_steps;
  std::vector<DenseCache> out_caches;
};

VaeOutput vae_forward_impl(const DqVae& model, const std::vector<std::vector<double>>& observed,
                           int t_fut, const LatentMode& mode, VaeForwardCache* cache) {
  if (observed.empty()) throw EmptySequenceError("vae_forward: no observed frames");
  if (t_fut < 1) throw EmptySequenceError("vae_forward: t_fut must be >= 1");

  if (cache != nullptr) cache->enc_steps.resize(observed.size());
  LstmState enc = zero_state(model.encoder);
  for (std::size_t t = 0; t < observed.size(); ++t) {
    enc = dqlstm_step(model.encoder, observed[t], enc,
                      cache != nullptr ? &cache->enc_steps[t] : nullptr);
  }

  VaeOutput out;
  out.mean = dense_forward(model.mean_layer, enc.h, cache != nullptr ? &cache->mean_cache : nullptr);
  out.logvar =
      dense_forward(model.logvar_layer, enc.h, cache != nullptr ? &cache->logvar_cache : nullptr);

  const std::size_t lw = out.mean.size();
  std::vector<double> z = out.mean;
  std::vector<double> eta(lw, 0.0);
  std::vector<double> lv_c(lw, 0.0);
  for (std::size_t i = 0; i < lw; ++i) lv_c[i] = clamp_logvar(out.logvar[i]);
  if (mode.sample) {
    Rng rng(mode.seed);
    for (std::size_t i = 0; i < lw; ++i) {
      eta[i] = rng.normal();
      z[i] += std::exp(0.5 * lv_c[i]) * eta[i];
    }
  }

  if (cache != nullptr) {
    cache->eta = eta;
    cache->logvar_clamped = lv_c;
    cache->z = z;
    cache->dec1_steps.resize(static_cast<std::size_t>(t_fut));
    cache->dec2_steps.resize(static_cast<std::size_t>(t_fut));
    cache->out_caches.resize(static_cast<std::size_t>(t_fut));
  }

  LstmState d1 = zero_state(model.dec1);
  LstmState d2 = zero_state(model.dec2);
  out.predicted.reserve(static_cast<std::size_t>(t_fut));
  for (int t = 0; t < t_fut; ++t) {
    const auto ti = static_cast<std::size_t>(t);
    d1 = dqlstm_step(model.dec1, z, d1, cache != nullptr ? &cache->dec1_steps[ti] : nullptr);
    d2 = dqlstm_step(model.dec2, d1.h, d2, cache != nullptr ? &cache->dec2_steps[ti] : nullptr);
    out.predicted.push_back(
        dense_forward(model.output_layer, d2.h, cache != nullptr ? &cache->out_caches[ti] : nullptr));
  }
  return out;
}

}  // namespace

VaeOutput vae_forward(const DqVae& model, const std::vector<std::vector<double>>& observed,
                      int t_fut, const LatentMode& mode) {
  return vae_forward_impl(model, observed, t_fut, mode, nullptr);
}

VaeLoss vae_loss(const std::vector<std::vector<double>>& pred,
                 const std::vector<std::vector<double>>& truth,
                 const std::vector<double>& mean, const std::vector<double>& logvar,
                 double kl_weight) {
  if (pred.size() != truth.size()) throw ShapeMismatchError("vae_loss: frame count mismatch");
  if (mean.size() != logvar.size()) throw ShapeMismatchError("vae_loss: latent width mismatch");
  VaeLoss loss;
  for (std::size_t t = 0; t < pred.size(); ++t) {
    if (pred[t].size() != truth[t].size()) {
      throw ShapeMismatchError("vae_loss: frame width mismatch at " + std::to_string(t));
    }
    for (std::size_t i = 0; i < pred[t].size(); ++i) {
      const double r = pred[t][i] - truth[t][i];
      loss.recon += r * r;
    }
  }
  for (std::size_t i = 0; i < mean.size(); ++i) {
    const double lv = clamp_logvar(logvar[i]);
    loss.kl += 0.5 * (std::exp(lv) + mean[i] * mean[i] - 1.0 - lv);
  }
  loss.total = loss.recon + kl_weight * loss.kl;
  return loss;
}

DqVaeGrads zero_grads(const DqVae& model) {
  return {zero_grads(model.encoder),   zero_grads(model.mean_layer),
          zero_grads(model.logvar_layer), zero_grads(model.dec1),
          zero_grads(model.dec2),      zero_grads(model.output_layer)};
}

VaeLoss vae_loss_and_gradients(const DqVae& model, const std::vector<std::vector<double>>& observed,
                               const std::vector<std::vector<double>>& future,
                               const LatentMode& mode, double loss_scale, DqVaeGrads& grads) {
  VaeForwardCache cache;
  const int t_fut = static_cast<int>(future.size());
  const VaeOutput out = vae_forward_impl(model, observed, t_fut, mode, &cache);
  const VaeLoss loss = vae_loss(out.predicted, future, out.mean, out.logvar, model.kl_weight);

  const std::size_t hw = static_cast<std::size_t>(model.encoder.hidden_width());
  const std::size_t lw = out.mean.size();

  // Decoder BPTT, newest step first.
  std::vector<double> dh1(hw, 0.0), dc1(hw, 0.0), dh2(hw, 0.0), dc2(hw, 0.0);
  std::vector<double> dz(lw, 0.0);
  std::vector<double> dx_buf;
  for (int t = t_fut - 1; t >= 0; --t) {
    const auto ti = static_cast<std::size_t>(t);
    std::vector<double> dy(out.predicted[ti].size());
    for (std::size_t i = 0; i < dy.size(); ++i) {
      dy[i] = 2.0 * (out.predicted[ti][i] - future[ti][i]) * loss_scale;
    }
    const std::vector<double> dh2_out =
        dense_backward(model.output_layer, cache.out_caches[ti], dy, grads.output_layer);
    add_into(dh2, dh2_out);
    dqlstm_backward_step(model.dec2, cache.dec2_steps[ti], dh2, dc2, dx_buf, grads.dec2);
    add_into(dh1, dx_buf);  // dec2 input is dec1's hidden state
    dqlstm_backward_step(model.dec1, cache.dec1_steps[ti], dh1, dc1, dx_buf, grads.dec1);
    add_into(dz, dx_buf);  // dec1 input is z at every step
  }

  // Through the reparameterization and the KL term.
  std::vector<double> dmean(lw, 0.0), dlogvar(lw, 0.0);
  for (std::size_t i = 0; i < lw; ++i) {
    dmean[i] = dz[i] + model.kl_weight * out.mean[i] * loss_scale;
    double dlv = 0.0;
    if (std::abs(out.logvar[i]) < kLogvarClamp) {
      if (mode.sample) {
        dlv += dz[i] * cache.eta[i] * 0.5 * std::exp(0.5 * cache.logvar_clamped[i]);
      }
      dlv += model.kl_weight * 0.5 * (std::exp(cache.logvar_clamped[i]) - 1.0) * loss_scale;
    }
    dlogvar[i] = dlv;
  }

  std::vector<double> dh_enc =
      dense_backward(model.mean_layer, cache.mean_cache, dmean, grads.mean_layer);
  const std::vector<double> dh_lv =
      dense_backward(model.logvar_layer, cache.logvar_cache, dlogvar, grads.logvar_layer);
  add_into(dh_enc, dh_lv);

  // Encoder BPTT.
  std::vector<double> dc_enc(hw, 0.0);
  for (std::size_t t = observed.size(); t-- > 0;) {
    dqlstm_backward_step(model.encoder, cache.enc_steps[t], dh_enc, dc_enc, dx_buf, grads.encoder);
  }
  return loss;
}

// --- parameter plumbing ---

namespace {

template <typename Vae>
auto vae_blocks(Vae& m) {
  using Vec = std::conditional_t<std::is_const_v<Vae>, const std::vector<double>,
                                 std::vector<double>>;
  std::vector<Vec*> blocks;
  auto add_layer = [&blocks](auto& layer) {
    blocks.push_back(&layer.weights);
    blocks.push_back(&layer.biases);
  };
  auto add_cell = [&](auto& cell) {
    for (int k = 0; k < 4; ++k) {
      add_layer(cell.w[static_cast<std::size_t>(k)]);
      add_layer(cell.u[static_cast<std::size_t>(k)]);
    }
  };
  add_cell(m.encoder);
  add_layer(m.mean_layer);
  add_layer(m.logvar_layer);
  add_cell(m.dec1);
  add_cell(m.dec2);
  add_layer(m.output_layer);
  return blocks;
}

template <typename Grads>
auto grad_blocks(Grads& g) {
  using Vec = std::conditional_t<std::is_const_v<Grads>, const std::vector<double>,
                                 std::vector<double>>;
  std::vector<Vec*> blocks;
  auto add = [&blocks](auto& dense_grads) {
    blocks.push_back(&dense_grads.weights);
    blocks.push_back(&dense_grads.biases);
  };
  auto add_cell = [&](auto& cell) {
    for (int k = 0; k < 4; ++k) {
      add(cell.w[static_cast<std::size_t>(k)]);
      add(cell.u[static_cast<std::size_t>(k)]);
    }
  };
  add_cell(g.encoder);
  add(g.mean_layer);
  add(g.logvar_layer);
  add_cell(g.dec1);
  add_cell(g.dec2);
  add(g.output_layer);
  return blocks;
}

}  // namespace

std::vector<double> flatten_params(const DqVae& model) {
  std::vector<double> flat;
  for (const auto* block : vae_blocks(model)) flat.insert(flat.end(), block->begin(), block->end());
  return flat;
}

void set_params(DqVae& model, std::span<const double> flat) {
  std::size_t at = 0;
  for (auto* block : vae_blocks(model)) {
    if (at + block->size() > flat.size()) throw ShapeMismatchError("set_params: flat too short");
    std::copy_n(flat.data() + at, block->size(), block->data());
    at += block->size();
  }
  if (at != flat.size()) throw ShapeMismatchError("set_params: flat too long");
}

std::vector<double> flatten_grads(const DqVaeGrads& grads) {
  std::vector<double> flat;
  for (const auto* block : grad_blocks(grads)) flat.insert(flat.end(), block->begin(), block->end());
  return flat;
}

std::int64_t param_count(const DqVae& model) {
  std::int64_t n = 0;
  for (const auto* block : vae_blocks(model)) n += static_cast<std::int64_t>(block->size());
  return n;
}

std::int64_t weight_grid_count(const DqVae& model) {
  std::int64_t n = 0;
  const auto blocks = vae_blocks(model);
  // weights/biases alternate in the block list
  for (std::size_t i = 0; i < blocks.size(); i += 2) n += static_cast<std::int64_t>(blocks[i]->size());
  return n;
}

// --- training ---

std::vector<VaeEpochStats> train_vae(DqVae& model, const std::vector<PoseSequence>& dataset,
                                     const VaeTrainConfig& config) {
  if (dataset.empty()) throw EmptyDatasetError("train_vae: dataset is empty");
  for (const auto& seq : dataset) {
    if (seq.t_obs < 1 || seq.t_fut < 1 ||
        seq.frames.size() != static_cast<std::size_t>(seq.t_obs + seq.t_fut)) {
      throw ShapeMismatchError("train_vae: sequence frame counts do not match t_obs/t_fut");
    }
  }

  // Pre-encode every sequence once.
  std::vector<std::vector<std::vector<double>>> observed(dataset.size());
  std::vector<std::vector<std::vector<double>>> future(dataset.size());
  for (std::size_t s = 0; s < dataset.size(); ++s) {
    const auto& seq = dataset[s];
    for (int t = 0; t < seq.t_obs; ++t) {
      observed[s].push_back(encode_frame_flat(seq.frames[static_cast<std::size_t>(t)]));
    }
    for (int t = seq.t_obs; t < seq.t_obs + seq.t_fut; ++t) {
      future[s].push_back(encode_frame_flat(seq.frames[static_cast<std::size_t>(t)]));
    }
  }

  const double inv_n = 1.0 / static_cast<double>(dataset.size());
  std::vector<double> params = flatten_params(model);
  OptimizerState opt;
  TrainConfig step_config = config.base;

  Rng sampler(config.base.seed);
  double best = std::numeric_limits<double>::infinity();
  int stall = 0;

  std::vector<VaeEpochStats> history;
  history.reserve(static_cast<std::size_t>(config.base.epochs));
  for (int epoch = 0; epoch < config.base.epochs; ++epoch) {
    DqVaeGrads grads = zero_grads(model);
    VaeEpochStats stats;
    stats.lr = step_config.learning_rate;
    for (std::size_t s = 0; s < dataset.size(); ++s) {
      const LatentMode mode = LatentMode::sampled(sampler.next_seed());
      const VaeLoss loss =
          vae_loss_and_gradients(model, observed[s], future[s], mode, inv_n, grads);
      stats.total += loss.total * inv_n;
      stats.recon += loss.recon * inv_n;
      stats.kl += loss.kl * inv_n;
    }
    if (!std::isfinite(stats.total)) {
      throw NonFiniteLossError("train_vae: loss diverged at epoch " + std::to_string(epoch));
    }
    history.push_back(stats);

    optimizer_step(opt, params, flatten_grads(grads), step_config);
    set_params(model, params);

    if (stats.total < best - config.plateau_delta) {
      best = stats.total;
      stall = 0;
    } else if (++stall >= config.plateau_patience) {
      step_config.learning_rate = std::max(0.5 * step_config.learning_rate, config.lr_floor);
      stall = 0;
    }
  }
  return history;
}

PoseSeq predict_future_joints(const DqVae& model, const PoseSequence& seq) {
  std::vector<std::vector<double>> observed;
  observed.reserve(static_cast<std::size_t>(seq.t_obs));
  for (int t = 0; t < seq.t_obs; ++t) {
    observed.push_back(encode_frame_flat(seq.frames[static_cast<std::size_t>(t)]));
  }
  const VaeOutput out = vae_forward(model, observed, seq.t_fut, LatentMode::mean_only());
  PoseSeq pred;
  pred.reserve(out.predicted.size());
  for (const auto& frame : out.predicted) {
    const PoseFrame f = decode_frame_flat(frame);
    pred.emplace_back(f.joints.begin(), f.joints.end());
  }
  return pred;
}

// --- synthetic data ---

std::vector<PoseSequence> synth_pose_dataset(const SynthPoseConfig& config) {
  if (config.n_sequences < 1 || config.t_obs < 1 || config.t_fut < 1) {
    throw ConfigError("synth_pose_dataset: counts must be >= 1");
  }
  // Rough skeleton rest offsets, scaled by rest_radius.
  static constexpr std::array<Point3, kPoseJoints> kRest = {{
      {0.0, 0.0, 1.0},     // head
      {-0.35, 0.0, 0.7},   {0.35, 0.0, 0.7},   // shoulders
      {-0.5, 0.0, 0.45},   {0.5, 0.0, 0.45},   // elbows
      {-0.55, 0.0, 0.2},   {0.55, 0.0, 0.2},   // wrists
      {-0.2, 0.0, -0.1},   {0.2, 0.0, -0.1},   // hips
      {-0.22, 0.0, -0.55}, {0.22, 0.0, -0.55}, // knees
      {-0.24, 0.0, -1.0},  {0.24, 0.0, -1.0},  // ankles
  }};

  Rng rng(config.seed);
  const int n_frames = config.t_obs + config.t_fut;
  std::vector<PoseSequence> dataset;
  dataset.reserve(static_cast<std::size_t>(config.n_sequences));
  for (int s = 0; s < config.n_sequences; ++s) {
    const Point3 c0{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    const Point3 vel{rng.uniform(-config.velocity_scale, config.velocity_scale),
                     rng.uniform(-config.velocity_scale, config.velocity_scale),
                     rng.uniform(-config.velocity_scale, config.velocity_scale)};
    const Point3 wobble_amp{rng.uniform(-config.curvature_scale, config.curvature_scale),
                            rng.uniform(-config.curvature_scale, config.curvature_scale),
                            rng.uniform(-config.curvature_scale, config.curvature_scale)};
    const double wobble_freq = rng.uniform(0.5, 1.5);
    const Point3 wobble_phase{rng.uniform(0.0, 2.0 * std::numbers::pi),
                              rng.uniform(0.0, 2.0 * std::numbers::pi),
                              rng.uniform(0.0, 2.0 * std::numbers::pi)};

    std::array<Point3, kPoseJoints> osc_amp;
    std::array<double, kPoseJoints> osc_freq;
    std::array<Point3, kPoseJoints> osc_phase;
    for (int j = 0; j < kPoseJoints; ++j) {
      const auto ji = static_cast<std::size_t>(j);
      osc_amp[ji] = {rng.uniform(-config.oscillation_amplitude, config.oscillation_amplitude),
                     rng.uniform(-config.oscillation_amplitude, config.oscillation_amplitude),
                     rng.uniform(-config.oscillation_amplitude, config.oscillation_amplitude)};
      osc_freq[ji] = rng.uniform(2.0, 5.0);
      osc_phase[ji] = {rng.uniform(0.0, 2.0 * std::numbers::pi),
                       rng.uniform(0.0, 2.0 * std::numbers::pi),
                       rng.uniform(0.0, 2.0 * std::numbers::pi)};
    }

    PoseSequence seq;
    seq.t_obs = config.t_obs;
    seq.t_fut = config.t_fut;
    seq.frames.reserve(static_cast<std::size_t>(n_frames));
    for (int t = 0; t < n_frames; ++t) {
      const double time = static_cast<double>(t) * config.dt;
      PoseFrame frame;
      frame.center = c0 + time * vel +
                     Point3{wobble_amp.x * std::sin(wobble_freq * time + wobble_phase.x),
                            wobble_amp.y * std::sin(wobble_freq * time + wobble_phase.y),
                            wobble_amp.z * std::sin(wobble_freq * time + wobble_phase.z)};
      for (int j = 0; j < kPoseJoints; ++j) {
        const auto ji = static_cast<std::size_t>(j);
        const Point3 wiggle{osc_amp[ji].x * std::sin(osc_freq[ji] * time + osc_phase[ji].x),
                            osc_amp[ji].y * std::sin(osc_freq[ji] * time + osc_phase[ji].y),
                            osc_amp[ji].z * std::sin(osc_freq[ji] * time + osc_phase[ji].z)};
        frame.joints[ji] = frame.center + config.rest_radius * kRest[ji] + wiggle;
      }
      seq.frames.push_back(frame);
    }
    dataset.push_back(std::move(seq));
  }
  return dataset;
}

}  // namespace dqnet
