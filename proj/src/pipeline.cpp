#include "dqnet/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace dqnet {

GenSummary run_gen(const ExperimentConfig& config, const std::string& out_path) {
  validate(config);
  const Trajectory t = integrate_rk4(config.lorenz, config.x0, config.dt, config.n_points);
  write_trajectory_csv(out_path, t);
  GenSummary s;
  s.rows = t.size();
  s.lo = s.hi = t.points.front();
  for (const Point3& p : t.points) {
    s.lo = {std::min(s.lo.x, p.x), std::min(s.lo.y, p.y), std::min(s.lo.z, p.z)};
    s.hi = {std::max(s.hi.x, p.x), std::max(s.hi.y, p.y), std::max(s.hi.z, p.z)};
  }
  return s;
}

namespace {

double lr_for(const ExperimentConfig& c, Algebra a) {
  switch (a) {
    case Algebra::kReal: return c.lr_real;
    case Algebra::kQuaternion: return c.lr_quat;
    case Algebra::kDualQuaternion: return c.lr_dq;
  }
  return c.lr_real;
}

int hidden_for(const ExperimentConfig& c, Algebra a) {
  switch (a) {
    case Algebra::kReal: return c.hidden_real;
    case Algebra::kQuaternion: return c.hidden_quat;
    case Algebra::kDualQuaternion: return c.hidden_dq;
  }
  return c.hidden_real;
}

}  // namespace

TrainSummary run_train(const ExperimentConfig& config, Algebra algebra,
                       const std::string& trajectory_path, const std::string& checkpoint_path,
                       const std::string& loss_csv) {
  validate(config);
  const Trajectory trajectory = read_trajectory_csv(trajectory_path);
  const TrajectorySplit split = split_train_test(trajectory);
  const WindowDataset train_data = encode_windows(split.train, algebra);

  Rng init_rng(config.seed_init);
  Mlp model = make_mlp(algebra, {train_data.input_units, hidden_for(config, algebra),
                                 train_data.target_units},
                       Activation::kSplitRelu, Activation::kIdentity, init_rng);

  TrainConfig tc;
  tc.epochs = config.epochs;
  tc.learning_rate = lr_for(config, algebra);
  tc.optimizer = OptimizerKind::kSgd;
  tc.seed = config.seed_init;
  const std::vector<double> history = train_mlp(model, train_data, tc);

  Checkpoint ckpt;
  ckpt.model = std::move(model);
  ckpt.train_config = tc;
  ckpt.seeds = {config.seed_data, config.seed_init, config.seed_transform};
  save_checkpoint(checkpoint_path, ckpt);
  if (!loss_csv.empty()) write_loss_history_csv(loss_csv, history);

  TrainSummary s;
  s.param_count = param_count(ckpt.model);
  s.initial_loss = history.front();
  s.final_loss = history.back();
  s.n_train = train_data.size();
  return s;
}

LorenzReport run_eval(const ExperimentConfig& config, const std::string& checkpoint_path,
                      const std::string& trajectory_path, const std::string& report_path,
                      const std::string& pred_dir, const std::vector<VariantKind>& variants,
                      bool identity_transforms) {
  validate(config);
  const Checkpoint ckpt = load_checkpoint(checkpoint_path);
  const Algebra algebra = ckpt.model.algebra();
  const Trajectory trajectory = read_trajectory_csv(trajectory_path);
  const TrajectorySplit split = split_train_test(trajectory);

  std::vector<TestVariant> sets;
  if (identity_transforms) {
    for (const VariantKind kind :
         {VariantKind::kOriginal, VariantKind::kTranslated, VariantKind::kRotated,
          VariantKind::kTranslatedRotated}) {
      sets.push_back({kind, RigidTransform::identity(), split.test});
    }
  } else {
    sets = build_test_variants(split.test, config.seed_transform, config.translation_range);
  }

  LorenzReport report;
  report.algebra = algebra;
  for (const TestVariant& variant : sets) {
    if (!variants.empty() &&
        std::find(variants.begin(), variants.end(), variant.kind) == variants.end()) {
      continue;
    }
    const WindowDataset data = encode_windows(variant.trajectory, algebra);
    if (data.input_units != ckpt.model.input_units() ||
        data.target_units != ckpt.model.output_units()) {
      throw AlgebraMismatchError("run_eval: checkpoint does not match the requested encoding");
    }
    std::vector<Point3> preds;
    std::vector<Point3> truths;
    preds.reserve(data.size());
    truths.reserve(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
      preds.push_back(decode_prediction(algebra, mlp_forward(ckpt.model, data.inputs[i])));
      truths.push_back(decode_prediction(algebra, data.targets[i]));
    }
    std::vector<Point3> errors(preds.size());
    for (std::size_t i = 0; i < preds.size(); ++i) errors[i] = preds[i] - truths[i];

    EvalReport r;
    r.variant = variant.kind;
    r.mse = mse(preds, truths);
    r.prediction_gain_db = prediction_gain(truths, errors);
    r.n_samples = preds.size();
    report.variants.push_back(r);

    if (!pred_dir.empty()) {
      const std::string path = pred_dir + "/pred_" + algebra_name(algebra) + "_" +
                               variant_name(variant.kind) + ".csv";
      // Predictions start at the third point of the test window.
      write_prediction_csv(path, variant.trajectory.t0 + 2.0 * variant.trajectory.dt,
                           variant.trajectory.dt, preds, truths);
    }
  }
  save_lorenz_report(report_path, report);
  return report;
}

namespace {

PoseVariantResult evaluate_pose_model(const DqVae& model, Algebra algebra,
                                      const std::vector<PoseSequence>& val) {
  PoseVariantResult result;
  result.algebra = algebra;
  result.param_count = param_count(model);
  result.weight_grid = weight_grid_count(model);

  double vim_sum = 0.0;
  double fde_sum = 0.0;
  double loss_sum = 0.0;
  double pred_disp = 0.0;
  double true_disp = 0.0;
  for (const PoseSequence& seq : val) {
    const PoseSeq pred = predict_future_joints(model, seq);
    const PoseSeq truth = future_joints(seq);
    vim_sum += vim(pred, truth);
    fde_sum += fde(pred, truth);

    std::vector<std::vector<double>> observed;
    std::vector<std::vector<double>> future;
    for (int t = 0; t < seq.t_obs; ++t) {
      observed.push_back(encode_frame_flat(seq.frames[static_cast<std::size_t>(t)]));
    }
    for (int t = seq.t_obs; t < seq.t_obs + seq.t_fut; ++t) {
      future.push_back(encode_frame_flat(seq.frames[static_cast<std::size_t>(t)]));
    }
    const VaeOutput out = vae_forward(model, observed, seq.t_fut, LatentMode::mean_only());
    loss_sum += vae_loss(out.predicted, future, out.mean, out.logvar, model.kl_weight).total;

    const PoseFrame last_obs = seq.frames[static_cast<std::size_t>(seq.t_obs - 1)];
    const PoseFrame pred_last = decode_frame_flat(out.predicted.back());
    const PoseFrame true_last = seq.frames.back();
    pred_disp += norm(pred_last.center - last_obs.center);
    true_disp += norm(true_last.center - last_obs.center);
  }
  const double n = static_cast<double>(val.size());
  result.vim = vim_sum / n;
  result.fde = fde_sum / n;
  result.val_loss = loss_sum / n;
  result.center_displacement_ratio = true_disp > 0.0 ? pred_disp / true_disp : 0.0;
  return result;
}

}  // namespace

PoseReport run_pose(const ExperimentConfig& config, const std::string& report_path,
                    const std::vector<Algebra>& only) {
  validate(config);
  SynthPoseConfig sc;
  sc.n_sequences = config.pose_sequences;
  sc.t_obs = config.pose_t_obs;
  sc.t_fut = config.pose_t_fut;
  sc.seed = config.seed_data;
  sc.velocity_scale = config.pose_velocity;
  sc.oscillation_amplitude = config.pose_oscillation;
  const std::vector<PoseSequence> dataset = synth_pose_dataset(sc);

  const std::size_t n_val = std::max<std::size_t>(1, dataset.size() / 5);
  const std::vector<PoseSequence> train(dataset.begin(), dataset.end() - static_cast<long>(n_val));
  const std::vector<PoseSequence> val(dataset.end() - static_cast<long>(n_val), dataset.end());

  std::vector<Algebra> algebras = only;
  if (algebras.empty()) {
    algebras = {Algebra::kReal, Algebra::kQuaternion, Algebra::kDualQuaternion};
  }

  PoseReport report;
  for (const Algebra algebra : algebras) {
    Rng init_rng(config.seed_init);
    DqVae model =
        make_corpof_vae(algebra, config.pose_hidden, config.pose_latent, config.kl_weight, init_rng);
    VaeTrainConfig vc;
    vc.base.epochs = config.pose_epochs;
    vc.base.learning_rate = config.pose_lr;
    vc.base.optimizer = OptimizerKind::kAdam;
    vc.base.seed = config.seed_init;
    train_vae(model, train, vc);
    report.variants.push_back(evaluate_pose_model(model, algebra, val));
  }
  save_pose_report(report_path, report);
  return report;
}

std::string run_report(const std::vector<std::string>& report_paths, const std::string& csv_out) {
  if (report_paths.empty()) throw MalformedReportError("run_report: no report files given");

  constexpr VariantKind kOrder[] = {VariantKind::kOriginal, VariantKind::kTranslated,
                                    VariantKind::kRotated, VariantKind::kTranslatedRotated};

  std::ostringstream csv;
  csv << "model,mse_original,mse_translated,mse_rotated,mse_translated_rotated,"
         "gain_original,gain_translated,gain_rotated,gain_translated_rotated\n";

  std::ostringstream text;
  char line[256];
  std::snprintf(line, sizeof(line), "%-12s %41s   %41s\n", "", "MSE (down)",
                "Prediction gain dB (up)");
  text << line;
  std::snprintf(line, sizeof(line), "%-12s %10s %10s %10s %10s | %10s %10s %10s %10s\n", "model",
                "original", "transl", "rotated", "t+r", "original", "transl", "rotated", "t+r");
  text << line;

  for (const std::string& path : report_paths) {
    const LorenzReport report = load_lorenz_report(path);
    double mses[4];
    double gains[4];
    bool have[4] = {false, false, false, false};
    for (const EvalReport& r : report.variants) {
      const int idx = static_cast<int>(r.variant);
      mses[idx] = r.mse;
      gains[idx] = r.prediction_gain_db;
      have[idx] = true;
    }
    for (int k = 0; k < 4; ++k) {
      if (!have[k]) {
        throw MalformedReportError(path + ": missing variant " + variant_name(kOrder[k]));
      }
    }
    csv << algebra_name(report.algebra);
    for (double m : mses) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.17g", m);
      csv << ',' << buf;
    }
    for (double g : gains) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.17g", g);
      csv << ',' << buf;
    }
    csv << '\n';
    std::snprintf(line, sizeof(line),
                  "%-12s %10.3f %10.3f %10.3f %10.3f | %10.3f %10.3f %10.3f %10.3f\n",
                  algebra_name(report.algebra).c_str(), mses[0], mses[1], mses[2], mses[3],
                  gains[0], gains[1], gains[2], gains[3]);
    text << line;
  }
  if (!csv_out.empty()) atomic_write(csv_out, csv.str());
  return text.str();
}

}  // namespace dqnet
