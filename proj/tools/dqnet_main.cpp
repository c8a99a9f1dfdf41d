// Command-line driver: trajectory generation, per-algebra training, the
// four-variant evaluation, the synthetic pose study, and report rendering.
//
// Exit codes: 0 success, 2 configuration/usage error, 3 numeric failure
// (diverging training or integration), 1 anything else.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dqnet/pipeline.hpp"

namespace {

using dqnet::Algebra;
using dqnet::ExperimentConfig;
using dqnet::VariantKind;

// Deferred flag applications so precedence is defaults < config file < flags.
class Overrides {
 public:
  void add(CLI::App* cmd, const std::string& flag, const std::string& key,
           const std::string& help) {
    values_.push_back(std::make_unique<std::string>());
    std::string* slot = values_.back().get();
    cmd->add_option_function<std::string>(
        flag, [this, key, slot](const std::string& v) { *slot = v; pending_.push_back({key, slot}); },
        help);
  }

  void apply(ExperimentConfig& config) const {
    for (const auto& [key, slot] : pending_) dqnet::apply_config_entry(config, key, *slot);
  }

 private:
  std::vector<std::unique_ptr<std::string>> values_;
  mutable std::vector<std::pair<std::string, std::string*>> pending_;
};

ExperimentConfig resolve_config(const std::string& config_path, const Overrides& overrides) {
  ExperimentConfig config;
  if (!config_path.empty()) dqnet::load_config_file(config, config_path);
  overrides.apply(config);
  dqnet::validate(config);
  return config;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string fmt_exact(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dual-quaternion rigid-motion learning experiments"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  app.add_option("--config", config_path, "flat key = value configuration file");

  // --- gen ---
  auto* gen = app.add_subcommand("gen", "integrate the system and write a trajectory CSV");
  std::string gen_out;
  gen->add_option("-o,--output", gen_out, "output CSV path")->required();
  Overrides gen_over;
  gen_over.add(gen, "--n", "n_points", "number of points");
  gen_over.add(gen, "--dt", "dt", "integration step");
  gen_over.add(gen, "--x0", "x0", "initial x");
  gen_over.add(gen, "--y0", "y0", "initial y");
  gen_over.add(gen, "--z0", "z0", "initial z");
  gen_over.add(gen, "--sigma", "sigma", "sigma parameter");
  gen_over.add(gen, "--beta", "beta", "beta parameter");
  gen_over.add(gen, "--rho", "rho", "rho parameter");

  // --- train ---
  auto* train = app.add_subcommand("train", "train a one-step predictor on the 10% split");
  std::string train_algebra;
  std::string train_trajectory;
  std::string train_out;
  std::string train_loss_csv;
  train->add_option("--algebra", train_algebra, "real|quat|dq")->required();
  train->add_option("--trajectory", train_trajectory, "trajectory CSV")->required();
  train->add_option("-o,--output", train_out, "checkpoint JSON path")->required();
  train->add_option("--loss-history", train_loss_csv, "optional loss-history CSV path");
  Overrides train_over;
  train_over.add(train, "--epochs", "epochs", "training epochs");
  train_over.add(train, "--seed-init", "seed_init", "weight-init seed");
  std::optional<double> train_lr;
  train->add_option("--lr", train_lr, "learning rate (overrides the per-algebra default)");
  std::optional<int> train_hidden;
  train->add_option("--hidden", train_hidden, "hidden units (overrides the per-algebra default)");

  // --- eval ---
  auto* eval = app.add_subcommand("eval", "evaluate a checkpoint on the four test variants");
  std::string eval_ckpt;
  std::string eval_trajectory;
  std::string eval_out;
  std::string eval_pred_dir;
  std::vector<std::string> eval_variants;
  bool eval_identity = false;
  eval->add_option("--checkpoint", eval_ckpt, "checkpoint JSON")->required();
  eval->add_option("--trajectory", eval_trajectory, "trajectory CSV")->required();
  eval->add_option("-o,--output", eval_out, "report JSON path")->required();
  eval->add_option("--pred-dir", eval_pred_dir, "directory for per-variant prediction CSVs");
  eval->add_option("--variants", eval_variants,
                   "subset of original|translated|rotated|translated_rotated");
  eval->add_flag("--identity-transforms", eval_identity,
                 "replace the drawn transforms with identities (diagnostic)");
  Overrides eval_over;
  eval_over.add(eval, "--seed-transform", "seed_transform", "transform seed");
  eval_over.add(eval, "--translation-range", "translation_range", "translation magnitude");

  // --- pose ---
  auto* pose = app.add_subcommand("pose", "synthetic pose forecasting study");
  std::string pose_out;
  std::string pose_algebra;
  pose->add_option("-o,--output", pose_out, "report JSON path")->required();
  pose->add_option("--algebra", pose_algebra, "run a single variant (default: all three)");
  Overrides pose_over;
  pose_over.add(pose, "--sequences", "pose_sequences", "number of sequences");
  pose_over.add(pose, "--t-obs", "pose_t_obs", "observed frames");
  pose_over.add(pose, "--t-fut", "pose_t_fut", "future frames");
  pose_over.add(pose, "--hidden", "pose_hidden", "hidden units (dq units)");
  pose_over.add(pose, "--latent", "pose_latent", "latent units (dq units)");
  pose_over.add(pose, "--epochs", "pose_epochs", "training epochs");
  pose_over.add(pose, "--lr", "pose_lr", "learning rate");
  pose_over.add(pose, "--kl-weight", "kl_weight", "variational bound beta");
  pose_over.add(pose, "--seed-data", "seed_data", "dataset seed");
  pose_over.add(pose, "--seed-init", "seed_init", "weight-init seed");
  pose_over.add(pose, "--velocity", "pose_velocity", "center velocity scale");
  pose_over.add(pose, "--oscillation", "pose_oscillation", "joint oscillation amplitude");

  // --- report ---
  auto* report = app.add_subcommand("report", "render evaluation reports as a table");
  std::vector<std::string> report_inputs;
  std::string report_csv;
  report->add_option("inputs", report_inputs, "report JSON files")->required();
  report->add_option("-o,--output", report_csv, "also write the table as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) {
      const ExperimentConfig config = resolve_config(config_path, gen_over);
      const dqnet::GenSummary s = dqnet::run_gen(config, gen_out);
      std::cout << "wrote " << s.rows << " rows to " << gen_out << "\n"
                << "bounding box x [" << fmt(s.lo.x) << ", " << fmt(s.hi.x) << "] y ["
                << fmt(s.lo.y) << ", " << fmt(s.hi.y) << "] z [" << fmt(s.lo.z) << ", "
                << fmt(s.hi.z) << "]\n";
    } else if (train->parsed()) {
      ExperimentConfig config;
      if (!config_path.empty()) dqnet::load_config_file(config, config_path);
      train_over.apply(config);
      const Algebra algebra = dqnet::algebra_from_name(train_algebra);
      if (train_lr) {
        dqnet::apply_config_entry(config, "lr_" + dqnet::algebra_name(algebra),
                                  fmt_exact(*train_lr));
      }
      if (train_hidden) {
        dqnet::apply_config_entry(config, "hidden_" + dqnet::algebra_name(algebra),
                                  std::to_string(*train_hidden));
      }
      dqnet::validate(config);
      const dqnet::TrainSummary s =
          dqnet::run_train(config, algebra, train_trajectory, train_out, train_loss_csv);
      std::cout << "trained " << dqnet::algebra_name(algebra) << " model (" << s.param_count
                << " parameters) on " << s.n_train << " samples\n"
                << "loss " << fmt(s.initial_loss) << " -> " << fmt(s.final_loss) << "\n";
    } else if (eval->parsed()) {
      const ExperimentConfig config = resolve_config(config_path, eval_over);
      std::vector<VariantKind> kinds;
      for (const std::string& name : eval_variants) {
        kinds.push_back(dqnet::variant_from_name(name));
      }
      const dqnet::LorenzReport r = dqnet::run_eval(config, eval_ckpt, eval_trajectory, eval_out,
                                                    eval_pred_dir, kinds, eval_identity);
      for (const dqnet::EvalReport& v : r.variants) {
        std::cout << dqnet::variant_name(v.variant) << ": mse " << fmt(v.mse) << ", gain "
                  << fmt(v.prediction_gain_db) << " dB over " << v.n_samples << " samples\n";
      }
    } else if (pose->parsed()) {
      const ExperimentConfig config = resolve_config(config_path, pose_over);
      std::vector<Algebra> only;
      if (!pose_algebra.empty()) only.push_back(dqnet::algebra_from_name(pose_algebra));
      const dqnet::PoseReport r = dqnet::run_pose(config, pose_out, only);
      for (const dqnet::PoseVariantResult& v : r.variants) {
        std::cout << dqnet::algebra_name(v.algebra) << ": vim " << fmt(v.vim) << ", fde "
                  << fmt(v.fde) << ", val loss " << fmt(v.val_loss) << ", params "
                  << v.param_count << ", center displacement ratio "
                  << fmt(v.center_displacement_ratio) << "\n";
      }
    } else if (report->parsed()) {
      std::cout << dqnet::run_report(report_inputs, report_csv);
    }
  } catch (const dqnet::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const dqnet::NonFiniteLossError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  } catch (const dqnet::NonFiniteStateError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
