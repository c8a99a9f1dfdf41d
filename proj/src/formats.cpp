#include "dqnet/formats.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace dqnet {

namespace {

using nlohmann::json;

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

json parse_json_file(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw MalformedReportError(path + ": " + e.what());
  }
}

// JSON has no infinity; encode the perfect-prediction sentinel as a string.
json gain_to_json(double gain) {
  if (std::isinf(gain)) return json(gain > 0 ? "inf" : "-inf");
  return json(gain);
}

double gain_from_json(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw MalformedReportError("bad gain value: " + s);
  }
  return j.get<double>();
}

}  // namespace

void atomic_write(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + tmp);
    out << contents;
    if (!out) throw IoError("write failed: " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("rename failed for " + path + ": " + ec.message());
}

void write_trajectory_csv(const std::string& path, const Trajectory& t) {
  std::ostringstream out;
  out << "t,x,y,z\n";
  for (std::size_t i = 0; i < t.points.size(); ++i) {
    const double time = t.t0 + static_cast<double>(i) * t.dt;
    const Point3& p = t.points[i];
    out << fmt_double(time) << ',' << fmt_double(p.x) << ',' << fmt_double(p.y) << ','
        << fmt_double(p.z) << '\n';
  }
  atomic_write(path, out.str());
}

Trajectory read_trajectory_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open trajectory: " + path);
  std::string line;
  if (!std::getline(in, line) || line != "t,x,y,z") {
    throw IoError(path + ": expected header 't,x,y,z'");
  }
  Trajectory t;
  std::vector<double> times;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double vals[4];
    std::size_t at = 0;
    for (int c = 0; c < 4; ++c) {
      const auto next = line.find(',', at);
      const std::string field =
          line.substr(at, next == std::string::npos ? std::string::npos : next - at);
      try {
        vals[c] = std::stod(field);
      } catch (const std::exception&) {
        throw IoError(path + ": bad number '" + field + "'");
      }
      if (c < 3) {
        if (next == std::string::npos) throw IoError(path + ": row with fewer than 4 fields");
        at = next + 1;
      }
    }
    times.push_back(vals[0]);
    t.points.push_back({vals[1], vals[2], vals[3]});
  }
  if (t.points.empty()) throw IoError(path + ": no data rows");
  t.t0 = times.front();
  if (times.size() > 1) t.dt = times[1] - times[0];
  return t;
}

void write_loss_history_csv(const std::string& path, const std::vector<double>& history) {
  std::ostringstream out;
  out << "epoch,mse\n";
  for (std::size_t i = 0; i < history.size(); ++i) {
    out << i << ',' << fmt_double(history[i]) << '\n';
  }
  atomic_write(path, out.str());
}

void write_vae_history_csv(const std::string& path, const std::vector<VaeEpochStats>& history) {
  std::ostringstream out;
  out << "epoch,total,recon,kl,lr\n";
  for (std::size_t i = 0; i < history.size(); ++i) {
    out << i << ',' << fmt_double(history[i].total) << ',' << fmt_double(history[i].recon) << ','
        << fmt_double(history[i].kl) << ',' << fmt_double(history[i].lr) << '\n';
  }
  atomic_write(path, out.str());
}

void write_prediction_csv(const std::string& path, double t0, double dt,
                          const std::vector<Point3>& pred, const std::vector<Point3>& truth) {
  if (pred.size() != truth.size()) throw LengthMismatchError("prediction csv: length mismatch");
  std::ostringstream out;
  out << "t,x_pred,y_pred,z_pred,x_true,y_true,z_true\n";
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double time = t0 + static_cast<double>(i) * dt;
    out << fmt_double(time) << ',' << fmt_double(pred[i].x) << ',' << fmt_double(pred[i].y) << ','
        << fmt_double(pred[i].z) << ',' << fmt_double(truth[i].x) << ',' << fmt_double(truth[i].y)
        << ',' << fmt_double(truth[i].z) << '\n';
  }
  atomic_write(path, out.str());
}

void save_checkpoint(const std::string& path, const Checkpoint& ckpt) {
  json layers = json::array();
  for (const auto& layer : ckpt.model.layers) {
    layers.push_back({{"fan_in", layer.fan_in},
                      {"fan_out", layer.fan_out},
                      {"activation", activation_name(layer.activation)},
                      {"weights", layer.weights},
                      {"biases", layer.biases}});
  }
  const json j = {
      {"format_version", 1},
      {"algebra", algebra_name(ckpt.model.algebra())},
      {"layers", layers},
      {"train_config",
       {{"epochs", ckpt.train_config.epochs},
        {"learning_rate", ckpt.train_config.learning_rate},
        {"optimizer", ckpt.train_config.optimizer == OptimizerKind::kSgd ? "sgd" : "adam"},
        {"seed", ckpt.train_config.seed}}},
      {"seeds",
       {{"data", ckpt.seeds.data}, {"init", ckpt.seeds.init}, {"transform", ckpt.seeds.transform}}}};
  atomic_write(path, j.dump(2) + "\n");
}

Checkpoint load_checkpoint(const std::string& path) {
  const json j = parse_json_file(path);
  try {
    Checkpoint ckpt;
    const Algebra algebra = algebra_from_name(j.at("algebra").get<std::string>());
    for (const auto& jl : j.at("layers")) {
      DenseLayer layer =
          zero_dense_layer(algebra, jl.at("fan_in").get<int>(), jl.at("fan_out").get<int>(),
                           activation_from_name(jl.at("activation").get<std::string>()));
      const auto weights = jl.at("weights").get<std::vector<double>>();
      const auto biases = jl.at("biases").get<std::vector<double>>();
      if (weights.size() != layer.weights.size() || biases.size() != layer.biases.size()) {
        throw MalformedReportError(path + ": layer parameter sizes do not match shape");
      }
      layer.weights = weights;
      layer.biases = biases;
      ckpt.model.layers.push_back(std::move(layer));
    }
    const auto& tc = j.at("train_config");
    ckpt.train_config.epochs = tc.at("epochs").get<int>();
    ckpt.train_config.learning_rate = tc.at("learning_rate").get<double>();
    ckpt.train_config.optimizer =
        tc.at("optimizer").get<std::string>() == "adam" ? OptimizerKind::kAdam : OptimizerKind::kSgd;
    ckpt.train_config.seed = tc.at("seed").get<std::uint64_t>();
    const auto& seeds = j.at("seeds");
    ckpt.seeds.data = seeds.at("data").get<std::uint64_t>();
    ckpt.seeds.init = seeds.at("init").get<std::uint64_t>();
    ckpt.seeds.transform = seeds.at("transform").get<std::uint64_t>();
    return ckpt;
  } catch (const json::exception& e) {
    throw MalformedReportError(path + ": " + e.what());
  }
}

void save_lorenz_report(const std::string& path, const LorenzReport& report) {
  json variants = json::array();
  for (const auto& r : report.variants) {
    variants.push_back({{"variant", variant_name(r.variant)},
                        {"mse", r.mse},
                        {"prediction_gain_db", gain_to_json(r.prediction_gain_db)},
                        {"n_samples", r.n_samples}});
  }
  const json j = {{"format_version", 1},
                  {"algebra", algebra_name(report.algebra)},
                  {"reports", variants}};
  atomic_write(path, j.dump(2) + "\n");
}

LorenzReport load_lorenz_report(const std::string& path) {
  const json j = parse_json_file(path);
  try {
    LorenzReport report;
    report.algebra = algebra_from_name(j.at("algebra").get<std::string>());
    for (const auto& jr : j.at("reports")) {
      EvalReport r;
      r.variant = variant_from_name(jr.at("variant").get<std::string>());
      r.mse = jr.at("mse").get<double>();
      r.prediction_gain_db = gain_from_json(jr.at("prediction_gain_db"));
      r.n_samples = jr.at("n_samples").get<std::size_t>();
      report.variants.push_back(r);
    }
    if (report.variants.empty()) throw MalformedReportError(path + ": no variant entries");
    return report;
  } catch (const json::exception& e) {
    throw MalformedReportError(path + ": " + e.what());
  }
}

void save_pose_report(const std::string& path, const PoseReport& report) {
  json variants = json::array();
  for (const auto& v : report.variants) {
    variants.push_back({{"algebra", algebra_name(v.algebra)},
                        {"vim", v.vim},
                        {"fde", v.fde},
                        {"val_loss", v.val_loss},
                        {"param_count", v.param_count},
                        {"weight_grid", v.weight_grid},
                        {"center_displacement_ratio", v.center_displacement_ratio}});
  }
  const json j = {{"format_version", 1}, {"variants", variants}};
  atomic_write(path, j.dump(2) + "\n");
}

PoseReport load_pose_report(const std::string& path) {
  const json j = parse_json_file(path);
  try {
    PoseReport report;
    for (const auto& jv : j.at("variants")) {
      PoseVariantResult v;
      v.algebra = algebra_from_name(jv.at("algebra").get<std::string>());
      v.vim = jv.at("vim").get<double>();
      v.fde = jv.at("fde").get<double>();
      v.val_loss = jv.at("val_loss").get<double>();
      v.param_count = jv.at("param_count").get<std::int64_t>();
      v.weight_grid = jv.at("weight_grid").get<std::int64_t>();
      v.center_displacement_ratio = jv.at("center_displacement_ratio").get<double>();
      report.variants.push_back(v);
    }
    return report;
  } catch (const json::exception& e) {
    throw MalformedReportError(path + ": " + e.what());
  }
}

void write_pose_jsonl(const std::string& path, const std::vector<PoseSequence>& dataset) {
  std::ostringstream out;
  for (std::size_t s = 0; s < dataset.size(); ++s) {
    for (const PoseFrame& f : dataset[s].frames) {
      json joints = json::array();
      for (const Point3& p : f.joints) joints.push_back({p.x, p.y, p.z});
      const json line = {{"sequence", s},
                         {"center", {f.center.x, f.center.y, f.center.z}},
                         {"joints", joints}};
      out << line.dump() << '\n';
    }
  }
  atomic_write(path, out.str());
}

std::vector<PoseSequence> read_pose_jsonl(const std::string& path, int t_obs, int t_fut) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open pose data: " + path);
  std::vector<PoseSequence> dataset;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw IoError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
    try {
      const auto seq_id = j.at("sequence").get<std::size_t>();
      if (seq_id >= dataset.size()) {
        dataset.resize(seq_id + 1);
        dataset[seq_id].t_obs = t_obs;
        dataset[seq_id].t_fut = t_fut;
      }
      PoseFrame f;
      const auto& center = j.at("center");
      f.center = {center.at(0).get<double>(), center.at(1).get<double>(),
                  center.at(2).get<double>()};
      const auto& joints = j.at("joints");
      if (joints.size() != kPoseJoints) {
        throw IoError(path + ":" + std::to_string(lineno) + ": expected " +
                      std::to_string(kPoseJoints) + " joints");
      }
      for (int k = 0; k < kPoseJoints; ++k) {
        const auto& p = joints.at(static_cast<std::size_t>(k));
        f.joints[static_cast<std::size_t>(k)] = {p.at(0).get<double>(), p.at(1).get<double>(),
                                                 p.at(2).get<double>()};
      }
      dataset[seq_id].frames.push_back(f);
    } catch (const json::exception& e) {
      throw IoError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  for (auto& seq : dataset) {
    if (seq.frames.size() != static_cast<std::size_t>(t_obs + t_fut)) {
      throw IoError(path + ": sequence frame count does not match t_obs + t_fut");
    }
  }
  return dataset;
}

}  // namespace dqnet
