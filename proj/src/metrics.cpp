#include "dqnet/metrics.hpp"

#include <cmath>
#include <limits>

namespace dqnet {

double mse(const std::vector<Point3>& pred, const std::vector<Point3>& truth) {
  if (pred.size() != truth.size()) throw LengthMismatchError("mse: list lengths differ");
  if (pred.empty()) throw EmptyInputError("mse: empty inputs");
  double sum = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const Point3 d = pred[i] - truth[i];
    sum += dot(d, d);
  }
  return sum / static_cast<double>(pred.size());
}

double gain_from_variances(double signal_var, double error_var) {
  if (error_var == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(signal_var / error_var);
}

double pooled_variance(const std::vector<Point3>& values) {
  if (values.size() < 2) throw EmptyInputError("pooled_variance: need at least 2 samples");
  Point3 mean{};
  for (const Point3& v : values) mean = mean + v;
  mean = (1.0 / static_cast<double>(values.size())) * mean;
  double ss = 0.0;
  for (const Point3& v : values) {
    const Point3 d = v - mean;
    ss += dot(d, d);
  }
  return ss / (3.0 * static_cast<double>(values.size() - 1));
}

double prediction_gain(const std::vector<Point3>& signal, const std::vector<Point3>& errors) {
  return gain_from_variances(pooled_variance(signal), pooled_variance(errors));
}

namespace {

void check_pose_shapes(const PoseSeq& pred, const PoseSeq& truth) {
  if (pred.size() != truth.size()) throw ShapeMismatchError("pose sequences: frame count differs");
  if (pred.empty()) throw ShapeMismatchError("pose sequences: no frames");
  for (std::size_t f = 0; f < pred.size(); ++f) {
    if (pred[f].size() != truth[f].size() || pred[f].empty()) {
      throw ShapeMismatchError("pose sequences: joint count differs at frame " + std::to_string(f));
    }
  }
}

}  // namespace

double vim(const PoseSeq& pred, const PoseSeq& truth) {
  check_pose_shapes(pred, truth);
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t f = 0; f < pred.size(); ++f) {
    for (std::size_t j = 0; j < pred[f].size(); ++j) {
      sum += norm(pred[f][j] - truth[f][j]);
      ++count;
    }
  }
  return sum / static_cast<double>(count);
}

double fde(const PoseSeq& pred, const PoseSeq& truth) {
  check_pose_shapes(pred, truth);
  const auto& pf = pred.back();
  const auto& tf = truth.back();
  double ss = 0.0;
  for (std::size_t j = 0; j < pf.size(); ++j) {
    const Point3 d = pf[j] - tf[j];
    ss += dot(d, d);
  }
  return std::sqrt(ss);
}

}  // namespace dqnet
