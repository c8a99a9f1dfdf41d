#pragma once

// Shared evaluation metrics: MSE, prediction gain, VIM, FDE.

#include <string>
#include <vector>

#include "dqnet/algebra.hpp"
#include "dqnet/lorenz.hpp"

namespace dqnet {

struct EvalReport {
  VariantKind variant{VariantKind::kOriginal};
  double mse{0.0};
  double prediction_gain_db{0.0};
  std::size_t n_samples{0};
};

// Mean over samples of squared Euclidean distance.
// Throws LengthMismatchError / EmptyInputError.
double mse(const std::vector<Point3>& pred, const std::vector<Point3>& truth);

// 10*log10(sigma_s^2 / sigma_e^2).
double gain_from_variances(double signal_var, double error_var);

// Pooled variance over the x, y, z coordinate streams: per-coordinate means
// are removed and the squared deviations pooled with the unbiased
// denominator 3*(n-1).
double pooled_variance(const std::vector<Point3>& values);

// Prediction gain in dB; sigma_s^2 and sigma_e^2 are both pooled_variance
// estimates (of the signal and of the per-sample error vectors). Returns
// +infinity when the error variance is exactly zero (perfect prediction).
double prediction_gain(const std::vector<Point3>& signal, const std::vector<Point3>& errors);

// Pose sequences as frames x joints x 3.
using PoseSeq = std::vector<std::vector<Point3>>;

// Mean over frames and joints of Euclidean joint distance.
double vim(const PoseSeq& pred, const PoseSeq& truth);

// L2 distance between the flattened final frames.
double fde(const PoseSeq& pred, const PoseSeq& truth);

}  // namespace dqnet
