#pragma once

// Experiment configuration: defaults, the flat `key = value` config-file
// format, and validation. Command-line flags override file values.

#include <cstdint>
#include <string>

#include "dqnet/lorenz.hpp"

namespace dqnet {

struct ExperimentConfig {
  // trajectory generation
  LorenzParams lorenz{};
  Point3 x0{1.0, 1.0, 1.0};
  double dt{0.01};
  int n_points{10000};

  // one-step prediction training
  int epochs{250};
  double lr_real{0.0003};
  double lr_quat{0.0009};
  double lr_dq{0.0009};
  int hidden_real{128};
  int hidden_quat{80};
  int hidden_dq{53};

  // seeds: data generation, weight init, test-set transforms
  std::uint64_t seed_data{1};
  std::uint64_t seed_init{2};
  std::uint64_t seed_transform{3};

  double translation_range{20.0};

  // synthetic pose study
  int pose_sequences{24};
  int pose_t_obs{10};
  int pose_t_fut{8};
  int pose_hidden{6};  // dual-quaternion units
  int pose_latent{3};  // dual-quaternion units
  int pose_epochs{200};
  double pose_lr{0.01};
  double kl_weight{1e-3};
  double pose_velocity{1.0};
  double pose_oscillation{0.08};
};

// Applies one key/value pair; throws ConfigError on unknown keys or
// unparseable values.
void apply_config_entry(ExperimentConfig& config, const std::string& key,
                        const std::string& value);

// Loads `key = value` lines ('#' comments and blank lines ignored).
void load_config_file(ExperimentConfig& config, const std::string& path);

// Throws ConfigError when any field is out of range.
void validate(const ExperimentConfig& config);

}  // namespace dqnet
