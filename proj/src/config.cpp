#include "dqnet/config.hpp"

#include <fstream>
#include <sstream>

#include "dqnet/errors.hpp"

namespace dqnet {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': cannot parse '" + value + "' as a real");
  }
}

int parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': cannot parse '" + value + "' as an integer");
  }
}

std::uint64_t parse_seed(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return static_cast<std::uint64_t>(v);
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': cannot parse '" + value + "' as a seed");
  }
}

}  // namespace

void apply_config_entry(ExperimentConfig& c, const std::string& key, const std::string& value) {
  if (key == "sigma") c.lorenz.sigma = parse_double(key, value);
  else if (key == "beta") c.lorenz.beta = parse_double(key, value);
  else if (key == "rho") c.lorenz.rho = parse_double(key, value);
  else if (key == "x0") c.x0.x = parse_double(key, value);
  else if (key == "y0") c.x0.y = parse_double(key, value);
  else if (key == "z0") c.x0.z = parse_double(key, value);
  else if (key == "dt") c.dt = parse_double(key, value);
  else if (key == "n_points") c.n_points = parse_int(key, value);
  else if (key == "epochs") c.epochs = parse_int(key, value);
  else if (key == "lr_real") c.lr_real = parse_double(key, value);
  else if (key == "lr_quat") c.lr_quat = parse_double(key, value);
  else if (key == "lr_dq") c.lr_dq = parse_double(key, value);
  else if (key == "hidden_real") c.hidden_real = parse_int(key, value);
  else if (key == "hidden_quat") c.hidden_quat = parse_int(key, value);
  else if (key == "hidden_dq") c.hidden_dq = parse_int(key, value);
  else if (key == "seed_data") c.seed_data = parse_seed(key, value);
  else if (key == "seed_init") c.seed_init = parse_seed(key, value);
  else if (key == "seed_transform") c.seed_transform = parse_seed(key, value);
  else if (key == "translation_range") c.translation_range = parse_double(key, value);
  else if (key == "pose_sequences") c.pose_sequences = parse_int(key, value);
  else if (key == "pose_t_obs") c.pose_t_obs = parse_int(key, value);
  else if (key == "pose_t_fut") c.pose_t_fut = parse_int(key, value);
  else if (key == "pose_hidden") c.pose_hidden = parse_int(key, value);
  else if (key == "pose_latent") c.pose_latent = parse_int(key, value);
  else if (key == "pose_epochs") c.pose_epochs = parse_int(key, value);
  else if (key == "pose_lr") c.pose_lr = parse_double(key, value);
  else if (key == "kl_weight") c.kl_weight = parse_double(key, value);
  else if (key == "pose_velocity") c.pose_velocity = parse_double(key, value);
  else if (key == "pose_oscillation") c.pose_oscillation = parse_double(key, value);
  else throw ConfigError("unknown config key: " + key);
}

void load_config_file(ExperimentConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
    }
    apply_config_entry(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

void validate(const ExperimentConfig& c) {
  if (c.dt <= 0.0) throw ConfigError("dt must be positive");
  if (c.n_points < 3) throw ConfigError("n_points must be >= 3");
  if (c.epochs < 1) throw ConfigError("epochs must be >= 1");
  if (c.lr_real <= 0.0 || c.lr_quat <= 0.0 || c.lr_dq <= 0.0) {
    throw ConfigError("learning rates must be positive");
  }
  if (c.hidden_real < 1 || c.hidden_quat < 1 || c.hidden_dq < 1) {
    throw ConfigError("hidden widths must be >= 1");
  }
  if (c.translation_range <= 0.0) throw ConfigError("translation_range must be positive");
  if (c.pose_sequences < 2) throw ConfigError("pose_sequences must be >= 2");
  if (c.pose_t_obs < 1 || c.pose_t_fut < 1) throw ConfigError("pose horizons must be >= 1");
  if (c.pose_hidden < 1 || c.pose_latent < 1) throw ConfigError("pose widths must be >= 1");
  if (c.pose_epochs < 1) throw ConfigError("pose_epochs must be >= 1");
  if (c.pose_lr <= 0.0) throw ConfigError("pose_lr must be positive");
  if (c.kl_weight < 0.0) throw ConfigError("kl_weight must be >= 0");
  if (c.pose_velocity < 0.0 || c.pose_oscillation < 0.0) {
    throw ConfigError("pose magnitudes must be >= 0");
  }
}

}  // namespace dqnet
