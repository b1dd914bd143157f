#include "mfa/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "mfa/errors.hpp"

namespace mfa {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_real(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size() || !std::isfinite(v)) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key + "' needs a finite real, got '" + value + "'");
  }
}

long long parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key + "' needs an integer, got '" + value + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  throw std::invalid_argument("config key '" + key + "' needs a boolean, got '" + value + "'");
}

std::size_t parse_count(const std::string& key, const std::string& value) {
  const long long v = parse_int(key, value);
  if (v < 0) throw std::invalid_argument("config key '" + key + "' must be non-negative");
  return static_cast<std::size_t>(v);
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "dataset",        "digits_path",   "digits_class_a", "digits_class_b",
      "architecture",   "activation",    "beta0",          "beta_trainable",
      "column_normalize", "learning_rate", "adam_b1",      "adam_b2",
      "adam_eps",       "epochs",        "checkpoint_every", "seed",
      "residual_tol",   "zero_tol_rel",  "test_fraction",  "output_dir"};
  return keys;
}

std::vector<std::size_t> parse_architecture(const std::string& text) {
  std::vector<std::size_t> hidden;
  std::stringstream ss(text);
  std::string field;
  while (std::getline(ss, field, ',')) {
    field = trim(field);
    const long long v = parse_int("architecture", field);
    if (v < 1) throw std::invalid_argument("architecture widths must be >= 1");
    hidden.push_back(static_cast<std::size_t>(v));
  }
  if (hidden.empty()) throw std::invalid_argument("architecture must list at least one hidden width");
  return hidden;
}

std::string architecture_to_string(const std::vector<std::size_t>& hidden) {
  std::string out;
  for (std::size_t i = 0; i < hidden.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(hidden[i]);
  }
  return out;
}

void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "dataset") {
    if (value != "linear" && value != "nonlinear" && value != "digits")
      throw std::invalid_argument("dataset must be linear, nonlinear, or digits; got '" + value + "'");
    cfg.dataset = value;
  } else if (key == "digits_path") {
    cfg.digits_path = value;
  } else if (key == "digits_class_a") {
    cfg.digits_class_a = static_cast<int>(parse_int(key, value));
  } else if (key == "digits_class_b") {
    cfg.digits_class_b = static_cast<int>(parse_int(key, value));
  } else if (key == "architecture") {
    cfg.hidden = parse_architecture(value);
  } else if (key == "activation") {
    cfg.activation = activation_from_string(value);
  } else if (key == "beta0") {
    cfg.beta0 = parse_real(key, value);
  } else if (key == "beta_trainable") {
    cfg.beta_trainable = parse_bool(key, value);
  } else if (key == "column_normalize") {
    cfg.column_normalize = parse_bool(key, value);
  } else if (key == "learning_rate") {
    cfg.learning_rate = parse_real(key, value);
  } else if (key == "adam_b1") {
    cfg.adam_b1 = parse_real(key, value);
  } else if (key == "adam_b2") {
    cfg.adam_b2 = parse_real(key, value);
  } else if (key == "adam_eps") {
    cfg.adam_eps = parse_real(key, value);
  } else if (key == "epochs") {
    cfg.epochs = parse_count(key, value);
    if (cfg.epochs == 0) throw std::invalid_argument("epochs must be >= 1");
  } else if (key == "checkpoint_every") {
    cfg.checkpoint_every = parse_count(key, value);
    if (cfg.checkpoint_every == 0) throw std::invalid_argument("checkpoint_every must be >= 1");
  } else if (key == "seed") {
    cfg.seed = static_cast<std::uint64_t>(parse_int(key, value));
  } else if (key == "residual_tol") {
    cfg.residual_tol = parse_real(key, value);
  } else if (key == "zero_tol_rel") {
    cfg.zero_tol_rel = parse_real(key, value);
  } else if (key == "test_fraction") {
    cfg.test_fraction = parse_real(key, value);
  } else if (key == "output_dir") {
    cfg.output_dir = value;
  } else {
    std::string msg = "unknown config key '" + key + "'; valid keys:";
    for (const auto& k : config_keys()) msg += " " + k;
    throw std::invalid_argument(msg);
  }
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  RunConfig cfg;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected key=value, got '" + line + "'", line_no);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError("empty key", line_no);
    try {
      set_config_value(cfg, key, value);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return cfg;
}

void resolve_config(RunConfig& cfg) {
  if (cfg.dataset != "linear" && cfg.dataset != "nonlinear" && cfg.dataset != "digits")
    throw std::invalid_argument("dataset must be linear, nonlinear, or digits; got '" +
                                cfg.dataset + "'");
  const bool digits = cfg.dataset == "digits";
  if (cfg.hidden.empty()) {
    if (cfg.dataset == "linear")
      cfg.hidden = {10};
    else if (cfg.dataset == "nonlinear")
      cfg.hidden = {8, 2};
    else
      cfg.hidden = {25};
  }
  if (cfg.epochs == 0) {
    if (cfg.dataset == "linear")
      cfg.epochs = 2000;
    else if (cfg.dataset == "nonlinear")
      cfg.epochs = 5000;
    else
      cfg.epochs = 3000;
  }
  if (cfg.checkpoint_every == 0) cfg.checkpoint_every = std::max<std::size_t>(1, cfg.epochs / 20);

  if (cfg.learning_rate <= 0.0) throw std::invalid_argument("learning_rate must be > 0");
  if (cfg.adam_b1 < 0.0 || cfg.adam_b1 >= 1.0 || cfg.adam_b2 < 0.0 || cfg.adam_b2 >= 1.0)
    throw std::invalid_argument("adam moments must lie in [0,1)");
  if (cfg.adam_eps <= 0.0) throw std::invalid_argument("adam_eps must be > 0");
  if (cfg.epochs < 1) throw std::invalid_argument("epochs must be >= 1");
  if (cfg.checkpoint_every < 1 || cfg.checkpoint_every > cfg.epochs)
    throw std::invalid_argument("checkpoint_every must lie in [1, epochs]");
  if (!(cfg.beta0 > 0.0) || !std::isfinite(cfg.beta0))
    throw std::invalid_argument("beta0 must be finite and > 0");
  if (cfg.residual_tol <= 0.0) throw std::invalid_argument("residual_tol must be > 0");
  if (cfg.zero_tol_rel <= 0.0) throw std::invalid_argument("zero_tol_rel must be > 0");
  if (cfg.test_fraction <= 0.0 || cfg.test_fraction >= 1.0)
    throw std::invalid_argument("test_fraction must lie in (0,1)");
  if (digits) {
    if (cfg.digits_class_a == cfg.digits_class_b)
      throw std::invalid_argument("digits classes must differ");
    if (cfg.digits_class_a < 0 || cfg.digits_class_a > 9 || cfg.digits_class_b < 0 ||
        cfg.digits_class_b > 9)
      throw std::invalid_argument("digits classes must lie in [0,9]");
  }
  if (cfg.output_dir.empty()) throw std::invalid_argument("output_dir must be non-empty");
}

std::vector<std::size_t> full_architecture(const RunConfig& cfg) {
  std::vector<std::size_t> arch;
  arch.push_back(cfg.dataset == "digits" ? 64 : 2);
  arch.insert(arch.end(), cfg.hidden.begin(), cfg.hidden.end());
  arch.push_back(1);
  return arch;
}

std::size_t dataset_examples(const RunConfig& cfg) {
  if (cfg.dataset == "linear") return 51;
  if (cfg.dataset == "nonlinear") return 863;
  return 0;  // digits: whatever the CSV holds
}

}  // namespace mfa
