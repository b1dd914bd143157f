#include "mfa/outputs.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "mfa/errors.hpp"
#include "mfa/svg.hpp"

namespace mfa {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);  // binary: identical bytes everywhere
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

ordered_json config_echo(const RunConfig& cfg) {
  ordered_json j;
  j["dataset"] = cfg.dataset;
  j["digits_path"] = cfg.digits_path;
  j["digits_class_a"] = cfg.digits_class_a;
  j["digits_class_b"] = cfg.digits_class_b;
  j["architecture"] = architecture_to_string(cfg.hidden);
  j["activation"] = to_string(cfg.activation);
  j["beta0"] = cfg.beta0;
  j["beta_trainable"] = cfg.beta_trainable;
  j["column_normalize"] = cfg.column_normalize;
  j["learning_rate"] = cfg.learning_rate;
  j["adam_b1"] = cfg.adam_b1;
  j["adam_b2"] = cfg.adam_b2;
  j["adam_eps"] = cfg.adam_eps;
  j["epochs"] = cfg.epochs;
  j["checkpoint_every"] = cfg.checkpoint_every;
  j["seed"] = cfg.seed;
  j["residual_tol"] = cfg.residual_tol;
  j["zero_tol_rel"] = cfg.zero_tol_rel;
  j["test_fraction"] = cfg.test_fraction;
  j["output_dir"] = cfg.output_dir;
  return j;
}

void write_trajectory_csv(const RunResult& run, const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  out << "epoch,loss_train,loss_test,acc_train,acc_test,alpha,gamma,zero_residual_frac\n";
  for (const TrajectoryRecord& r : run.trajectory) {
    out << r.epoch << ',' << fmt(r.loss_train) << ',' << fmt(r.loss_test) << ','
        << fmt(r.acc_train) << ',' << fmt(r.acc_test) << ',' << fmt(r.alpha) << ','
        << fmt(r.gamma) << ',' << fmt(r.zero_residual_frac) << '\n';
  }
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

void write_spectrum_csv(const RunResult& run, const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  out << "checkpoint_epoch,eig_index,eigenvalue\n";
  for (const CheckpointSpectrum& cs : run.spectra)
    for (std::size_t i = 0; i < cs.eigenvalues.size(); ++i)
      out << cs.epoch << ',' << i << ',' << fmt(cs.eigenvalues[i]) << '\n';
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

void write_summary_json(const RunResult& run, const std::filesystem::path& path) {
  ordered_json j = config_echo(run.config);
  const TrajectoryRecord& last = run.trajectory.back();
  j["final_loss_train"] = last.loss_train;
  j["final_loss_test"] = last.loss_test;
  j["final_acc_train"] = last.acc_train;
  j["final_acc_test"] = last.acc_test;
  j["final_alpha"] = last.alpha;
  j["final_gamma"] = last.gamma;
  j["final_zero_residual_frac"] = last.zero_residual_frac;
  j["param_dim"] = run.param_dim;
  j["negative_hidden_seen"] = run.negative_hidden_seen;
  std::ofstream out = open_out(path);
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

void write_checkpoint_json(const RunResult& run, const std::filesystem::path& path) {
  ordered_json j;
  j["version"] = "mfa-params-1";
  j["epoch"] = run.trajectory.back().epoch;
  j["config"] = config_echo(run.config);
  j["layer_sizes"] = run.net.layer_sizes;
  j["flat_params"] = flatten_params(run.net);
  j["betas"] = run.net.betas;
  std::ofstream out = open_out(path);
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

void write_svgs(const RunResult& run, const std::filesystem::path& dir) {
  SvgSeries train{"train", {}, {}}, test{"test", {}, {}};
  for (const TrajectoryRecord& r : run.trajectory) {
    train.x.push_back(static_cast<double>(r.epoch));
    train.y.push_back(r.loss_train);
    test.x.push_back(static_cast<double>(r.epoch));
    test.y.push_back(r.loss_test);
  }
  {
    std::ofstream out = open_out(dir / "loss.svg");
    out << svg_line_chart({train, test}, "cross-entropy vs epoch", "epoch", "loss");
  }
  {
    const Histogram h = eig_histogram(run.spectra.back().eigenvalues, 40);
    std::ofstream out = open_out(dir / "spectrum_hist.svg");
    out << svg_histogram(h, "final checkpoint eigenvalue histogram", "eigenvalue");
  }
}

}  // namespace

void emit_outputs(const RunResult& run, const std::filesystem::path& dir) {
  if (run.trajectory.empty()) throw std::invalid_argument("emit_outputs: run has no checkpoints");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
  write_trajectory_csv(run, dir / "trajectory.csv");
  write_spectrum_csv(run, dir / "spectrum.csv");
  write_summary_json(run, dir / "summary.json");
  write_checkpoint_json(run, dir / "checkpoint.json");
  write_svgs(run, dir);
}

void write_compare_summary(const CompareResult& cmp, const std::filesystem::path& path) {
  ordered_json j;
  j["loss_threshold"] = cmp.loss_threshold;
  j["cells"] = ordered_json::array();
  for (const CompareCell& c : cmp.cells) {
    ordered_json cell;
    cell["activation"] = c.activation;
    cell["seed"] = c.seed;
    cell["final_loss_train"] = c.final_loss_train;
    cell["epochs_to_threshold"] = c.epochs_to_threshold;
    cell["final_alpha"] = c.final_alpha;
    cell["final_gamma"] = c.final_gamma;
    cell["final_zero_residual_frac"] = c.final_zero_residual_frac;
    cell["eig_stddev"] = c.eig_stddev;
    cell["gamma_positive_everywhere"] = c.gamma_positive_everywhere;
    j["cells"].push_back(cell);
  }
  j["by_activation"] = ordered_json::array();
  for (const CompareActivationSummary& s : cmp.by_activation) {
    ordered_json row;
    row["activation"] = s.activation;
    row["median_final_loss"] = s.median_final_loss;
    row["median_epochs_to_threshold"] = s.median_epochs_to_threshold;
    row["median_final_alpha"] = s.median_final_alpha;
    row["median_final_gamma"] = s.median_final_gamma;
    row["median_final_zero_residual_frac"] = s.median_final_zero_residual_frac;
    row["median_eig_stddev"] = s.median_eig_stddev;
    j["by_activation"].push_back(row);
  }
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out = open_out(path);
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open checkpoint " + path.string());
  ordered_json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw std::runtime_error("bad checkpoint " + path.string() + ": " + e.what());
  }
  if (j.value("version", "") != std::string("mfa-params-1"))
    throw std::runtime_error("checkpoint " + path.string() + " has unsupported version");

  Checkpoint ck;
  ck.epoch = j.value("epoch", std::size_t{0});
  const ordered_json& c = j.at("config");
  for (auto it = c.begin(); it != c.end(); ++it) {
    std::string value;
    if (it.value().is_string())
      value = it.value().get<std::string>();
    else if (it.value().is_boolean())
      value = it.value().get<bool>() ? "true" : "false";
    else
      value = it.value().dump();
    set_config_value(ck.config, it.key(), value);
  }
  resolve_config(ck.config);

  const auto layer_sizes = j.at("layer_sizes").get<std::vector<std::size_t>>();
  Network proto = init_network(layer_sizes, ck.config.activation, /*seed=*/0, ck.config.beta0,
                               ck.config.beta_trainable);
  proto.betas = j.at("betas").get<std::vector<double>>();
  if (proto.betas.size() != proto.depth())
    throw std::runtime_error("checkpoint " + path.string() + " has wrong beta count");
  ck.net = unflatten_params(proto, j.at("flat_params").get<std::vector<double>>());
  return ck;
}

}  // namespace mfa
