#include "mfa/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mfa/config.hpp"
#include "mfa/dataset.hpp"
#include "mfa/errors.hpp"
#include "mfa/hessian.hpp"
#include "mfa/outputs.hpp"
#include "mfa/rng.hpp"
#include "mfa/svg.hpp"
#include "mfa/trainer.hpp"
#include "mfa/verify.hpp"

namespace mfa {

namespace {

/// One --<key> flag per config field; values flow through the same
/// set_config_value path as config files, so validation is uniform.
struct ConfigFlags {
  std::string config_path;
  std::map<std::string, std::string> values;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "flat key=value config file");
    for (const std::string& key : config_keys())
      cmd->add_option("--" + key, values[key], "override config key " + key);
  }

  RunConfig build(const CLI::App* cmd) const {
    RunConfig cfg;
    if (!config_path.empty()) cfg = load_config_file(config_path);
    for (const std::string& key : config_keys())
      if (cmd->count("--" + key) > 0) set_config_value(cfg, key, values.at(key));
    return cfg;
  }
};

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  std::stringstream ss(text);
  std::string field;
  while (std::getline(ss, field, ',')) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(field, &used);
      if (used != field.size()) throw std::invalid_argument(field);
      seeds.push_back(v);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad seed '" + field + "' in seed list");
    }
  }
  if (seeds.empty()) throw std::invalid_argument("empty seed list");
  return seeds;
}

int cmd_gen_data(const std::string& dataset, const std::string& out_path, std::uint64_t seed,
                 std::size_t count, double margin, double noise) {
  Dataset ds;
  if (dataset == "linear") {
    ds = gen_linear(count == 0 ? 51 : count, derive_seed(seed, 1), margin);
  } else if (dataset == "nonlinear") {
    ds = gen_nonlinear(count == 0 ? 863 : count, derive_seed(seed, 1), noise);
  } else {
    throw std::invalid_argument("gen-data handles linear or nonlinear; digits come from a CSV");
  }
  write_csv(ds, out_path);
  std::cout << "wrote " << ds.size() << " " << dataset << " examples to " << out_path << "\n";
  return 0;
}

int cmd_train(const RunConfig& cfg_in) {
  RunConfig cfg = cfg_in;
  resolve_config(cfg);
  const RunResult run = train_run(cfg);
  emit_outputs(run, cfg.output_dir);
  const TrajectoryRecord& last = run.trajectory.back();
  std::printf("seed %llu  epochs %zu  dim %zu\n",
              static_cast<unsigned long long>(cfg.seed), cfg.epochs, run.param_dim);
  std::printf("final: loss_train %.6g  loss_test %.6g  acc_train %.4g  acc_test %.4g\n",
              last.loss_train, last.loss_test, last.acc_train, last.acc_test);
  std::printf("spectrum: alpha %.6g  gamma %.6g  zero_residual_frac %.6g\n", last.alpha,
              last.gamma, last.zero_residual_frac);
  std::printf("outputs in %s\n", cfg.output_dir.c_str());
  return 0;
}

int cmd_compare(const RunConfig& base_in, const std::string& activations,
                const std::string& seeds_text, double loss_threshold, std::string out_path) {
  RunConfig base = base_in;
  resolve_config(base);

  std::vector<RunConfig> configs;
  std::stringstream ss(activations);
  std::string field;
  while (std::getline(ss, field, ',')) {
    RunConfig cfg = base;
    cfg.activation = activation_from_string(field);
    configs.push_back(cfg);
  }
  const std::vector<std::uint64_t> seeds = parse_seed_list(seeds_text);

  const CompareResult cmp = compare_runs(configs, seeds, loss_threshold);
  if (out_path.empty()) out_path = base.output_dir + "/compare_summary.json";
  write_compare_summary(cmp, out_path);

  std::printf("%-10s %14s %12s %10s %10s %10s %12s\n", "activation", "med_loss", "med_epochs",
              "med_alpha", "med_gamma", "med_zrf", "med_eig_sd");
  for (const CompareActivationSummary& s : cmp.by_activation)
    std::printf("%-10s %14.6g %12g %10.4g %10.4g %10.4g %12.6g\n", s.activation.c_str(),
                s.median_final_loss, s.median_epochs_to_threshold, s.median_final_alpha,
                s.median_final_gamma, s.median_final_zero_residual_frac, s.median_eig_stddev);
  std::printf("summary in %s\n", out_path.c_str());
  return 0;
}

int cmd_spectrum(const std::string& checkpoint_path, const std::string& out_dir) {
  const Checkpoint ck = load_checkpoint(checkpoint_path);
  const Dataset all = build_dataset(ck.config);
  auto [train, test] = split(all, ck.config.test_fraction, derive_seed(ck.config.seed, 2));
  (void)test;

  const Network& net = ck.net;
  const GradFn grad_at = [&net, &train](const std::vector<double>& p) {
    const Network probe = unflatten_params(net, p);
    const ForwardCache c = forward(probe, train.X);
    return flatten_gradients(probe, backward(probe, c, train.y));
  };
  const std::vector<double> theta = flatten_params(net);
  const HessianResult hr = hessian_fd(grad_at, theta);
  const std::vector<double> eigs = eigenvalues_symmetric(hr.H);
  const SpectrumReport sr = spectral_indices(eigs, ck.config.zero_tol_rel);

  std::printf("checkpoint epoch %zu  dim %zu\n", ck.epoch, theta.size());
  std::printf("alpha %.6g  gamma %.6g  zero_tol %.3g  lambda_min %.6g  lambda_max %.6g\n",
              sr.alpha, sr.gamma, sr.zero_tol, eigs.front(), eigs.back());

  if (!out_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw std::runtime_error("cannot create " + out_dir + ": " + ec.message());
    std::ofstream out(std::filesystem::path(out_dir) / "spectrum.csv", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + out_dir + "/spectrum.csv");
    out << "checkpoint_epoch,eig_index,eigenvalue\n";
    char buf[32];
    for (std::size_t i = 0; i < eigs.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g", eigs[i]);
      out << ck.epoch << ',' << i << ',' << buf << '\n';
    }
    std::ofstream svg(std::filesystem::path(out_dir) / "spectrum_hist.svg", std::ios::binary);
    if (!svg) throw std::runtime_error("cannot write " + out_dir + "/spectrum_hist.svg");
    svg << svg_histogram(eig_histogram(eigs, 40), "eigenvalue histogram", "eigenvalue");
    std::printf("outputs in %s\n", out_dir.c_str());
  }
  return 0;
}

int cmd_limits(const std::vector<double>& betas, double h_max, std::size_t points) {
  if (h_max <= 0.0) throw std::invalid_argument("--h-max must be > 0");
  if (points < 2) throw std::invalid_argument("--points must be >= 2");
  std::vector<double> grid;
  grid.reserve(points);
  for (std::size_t i = 0; i < points; ++i)
    grid.push_back(-h_max + 2.0 * h_max * static_cast<double>(i) / static_cast<double>(points - 1));

  std::printf("%12s %14s %14s %14s %14s\n", "beta", "relu_gap", "relu_bound", "linear_gap",
              "linear_bound");
  for (double beta : betas) {
    const LimitGaps g = limit_check(grid, NoiseParam(beta));
    std::printf("%12g %14.6g %14.6g %14.6g %14.6g\n", beta, g.relu_gap,
                1.0 / (2.718281828459045 * beta), g.linear_gap, beta * h_max * h_max / 4.0);
  }
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"mean-field activation laboratory: train small binary classifiers and "
               "study their loss-landscape spectra"};
  app.require_subcommand(1);

  // gen-data
  auto* gen = app.add_subcommand("gen-data", "generate a synthetic dataset CSV");
  std::string gd_dataset, gd_out;
  std::uint64_t gd_seed = 1;
  std::size_t gd_count = 0;
  double gd_margin = 0.2, gd_noise = 0.05;
  gen->add_option("--dataset", gd_dataset, "linear or nonlinear")->required();
  gen->add_option("--out", gd_out, "output CSV path")->required();
  gen->add_option("--seed", gd_seed, "generator seed");
  gen->add_option("--count", gd_count, "examples (default 51 linear / 863 nonlinear)");
  gen->add_option("--margin", gd_margin, "linear: separation margin");
  gen->add_option("--noise", gd_noise, "nonlinear: arc jitter stddev");

  // train
  auto* train = app.add_subcommand("train", "run one training configuration");
  ConfigFlags train_flags;
  train_flags.attach(train);

  // compare
  auto* compare = app.add_subcommand("compare", "sweep activations over seeds");
  ConfigFlags compare_flags;
  compare_flags.attach(compare);
  std::string cp_activations = "sigmoid,relu,swish";
  std::string cp_seeds = "1,2,3,4,5,6,7,8,9,10";
  double cp_threshold = 0.1;
  std::string cp_out;
  compare->add_option("--activations", cp_activations, "comma-separated activation list");
  compare->add_option("--seeds", cp_seeds, "comma-separated seed list");
  compare->add_option("--loss-threshold", cp_threshold, "epochs-to-threshold target");
  compare->add_option("--out", cp_out, "summary JSON path");

  // spectrum
  auto* spectrum = app.add_subcommand("spectrum", "recompute Hessian spectrum from a checkpoint");
  std::string sp_checkpoint, sp_out;
  spectrum->add_option("--checkpoint", sp_checkpoint, "checkpoint.json path")->required();
  spectrum->add_option("--out", sp_out, "directory for spectrum.csv / histogram");

  // limits
  auto* limits = app.add_subcommand("limits", "swish-vs-limit gap table");
  std::vector<double> lm_betas = {0.001, 0.01, 0.1, 1.0, 10.0, 100.0, 1000.0};
  double lm_hmax = 10.0;
  std::size_t lm_points = 2001;
  limits->add_option("--beta", lm_betas, "noise parameters to tabulate");
  limits->add_option("--h-max", lm_hmax, "grid half-width");
  limits->add_option("--points", lm_points, "grid size");

  // verify
  app.add_subcommand("verify", "run the built-in oracle suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (gen->parsed()) return cmd_gen_data(gd_dataset, gd_out, gd_seed, gd_count, gd_margin, gd_noise);
    if (train->parsed()) return cmd_train(train_flags.build(train));
    if (compare->parsed())
      return cmd_compare(compare_flags.build(compare), cp_activations, cp_seeds, cp_threshold, cp_out);
    if (spectrum->parsed()) return cmd_spectrum(sp_checkpoint, sp_out);
    if (limits->parsed()) return cmd_limits(lm_betas, lm_hmax, lm_points);
    // verify
    const int failures = run_verification(std::cout);
    if (failures != 0) {
      std::cout << failures << " suite(s) failed\n";
      return 1;
    }
    std::cout << "all suites passed\n";
    return 0;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::logic_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace mfa
