#include "mfa/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "mfa/adam.hpp"
#include "mfa/errors.hpp"
#include "mfa/hessian.hpp"
#include "mfa/loss.hpp"
#include "mfa/rng.hpp"

namespace mfa {

namespace {

// Independent seed streams hanging off the run seed.
constexpr std::uint64_t kStreamData = 1;
constexpr std::uint64_t kStreamSplit = 2;
constexpr std::uint64_t kStreamInit = 3;

double accuracy_of(const std::vector<double>& y_hat, const std::vector<double>& y) {
  std::size_t hits = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double pred = y_hat[i] >= 0.5 ? 1.0 : 0.0;
    if (pred == y[i]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(y.size());
}

bool any_negative_hidden(const ForwardCache& cache) {
  // acts[0] is the input batch; everything after it is a hidden layer.
  for (std::size_t l = 1; l < cache.acts.size(); ++l) {
    const Matrix& a = cache.acts[l];
    for (std::size_t i = 0; i < a.rows() * a.cols(); ++i)
      if (a.data()[i] < 0.0) return true;
  }
  return false;
}

}  // namespace

Dataset build_dataset(const RunConfig& cfg) {
  if (cfg.dataset == "linear")
    return gen_linear(dataset_examples(cfg), derive_seed(cfg.seed, kStreamData));
  if (cfg.dataset == "nonlinear")
    return gen_nonlinear(dataset_examples(cfg), derive_seed(cfg.seed, kStreamData));
  return load_digits_csv(cfg.digits_path, cfg.digits_class_a, cfg.digits_class_b);
}

RunResult train_run(const RunConfig& raw) {
  RunConfig cfg = raw;
  resolve_config(cfg);

  const Dataset all = build_dataset(cfg);
  auto [train, test] = split(all, cfg.test_fraction, derive_seed(cfg.seed, kStreamSplit));

  Network net = init_network(full_architecture(cfg), cfg.activation,
                             derive_seed(cfg.seed, kStreamInit), cfg.beta0, cfg.beta_trainable);
  if (cfg.column_normalize) net = column_normalize(net);

  std::vector<double> theta = flatten_params(net);
  const std::size_t dim = theta.size();
  const std::size_t clip_from = dim - (net.betas_in_flat() ? net.depth() : 0);

  const AdamConfig acfg{cfg.learning_rate, cfg.adam_b1, cfg.adam_b2, cfg.adam_eps};
  AdamState astate(dim);

  RunResult out;
  out.config = cfg;
  out.param_dim = dim;
  out.epoch_loss_train.reserve(cfg.epochs);
  out.epoch_acc_train.reserve(cfg.epochs);

  const GradFn grad_at = [&net, &train](const std::vector<double>& p) {
    const Network probe = unflatten_params(net, p);
    const ForwardCache c = forward(probe, train.X);
    return flatten_gradients(probe, backward(probe, c, train.y));
  };

  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    const ForwardCache cache = forward(net, train.X);
    const double loss = bce_loss(cache.outputs, train.y);
    if (!std::isfinite(loss)) throw DivergenceError(static_cast<long>(epoch));
    out.epoch_loss_train.push_back(loss);
    out.epoch_acc_train.push_back(accuracy_of(cache.outputs, train.y));

    const Gradients grads = backward(net, cache, train.y);
    const std::vector<double> grad = flatten_gradients(net, grads);
    adam_step(theta, grad, astate, acfg, clip_from);
    net = unflatten_params(net, theta);
    if (cfg.column_normalize) {
      net = column_normalize(net);
      theta = flatten_params(net);
    }

    if (epoch % cfg.checkpoint_every == 0 || epoch == cfg.epochs) {
      const ForwardCache ctr = forward(net, train.X);
      TrajectoryRecord row;
      row.epoch = epoch;
      row.loss_train = bce_loss(ctr.outputs, train.y);
      if (!std::isfinite(row.loss_train)) throw DivergenceError(static_cast<long>(epoch));
      row.acc_train = accuracy_of(ctr.outputs, train.y);
      const ForwardCache cte = forward(net, test.X);
      row.loss_test = bce_loss(cte.outputs, test.y);
      row.acc_test = accuracy_of(cte.outputs, test.y);
      row.zero_residual_frac = residual_report(ctr.outputs, train.y, cfg.residual_tol).zero_fraction;

      const HessianResult hr = hessian_fd(grad_at, theta);
      std::vector<double> eigs = eigenvalues_symmetric(hr.H);
      const SpectrumReport sr = spectral_indices(eigs, cfg.zero_tol_rel);
      row.alpha = sr.alpha;
      row.gamma = sr.gamma;

      if (any_negative_hidden(ctr)) out.negative_hidden_seen = true;

      out.trajectory.push_back(row);
      out.spectra.push_back(CheckpointSpectrum{epoch, std::move(eigs)});
    }
  }

  out.net = std::move(net);
  return out;
}

double median(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("median of empty set");
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

double sample_stddev(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

namespace {

void require_comparable(const RunConfig& a, const RunConfig& b) {
  const bool same = a.dataset == b.dataset && a.digits_path == b.digits_path &&
                    a.digits_class_a == b.digits_class_a && a.digits_class_b == b.digits_class_b &&
                    a.hidden == b.hidden && a.beta0 == b.beta0 &&
                    a.beta_trainable == b.beta_trainable &&
                    a.column_normalize == b.column_normalize &&
                    a.learning_rate == b.learning_rate && a.adam_b1 == b.adam_b1 &&
                    a.adam_b2 == b.adam_b2 && a.adam_eps == b.adam_eps && a.epochs == b.epochs &&
                    a.checkpoint_every == b.checkpoint_every && a.residual_tol == b.residual_tol &&
                    a.zero_tol_rel == b.zero_tol_rel && a.test_fraction == b.test_fraction;
  if (!same)
    throw std::invalid_argument("compare configs must differ only in activation");
}

}  // namespace

CompareResult compare_runs(const std::vector<RunConfig>& configs,
                           const std::vector<std::uint64_t>& seeds, double loss_threshold) {
  if (configs.size() < 2) throw std::invalid_argument("compare needs at least 2 configs");
  if (seeds.empty()) throw std::invalid_argument("compare needs at least 1 seed");
  if (loss_threshold <= 0.0) throw std::invalid_argument("loss threshold must be > 0");

  std::vector<RunConfig> resolved(configs);
  for (RunConfig& c : resolved) resolve_config(c);
  for (std::size_t i = 1; i < resolved.size(); ++i) require_comparable(resolved.front(), resolved[i]);

  CompareResult result;
  result.loss_threshold = loss_threshold;

  for (const RunConfig& base : resolved) {
    for (const std::uint64_t seed : seeds) {
      RunConfig cfg = base;
      cfg.seed = seed;
      const RunResult run = train_run(cfg);

      CompareCell cell;
      cell.activation = to_string(cfg.activation);
      cell.seed = seed;
      cell.final_loss_train = run.trajectory.back().loss_train;
      cell.epochs_to_threshold = -1;
      for (std::size_t k = 0; k < run.epoch_loss_train.size(); ++k) {
        if (run.epoch_loss_train[k] <= loss_threshold) {
          cell.epochs_to_threshold = static_cast<long long>(k);
          break;
        }
      }
      if (cell.epochs_to_threshold < 0 && cell.final_loss_train <= loss_threshold)
        cell.epochs_to_threshold = static_cast<long long>(cfg.epochs);
      cell.final_alpha = run.trajectory.back().alpha;
      cell.final_gamma = run.trajectory.back().gamma;
      cell.final_zero_residual_frac = run.trajectory.back().zero_residual_frac;
      cell.eig_stddev = sample_stddev(run.spectra.back().eigenvalues);
      cell.gamma_positive_everywhere = true;
      for (const TrajectoryRecord& row : run.trajectory)
        if (!(row.gamma > 0.0)) cell.gamma_positive_everywhere = false;
      result.cells.push_back(std::move(cell));
    }
  }

  // Group in first-appearance order; duplicated activations merge.
  std::vector<std::string> order;
  for (const CompareCell& c : result.cells)
    if (std::find(order.begin(), order.end(), c.activation) == order.end())
      order.push_back(c.activation);

  for (const std::string& act : order) {
    std::vector<double> losses, epochs_to, alphas, gammas, zrfs, stds;
    for (const CompareCell& c : result.cells) {
      if (c.activation != act) continue;
      losses.push_back(c.final_loss_train);
      epochs_to.push_back(c.epochs_to_threshold < 0
                              ? static_cast<double>(resolved.front().epochs + 1)
                              : static_cast<double>(c.epochs_to_threshold));
      alphas.push_back(c.final_alpha);
      gammas.push_back(c.final_gamma);
      zrfs.push_back(c.final_zero_residual_frac);
      stds.push_back(c.eig_stddev);
    }
    CompareActivationSummary s;
    s.activation = act;
    s.median_final_loss = median(losses);
    s.median_epochs_to_threshold = median(epochs_to);
    s.median_final_alpha = median(alphas);
    s.median_final_gamma = median(gammas);
    s.median_final_zero_residual_frac = median(zrfs);
    s.median_eig_stddev = median(stds);
    result.by_activation.push_back(std::move(s));
  }
  return result;
}

}  // namespace mfa
