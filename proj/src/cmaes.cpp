#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <random>

#include <Eigen/Dense>

#include "berth/core.hpp"
#include "berth/optimizer.hpp"
#include "berth/population.hpp"

namespace berth {

void validate(const BoxBounds& b) {
  if (b.lower.size() != b.upper.size() || b.lower.empty())
    throw Error("lower and upper bounds must be non-empty and of equal length", "bounds");
  for (std::size_t i = 0; i < b.lower.size(); ++i)
    if (!(b.lower[i] < b.upper[i]) || !std::isfinite(b.lower[i]) || !std::isfinite(b.upper[i]))
      throw Error("requires finite lower < upper", "bounds[" + std::to_string(i) + "]");
}

RepairResult repair_to_box(std::span<const double> x, const BoxBounds& b) {
  RepairResult r;
  r.x.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    r.x[i] = std::clamp(x[i], b.lower[i], b.upper[i]);
    const double d = (x[i] - r.x[i]) / (b.upper[i] - b.lower[i]);
    r.penalty += d * d;
  }
  return r;
}

void validate(const OptimizerConfig& cfg) {
  if (cfg.initial_population < 4) throw Error("must be at least 4", "optimizer.initial_population");
  if (cfg.max_population < cfg.initial_population)
    throw Error("must be at least initial_population", "optimizer.max_population");
  if (cfg.max_evaluations <= 0) throw Error("must be positive", "optimizer.max_evaluations");
  if (!(cfg.initial_sigma > 0.0)) throw Error("must be positive", "optimizer.initial_sigma");
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// One CMA-ES run in normalized coordinates.
class Strategy {
 public:
  Strategy(int n, int lambda, double sigma0, VectorXd mean)
      : n_(n), lambda_(lambda), mu_(lambda / 2), mean_(std::move(mean)), sigma_(sigma0) {
    weights_.resize(mu_);
    for (int i = 0; i < mu_; ++i) weights_[i] = std::log(mu_ + 0.5) - std::log(i + 1.0);
    weights_ /= weights_.sum();
    mueff_ = 1.0 / weights_.squaredNorm();

    const double nd = n_;
    cs_ = (mueff_ + 2.0) / (nd + mueff_ + 5.0);
    ds_ = 1.0 + 2.0 * std::max(0.0, std::sqrt((mueff_ - 1.0) / (nd + 1.0)) - 1.0) + cs_;
    cc_ = (4.0 + mueff_ / nd) / (nd + 4.0 + 2.0 * mueff_ / nd);
    c1_ = 2.0 / ((nd + 1.3) * (nd + 1.3) + mueff_);
    cmu_ = std::min(1.0 - c1_, 2.0 * (mueff_ - 2.0 + 1.0 / mueff_) / ((nd + 2.0) * (nd + 2.0) + mueff_));
    chin_ = std::sqrt(nd) * (1.0 - 1.0 / (4.0 * nd) + 1.0 / (21.0 * nd * nd));

    ps_ = VectorXd::Zero(n_);
    pc_ = VectorXd::Zero(n_);
    C_ = MatrixXd::Identity(n_, n_);
    B_ = MatrixXd::Identity(n_, n_);
    D_ = VectorXd::Ones(n_);
    invsqrtC_ = MatrixXd::Identity(n_, n_);
  }

  int lambda() const { return lambda_; }

  std::vector<VectorXd> sample(std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<VectorXd> xs(lambda_);
    VectorXd z(n_);
    for (auto& x : xs) {
      for (int i = 0; i < n_; ++i) z[i] = normal(rng);
      x = mean_ + sigma_ * (B_ * D_.cwiseProduct(z));
    }
    return xs;
  }

  void update(const std::vector<VectorXd>& xs, const std::vector<double>& fitness) {
    ++generation_;
    std::vector<int> order(lambda_);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return fitness[a] < fitness[b]; });

    const VectorXd old_mean = mean_;
    mean_.setZero();
    for (int i = 0; i < mu_; ++i) mean_ += weights_[i] * xs[order[i]];
    const VectorXd yw = (mean_ - old_mean) / sigma_;

    ps_ = (1.0 - cs_) * ps_ + std::sqrt(cs_ * (2.0 - cs_) * mueff_) * (invsqrtC_ * yw);
    const double ps_norm = ps_.norm();
    const double hs_lhs = ps_norm / std::sqrt(1.0 - std::pow(1.0 - cs_, 2.0 * generation_));
    const bool hsig = hs_lhs < (1.4 + 2.0 / (n_ + 1.0)) * chin_;
    pc_ = (1.0 - cc_) * pc_ + (hsig ? std::sqrt(cc_ * (2.0 - cc_) * mueff_) : 0.0) * yw;

    MatrixXd rank_mu = MatrixXd::Zero(n_, n_);
    for (int i = 0; i < mu_; ++i) {
      const VectorXd y = (xs[order[i]] - old_mean) / sigma_;
      rank_mu.noalias() += weights_[i] * y * y.transpose();
    }
    const double hs_corr = hsig ? 0.0 : c1_ * cc_ * (2.0 - cc_);
    C_ = (1.0 - c1_ - cmu_ + hs_corr) * C_ + c1_ * (pc_ * pc_.transpose()) + cmu_ * rank_mu;

    sigma_ *= std::exp((cs_ / ds_) * (ps_norm / chin_ - 1.0));

    if (generation_ - eigen_generation_ > lambda_ / (c1_ + cmu_) / n_ / 10.0) decompose();
  }

  /// Returns false when the covariance lost positive definiteness.
  bool decompose() {
    eigen_generation_ = generation_;
    C_ = 0.5 * (C_ + C_.transpose());
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(C_);
    if (es.info() != Eigen::Success) return healthy_ = false;
    VectorXd ev = es.eigenvalues();
    if (ev.minCoeff() <= 0.0) return healthy_ = false;
    B_ = es.eigenvectors();
    D_ = ev.cwiseSqrt();
    invsqrtC_ = B_ * D_.cwiseInverse().asDiagonal() * B_.transpose();
    return true;
  }

  bool healthy() const { return healthy_; }
  double step_size() const { return sigma_ * D_.maxCoeff(); }
  double condition() const {
    const double lo = D_.minCoeff();
    return lo > 0.0 ? (D_.maxCoeff() / lo) * (D_.maxCoeff() / lo)
                    : std::numeric_limits<double>::infinity();
  }

 private:
  int n_;
  int lambda_;
  int mu_;
  VectorXd weights_;
  double mueff_ = 0.0;
  double cs_ = 0.0, ds_ = 0.0, cc_ = 0.0, c1_ = 0.0, cmu_ = 0.0, chin_ = 0.0;
  VectorXd mean_;
  double sigma_;
  VectorXd ps_, pc_;
  MatrixXd C_, B_, invsqrtC_;
  VectorXd D_;
  long generation_ = 0;
  long eigen_generation_ = 0;
  bool healthy_ = true;
};

}  // namespace

CmaesResult minimize(const Objective& objective, const BoxBounds& bounds,
                     const OptimizerConfig& cfg, const ProgressSink& progress) {
  validate(bounds);
  validate(cfg);
  const int n = static_cast<int>(bounds.dim());
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  BoxBounds unit{std::vector<double>(n, 0.0), std::vector<double>(n, 1.0)};
  auto to_raw = [&](const std::vector<double>& y) {
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = bounds.lower[i] + y[i] * (bounds.upper[i] - bounds.lower[i]);
    return x;
  };

  CmaesResult result;
  result.best_f = std::numeric_limits<double>::infinity();
  long iteration = 0;
  int lambda = cfg.initial_population;
  int restart = 0;

  while (result.evaluations + lambda <= cfg.max_evaluations) {
    VectorXd mean(n);
    for (int i = 0; i < n; ++i) mean[i] = uniform(rng);
    Strategy es(n, lambda, cfg.initial_sigma, mean);
    result.populations.push_back(lambda);

    const auto window = static_cast<std::size_t>(10 + std::ceil(30.0 * n / lambda));
    std::deque<double> recent;
    std::string trigger = "budget";

    while (result.evaluations + lambda <= cfg.max_evaluations) {
      const auto xs = es.sample(rng);
      Population feasible(lambda);
      std::vector<double> penalties(lambda);
      for (int k = 0; k < lambda; ++k) {
        auto rep = repair_to_box(std::span<const double>(xs[k].data(), n), unit);
        feasible[k] = to_raw(rep.x);
        penalties[k] = rep.penalty;
      }
      const auto values = evaluate_population(objective, feasible, cfg.threads);
      result.evaluations += lambda;

      std::vector<double> fitness(lambda);
      int gen_best = 0;
      for (int k = 0; k < lambda; ++k) {
        if (!std::isfinite(values[k]))
          throw Error("objective returned a non-finite value at evaluation " +
                      std::to_string(result.evaluations - lambda + k));
        fitness[k] = values[k] + penalties[k];
        if (values[k] < values[gen_best]) gen_best = k;
      }
      if (values[gen_best] < result.best_f) {
        result.best_f = values[gen_best];
        result.best_x = feasible[gen_best];
      }

      es.update(xs, fitness);
      ++iteration;

      GenerationRecord rec;
      rec.iteration = iteration;
      rec.evaluations = result.evaluations;
      rec.restart = restart;
      rec.population = lambda;
      rec.best = values[gen_best];
      rec.best_ever = result.best_f;
      rec.sigma = es.step_size();
      rec.axis_ratio = std::sqrt(es.condition());
      result.history.push_back(rec);
      if (progress) progress({ProgressEvent::Kind::kIteration, rec, {}});

      recent.push_back(values[gen_best]);
      if (recent.size() > window) recent.pop_front();
      if (recent.size() == window) {
        const auto [lo, hi] = std::minmax_element(recent.begin(), recent.end());
        if (*hi - *lo < cfg.tol_fun_hist) {
          trigger = "tol_fun_hist";
          break;
        }
      }
      if (!es.healthy()) {
        trigger = "covariance_breakdown";
        break;
      }
      if (es.step_size() < cfg.tol_sigma) {
        trigger = "tol_sigma";
        break;
      }
      if (es.condition() > cfg.max_condition) {
        trigger = "condition";
        break;
      }
    }
    if (trigger == "budget") break;

    ++restart;
    lambda = std::min(2 * lambda, cfg.max_population);
    RestartEvent ev{iteration, result.evaluations, trigger, lambda};
    result.restarts.push_back(ev);
    if (progress) progress({ProgressEvent::Kind::kRestart, {}, ev});
  }
  return result;
}

}  // namespace berth
