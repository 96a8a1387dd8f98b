#include "epitrace/diagnostics/lasso.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "epitrace/error.hpp"

namespace epitrace {

namespace {

double softplus(double z) noexcept {
  return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

Eigen::VectorXd soft_threshold(const Eigen::VectorXd& v, double t) {
  return v.unaryExpr([t](double x) { return x > t ? x - t : (x < -t ? x + t : 0.0); });
}

}  // namespace

double sigmoid(double z) noexcept {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

LossGradient logistic_loss_gradient(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                    const Eigen::VectorXd& w, double b) {
  const double m = static_cast<double>(X.rows());
  const Eigen::VectorXd z = (X * w).array() + b;
  LossGradient out;
  Eigen::VectorXd r(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    out.loss += softplus(z(i)) - y(i) * z(i);
    r(i) = sigmoid(z(i)) - y(i);
  }
  out.loss /= m;
  out.grad_w = X.transpose() * r / m;
  out.grad_b = r.sum() / m;
  return out;
}

double lasso_objective(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                       const Eigen::VectorXd& w, double b, double C) {
  const double lambda = 1.0 / (C * static_cast<double>(X.rows()));
  return logistic_loss_gradient(X, y, w, b).loss + lambda * w.lpNorm<1>();
}

LassoModel fit_lasso_logistic(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                              const LassoConfig& config, const std::vector<bool>& excluded) {
  if (X.rows() != y.size()) {
    throw InputError(fmt::format("X has {} rows but y has {} labels", X.rows(), y.size()));
  }
  if (!(config.C > 0)) throw InputError("C must be positive");
  if (config.max_iter < 1) throw InputError("max_iter must be at least 1");
  if (!(config.tol > 0)) throw InputError("tol must be positive");
  if (!excluded.empty() && excluded.size() != static_cast<std::size_t>(X.cols())) {
    throw InputError("exclusion mask does not match the feature count");
  }
  bool has0 = false, has1 = false;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (y(i) == 0.0) {
      has0 = true;
    } else if (y(i) == 1.0) {
      has1 = true;
    } else {
      throw InputError("labels must be 0 or 1");
    }
  }
  if (!has0 || !has1) throw InputError("labels must contain both classes");

  std::vector<Eigen::Index> active;
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    if (excluded.empty() || !excluded[static_cast<std::size_t>(j)]) active.push_back(j);
  }
  Eigen::MatrixXd A(X.rows(), static_cast<Eigen::Index>(active.size()));
  for (std::size_t k = 0; k < active.size(); ++k) A.col(static_cast<Eigen::Index>(k)) = X.col(active[k]);

  const double m = static_cast<double>(X.rows());
  const double lambda = 1.0 / (config.C * m);

  Eigen::VectorXd w = Eigen::VectorXd::Zero(A.cols());
  double b = 0.0;
  LossGradient cur = logistic_loss_gradient(A, y, w, b);
  double F = cur.loss;

  LassoModel model;
  model.initial_objective = F;

  // Safe first step from the Lipschitz bound (||A||_F^2 + M) / (4M).
  double step = 4.0 * m / (A.squaredNorm() + m);
  for (int it = 0; it < config.max_iter; ++it) {
    Eigen::VectorXd w_new;
    double b_new = 0.0;
    LossGradient next;
    for (;;) {
      w_new = soft_threshold(w - step * cur.grad_w, step * lambda);
      b_new = b - step * cur.grad_b;
      next = logistic_loss_gradient(A, y, w_new, b_new);
      const Eigen::VectorXd dw = w_new - w;
      const double db = b_new - b;
      const double bound = cur.loss + cur.grad_w.dot(dw) + cur.grad_b * db +
                           (dw.squaredNorm() + db * db) / (2.0 * step);
      if (next.loss <= bound + 1e-15 * std::max(1.0, std::abs(cur.loss)) || step < 1e-20) break;
      step *= 0.5;
    }
    const double F_new = next.loss + lambda * w_new.lpNorm<1>();
    model.iterations = it + 1;

    const Eigen::VectorXd sw = w_new - w;
    const double sb = b_new - b;
    const Eigen::VectorXd gw = next.grad_w - cur.grad_w;
    const double gb = next.grad_b - cur.grad_b;
    const double ss = sw.squaredNorm() + sb * sb;
    const double sg = sw.dot(gw) + sb * gb;

    const double change = std::abs(F - F_new);
    const bool done = change <= config.tol * std::max(1.0, std::abs(F));
    if (F_new <= F) {
      w = std::move(w_new);
      b = b_new;
      cur = std::move(next);
      F = F_new;
      model.objective_history.push_back(F);
    }
    if (done) {
      model.converged = true;
      break;
    }
    // Barzilai-Borwein trial step for the next iteration.
    if (ss > 0 && sg > 0) step = std::clamp(ss / sg, 1e-10, 1e10);
  }

  model.weights.assign(static_cast<std::size_t>(X.cols()), 0.0);
  for (std::size_t k = 0; k < active.size(); ++k) {
    model.weights[static_cast<std::size_t>(active[k])] = w(static_cast<Eigen::Index>(k));
  }
  model.intercept = b;
  model.final_objective = F;
  return model;
}

double predict_proba(const LassoModel& model, const Eigen::VectorXd& x) {
  if (static_cast<std::size_t>(x.size()) != model.weights.size()) {
    throw InputError(
        fmt::format("expected {} features, got {}", model.weights.size(), x.size()));
  }
  double z = model.intercept;
  for (Eigen::Index j = 0; j < x.size(); ++j) z += model.weights[static_cast<std::size_t>(j)] * x(j);
  constexpr double lo = std::numeric_limits<double>::min();
  const double hi = std::nextafter(1.0, 0.0);
  return std::clamp(sigmoid(z), lo, hi);
}

CoefficientReport coefficient_report(const LassoModel& model,
                                     std::span<const std::string> feature_names) {
  if (feature_names.size() != model.weights.size()) {
    throw InputError(fmt::format("{} feature names for {} weights", feature_names.size(),
                                 model.weights.size()));
  }
  CoefficientReport r;
  for (std::size_t j = 0; j < model.weights.size(); ++j) {
    const double beta = model.weights[j];
    if (beta > 0) r.positive.push_back({feature_names[j], beta});
    if (beta < 0) r.negative.push_back({feature_names[j], beta});
  }
  auto by_magnitude = [](const Coefficient& a, const Coefficient& b) {
    if (std::abs(a.beta) != std::abs(b.beta)) return std::abs(a.beta) > std::abs(b.beta);
    return a.feature < b.feature;
  };
  std::sort(r.positive.begin(), r.positive.end(), by_magnitude);
  std::sort(r.negative.begin(), r.negative.end(), by_magnitude);
  return r;
}

}  // namespace epitrace
