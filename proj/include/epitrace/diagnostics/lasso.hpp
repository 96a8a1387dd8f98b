/**
 * @file lasso.hpp
 * @brief L1-regularized logistic regression.
 *
 * Minimizes
 *   (1/M) sum_j [softplus(z_j) - y_j z_j] + lambda * ||w||_1,  z = Xw + b,
 * with lambda = 1 / (C * M) and an unpenalized intercept b. Solved by
 * proximal gradient descent from w = 0, b = 0: Barzilai-Borwein trial
 * steps, backtracking until the quadratic upper bound holds, and
 * soft-thresholding on w. Every accepted step lowers the objective.
 */

#pragma once

#include <Eigen/Dense>

#include <span>
#include <string>
#include <vector>

namespace epitrace {

struct LassoConfig {
  double C = 0.5;
  int max_iter = 2000;
  /// Stop once |F_k - F_{k+1}| <= tol * max(1, |F_k|).
  double tol = 1e-6;
};

struct LassoModel {
  std::vector<double> weights;
  double intercept = 0.0;
  bool converged = false;
  int iterations = 0;
  double initial_objective = 0.0;
  double final_objective = 0.0;
  /// Objective after each accepted step; not serialized.
  std::vector<double> objective_history;
};

/// Smooth part of the objective (mean log-loss) and its gradient.
struct LossGradient {
  double loss = 0.0;
  Eigen::VectorXd grad_w;
  double grad_b = 0.0;
};

LossGradient logistic_loss_gradient(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                    const Eigen::VectorXd& w, double b);

double lasso_objective(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                       const Eigen::VectorXd& w, double b, double C);

/// y must hold only 0 and 1 and contain both. Columns with
/// excluded[j] = true are left out of the fit and get weight 0; an empty
/// mask fits every column.
LassoModel fit_lasso_logistic(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                              const LassoConfig& config = {},
                              const std::vector<bool>& excluded = {});

/// sigma(w.x + b), kept strictly inside (0, 1).
double predict_proba(const LassoModel& model, const Eigen::VectorXd& x);

double sigmoid(double z) noexcept;

struct Coefficient {
  std::string feature;
  double beta = 0.0;
  bool operator==(const Coefficient&) const = default;
};

/// Nonzero weights split by sign, each sorted by |beta| descending then
/// name ascending.
struct CoefficientReport {
  std::vector<Coefficient> positive;
  std::vector<Coefficient> negative;
};

CoefficientReport coefficient_report(const LassoModel& model,
                                     std::span<const std::string> feature_names);

}  // namespace epitrace
