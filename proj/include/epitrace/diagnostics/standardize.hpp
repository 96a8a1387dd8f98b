#pragma once

#include <Eigen/Dense>

#include <vector>

namespace epitrace {

/// Column-wise z-scoring with the population standard deviation.
struct StandardizationParams {
  std::vector<double> mean;
  std::vector<double> stddev;
  /// Columns whose values were all equal; they map to 0.
  std::vector<bool> constant;

  Eigen::MatrixXd apply(const Eigen::MatrixXd& X) const;
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
};

struct Standardized {
  Eigen::MatrixXd X;
  StandardizationParams params;
};

/// Throws InputError with fewer than 2 rows.
Standardized standardize(const Eigen::MatrixXd& X);

}  // namespace epitrace
