#include "epitrace/diagnostics/standardize.hpp"

#include <fmt/format.h>

#include <cmath>

#include "epitrace/error.hpp"

namespace epitrace {

Eigen::VectorXd StandardizationParams::apply(const Eigen::VectorXd& x) const {
  if (static_cast<std::size_t>(x.size()) != mean.size()) {
    throw InputError(fmt::format("expected {} features, got {}", mean.size(), x.size()));
  }
  Eigen::VectorXd z(x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    const auto k = static_cast<std::size_t>(j);
    z(j) = constant[k] ? 0.0 : (x(j) - mean[k]) / stddev[k];
  }
  return z;
}

Eigen::MatrixXd StandardizationParams::apply(const Eigen::MatrixXd& X) const {
  if (static_cast<std::size_t>(X.cols()) != mean.size()) {
    throw InputError(fmt::format("expected {} features, got {}", mean.size(), X.cols()));
  }
  Eigen::MatrixXd Z(X.rows(), X.cols());
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    const auto k = static_cast<std::size_t>(j);
    if (constant[k]) {
      Z.col(j).setZero();
    } else {
      Z.col(j) = (X.col(j).array() - mean[k]) / stddev[k];
    }
  }
  return Z;
}

Standardized standardize(const Eigen::MatrixXd& X) {
  if (X.rows() < 2) throw InputError("standardization needs at least 2 rows");
  Standardized out;
  auto& p = out.params;
  const auto d = static_cast<std::size_t>(X.cols());
  p.mean.resize(d);
  p.stddev.resize(d);
  p.constant.resize(d);
  const double n = static_cast<double>(X.rows());
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    const auto k = static_cast<std::size_t>(j);
    const auto col = X.col(j);
    p.mean[k] = col.mean();
    p.stddev[k] = std::sqrt((col.array() - p.mean[k]).square().sum() / n);
    p.constant[k] = col.maxCoeff() == col.minCoeff();
  }
  out.X = p.apply(X);
  return out;
}

}  // namespace epitrace
