#pragma once

// Reference two-cluster instance (m = 12 subjects in R^2) and the assignments
// reported for it. The same matrix ships as data/reference_covariates.csv.

#include "qbal/core.hpp"

#include <array>

namespace qbal::reference {

inline constexpr std::size_t kSubjects = 12;

/// One subject per row.
inline constexpr std::array<std::array<double, 2>, kSubjects> kCovariateRows{{
    {3.8673, 2.0983},
    {2.5055, 2.0971},
    {3.8644, 5.2119},
    {3.5328, 2.7283},
    {3.5023, 2.4830},
    {2.4395, 2.9807},
    {-2.8719, 4.8528},
    {-3.8278, 3.1101},
    {-3.2512, 3.3697},
    {-2.9279, 1.4966},
    {-1.4358, 1.6033},
    {-1.8945, 1.8933},
}};

inline CovariateSet covariates() {
  Eigen::MatrixXd x(2, static_cast<Eigen::Index>(kSubjects));
  for (std::size_t i = 0; i < kSubjects; ++i) {
    x(0, static_cast<Eigen::Index>(i)) = kCovariateRows[i][0];
    x(1, static_cast<Eigen::Index>(i)) = kCovariateRows[i][1];
  }
  return CovariateSet(std::move(x));
}

inline constexpr double kPhi = 0.5;

inline Assignment random_draw() { return {1, 1, 1, 1, -1, 1, -1, -1, 1, -1, 1, -1}; }
inline Assignment gsw_draw() { return {1, 1, -1, 1, -1, -1, 1, 1, -1, -1, 1, -1}; }
/// Printed identically for both VQE and QAOA.
inline Assignment vqe_draw() { return {-1, -1, 1, -1, 1, 1, -1, 1, -1, 1, 1, -1}; }
inline Assignment qaoa_draw() { return vqe_draw(); }
inline Assignment optimal() { return {1, -1, -1, 1, 1, -1, 1, -1, 1, 1, -1, -1}; }

/// Reported imbalance values (4 decimals).
inline constexpr double kReportedGsw = 2.4720;
inline constexpr double kReportedVqe = 2.4497;
inline constexpr double kReportedQaoa = 2.4516;
inline constexpr double kReportedOptimum = 2.4496;

}  // namespace qbal::reference
