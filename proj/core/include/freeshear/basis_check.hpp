#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "freeshear/basis.hpp"

namespace freeshear {

/// Residuals of the eigenbasis invariant suite. Each residual is a maximum
/// absolute deviation, scaled where noted.
struct BasisCheckReport {
  std::size_t modes = 0;
  double gram = 0.0;               ///< max |<w_m, w_n> - delta_mn|, exact quadrature
  double divergence = 0.0;         ///< max |div w| / sqrt(lambda) on a sample grid
  double eigen_relation = 0.0;     ///< max |Lap w + lambda w| / lambda
  double boundary = 0.0;           ///< free-slip residual at z = +-h/2, scaled by sqrt(lambda)
  double horizontal_mean = 0.0;    ///< max horizontal mean of the first two components
  double constraint = 0.0;         ///< max quadrant constraint residual
  double first_lambda = 0.0;
  std::size_t first_multiplicity = 0;
  double tolerance = 1e-10;

  bool passed() const;
};

/// corrupt_mode perturbs the A coefficient of one mode before checking.
BasisCheckReport run_basis_check(const Domain& domain, const Truncation& trunc,
                                 std::optional<std::size_t> corrupt_mode = std::nullopt);

std::string format_basis_check(const BasisCheckReport& report);

/// CSV table j,l,k,iota,lambda,kappa_bar,A,B,C in basis order.
std::string mode_table_csv(const Basis& basis);

}  // namespace freeshear
