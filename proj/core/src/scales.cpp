#include "freeshear/scales.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "freeshear/errors.hpp"

namespace freeshear {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(name) + " must be positive and finite, got " + std::to_string(v));
  }
}

Scales compute(double eps, double K, double nu, double S) {
  Scales s;
  s.kappa_s = std::sqrt(S / nu);
  s.kappa_C = std::pow(S, 1.5) / std::sqrt(eps);
  s.kappa_eta = std::pow(eps / (nu * nu * nu), 0.25);
  s.ell_s = 1.0 / s.kappa_s;
  s.ell_C = 1.0 / s.kappa_C;
  s.ell_eta = 1.0 / s.kappa_eta;
  if (std::isnan(K)) {
    s.kappa_T = s.ell_T = std::numeric_limits<double>::quiet_NaN();
  } else {
    s.kappa_T = std::sqrt(eps / (2.0 * nu * K));
    s.ell_T = std::sqrt(10.0 * nu * K / eps);
  }
  s.identity_ratio = s.kappa_s * s.kappa_s * s.kappa_s / (s.kappa_eta * s.kappa_eta) / s.kappa_C;
  return s;
}

}  // namespace

Scales characteristic_scales(double eps, double K, double nu, double S) {
  require_positive(eps, "eps");
  require_positive(K, "K");
  require_positive(nu, "nu");
  require_positive(S, "S");
  return compute(eps, K, nu, S);
}

RecoveredInputs recover_inputs(double S, double ell_s, double ell_C) {
  require_positive(S, "S");
  require_positive(ell_s, "ell_s");
  require_positive(ell_C, "ell_C");
  return {ell_s * ell_s * S, ell_C * ell_C * S * S * S};
}

Scales scales_from_lengths(double S, double ell_s, double ell_C, double K) {
  const auto in = recover_inputs(S, ell_s, ell_C);
  if (!std::isnan(K)) require_positive(K, "K");
  return compute(in.eps, K, in.nu, S);
}

double kolmogorov_heuristic(double kappa_bar, double kappa_eta) {
  require_positive(kappa_bar, "kappa_bar");
  require_positive(kappa_eta, "kappa_eta");
  if (kappa_bar > kappa_eta) {
    throw DomainError("kolmogorov_heuristic: kappa_bar exceeds the dissipation wavenumber");
  }
  return std::pow(kappa_eta, 4.0 / 3.0) * std::pow(kappa_bar, 2.0 / 3.0) / 3.0;
}

double heuristic_threshold(double kappa_s, double kappa_eta, double delta) {
  require_positive(kappa_s, "kappa_s");
  require_positive(kappa_eta, "kappa_eta");
  require_positive(delta, "delta");
  return std::pow(3.0 * kappa_s * kappa_s / (2.0 * delta), 1.5) / (kappa_eta * kappa_eta);
}

}  // namespace freeshear
