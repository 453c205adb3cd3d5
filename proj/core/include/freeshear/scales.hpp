#pragma once

namespace freeshear {

/// Characteristic wavenumbers and lengths of a shear flow.
struct Scales {
  double kappa_s = 0.0;    ///< sqrt(S / nu)
  double kappa_C = 0.0;    ///< S^(3/2) / eps^(1/2)
  double kappa_eta = 0.0;  ///< (eps / nu^3)^(1/4)
  double kappa_T = 0.0;    ///< sqrt(eps / (2 nu K)); NaN when K is unknown
  double ell_s = 0.0;
  double ell_C = 0.0;
  double ell_eta = 0.0;
  double ell_T = 0.0;      ///< sqrt(10 nu K / eps); NaN when K is unknown
  /// kappa_s^3 / kappa_eta^2 / kappa_C, equal to 1 up to rounding.
  double identity_ratio = 0.0;
};

/// Throws DomainError unless every input is positive and finite.
Scales characteristic_scales(double eps, double K, double nu, double S);

struct RecoveredInputs {
  double nu = 0.0;
  double eps = 0.0;
};

/// nu = ell_s^2 S and eps = ell_C^2 S^3.
RecoveredInputs recover_inputs(double S, double ell_s, double ell_C);

/// Recovery mode: scales from (S, ell_s, ell_C); K is optional (NaN).
Scales scales_from_lengths(double S, double ell_s, double ell_C, double K);

/// Inertial-range estimate of the squared horizontal Taylor wavenumber of the
/// range above kappa_bar under a Kolmogorov spectrum:
/// kappa_eta^(4/3) kappa_bar^(2/3) / 3. Throws DomainError for
/// kappa_bar > kappa_eta or nonpositive inputs.
double kolmogorov_heuristic(double kappa_bar, double kappa_eta);

/// Smallest kappa_bar at which the heuristic satisfies
/// kappa_s^2 / (2 Kcal^2) <= delta: (3 kappa_s^2 / (2 delta))^(3/2) / kappa_eta^2.
double heuristic_threshold(double kappa_s, double kappa_eta, double delta);

}  // namespace freeshear
