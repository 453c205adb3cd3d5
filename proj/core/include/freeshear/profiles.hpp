#pragma once

#include <string>
#include <vector>

namespace freeshear {

enum class ProfileKind { MixingLayer, JetSech2, JetGauss, Wake, Tabulated };

std::string to_string(ProfileKind kind);
ProfileKind profile_kind_from_string(const std::string& name);

struct ProfileValues {
  double U;    ///< mean streamwise velocity
  double dU;   ///< U'(z)
  double d2U;  ///< U''(z); never enters the dynamics
};

/// Imposed mean shear U(z) e_x. Immutable after construction.
///
/// Canonical profiles carry closed forms for U, U' and U''. Tabulated profiles
/// interpolate samples with a natural cubic spline; U' and U'' are taken from
/// the spline itself, so U'' is only piecewise linear.
class ShearProfile {
 public:
  static ShearProfile mixing_layer(double U1, double U2, double delta);
  static ShearProfile jet_sech2(double U0, double delta);
  static ShearProfile jet_gauss(double U0, double delta);
  static ShearProfile wake(double U_inf, double U_d, double delta);
  /// Throws ConfigError for fewer than 4 samples or non-increasing z.
  static ShearProfile tabulated(std::vector<double> z, std::vector<double> U);

  ProfileKind kind() const { return kind_; }
  /// Named parameters in a fixed order, e.g. {"U1","U2","delta"}.
  std::vector<std::pair<std::string, double>> parameters() const;
  const std::vector<double>& table_z() const { return z_; }
  const std::vector<double>& table_U() const { return u_; }

  /// Length scale over which U varies: delta, or the mean sample spacing.
  double thickness() const;

  /// Unchecked evaluation; tabulated profiles extrapolate the end cubics.
  ProfileValues operator()(double z) const;

 private:
  ShearProfile() = default;

  ProfileKind kind_ = ProfileKind::MixingLayer;
  double p0_ = 0.0, p1_ = 0.0, delta_ = 1.0;
  std::vector<double> z_, u_, m_;  // spline knots, values, second derivatives
};

/// Range-checked evaluation on [-h/2, h/2]; throws DomainError outside.
ProfileValues eval_profile(const ShearProfile& profile, double z, double h);

/// S = sup |U'(z)| over [-h/2, h/2].
double shear_strength(const ShearProfile& profile, double h);

/// sup |U(z)| over [-h/2, h/2], used for the advective time-step limit.
double max_speed(const ShearProfile& profile, double h);

}  // namespace freeshear
