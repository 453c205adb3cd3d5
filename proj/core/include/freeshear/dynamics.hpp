#pragma once

#include <cstdint>
#include <vector>

#include "freeshear/field.hpp"
#include "freeshear/profiles.hpp"

namespace freeshear {

enum class Scheme { IFRK3 };

struct IntegratorConfig {
  double dt = 0.0;       ///< fixed step; 0 selects the adaptive limit below
  double safety = 0.5;   ///< multiplies the adaptive limit
  Scheme scheme = Scheme::IFRK3;
  int dt_update_every = 100;
};

struct SimState {
  double t = 0.0;
  SpectralField u;
  std::int64_t step = 0;
  double dt = 0.0;  ///< step in use; kept so a resumed run repeats it exactly
};

/// Dense coupling matrices of the mean-shear terms, one block per
/// horizontal magnitude pair (|j|, |l|). Both terms only couple modes within
/// a block.
struct ShearBlocks {
  struct Block {
    int abs_j = 0, abs_l = 0;
    std::vector<std::size_t> modes;  ///< basis indices
    std::vector<double> advection;   ///< <U d_x w_n, w_m> at [m * size + n]
    std::vector<double> production;  ///< <(w_n)_z U' e_x, w_m> at [m * size + n]
  };
  std::vector<Block> blocks;
  std::vector<std::size_t> block_of;  ///< per mode

  /// out = M u for the chosen matrix.
  void apply_advection(const SpectralField& u, SpectralField& out) const;
  void apply_production(const SpectralField& u, SpectralField& out) const;
};

ShearBlocks shear_operators(const Basis& basis, const ShearProfile& profile);

struct SystemOptions {
  bool nonlinear = true;
  bool shear = true;
  GridSize grid{};  ///< zero selects default_grid
};

/// Truncated Galerkin system du/dt = -U d_x u - w U' e_x - nu A u - B(u,u).
class GalerkinSystem {
 public:
  GalerkinSystem(BasisPtr basis, ShearProfile profile, SystemOptions options = {});

  const BasisPtr& basis() const { return basis_; }
  const ShearProfile& profile() const { return profile_; }
  const ShearBlocks& shear() const { return shear_; }
  const Transform& transform() const { return transform_; }
  const SystemOptions& options() const { return options_; }
  double S() const { return S_; }
  double U_max() const { return U_max_; }

  /// N_m = <(u . grad) v, w_m> by exact quadrature.
  SpectralField nonlinear(const SpectralField& u, const SpectralField& v) const;
  SpectralField nonlinear(const SpectralField& u) const { return nonlinear(u, u); }

  SpectralField advection(const SpectralField& u) const;
  SpectralField production(const SpectralField& u) const;
  SpectralField diffusion(const SpectralField& u) const;  ///< -nu lambda u

  /// Full right-hand side F(u). If N is given it receives the nonlinear term.
  SpectralField rhs(const SpectralField& u, SpectralField* N = nullptr) const;
  /// Everything except diffusion, which the integrating factor handles.
  SpectralField explicit_rhs(const SpectralField& u, SpectralField* N = nullptr) const;

  /// Largest grid value of |u|.
  double max_velocity(const SpectralField& u) const;
  /// Adaptive step safety * min(1/(4 S), 1/(kappa_max (u_max + U_max))).
  double stable_dt(const SpectralField& u, double safety) const;

  /// Advances by one step of state.dt (fixed) or the adaptive step; the
  /// adaptive value is refreshed every cfg.dt_update_every steps. Throws
  /// BlowUpError on non-finite coefficients. If N_start is given it receives
  /// the nonlinear term at the starting state.
  void step(SimState& state, const IntegratorConfig& cfg, SpectralField* N_start = nullptr) const;

 private:
  BasisPtr basis_;
  ShearProfile profile_;
  SystemOptions options_;
  Transform transform_;
  ShearBlocks shear_;
  double S_ = 0.0;
  double U_max_ = 0.0;
  std::vector<double> lambda_;
};

/// Random field with coefficients N(0,1) kappa_bar^(-5/6) lambda^(-1/4),
/// scaled so that kappa_1^3 ||u||^2 / 2 equals kinetic_energy.
SpectralField initial_condition(const BasisPtr& basis, std::uint64_t seed, double kinetic_energy);

/// Unscaled standard-normal coefficients, for tests and random sampling.
SpectralField random_field(const BasisPtr& basis, std::uint64_t seed);

}  // namespace freeshear
