#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace freeshear {

/// Periodic (x, y) x free-slip (z) box Omega = (0,Lx) x (0,Ly) x (-h/2,h/2).
struct Domain {
  double Lx = 0.0;
  double Ly = 0.0;
  double h = 0.0;
  double nu = 0.0;  ///< kinematic viscosity

  /// Throws ConfigError unless all fields are strictly positive and finite.
  void validate() const;
  /// Smallest horizontal wavenumber 2 pi / max(Lx, Ly).
  double kappa_bar1() const;
  /// Smallest total wavenumber sqrt(lambda_1).
  double kappa1() const;
};

struct Truncation {
  int J = 1;  ///< |j| <= J
  int L = 1;  ///< |l| <= L
  int K = 1;  ///< 1 <= k <= K

  void validate() const;
};

struct ModeIndex {
  int j = 0;
  int l = 0;
  int k = 1;
  int iota = 1;

  friend bool operator==(const ModeIndex&, const ModeIndex&) = default;
};

/// Horizontal parity family of a mode, named after the (x, y) factors of the
/// shear-normal component: the four sign classes of (j, l).
enum class Quadrant {
  SinSin,  ///< j > 0, l > 0
  SinCos,  ///< j < 0, l >= 0
  CosSin,  ///< j >= 0, l < 0
  CosCos,  ///< j < 0, l < 0; also (j > 0, l = 0) and (j = 0, l > 0)
};

Quadrant quadrant_of(int j, int l);

/// cos(freq s) or sin(freq s). A sine with zero frequency never occurs; such
/// factors are replaced by the constant cos(0) = 1.
struct TrigFactor {
  bool sine = false;
  double freq = 0.0;  ///< signed angular wavenumber

  double value(double s) const;
  double derivative(double s) const;
  double second_derivative(double s) const;
};

/// One orthonormal Stokes eigenfunction
///   w(x,y,z) = (X_c(x) Y_c(y) amplitude_c Z_c(z))_c,
/// with Z = cos(gamma (z + h/2)) for c = 0, 1 and sin(gamma (z + h/2)) for c = 2.
struct ModeData {
  ModeIndex index;
  double lambda = 0.0;     ///< eigenvalue, 1/length^2
  double kappa_bar = 0.0;  ///< horizontal wavenumber (shell representative)
  Quadrant quadrant = Quadrant::SinSin;
  /// Dimensionless vertical coefficients, satisfying the quadrant constraint.
  double A = 0.0, B = 0.0, C = 0.0;

  double alpha = 0.0;  ///< 2 pi j / Lx (signed)
  double beta = 0.0;   ///< 2 pi l / Ly (signed)
  double gamma = 0.0;  ///< k pi / h
  double h = 0.0;
  std::array<TrigFactor, 3> x_factor{};
  std::array<TrigFactor, 3> y_factor{};
  /// (A, B, C) times the horizontal 1/sqrt(Lx Ly) and vertical sqrt(2/h) normalisation.
  std::array<double, 3> amplitude{};

  /// Value of the divergence constraint on (A, B, C); zero by construction.
  double constraint_residual() const;
};

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;  ///< [component][derivative direction]

/// All (j,l,k,iota) with |j|<=J, |l|<=L, 1<=k<=K, j^2+l^2 != 0, ordered by
/// (kappa_bar, j, l, k, iota).
std::vector<ModeIndex> enumerate_modes(const Domain& domain, const Truncation& trunc);

ModeData build_mode(const Domain& domain, const ModeIndex& index);

Vec3 evaluate_mode(const ModeData& mode, double x, double y, double z);
Mat3 evaluate_mode_gradient(const ModeData& mode, double x, double y, double z);
Vec3 evaluate_mode_laplacian(const ModeData& mode, double x, double y, double z);

/// Number of truncated modes whose eigenvalue equals lambda; zero when lambda
/// is not attained.
std::size_t eigenvalue_multiplicity(const Domain& domain, double lambda, const Truncation& trunc);

/// 128-bit integer used for exact eigenvalue keys.
__extension__ typedef __int128 WideInt;

/// Exact comparison keys for lambda and kappa_bar^2. When Lx/h and Ly/h are
/// rationals p/q with small denominators the keys are integers; otherwise
/// comparisons fall back to a relative tolerance of 1e-12.
class SpectralKeys {
 public:
  explicit SpectralKeys(const Domain& domain);

  bool exact() const { return exact_; }
  bool same_lambda(int j1, int l1, int k1, int j2, int l2, int k2) const;
  bool same_kappa_bar(int j1, int l1, int j2, int l2) const;
  /// Strict order on kappa_bar^2 consistent with same_kappa_bar.
  bool kappa_bar_less(int j1, int l1, int j2, int l2) const;

 private:
  WideInt horizontal_key(int j, int l) const;
  WideInt lambda_key(int j, int l, int k) const;

  Domain domain_;
  bool exact_ = false;
  WideInt cx_ = 0, cy_ = 0, cz_ = 0;
};

/// The truncated eigenbasis: modes in enumerate_modes order, grouped into
/// shells of equal kappa_bar. Immutable after construction.
class Basis {
 public:
  Basis(const Domain& domain, const Truncation& trunc);

  const Domain& domain() const { return domain_; }
  const Truncation& truncation() const { return trunc_; }

  std::size_t size() const { return modes_.size(); }
  const ModeData& mode(std::size_t m) const { return modes_[m]; }
  std::span<const ModeData> modes() const { return modes_; }

  /// Distinct kappa_bar values, ascending.
  std::span<const double> shells() const { return shells_; }
  std::size_t shell_of(std::size_t m) const { return shell_id_[m]; }
  /// First mode index of shell s; shell_begin(shells().size()) == size().
  std::size_t shell_begin(std::size_t s) const { return shell_begin_[s]; }
  /// First mode index with kappa_bar >= kappa (size() if none).
  std::size_t first_mode_at_or_above(double kappa) const;

  double max_lambda() const { return max_lambda_; }
  /// FNV-1a hash of the (j,l,k,iota) ordering, stored in snapshots.
  std::uint64_t ordering_checksum() const { return checksum_; }

  /// Test hook: replace the coefficients of one mode without re-normalising.
  void corrupt_mode_for_testing(std::size_t m, double delta_A);

 private:
  Domain domain_;
  Truncation trunc_;
  std::vector<ModeData> modes_;
  std::vector<double> shells_;
  std::vector<std::size_t> shell_id_;
  std::vector<std::size_t> shell_begin_;
  double max_lambda_ = 0.0;
  std::uint64_t checksum_ = 0;
};

using BasisPtr = std::shared_ptr<const Basis>;

inline BasisPtr make_basis(const Domain& domain, const Truncation& trunc) {
  return std::make_shared<const Basis>(domain, trunc);
}

}  // namespace freeshear
