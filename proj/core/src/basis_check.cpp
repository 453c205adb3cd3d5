#include "freeshear/basis_check.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "format.hpp"
#include "freeshear/field.hpp"

namespace freeshear {

namespace {

using detail::format_double;

// Sample points per direction for the pointwise checks.
constexpr int kSamples = 7;

}  // namespace

bool BasisCheckReport::passed() const {
  return gram <= tolerance && divergence <= tolerance && eigen_relation <= tolerance &&
         boundary <= tolerance && horizontal_mean <= tolerance && constraint <= tolerance &&
         first_multiplicity > 0;
}

BasisCheckReport run_basis_check(const Domain& domain, const Truncation& trunc,
                                 std::optional<std::size_t> corrupt_mode) {
  auto basis = std::make_shared<Basis>(domain, trunc);
  if (corrupt_mode) basis->corrupt_mode_for_testing(*corrupt_mode, 0.25);
  const BasisPtr b = basis;

  BasisCheckReport r;
  r.modes = b->size();
  const Transform tr(b, default_grid(trunc));

  // Gram matrix column by column: project each sampled mode back onto the basis.
  for (std::size_t n = 0; n < b->size(); ++n) {
    SpectralField e(b);
    e[n] = 1.0;
    const SpectralField col = tr.from_physical(tr.to_physical(e));
    for (std::size_t m = 0; m < b->size(); ++m) {
      r.gram = std::max(r.gram, std::abs(col[m] - (m == n ? 1.0 : 0.0)));
    }
  }

  const double h = domain.h;
  for (std::size_t m = 0; m < b->size(); ++m) {
    const ModeData& mode = b->mode(m);
    const double root = std::sqrt(mode.lambda);
    r.constraint = std::max(r.constraint, std::abs(mode.constraint_residual()));
    for (int a = 0; a < kSamples; ++a) {
      for (int c = 0; c < kSamples; ++c) {
        const double x = domain.Lx * (a + 0.37) / kSamples;
        const double y = domain.Ly * (c + 0.61) / kSamples;
        for (int e = 0; e < kSamples; ++e) {
          const double z = -0.5 * h + h * (e + 0.5) / kSamples;
          const Mat3 g = evaluate_mode_gradient(mode, x, y, z);
          r.divergence = std::max(r.divergence, std::abs(g[0][0] + g[1][1] + g[2][2]) / root);
          const Vec3 w = evaluate_mode(mode, x, y, z);
          const Vec3 lap = evaluate_mode_laplacian(mode, x, y, z);
          for (int q = 0; q < 3; ++q) {
            r.eigen_relation = std::max(r.eigen_relation, std::abs(lap[q] + mode.lambda * w[q]) / mode.lambda);
          }
        }
        for (double z : {-0.5 * h, 0.5 * h}) {
          const Mat3 g = evaluate_mode_gradient(mode, x, y, z);
          const Vec3 w = evaluate_mode(mode, x, y, z);
          r.boundary = std::max({r.boundary, std::abs(g[0][2]) / root, std::abs(g[1][2]) / root,
                                 std::abs(w[2])});
        }
      }
    }
  }

  // Horizontal means on the transform grid, which integrates each factor exactly.
  const GridSize grid = tr.grid();
  for (std::size_t m = 0; m < b->size(); ++m) {
    SpectralField e(b);
    e[m] = 1.0;
    const PhysicalField p = tr.to_physical(e);
    for (int k = 0; k < grid.Nz; ++k) {
      for (int c = 0; c < 2; ++c) {
        double s = 0.0;
        for (int i = 0; i < grid.Nx; ++i) {
          for (int j = 0; j < grid.Ny; ++j) s += p.values[c][p.index(i, j, k)];
        }
        r.horizontal_mean = std::max(r.horizontal_mean, std::abs(s) / (grid.Nx * grid.Ny));
      }
    }
  }

  double first = b->mode(0).lambda;
  for (const auto& mode : b->modes()) first = std::min(first, mode.lambda);
  r.first_lambda = first;
  r.first_multiplicity = eigenvalue_multiplicity(domain, first, trunc);
  return r;
}

std::string format_basis_check(const BasisCheckReport& r) {
  std::ostringstream os;
  auto line = [&](const char* name, double v) {
    os << name << " " << format_double(v) << " " << (v <= r.tolerance ? "pass" : "FAIL") << "\n";
  };
  os << "modes " << r.modes << "\n";
  line("gram", r.gram);
  line("divergence", r.divergence);
  line("eigen_relation", r.eigen_relation);
  line("boundary", r.boundary);
  line("horizontal_mean", r.horizontal_mean);
  line("constraint", r.constraint);
  os << "first_lambda " << format_double(r.first_lambda) << "\n";
  os << "first_multiplicity " << r.first_multiplicity << "\n";
  os << "result " << (r.passed() ? "pass" : "FAIL") << "\n";
  return os.str();
}

std::string mode_table_csv(const Basis& basis) {
  std::ostringstream os;
  os << "j,l,k,iota,lambda,kappa_bar,A,B,C\n";
  for (const auto& m : basis.modes()) {
    os << m.index.j << "," << m.index.l << "," << m.index.k << "," << m.index.iota << ","
       << format_double(m.lambda) << "," << format_double(m.kappa_bar) << ","
       << format_double(m.A) << "," << format_double(m.B) << "," << format_double(m.C) << "\n";
  }
  return os.str();
}

}  // namespace freeshear
