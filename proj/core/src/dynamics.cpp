#include "freeshear/dynamics.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <random>

#include "freeshear/errors.hpp"

namespace freeshear {

namespace {

// Integral over one period of the product of two trigonometric factors.
double trig_inner(const TrigFactor& f, const TrigFactor& g, double L) {
  const double a = std::abs(f.freq), b = std::abs(g.freq);
  if (std::abs(a - b) > 1e-9 * std::max(a, b)) return 0.0;
  if (f.sine != g.sine) return 0.0;
  if (a == 0.0) return L;
  if (!f.sine) return 0.5 * L;
  return (f.freq > 0.0) == (g.freq > 0.0) ? 0.5 * L : -0.5 * L;
}

// d/ds f = coef * result
TrigFactor trig_derivative(const TrigFactor& f, double& coef) {
  if (f.freq == 0.0) {
    coef = 0.0;
    return f;
  }
  coef = f.sine ? f.freq : -f.freq;
  return TrigFactor{!f.sine, f.freq};
}

// Vertical integrals of the mean profile against pairs of vertical factors.
struct ZTables {
  int K = 0;
  std::vector<double> Ucc, Uss, dUsc;  // [kn * K + km], 0-based k
  double cc(int kn, int km) const { return Ucc[(kn - 1) * K + (km - 1)]; }
  double ss(int kn, int km) const { return Uss[(kn - 1) * K + (km - 1)]; }
  double sc(int kn, int km) const { return dUsc[(kn - 1) * K + (km - 1)]; }
};

ZTables z_tables(const Basis& basis, const ShearProfile& profile) {
  const double h = basis.domain().h;
  const int K = basis.truncation().K;
  const double half = 0.5 * h;

  std::vector<double> breaks;
  int panels = std::max(64, 8 * K);
  panels = std::max(panels, static_cast<int>(std::ceil(4.0 * h / profile.thickness())));
  panels = std::min(panels, 8192);
  for (int p = 0; p <= panels; ++p) breaks.push_back(-half + h * p / panels);
  if (profile.kind() == ProfileKind::Tabulated) {
    for (double z : profile.table_z()) {
      if (z > -half && z < half) breaks.push_back(z);
    }
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  }

  using GL = boost::math::quadrature::gauss<double, 20>;
  const auto& abscissa = GL::abscissa();
  const auto& weights = GL::weights();
  std::vector<double> zq, wq;
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    const double a = breaks[p], b = breaks[p + 1];
    const double mid = 0.5 * (a + b), rad = 0.5 * (b - a);
    for (std::size_t i = 0; i < abscissa.size(); ++i) {
      const double x = abscissa[i];
      const double w = weights[i] * rad;
      if (x == 0.0) {
        zq.push_back(mid);
        wq.push_back(w);
      } else {
        zq.push_back(mid - rad * x);
        wq.push_back(w);
        zq.push_back(mid + rad * x);
        wq.push_back(w);
      }
    }
  }

  ZTables t;
  t.K = K;
  t.Ucc.assign(static_cast<std::size_t>(K) * K, 0.0);
  t.Uss = t.dUsc = t.Ucc;
  std::vector<double> c(K), s(K);
  for (std::size_t q = 0; q < zq.size(); ++q) {
    const auto v = profile(zq[q]);
    const double zeta = zq[q] + half;
    for (int k = 0; k < K; ++k) {
      const double g = (k + 1) * std::numbers::pi / h;
      c[k] = std::cos(g * zeta);
      s[k] = std::sin(g * zeta);
    }
    for (int kn = 0; kn < K; ++kn) {
      for (int km = 0; km < K; ++km) {
        const std::size_t at = static_cast<std::size_t>(kn) * K + km;
        t.Ucc[at] += wq[q] * v.U * c[kn] * c[km];
        t.Uss[at] += wq[q] * v.U * s[kn] * s[km];
        t.dUsc[at] += wq[q] * v.dU * s[kn] * c[km];
      }
    }
  }
  return t;
}

void apply_blocks(const ShearBlocks& sb, bool production, const SpectralField& u,
                  SpectralField& out) {
  for (const auto& b : sb.blocks) {
    const std::size_t n = b.modes.size();
    const auto& M = production ? b.production : b.advection;
    for (std::size_t r = 0; r < n; ++r) {
      double acc = 0.0;
      const double* row = &M[r * n];
      for (std::size_t q = 0; q < n; ++q) acc += row[q] * u[b.modes[q]];
      out[b.modes[r]] = acc;
    }
  }
}

}  // namespace

void ShearBlocks::apply_advection(const SpectralField& u, SpectralField& out) const {
  apply_blocks(*this, false, u, out);
}

void ShearBlocks::apply_production(const SpectralField& u, SpectralField& out) const {
  apply_blocks(*this, true, u, out);
}

ShearBlocks shear_operators(const Basis& basis, const ShearProfile& profile) {
  const Domain& d = basis.domain();
  const ZTables zt = z_tables(basis, profile);

  ShearBlocks sb;
  sb.block_of.resize(basis.size());
  std::map<std::pair<int, int>, std::size_t> lookup;
  for (std::size_t m = 0; m < basis.size(); ++m) {
    const auto& i = basis.mode(m).index;
    const auto key = std::make_pair(std::abs(i.j), std::abs(i.l));
    auto it = lookup.find(key);
    if (it == lookup.end()) {
      it = lookup.emplace(key, sb.blocks.size()).first;
      sb.blocks.push_back({key.first, key.second, {}, {}, {}});
    }
    sb.blocks[it->second].modes.push_back(m);
    sb.block_of[m] = it->second;
  }

  for (auto& b : sb.blocks) {
    const std::size_t n = b.modes.size();
    b.advection.assign(n * n, 0.0);
    b.production.assign(n * n, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
      const ModeData& wm = basis.mode(b.modes[r]);
      for (std::size_t q = 0; q < n; ++q) {
        const ModeData& wn = basis.mode(b.modes[q]);
        double adv = 0.0;
        for (int c = 0; c < 3; ++c) {
          double coef = 0.0;
          const TrigFactor dx = trig_derivative(wn.x_factor[c], coef);
          if (coef == 0.0) continue;
          const double hx = coef * trig_inner(dx, wm.x_factor[c], d.Lx);
          if (hx == 0.0) continue;
          const double hy = trig_inner(wn.y_factor[c], wm.y_factor[c], d.Ly);
          if (hy == 0.0) continue;
          const double vz = c < 2 ? zt.cc(wn.index.k, wm.index.k) : zt.ss(wn.index.k, wm.index.k);
          adv += wn.amplitude[c] * wm.amplitude[c] * hx * hy * vz;
        }
        b.advection[r * n + q] = adv;

        const double hx = trig_inner(wn.x_factor[2], wm.x_factor[0], d.Lx);
        const double hy = trig_inner(wn.y_factor[2], wm.y_factor[0], d.Ly);
        b.production[r * n + q] = wn.amplitude[2] * wm.amplitude[0] * hx * hy *
                                  zt.sc(wn.index.k, wm.index.k);
      }
    }
  }
  return sb;
}

GalerkinSystem::GalerkinSystem(BasisPtr basis, ShearProfile profile, SystemOptions options)
    : basis_(std::move(basis)),
      profile_(std::move(profile)),
      options_(options),
      transform_(basis_,
                 options.grid == GridSize{} ? default_grid(basis_->truncation()) : options.grid,
                 Transform::Resolution::Dealiased) {
  const double h = basis_->domain().h;
  S_ = shear_strength(profile_, h);
  U_max_ = max_speed(profile_, h);
  if (options_.shear) shear_ = shear_operators(*basis_, profile_);
  lambda_.resize(basis_->size());
  for (std::size_t m = 0; m < basis_->size(); ++m) lambda_[m] = basis_->mode(m).lambda;
}

SpectralField GalerkinSystem::nonlinear(const SpectralField& u, const SpectralField& v) const {
  const PhysicalField pu = transform_.to_physical(u);
  const auto grad = transform_.gradient(v);
  const std::size_t n = pu.points();
  std::array<std::vector<double>, 3> f;
  for (int c = 0; c < 3; ++c) {
    f[c].resize(n);
    for (std::size_t p = 0; p < n; ++p) {
      f[c][p] = pu.values[0][p] * grad[c][0][p] + pu.values[1][p] * grad[c][1][p] +
                pu.values[2][p] * grad[c][2][p];
    }
  }
  SpectralField out(basis_, transform_.project(f));
  if (!out.all_finite()) {
    throw BlowUpError("non-finite nonlinear term", std::numeric_limits<double>::quiet_NaN());
  }
  return out;
}

SpectralField GalerkinSystem::advection(const SpectralField& u) const {
  SpectralField out(basis_);
  if (options_.shear) shear_.apply_advection(u, out);
  return out;
}

SpectralField GalerkinSystem::production(const SpectralField& u) const {
  SpectralField out(basis_);
  if (options_.shear) shear_.apply_production(u, out);
  return out;
}

SpectralField GalerkinSystem::diffusion(const SpectralField& u) const {
  SpectralField out(basis_);
  const double nu = basis_->domain().nu;
  for (std::size_t m = 0; m < u.size(); ++m) out[m] = -nu * lambda_[m] * u[m];
  return out;
}

SpectralField GalerkinSystem::explicit_rhs(const SpectralField& u, SpectralField* N) const {
  SpectralField out(basis_);
  if (options_.shear) {
    SpectralField tmp(basis_);
    shear_.apply_advection(u, tmp);
    out -= tmp;
    shear_.apply_production(u, tmp);
    out -= tmp;
  }
  if (options_.nonlinear) {
    SpectralField nl = nonlinear(u);
    out -= nl;
    if (N) *N = std::move(nl);
  } else if (N) {
    *N = SpectralField(basis_);
  }
  return out;
}

SpectralField GalerkinSystem::rhs(const SpectralField& u, SpectralField* N) const {
  SpectralField out = explicit_rhs(u, N);
  out += diffusion(u);
  return out;
}

double GalerkinSystem::max_velocity(const SpectralField& u) const {
  const PhysicalField p = transform_.to_physical(u);
  double best = 0.0;
  for (std::size_t q = 0; q < p.points(); ++q) {
    const double s = p.values[0][q] * p.values[0][q] + p.values[1][q] * p.values[1][q] +
                     p.values[2][q] * p.values[2][q];
    best = std::max(best, s);
  }
  return std::sqrt(best);
}

double GalerkinSystem::stable_dt(const SpectralField& u, double safety) const {
  const double kappa_max = std::sqrt(basis_->max_lambda());
  const double speed = (options_.nonlinear ? max_velocity(u) : 0.0) + (options_.shear ? U_max_ : 0.0);
  const double rate = std::max(options_.shear ? 4.0 * S_ : 0.0, kappa_max * speed);
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw ConfigError("adaptive time step is undefined for this state; set integrator.dt");
  }
  return safety / rate;
}

void GalerkinSystem::step(SimState& state, const IntegratorConfig& cfg, SpectralField* N_start) const {
  if (cfg.dt > 0.0) {
    state.dt = cfg.dt;
  } else if (state.dt <= 0.0 ||
             (cfg.dt_update_every > 0 && state.step % cfg.dt_update_every == 0)) {
    state.dt = stable_dt(state.u, cfg.safety);
  }
  const double h = state.dt;
  const double nu = basis_->domain().nu;
  const std::size_t M = basis_->size();
  std::vector<double> E1(M), E2(M);
  for (std::size_t m = 0; m < M; ++m) {
    E1[m] = std::exp(-nu * lambda_[m] * 0.5 * h);
    E2[m] = std::exp(-nu * lambda_[m] * h);
  }

  try {
    const SpectralField& un = state.u;
    const SpectralField k1 = explicit_rhs(un, N_start);
    SpectralField u2(basis_);
    for (std::size_t m = 0; m < M; ++m) u2[m] = E1[m] * (un[m] + 0.5 * h * k1[m]);
    const SpectralField k2 = explicit_rhs(u2);
    SpectralField u3(basis_);
    for (std::size_t m = 0; m < M; ++m) {
      u3[m] = E2[m] * (un[m] - h * k1[m]) + 2.0 * h * E1[m] * k2[m];
    }
    const SpectralField k3 = explicit_rhs(u3);
    SpectralField next(basis_);
    for (std::size_t m = 0; m < M; ++m) {
      next[m] = E2[m] * un[m] +
                h * (E2[m] * k1[m] / 6.0 + (2.0 / 3.0) * E1[m] * k2[m] + k3[m] / 6.0);
    }
    if (!next.all_finite()) throw BlowUpError("non-finite coefficients", state.t);
    state.u = std::move(next);
  } catch (const BlowUpError& e) {
    throw BlowUpError(e.what(), state.t);
  }
  state.t += h;
  ++state.step;
}

SpectralField random_field(const BasisPtr& basis, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  SpectralField u(basis);
  for (std::size_t m = 0; m < u.size(); ++m) u[m] = normal(rng);
  return u;
}

SpectralField initial_condition(const BasisPtr& basis, std::uint64_t seed, double kinetic_energy) {
  if (!(kinetic_energy >= 0.0) || !std::isfinite(kinetic_energy)) {
    throw ConfigError("initial energy must be finite and non-negative");
  }
  SpectralField u = random_field(basis, seed);
  for (std::size_t m = 0; m < u.size(); ++m) {
    const auto& mode = basis->mode(m);
    u[m] *= std::pow(mode.kappa_bar, -5.0 / 6.0) * std::pow(mode.lambda, -0.25);
  }
  const double E = norms(u).E;
  const double k1 = basis->domain().kappa1();
  const double target = 2.0 * kinetic_energy / (k1 * k1 * k1);
  u *= E > 0.0 ? std::sqrt(target / E) : 0.0;
  return u;
}

}  // namespace freeshear
