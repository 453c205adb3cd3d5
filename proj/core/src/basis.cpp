#include "freeshear/basis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "freeshear/errors.hpp"

namespace freeshear {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRelTol = 1e-12;

bool close_rel(double a, double b) {
  return std::abs(a - b) <= kRelTol * std::max(std::abs(a), std::abs(b));
}

// Best rational approximation p/q of x with q, p <= limit; nullopt if none is
// accurate to ~1e-13.
std::optional<std::pair<long long, long long>> as_rational(double x) {
  constexpr long long limit = 10000;
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double r = x;
  for (int it = 0; it < 40; ++it) {
    const double a_d = std::floor(r);
    if (a_d > static_cast<double>(limit)) break;
    const auto a = static_cast<long long>(a_d);
    const long long p2 = a * p1 + p0;
    const long long q2 = a * q1 + q0;
    if (p2 > limit || q2 > limit) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    if (std::abs(static_cast<double>(p1) / static_cast<double>(q1) - x) <= 1e-13 * x) {
      return std::make_pair(p1, q1);
    }
    const double frac = r - a_d;
    if (frac < 1e-15) break;
    r = 1.0 / frac;
  }
  return std::nullopt;
}

struct VerticalWeights {
  std::array<double, 3> w;  // horizontal mean of X_c^2 Y_c^2 per component
};

double mean_square(const TrigFactor& f) { return f.freq == 0.0 ? 1.0 : 0.5; }

TrigFactor factor(bool sine, double freq) {
  if (sine && freq == 0.0) return TrigFactor{false, 0.0};
  return TrigFactor{sine, freq};
}

// Horizontal factor pattern per quadrant: {sine_x, sine_y} for each component.
struct Pattern {
  std::array<bool, 3> sx;
  std::array<bool, 3> sy;
  std::array<double, 2> sign;  // constraint signs on (alpha A, beta B); C enters with +gamma
};

Pattern pattern_of(Quadrant q) {
  switch (q) {
    case Quadrant::SinSin: return {{false, true, true}, {true, false, true}, {-1.0, -1.0}};
    case Quadrant::SinCos: return {{false, true, true}, {false, true, false}, {-1.0, +1.0}};
    case Quadrant::CosSin: return {{true, false, false}, {true, false, true}, {+1.0, -1.0}};
    case Quadrant::CosCos: return {{true, false, false}, {false, true, false}, {+1.0, +1.0}};
  }
  return {};
}

std::uint64_t fnv1a(std::uint64_t hash, std::int64_t value) {
  for (int b = 0; b < 8; ++b) {
    hash ^= static_cast<std::uint64_t>((value >> (8 * b)) & 0xff);
    hash *= 1099511628211ULL;
  }
  return hash;
}

}  // namespace

void Domain::validate() const {
  auto check = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ConfigError(std::string("domain.") + name + " must be positive and finite");
    }
  };
  check(Lx, "Lx");
  check(Ly, "Ly");
  check(h, "h");
  check(nu, "nu");
}

double Domain::kappa_bar1() const { return 2.0 * kPi / std::max(Lx, Ly); }

double Domain::kappa1() const {
  const double kb = kappa_bar1();
  return std::sqrt(kb * kb + kPi * kPi / (h * h));
}

void Truncation::validate() const {
  if (J < 0 || L < 0 || K < 1 || (J == 0 && L == 0)) {
    throw ConfigError("truncation: need J, L >= 0 (not both zero) and K >= 1");
  }
}

Quadrant quadrant_of(int j, int l) {
  if (j > 0 && l > 0) return Quadrant::SinSin;
  if (j < 0 && l >= 0) return Quadrant::SinCos;
  if (j >= 0 && l < 0) return Quadrant::CosSin;
  return Quadrant::CosCos;
}

double TrigFactor::value(double s) const { return sine ? std::sin(freq * s) : std::cos(freq * s); }

double TrigFactor::derivative(double s) const {
  return sine ? freq * std::cos(freq * s) : -freq * std::sin(freq * s);
}

double TrigFactor::second_derivative(double s) const { return -freq * freq * value(s); }

double ModeData::constraint_residual() const {
  const Pattern p = pattern_of(quadrant);
  return p.sign[0] * alpha * A + p.sign[1] * beta * B + gamma * C;
}

SpectralKeys::SpectralKeys(const Domain& domain) : domain_(domain) {
  const auto rx = as_rational(domain.Lx / domain.h);
  const auto ry = as_rational(domain.Ly / domain.h);
  if (rx && ry) {
    const WideInt px = rx->first, qx = rx->second, py = ry->first, qy = ry->second;
    cx_ = qx * qx * py * py;
    cy_ = qy * qy * px * px;
    cz_ = px * px * py * py;
    exact_ = true;
  }
}

WideInt SpectralKeys::horizontal_key(int j, int l) const {
  return static_cast<WideInt>(j) * j * cx_ + static_cast<WideInt>(l) * l * cy_;
}

WideInt SpectralKeys::lambda_key(int j, int l, int k) const {
  return 4 * horizontal_key(j, l) + static_cast<WideInt>(k) * k * cz_;
}

bool SpectralKeys::same_lambda(int j1, int l1, int k1, int j2, int l2, int k2) const {
  if (exact_) return lambda_key(j1, l1, k1) == lambda_key(j2, l2, k2);
  auto lam = [&](int j, int l, int k) {
    const double a = 2.0 * kPi * j / domain_.Lx, b = 2.0 * kPi * l / domain_.Ly,
                 c = kPi * k / domain_.h;
    return a * a + b * b + c * c;
  };
  return close_rel(lam(j1, l1, k1), lam(j2, l2, k2));
}

bool SpectralKeys::same_kappa_bar(int j1, int l1, int j2, int l2) const {
  if (exact_) return horizontal_key(j1, l1) == horizontal_key(j2, l2);
  auto kb2 = [&](int j, int l) {
    const double a = 2.0 * kPi * j / domain_.Lx, b = 2.0 * kPi * l / domain_.Ly;
    return a * a + b * b;
  };
  return close_rel(kb2(j1, l1), kb2(j2, l2));
}

bool SpectralKeys::kappa_bar_less(int j1, int l1, int j2, int l2) const {
  if (exact_) return horizontal_key(j1, l1) < horizontal_key(j2, l2);
  if (same_kappa_bar(j1, l1, j2, l2)) return false;
  auto kb2 = [&](int j, int l) {
    const double a = 2.0 * kPi * j / domain_.Lx, b = 2.0 * kPi * l / domain_.Ly;
    return a * a + b * b;
  };
  return kb2(j1, l1) < kb2(j2, l2);
}

std::vector<ModeIndex> enumerate_modes(const Domain& domain, const Truncation& trunc) {
  trunc.validate();
  const SpectralKeys keys(domain);
  std::vector<std::pair<int, int>> pairs;
  for (int j = -trunc.J; j <= trunc.J; ++j) {
    for (int l = -trunc.L; l <= trunc.L; ++l) {
      if (j != 0 || l != 0) pairs.emplace_back(j, l);
    }
  }
  std::stable_sort(pairs.begin(), pairs.end(), [&](const auto& a, const auto& b) {
    if (keys.kappa_bar_less(a.first, a.second, b.first, b.second)) return true;
    if (keys.kappa_bar_less(b.first, b.second, a.first, a.second)) return false;
    return a < b;
  });
  std::vector<ModeIndex> out;
  out.reserve(pairs.size() * static_cast<std::size_t>(trunc.K) * 2);
  for (const auto& [j, l] : pairs) {
    for (int k = 1; k <= trunc.K; ++k) {
      out.push_back({j, l, k, 1});
      out.push_back({j, l, k, 2});
    }
  }
  return out;
}

ModeData build_mode(const Domain& domain, const ModeIndex& index) {
  if ((index.j == 0 && index.l == 0) || index.k < 1 || (index.iota != 1 && index.iota != 2)) {
    std::ostringstream os;
    os << "invalid mode index (" << index.j << "," << index.l << "," << index.k << ","
       << index.iota << ")";
    throw DomainError(os.str());
  }
  ModeData m;
  m.index = index;
  m.h = domain.h;
  m.alpha = 2.0 * kPi * index.j / domain.Lx;
  m.beta = 2.0 * kPi * index.l / domain.Ly;
  m.gamma = kPi * index.k / domain.h;
  m.kappa_bar = std::sqrt(m.alpha * m.alpha + m.beta * m.beta);
  m.lambda = m.alpha * m.alpha + m.beta * m.beta + m.gamma * m.gamma;
  m.quadrant = quadrant_of(index.j, index.l);

  const Pattern p = pattern_of(m.quadrant);
  for (int c = 0; c < 3; ++c) {
    m.x_factor[c] = factor(p.sx[c], m.alpha);
    m.y_factor[c] = factor(p.sy[c], m.beta);
  }
  std::array<double, 3> weight{};
  for (int c = 0; c < 3; ++c) weight[c] = mean_square(m.x_factor[c]) * mean_square(m.y_factor[c]);

  // Null space of n . (A,B,C) = 0, n = (sA alpha, sB beta, gamma), gamma > 0.
  const std::array<double, 3> n{p.sign[0] * m.alpha, p.sign[1] * m.beta, m.gamma};
  std::array<std::array<double, 3>, 2> v{{{1.0, 0.0, -n[0] / n[2]}, {0.0, 1.0, -n[1] / n[2]}}};
  auto dot = [&](const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return weight[0] * a[0] * b[0] + weight[1] * a[1] * b[1] + weight[2] * a[2] * b[2];
  };
  // Modified Gram-Schmidt with one re-orthogonalisation pass.
  for (int i = 0; i < 2; ++i) {
    for (int pass = 0; pass < 2; ++pass) {
      for (int q = 0; q < i; ++q) {
        const double r = dot(v[i], v[q]);
        for (int c = 0; c < 3; ++c) v[i][c] -= r * v[q][c];
      }
    }
    const double norm = std::sqrt(dot(v[i], v[i]));
    for (int c = 0; c < 3; ++c) v[i][c] /= norm;
  }
  const auto& coef = v[index.iota - 1];
  m.A = coef[0];
  m.B = coef[1];
  m.C = coef[2];
  const double scale = std::sqrt(2.0 / domain.h) / std::sqrt(domain.Lx * domain.Ly);
  for (int c = 0; c < 3; ++c) m.amplitude[c] = scale * coef[c];
  return m;
}

Vec3 evaluate_mode(const ModeData& mode, double x, double y, double z) {
  const double zeta = z + 0.5 * mode.h;
  const double cz = std::cos(mode.gamma * zeta);
  const double sz = std::sin(mode.gamma * zeta);
  Vec3 out{};
  for (int c = 0; c < 3; ++c) {
    out[c] = mode.amplitude[c] * mode.x_factor[c].value(x) * mode.y_factor[c].value(y) *
             (c < 2 ? cz : sz);
  }
  return out;
}

Mat3 evaluate_mode_gradient(const ModeData& mode, double x, double y, double z) {
  const double zeta = z + 0.5 * mode.h;
  const double g = mode.gamma;
  const double cz = std::cos(g * zeta);
  const double sz = std::sin(g * zeta);
  Mat3 out{};
  for (int c = 0; c < 3; ++c) {
    const double X = mode.x_factor[c].value(x), dX = mode.x_factor[c].derivative(x);
    const double Y = mode.y_factor[c].value(y), dY = mode.y_factor[c].derivative(y);
    const double Z = c < 2 ? cz : sz;
    const double dZ = c < 2 ? -g * sz : g * cz;
    const double a = mode.amplitude[c];
    out[c] = {a * dX * Y * Z, a * X * dY * Z, a * X * Y * dZ};
  }
  return out;
}

Vec3 evaluate_mode_laplacian(const ModeData& mode, double x, double y, double z) {
  const double zeta = z + 0.5 * mode.h;
  const double g = mode.gamma;
  const double cz = std::cos(g * zeta);
  const double sz = std::sin(g * zeta);
  Vec3 out{};
  for (int c = 0; c < 3; ++c) {
    const auto& fx = mode.x_factor[c];
    const auto& fy = mode.y_factor[c];
    const double Z = c < 2 ? cz : sz;
    const double d2Z = -g * g * Z;
    out[c] = mode.amplitude[c] * (fx.second_derivative(x) * fy.value(y) * Z +
                                  fx.value(x) * fy.second_derivative(y) * Z +
                                  fx.value(x) * fy.value(y) * d2Z);
  }
  return out;
}

std::size_t eigenvalue_multiplicity(const Domain& domain, double lambda, const Truncation& trunc) {
  const auto modes = enumerate_modes(domain, trunc);
  const SpectralKeys keys(domain);
  // Anchor on the closest attained eigenvalue, then count exact matches.
  const ModeIndex* anchor = nullptr;
  double best = 0.0;
  for (const auto& idx : modes) {
    const double lam = build_mode(domain, idx).lambda;
    const double d = std::abs(lam - lambda);
    if (anchor == nullptr || d < best) {
      anchor = &idx;
      best = d;
    }
  }
  if (anchor == nullptr || best > 1e-9 * std::max(std::abs(lambda), 1e-300)) return 0;
  std::size_t count = 0;
  for (const auto& idx : modes) {
    if (keys.same_lambda(idx.j, idx.l, idx.k, anchor->j, anchor->l, anchor->k)) ++count;
  }
  return count;
}

Basis::Basis(const Domain& domain, const Truncation& trunc) : domain_(domain), trunc_(trunc) {
  domain_.validate();
  trunc_.validate();
  const auto indices = enumerate_modes(domain_, trunc_);
  const SpectralKeys keys(domain_);
  modes_.reserve(indices.size());
  shell_id_.reserve(indices.size());
  checksum_ = 14695981039346656037ULL;
  for (std::size_t m = 0; m < indices.size(); ++m) {
    const auto& idx = indices[m];
    ModeData mode = build_mode(domain_, idx);
    if (m == 0 || !keys.same_kappa_bar(idx.j, idx.l, modes_.back().index.j, modes_.back().index.l)) {
      shells_.push_back(mode.kappa_bar);
      shell_begin_.push_back(m);
    }
    mode.kappa_bar = shells_.back();
    shell_id_.push_back(shells_.size() - 1);
    max_lambda_ = std::max(max_lambda_, mode.lambda);
    for (int v : {idx.j, idx.l, idx.k, idx.iota}) checksum_ = fnv1a(checksum_, v);
    modes_.push_back(mode);
  }
  shell_begin_.push_back(modes_.size());
}

std::size_t Basis::first_mode_at_or_above(double kappa) const {
  const auto it = std::lower_bound(shells_.begin(), shells_.end(), kappa);
  return shell_begin_[static_cast<std::size_t>(it - shells_.begin())];
}

void Basis::corrupt_mode_for_testing(std::size_t m, double delta_A) {
  auto& mode = modes_.at(m);
  mode.A += delta_A;
  mode.amplitude[0] = std::sqrt(2.0 / domain_.h) / std::sqrt(domain_.Lx * domain_.Ly) * mode.A;
}

}  // namespace freeshear
