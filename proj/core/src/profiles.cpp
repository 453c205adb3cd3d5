#include "freeshear/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "freeshear/errors.hpp"

namespace freeshear {

namespace {

double sech(double x) { return 1.0 / std::cosh(x); }

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ConfigError(std::string("profile parameter ") + name + " must be positive and finite");
  }
}

void require_finite(double value, const char* name) {
  if (!std::isfinite(value)) {
    throw ConfigError(std::string("profile parameter ") + name + " must be finite");
  }
}

// Natural cubic spline second derivatives (tridiagonal solve).
std::vector<double> spline_moments(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  std::vector<double> m(n, 0.0), c(n, 0.0), d(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = x[i] - x[i - 1];
    const double h1 = x[i + 1] - x[i];
    const double a = h0 / 6.0;
    const double b = (h0 + h1) / 3.0;
    const double cc = h1 / 6.0;
    const double r = (y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0;
    const double denom = b - a * c[i - 1];
    c[i] = cc / denom;
    d[i] = (r - a * d[i - 1]) / denom;
  }
  for (std::size_t i = n - 1; i-- > 1;) {
    m[i] = d[i] - c[i] * m[i + 1];
  }
  return m;
}

// Golden-section search for the maximum of f on [a, b].
template <class F>
double golden_max(F f, double a, double b) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 200 && (b - a) > 1e-14 * (1.0 + std::abs(a) + std::abs(b)); ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return std::max({fc, fd, f(a), f(b)});
}

// Dense sampling plus local refinement of max |g| on [lo, hi].
template <class G>
double dense_sup(G g, double lo, double hi) {
  constexpr int kSamples = 10000;
  double best = -1.0;
  int best_i = 0;
  for (int i = 0; i <= kSamples; ++i) {
    const double z = lo + (hi - lo) * i / kSamples;
    const double v = std::abs(g(z));
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  const double a = lo + (hi - lo) * std::max(best_i - 1, 0) / kSamples;
  const double b = lo + (hi - lo) * std::min(best_i + 1, kSamples) / kSamples;
  return std::max(best, golden_max([&](double z) { return std::abs(g(z)); }, a, b));
}

}  // namespace

std::string to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::MixingLayer: return "mixing_layer";
    case ProfileKind::JetSech2: return "jet_sech2";
    case ProfileKind::JetGauss: return "jet_gauss";
    case ProfileKind::Wake: return "wake";
    case ProfileKind::Tabulated: return "tabulated";
  }
  return "unknown";
}

ProfileKind profile_kind_from_string(const std::string& name) {
  for (auto k : {ProfileKind::MixingLayer, ProfileKind::JetSech2, ProfileKind::JetGauss,
                 ProfileKind::Wake, ProfileKind::Tabulated}) {
    if (to_string(k) == name) return k;
  }
  throw ConfigError("unknown profile kind '" + name + "'");
}

ShearProfile ShearProfile::mixing_layer(double U1, double U2, double delta) {
  require_finite(U1, "U1");
  require_finite(U2, "U2");
  require_positive(delta, "delta");
  ShearProfile p;
  p.kind_ = ProfileKind::MixingLayer;
  p.p0_ = U1;
  p.p1_ = U2;
  p.delta_ = delta;
  return p;
}

ShearProfile ShearProfile::jet_sech2(double U0, double delta) {
  require_finite(U0, "U0");
  require_positive(delta, "delta");
  ShearProfile p;
  p.kind_ = ProfileKind::JetSech2;
  p.p0_ = U0;
  p.delta_ = delta;
  return p;
}

ShearProfile ShearProfile::jet_gauss(double U0, double delta) {
  require_finite(U0, "U0");
  require_positive(delta, "delta");
  ShearProfile p;
  p.kind_ = ProfileKind::JetGauss;
  p.p0_ = U0;
  p.delta_ = delta;
  return p;
}

ShearProfile ShearProfile::wake(double U_inf, double U_d, double delta) {
  require_finite(U_inf, "U_inf");
  require_finite(U_d, "U_d");
  require_positive(delta, "delta");
  ShearProfile p;
  p.kind_ = ProfileKind::Wake;
  p.p0_ = U_inf;
  p.p1_ = U_d;
  p.delta_ = delta;
  return p;
}

ShearProfile ShearProfile::tabulated(std::vector<double> z, std::vector<double> U) {
  if (z.size() != U.size()) {
    throw ConfigError("tabulated profile: z and U must have the same length");
  }
  if (z.size() < 4) {
    throw ConfigError("tabulated profile needs at least 4 samples, got " + std::to_string(z.size()));
  }
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (!std::isfinite(z[i]) || !std::isfinite(U[i])) {
      throw ConfigError("tabulated profile: non-finite sample at index " + std::to_string(i));
    }
    if (i > 0 && !(z[i] > z[i - 1])) {
      throw ConfigError("tabulated profile: z must be strictly increasing (index " +
                        std::to_string(i) + ")");
    }
  }
  ShearProfile p;
  p.kind_ = ProfileKind::Tabulated;
  p.m_ = spline_moments(z, U);
  p.z_ = std::move(z);
  p.u_ = std::move(U);
  p.delta_ = (p.z_.back() - p.z_.front()) / static_cast<double>(p.z_.size() - 1);
  return p;
}

std::vector<std::pair<std::string, double>> ShearProfile::parameters() const {
  switch (kind_) {
    case ProfileKind::MixingLayer: return {{"U1", p0_}, {"U2", p1_}, {"delta", delta_}};
    case ProfileKind::JetSech2:
    case ProfileKind::JetGauss: return {{"U0", p0_}, {"delta", delta_}};
    case ProfileKind::Wake: return {{"U_inf", p0_}, {"U_d", p1_}, {"delta", delta_}};
    case ProfileKind::Tabulated: return {};
  }
  return {};
}

double ShearProfile::thickness() const { return delta_; }

ProfileValues ShearProfile::operator()(double z) const {
  switch (kind_) {
    case ProfileKind::MixingLayer: {
      const double a = 0.5 * (p0_ - p1_);
      const double x = 2.0 * z / delta_;
      const double s2 = sech(x) * sech(x);
      const double t = std::tanh(x);
      return {0.5 * (p0_ + p1_) + a * t, a * (2.0 / delta_) * s2,
              -8.0 * a / (delta_ * delta_) * s2 * t};
    }
    case ProfileKind::JetSech2: {
      const double x = z / delta_;
      const double s2 = sech(x) * sech(x);
      const double t = std::tanh(x);
      return {p0_ * s2, -2.0 * p0_ / delta_ * s2 * t,
              -2.0 * p0_ / (delta_ * delta_) * s2 * (1.0 - 3.0 * t * t)};
    }
    case ProfileKind::JetGauss: {
      const double d2 = delta_ * delta_;
      const double g = std::exp(-z * z / (2.0 * d2));
      return {p0_ * g, -p0_ * z / d2 * g, p0_ * (z * z / (d2 * d2) - 1.0 / d2) * g};
    }
    case ProfileKind::Wake: {
      const double d2 = delta_ * delta_;
      const double g = std::exp(-z * z / (2.0 * d2));
      return {p0_ - p1_ * g, p1_ * z / d2 * g, -p1_ * (z * z / (d2 * d2) - 1.0 / d2) * g};
    }
    case ProfileKind::Tabulated: {
      const std::size_t n = z_.size();
      auto it = std::upper_bound(z_.begin(), z_.end(), z);
      std::size_t i = it == z_.begin() ? 0 : static_cast<std::size_t>(it - z_.begin()) - 1;
      i = std::min(i, n - 2);
      const double h = z_[i + 1] - z_[i];
      const double a = (z_[i + 1] - z) / h;
      const double b = (z - z_[i]) / h;
      const double U = a * u_[i] + b * u_[i + 1] +
                       ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
      const double dU = (u_[i + 1] - u_[i]) / h -
                        (3.0 * a * a - 1.0) / 6.0 * h * m_[i] +
                        (3.0 * b * b - 1.0) / 6.0 * h * m_[i + 1];
      const double d2U = a * m_[i] + b * m_[i + 1];
      return {U, dU, d2U};
    }
  }
  return {0.0, 0.0, 0.0};
}

ProfileValues eval_profile(const ShearProfile& profile, double z, double h) {
  const double half = 0.5 * h;
  const double slack = 1e-12 * half;
  if (!(h > 0.0) || !(z >= -half - slack && z <= half + slack)) {
    std::ostringstream os;
    os << "eval_profile: z = " << z << " outside [-h/2, h/2] with h = " << h;
    throw DomainError(os.str());
  }
  if (profile.kind() == ProfileKind::Tabulated) {
    const auto& zt = profile.table_z();
    if (z < zt.front() - slack || z > zt.back() + slack) {
      std::ostringstream os;
      os << "eval_profile: z = " << z << " outside tabulated range [" << zt.front() << ", "
         << zt.back() << "]";
      throw DomainError(os.str());
    }
  }
  return profile(z);
}

double shear_strength(const ShearProfile& profile, double h) {
  const double half = 0.5 * h;
  const auto params = profile.parameters();
  const double delta = profile.thickness();
  // Closed forms: location of the interior maximiser of |U'| and its value.
  auto clamp_to_box = [&](double z_star, double value) {
    if (z_star <= half) return value;
    return std::abs(profile(half).dU);
  };
  switch (profile.kind()) {
    case ProfileKind::MixingLayer:
      return std::abs(params[0].second - params[1].second) / delta;
    case ProfileKind::JetSech2: {
      const double z_star = delta * std::atanh(1.0 / std::sqrt(3.0));
      return clamp_to_box(z_star, 4.0 * std::abs(params[0].second) / (3.0 * std::sqrt(3.0) * delta));
    }
    case ProfileKind::JetGauss:
      return clamp_to_box(delta, std::abs(params[0].second) / delta * std::exp(-0.5));
    case ProfileKind::Wake:
      return clamp_to_box(delta, std::abs(params[1].second) / delta * std::exp(-0.5));
    case ProfileKind::Tabulated: {
      const double lo = std::max(-half, profile.table_z().front());
      const double hi = std::min(half, profile.table_z().back());
      return dense_sup([&](double z) { return profile(z).dU; }, lo, hi);
    }
  }
  return 0.0;
}

double max_speed(const ShearProfile& profile, double h) {
  const double half = 0.5 * h;
  double lo = -half, hi = half;
  if (profile.kind() == ProfileKind::Tabulated) {
    lo = std::max(lo, profile.table_z().front());
    hi = std::min(hi, profile.table_z().back());
  }
  return dense_sup([&](double z) { return profile(z).U; }, lo, hi);
}

}  // namespace freeshear
