#include "freeshear/stats.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace freeshear {

double FieldStat::standard_error() const {
  const std::size_t n = blocks.size();
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  double m = 0.0;
  for (double b : blocks) m += b;
  m /= static_cast<double>(n);
  double ss = 0.0;
  for (double b : blocks) ss += (b - m) * (b - m);
  return std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n));
}

FieldStat combine(std::span<const FieldStat* const> stats, std::span<const double> coeffs) {
  FieldStat out;
  if (stats.empty()) return out;
  const std::size_t nb = stats[0]->blocks.size();
  out.blocks.assign(nb, 0.0);
  for (std::size_t i = 0; i < stats.size(); ++i) {
    if (stats[i]->blocks.size() != nb) throw std::invalid_argument("combine: batch count mismatch");
    out.mean += coeffs[i] * stats[i]->mean;
    for (std::size_t b = 0; b < nb; ++b) out.blocks[b] += coeffs[i] * stats[i]->blocks[b];
  }
  return out;
}

FieldStat combine(std::initializer_list<std::pair<const FieldStat*, double>> terms) {
  std::vector<const FieldStat*> s;
  std::vector<double> c;
  for (const auto& [p, w] : terms) {
    s.push_back(p);
    c.push_back(w);
  }
  return combine(s, c);
}

double t_interval_halfwidth(const FieldStat& s, double level) {
  const std::size_t n = s.blocks.size();
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  boost::math::students_t dist(static_cast<double>(n - 1));
  return boost::math::quantile(dist, 0.5 + 0.5 * level) * s.standard_error();
}

RunningStats::RunningStats(std::vector<std::string> names, double burn_in, int blocks)
    : names_(std::move(names)), burn_in_(burn_in), blocks_(blocks), columns_(names_.size()) {
  if (blocks_ < 2) throw std::invalid_argument("RunningStats needs at least 2 blocks");
}

void RunningStats::accumulate(double t, std::span<const double> values) {
  if (values.size() != columns_.size()) throw std::invalid_argument("accumulate: field count mismatch");
  if (t < burn_in_) return;
  times_.push_back(t);
  for (std::size_t i = 0; i < values.size(); ++i) columns_[i].push_back(values[i]);
}

std::size_t RunningStats::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  throw std::out_of_range("unknown statistics field '" + name + "'");
}

double RunningStats::mean(std::size_t field) const {
  const auto& col = columns_.at(field);
  if (col.empty()) return std::numeric_limits<double>::quiet_NaN();
  double s = 0.0;
  for (double v : col) s += v;
  return s / static_cast<double>(col.size());
}

std::vector<double> RunningStats::block_means(std::size_t field) const {
  const auto& col = columns_.at(field);
  const std::size_t n = col.size();
  const std::size_t nb = std::min<std::size_t>(static_cast<std::size_t>(blocks_), n);
  std::vector<double> out(nb, 0.0);
  for (std::size_t b = 0; b < nb; ++b) {
    const std::size_t lo = b * n / nb, hi = (b + 1) * n / nb;
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += col[i];
    out[b] = s / static_cast<double>(hi - lo);
  }
  return out;
}

FieldStat RunningStats::stat(std::size_t field) const { return {mean(field), block_means(field)}; }

}  // namespace freeshear
