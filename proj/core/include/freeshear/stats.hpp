#pragma once

#include <cstddef>
#include <initializer_list>
#include <utility>
#include <span>
#include <string>
#include <vector>

namespace freeshear {

/// Mean and batch means of one time-averaged quantity.
struct FieldStat {
  double mean = 0.0;
  std::vector<double> blocks;  ///< batch means, in time order

  /// Standard deviation of the batch means over sqrt(count); NaN with fewer
  /// than two batches.
  double standard_error() const;
};

/// Statistic of sum_i c_i X_i, with paired batch means so correlations between
/// the X_i enter the error bar.
FieldStat combine(std::span<const FieldStat* const> stats, std::span<const double> coeffs);
FieldStat combine(std::initializer_list<std::pair<const FieldStat*, double>> terms);

/// Half width of a two-sided Student-t interval at the given level.
double t_interval_halfwidth(const FieldStat& s, double level = 0.95);

/// Sample series after burn-in, one column per named field, with batch-means
/// error bars.
class RunningStats {
 public:
  RunningStats(std::vector<std::string> names, double burn_in = 0.0, int blocks = 10);

  const std::vector<std::string>& names() const { return names_; }
  double burn_in() const { return burn_in_; }
  int blocks() const { return blocks_; }
  std::size_t count() const { return times_.size(); }
  double first_time() const { return times_.empty() ? 0.0 : times_.front(); }
  double last_time() const { return times_.empty() ? 0.0 : times_.back(); }

  /// Ignores samples with t < burn_in.
  void accumulate(double t, std::span<const double> values);

  std::size_t index_of(const std::string& name) const;
  double mean(std::size_t field) const;
  /// Batch means over min(blocks, count) contiguous batches.
  std::vector<double> block_means(std::size_t field) const;
  FieldStat stat(std::size_t field) const;
  double standard_error(std::size_t field) const { return stat(field).standard_error(); }

 private:
  std::vector<std::string> names_;
  double burn_in_;
  int blocks_;
  std::vector<double> times_;
  std::vector<std::vector<double>> columns_;
};

}  // namespace freeshear
