#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bcdt {

/// Uniformly sampled multivariate trajectory over timepoints 0..T.
///
/// Storage is variable-major: all samples of component j are contiguous, so
/// the temporal kernels can stream one row at a time.
class Signal {
public:
  Signal() = default;

  /// `rows[j][t]` is component j at time t. Throws SchemaError unless there
  /// is at least one row, all rows share a non-zero length and every entry is
  /// finite.
  explicit Signal(const std::vector<std::vector<double>>& rows);

  /// Variable-major flat buffer of `dimension * (horizon + 1)` values.
  Signal(int dimension, int horizon, std::vector<double> values);

  int dimension() const noexcept { return dimension_; }
  int horizon() const noexcept { return horizon_; }
  int length() const noexcept { return horizon_ + 1; }

  std::span<const double> row(int j) const noexcept {
    return {values_.data() + static_cast<std::size_t>(j) * length(), static_cast<std::size_t>(length())};
  }
  double at(int j, int t) const noexcept { return values_[static_cast<std::size_t>(j) * length() + t]; }

  const std::vector<double>& values() const noexcept { return values_; }

  friend bool operator==(const Signal&, const Signal&) = default;

private:
  void validate() const;

  int dimension_ = 0;
  int horizon_ = -1;
  std::vector<double> values_;
};

} // namespace bcdt
