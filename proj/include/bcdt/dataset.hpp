#pragma once

#include "bcdt/formula.hpp"
#include "bcdt/signal.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace bcdt {

/// Class labels, encoded as +1 (positive) and -1 (negative).
enum class Label : int { Positive = 1, Negative = -1 };

inline int sign(Label l) noexcept { return static_cast<int>(l); }
inline Label label_from_sign(int v) noexcept { return v >= 0 ? Label::Positive : Label::Negative; }

/// Non-empty set of labelled signals sharing dimension and horizon.
class LabeledDataset {
public:
  LabeledDataset() = default;
  /// `ids` may be empty, in which case samples are named "0", "1", ...
  LabeledDataset(std::vector<Signal> signals, std::vector<Label> labels, std::vector<std::string> ids = {});

  std::size_t size() const noexcept { return signals_.size(); }
  bool empty() const noexcept { return signals_.empty(); }
  int dimension() const noexcept { return signals_.empty() ? 0 : signals_.front().dimension(); }
  int horizon() const noexcept { return signals_.empty() ? -1 : signals_.front().horizon(); }

  const Signal& signal(std::size_t i) const { return signals_[i]; }
  Label label(std::size_t i) const { return labels_[i]; }
  const std::string& id(std::size_t i) const { return ids_[i]; }

  const std::vector<Signal>& signals() const noexcept { return signals_; }
  const std::vector<Label>& labels() const noexcept { return labels_; }

  std::size_t count(Label l) const;

  LabeledDataset subset(std::span<const std::size_t> indices) const;

private:
  std::vector<Signal> signals_;
  std::vector<Label> labels_;
  std::vector<std::string> ids_;
};

/// Boosting distribution over samples: non-negative, summing to one.
class SampleWeights {
public:
  SampleWeights() = default;
  /// Normalizes `values`; throws ConfigError on negative entries or zero mass.
  explicit SampleWeights(std::vector<double> values);

  static SampleWeights uniform(std::size_t n);

  std::size_t size() const noexcept { return w_.size(); }
  double operator[](std::size_t i) const { return w_[i]; }
  std::span<const double> values() const noexcept { return w_; }

  SampleWeights subset(std::span<const std::size_t> indices) const;

private:
  std::vector<double> w_;
};

struct FoldPlan {
  int folds = 0;
  std::uint64_t seed = 0;
  std::vector<int> assignment; ///< sample index -> fold id

  std::vector<std::size_t> test_indices(int fold) const;
  std::vector<std::size_t> train_indices(int fold) const;
};

/// Stratified k-fold split; deterministic for a given seed. Throws
/// TooFewSamples unless k >= 2 and each class has at least k members.
FoldPlan stratified_folds(const LabeledDataset& data, int k, std::uint64_t seed);

/// Fraction of samples whose verdict under `f` disagrees with the label.
double mcr(const Formula& f, const LabeledDataset& data);

/// Long-format CSV: header `id,t,label,x1,...,xn`, one row per (id, t).
LabeledDataset load_csv(const std::filesystem::path& path);
LabeledDataset read_csv(std::istream& in, const std::string& source = "<stream>");
void write_csv(const LabeledDataset& data, std::ostream& out);

} // namespace bcdt
