#pragma once

#include "bcdt/dataset.hpp"
#include "bcdt/formula.hpp"

#include <span>
#include <vector>

namespace bcdt {

/// Misclassification gain of a split where every sample i carries the mass
/// w_i * |rho_i| and falls on the satisfying side iff rho_i >= 0.
struct PartitionScore {
  double p_top = 0.0;      ///< mass share of the satisfying side
  double p_bottom = 0.0;   ///< mass share of the violating side
  double p_positive = 0.0; ///< mass share of positive samples
  double p_negative = 0.0;
  double gain = 0.0;
  double margin = 0.0;     ///< total mass sum_i w_i |rho_i| before normalization
  bool degenerate = false; ///< all masses were zero; gain is reported as 0
};

/// Core scoring routine shared by the formula-level API and the optimizer's
/// inner loop. All spans must have equal length.
PartitionScore score_partition(std::span<const Label> labels, std::span<const double> weights,
                               std::span<const double> rho);

struct Partition {
  std::vector<std::size_t> top;    ///< indices with s |= f
  std::vector<std::size_t> bottom; ///< the rest
};

Partition partition(const LabeledDataset& data, const Formula& f);

PartitionScore misclassification_gain(const LabeledDataset& data, const SampleWeights& w, const Formula& f);

/// Class with the larger w_i |rho(path, s_i)| mass; ties go to Positive. Falls
/// back to plain weight mass when every robustness is zero.
Label best_leaf_label(std::span<const Label> labels, std::span<const double> weights, std::span<const double> rho);
Label best_leaf_label(const LabeledDataset& data, const SampleWeights& w, const Formula& path);

} // namespace bcdt
