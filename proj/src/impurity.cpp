#include "bcdt/impurity.hpp"

#include "bcdt/robustness.hpp"

#include <algorithm>
#include <cmath>

namespace bcdt {

PartitionScore score_partition(std::span<const Label> labels, std::span<const double> weights,
                               std::span<const double> rho) {
  double top_pos = 0.0, top_neg = 0.0, bot_pos = 0.0, bot_neg = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const double mass = weights[i] * std::fabs(rho[i]);
    const bool positive = labels[i] == Label::Positive;
    if (rho[i] >= 0.0)
      (positive ? top_pos : top_neg) += mass;
    else
      (positive ? bot_pos : bot_neg) += mass;
  }
  PartitionScore s;
  const double top = top_pos + top_neg;
  const double bottom = bot_pos + bot_neg;
  const double total = top + bottom;
  s.margin = total;
  if (!(total > 0.0) || !std::isfinite(total)) {
    s.degenerate = true;
    return s;
  }
  s.p_top = top / total;
  s.p_bottom = bottom / total;
  s.p_positive = (top_pos + bot_pos) / total;
  s.p_negative = (top_neg + bot_neg) / total;
  const double mr_all = std::min(s.p_positive, s.p_negative);
  const double mr_top = top > 0.0 ? std::min(top_pos, top_neg) / top : 0.0;
  const double mr_bottom = bottom > 0.0 ? std::min(bot_pos, bot_neg) / bottom : 0.0;
  s.gain = mr_all - s.p_top * mr_top - s.p_bottom * mr_bottom;
  return s;
}

Partition partition(const LabeledDataset& data, const Formula& f) {
  Partition p;
  for (std::size_t i = 0; i < data.size(); ++i)
    (satisfies(f, data.signal(i)) ? p.top : p.bottom).push_back(i);
  return p;
}

static std::vector<double> robustness_all(const LabeledDataset& data, const Formula& f) {
  std::vector<double> rho(data.size());
  for (std::size_t i = 0; i < data.size(); ++i)
    rho[i] = robustness(f, data.signal(i), 0);
  return rho;
}

PartitionScore misclassification_gain(const LabeledDataset& data, const SampleWeights& w, const Formula& f) {
  const auto rho = robustness_all(data, f);
  return score_partition(data.labels(), w.values(), rho);
}

Label best_leaf_label(std::span<const Label> labels, std::span<const double> weights, std::span<const double> rho) {
  double pos = 0.0, neg = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i)
    (labels[i] == Label::Positive ? pos : neg) += weights[i] * std::fabs(rho[i]);
  if (!(pos + neg > 0.0)) {
    pos = neg = 0.0;
    for (std::size_t i = 0; i < labels.size(); ++i)
      (labels[i] == Label::Positive ? pos : neg) += weights[i];
  }
  return pos >= neg ? Label::Positive : Label::Negative;
}

Label best_leaf_label(const LabeledDataset& data, const SampleWeights& w, const Formula& path) {
  const auto rho = robustness_all(data, path);
  return best_leaf_label(data.labels(), w.values(), rho);
}

} // namespace bcdt
