#pragma once

#include "bcdt/cdt.hpp"
#include "bcdt/dataset.hpp"
#include "bcdt/formula.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace bcdt {

struct BoostConfig {
  int trees = 3;            ///< K
  double M = 100.0;         ///< weight of a tree with zero weighted error
  int max_retries = 5;      ///< retrains allowed per round after a discarded tree
  CdtConfig cdt;

  void validate() const;
};

struct BoostedTree {
  CdtPtr root;
  double alpha = 0.0;
  double epsilon = 0.0;
  FormulaPtr formula;
  std::size_t combinations = 0; ///< accepted conciseness merges
  ConcisenessLog log;           ///< empty for models loaded from disk
};

struct BoostedModel {
  int dimension = 0;
  int horizon = 0;
  double M = 100.0;
  std::vector<BoostedTree> trees;
  std::optional<std::size_t> pruned_index;
  BoostConfig config;
  std::vector<std::string> warnings;

  std::size_t combinations() const;
};

/// Everything about one accepted round, for callers that want to audit the
/// weight update.
struct RoundInfo {
  std::size_t round = 0;
  double epsilon = 0.0;
  double alpha = 0.0;
  std::vector<Label> predictions;
  std::vector<double> weights_before;
  std::vector<double> weights_after;
};
using RoundObserver = std::function<void(const RoundInfo&)>;

/// alpha = 0.5 ln(1/eps - 1), or M when eps = 0.
double tree_weight(double epsilon, double M);

/// AdaBoost over concise decision trees. Trees with weighted error >= 0.5 are
/// discarded and rebuilt with fresh optimizer seeds; once the retries run out
/// training stops with the trees collected so far and a warning.
BoostedModel train_bcdt(const LabeledDataset& data, const BoostConfig& cfg, const RoundObserver& observer = {});

/// Index of the simplest tree whose weight equals M; earliest on ties.
std::optional<std::size_t> select_pruned_tree(const BoostedModel& model);

/// The pruned tree's verdict if there is one, else the sign of the weighted
/// vote with ties going to Positive.
Label predict(const BoostedModel& model, const Signal& s);

double model_mcr(const BoostedModel& model, const LabeledDataset& data);

/// The pruned tree's formula, or the weighted conjunction of all tree formulas.
FormulaPtr model_to_wstl(const BoostedModel& model);

/// The model made of the first k trees, as if training had asked for k.
BoostedModel truncated(const BoostedModel& model, std::size_t k);

} // namespace bcdt
