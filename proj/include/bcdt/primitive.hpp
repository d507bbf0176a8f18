#pragma once

#include "bcdt/dataset.hpp"
#include "bcdt/formula.hpp"

#include <optional>
#include <vector>

namespace bcdt {

/// A free threshold: one face of the template's box with its search bounds.
struct FaceSlot {
  int variable = 0;
  Comparator cmp = Comparator::LessEqual;
  double lower_bound = 0.0;
  double upper_bound = 0.0;

  friend bool operator==(const FaceSlot&, const FaceSlot&) = default;
};

/// Parametric primitive `op_[t0,t1] box` with free interval endpoints in
/// [0, horizon] and one free threshold per slot.
struct PstlTemplate {
  Temporal op = Temporal::Always;
  std::vector<FaceSlot> slots;
  int horizon = 0;

  std::size_t parameter_count() const noexcept { return 2 + slots.size(); }
  bool empty_space() const noexcept;

  friend bool operator==(const PstlTemplate&, const PstlTemplate&) = default;
};

/// Parameter valuation for a PstlTemplate.
struct Valuation {
  int t0 = 0;
  int t1 = 0;
  std::vector<double> thresholds;

  friend bool operator==(const Valuation&, const Valuation&) = default;
};

/// True when the valuation respects the time bounds, the threshold bounds and
/// yields a valid box.
bool feasible(const PstlTemplate& tpl, const Valuation& v);

/// Throws SemanticError when the valuation is infeasible.
FormulaPtr instantiate(const PstlTemplate& tpl, const Valuation& v);

/// Concrete primitive view of a formula `G/F_[a,b] box`.
struct PrimitiveView {
  Temporal op;
  int t0;
  int t1;
  const BoxPredicate* box;
};
std::optional<PrimitiveView> as_primitive(const Formula& f);

/// Threshold search range per variable: [min, max] over the dataset padded by
/// 1% of the range on each side.
std::vector<std::pair<double, double>> threshold_ranges(const LabeledDataset& data);

/// The first-order set: G and F over a single face `x_j > pi` or `x_j <= pi`
/// for every variable.
std::vector<PstlTemplate> first_order_templates(const LabeledDataset& data);

/// Evaluates a concrete valuation of `tpl` on every sample without building
/// an AST. `rows[i]` are sample i's rows in slot order.
class TemplateEvaluator {
public:
  TemplateEvaluator(const PstlTemplate& tpl, const LabeledDataset& data);

  /// out[i] = rho(tpl(v), s_i, 0).
  void robustness(const Valuation& v, std::span<double> out) const;

private:
  PstlTemplate tpl_;
  std::vector<const double*> rows_; // sample-major, slots.size() per sample
  std::size_t samples_ = 0;
};

} // namespace bcdt
