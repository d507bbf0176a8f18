#include "bcdt/primitive.hpp"

#include "bcdt/error.hpp"
#include "bcdt/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bcdt {

bool PstlTemplate::empty_space() const noexcept {
  if (horizon < 0 || slots.empty())
    return true;
  for (const FaceSlot& s : slots)
    if (!(s.lower_bound <= s.upper_bound) || !std::isfinite(s.lower_bound) || !std::isfinite(s.upper_bound))
      return true;
  return false;
}

static std::vector<Face> faces_of(const PstlTemplate& tpl, const Valuation& v) {
  std::vector<Face> faces;
  faces.reserve(tpl.slots.size());
  for (std::size_t k = 0; k < tpl.slots.size(); ++k)
    faces.push_back({tpl.slots[k].variable, tpl.slots[k].cmp, v.thresholds[k]});
  return faces;
}

bool feasible(const PstlTemplate& tpl, const Valuation& v) {
  if (v.t0 < 0 || v.t0 > v.t1 || v.t1 > tpl.horizon)
    return false;
  if (v.thresholds.size() != tpl.slots.size())
    return false;
  for (std::size_t k = 0; k < tpl.slots.size(); ++k)
    if (!(v.thresholds[k] >= tpl.slots[k].lower_bound && v.thresholds[k] <= tpl.slots[k].upper_bound))
      return false;
  return BoxPredicate::try_make(faces_of(tpl, v)).has_value();
}

FormulaPtr instantiate(const PstlTemplate& tpl, const Valuation& v) {
  if (!feasible(tpl, v))
    throw SemanticError("valuation is outside the template's parameter space");
  return make_temporal(tpl.op, v.t0, v.t1, make_predicate(BoxPredicate(faces_of(tpl, v))));
}

std::optional<PrimitiveView> as_primitive(const Formula& f) {
  const auto* t = f.as<node::Temporal>();
  if (!t)
    return std::nullopt;
  const auto* p = t->child->as<node::Predicate>();
  if (!p)
    return std::nullopt;
  return PrimitiveView{t->op, t->lower, t->upper, &p->box};
}

std::vector<std::pair<double, double>> threshold_ranges(const LabeledDataset& data) {
  const int n = data.dimension();
  std::vector<std::pair<double, double>> ranges(static_cast<std::size_t>(n),
                                                {std::numeric_limits<double>::infinity(),
                                                 -std::numeric_limits<double>::infinity()});
  for (const Signal& s : data.signals())
    for (int j = 0; j < n; ++j)
      for (double v : s.row(j)) {
        ranges[j].first = std::min(ranges[j].first, v);
        ranges[j].second = std::max(ranges[j].second, v);
      }
  for (auto& [lo, hi] : ranges) {
    double pad = 0.01 * (hi - lo);
    if (!(pad > 0.0))
      pad = std::max(1e-3, 1e-3 * std::fabs(lo));
    lo -= pad;
    hi += pad;
  }
  return ranges;
}

std::vector<PstlTemplate> first_order_templates(const LabeledDataset& data) {
  const auto ranges = threshold_ranges(data);
  std::vector<PstlTemplate> out;
  for (Temporal op : {Temporal::Always, Temporal::Eventually})
    for (int j = 0; j < data.dimension(); ++j)
      for (Comparator cmp : {Comparator::Greater, Comparator::LessEqual})
        out.push_back({op, {{j, cmp, ranges[j].first, ranges[j].second}}, data.horizon()});
  return out;
}

TemplateEvaluator::TemplateEvaluator(const PstlTemplate& tpl, const LabeledDataset& data)
    : tpl_(tpl), samples_(data.size()) {
  if (data.horizon() < tpl.horizon)
    throw OutOfHorizon("template horizon exceeds the dataset's");
  rows_.reserve(samples_ * tpl_.slots.size());
  for (const Signal& s : data.signals())
    for (const FaceSlot& slot : tpl_.slots) {
      if (slot.variable >= s.dimension())
        throw DimensionMismatch("template references an unknown variable");
      rows_.push_back(s.row(slot.variable).data());
    }
}

void TemplateEvaluator::robustness(const Valuation& v, std::span<double> out) const {
  const std::size_t m = tpl_.slots.size();
  std::vector<kernels::FaceRow> faces(m);
  for (std::size_t k = 0; k < m; ++k) {
    faces[k].threshold = v.thresholds[k];
    faces[k].greater = tpl_.slots[k].cmp == Comparator::Greater;
  }
  const auto reduce = tpl_.op == Temporal::Always ? kernels::Reduce::Min : kernels::Reduce::Max;
  const kernels::KernelTable& kt = kernels::active_kernels();
  for (std::size_t i = 0; i < samples_; ++i) {
    for (std::size_t k = 0; k < m; ++k)
      faces[k].row = rows_[i * m + k];
    out[i] = kt.window_box(faces.data(), m, v.t0, v.t1, reduce);
  }
}

} // namespace bcdt
