#include "bcdt/cdt.hpp"

#include "bcdt/error.hpp"
#include "bcdt/impurity.hpp"
#include "bcdt/robustness.hpp"

#include <algorithm>
#include <cmath>

namespace bcdt {

void CdtConfig::validate() const {
  if (max_depth < 1)
    throw ConfigError("maximum depth must be at least 1");
  if (!(lambda > 0.5 && lambda <= 1.0))
    throw ConfigError("lambda must lie in (0.5, 1]");
  if (!use_always && !use_eventually)
    throw ConfigError("at least one primitive shape must be enabled");
  pso.validate();
}

CdtPtr CdtNode::leaf(Label label) {
  auto n = std::make_shared<CdtNode>();
  n->label_ = label;
  return n;
}

CdtPtr CdtNode::internal(FormulaPtr primitive, CdtPtr satisfied, CdtPtr violated) {
  if (!primitive || !as_primitive(*primitive))
    throw NotAPrimitive("internal tree nodes need a temporal box primitive");
  if (!satisfied || !violated)
    throw SemanticError("internal tree nodes need two children");
  auto n = std::make_shared<CdtNode>();
  n->primitive_ = std::move(primitive);
  n->satisfied_ = std::move(satisfied);
  n->violated_ = std::move(violated);
  return n;
}

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t mix(std::uint64_t a, std::uint64_t b) { return splitmix(a ^ splitmix(b)); }

/// Samples reaching a node together with rho(path, s_i).
struct NodeData {
  LabeledDataset data;
  std::vector<double> weights;
  std::vector<double> path_rho;

  bool empty() const { return path_rho.empty(); }
};

bool should_stop(const NodeData& nd, int depth, const CdtConfig& cfg) {
  if (nd.empty() || depth >= cfg.max_depth)
    return true;
  const double n = static_cast<double>(nd.data.size());
  const double pos = static_cast<double>(nd.data.count(Label::Positive));
  return pos / n >= cfg.lambda || (n - pos) / n >= cfg.lambda;
}

Label leaf_label(const NodeData& nd) {
  if (nd.empty())
    return Label::Positive;
  return best_leaf_label(nd.data.labels(), nd.weights, nd.path_rho);
}

std::vector<double> primitive_robustness(const NodeData& nd, const Formula& f) {
  std::vector<double> rho(nd.data.size());
  for (std::size_t i = 0; i < rho.size(); ++i)
    rho[i] = robustness(f, nd.data.signal(i), 0);
  return rho;
}

Score score_against_path(const NodeData& nd, std::span<const double> rho, std::vector<double>& scratch) {
  scratch.resize(rho.size());
  for (std::size_t i = 0; i < rho.size(); ++i)
    scratch[i] = std::min(nd.path_rho[i], rho[i]);
  const PartitionScore ps = score_partition(nd.data.labels(), nd.weights, scratch);
  return {ps.gain, ps.margin};
}

bool preferred(const Score& a, int ops_a, const Score& b, int ops_b) {
  if (a.value != b.value)
    return a.value > b.value;
  if (ops_a != ops_b)
    return ops_a < ops_b;
  return a.tiebreak > b.tiebreak;
}

Candidate optimize_node(const NodeData& nd, std::span<const PrimitiveChoice> choices, int depth,
                        const CdtConfig& cfg, std::uint64_t seed, std::span<const Valuation> warm) {
  if (choices.empty())
    throw ConfigError("empty primitive set");
  if (should_stop(nd, depth, cfg))
    return {leaf_label(nd), nullptr, {}};

  Candidate best;
  int best_ops = 0;
  std::vector<double> rho(nd.data.size());
  std::vector<double> scratch;
  for (std::size_t j = 0; j < choices.size(); ++j) {
    FormulaPtr f;
    Score s;
    if (const auto* valued = std::get_if<FormulaPtr>(&choices[j])) {
      f = *valued;
      rho = primitive_robustness(nd, *f);
      s = score_against_path(nd, rho, scratch);
    } else {
      const PstlTemplate& tpl = std::get<PstlTemplate>(choices[j]);
      const TemplateEvaluator eval(tpl, nd.data);
      const Objective objective = [&](const Valuation& v) {
        eval.robustness(v, rho);
        return score_against_path(nd, rho, scratch);
      };
      PsoConfig pso = cfg.pso;
      pso.seed = mix(seed, j);
      const OptimizationResult r = optimize(tpl, objective, pso, warm);
      f = instantiate(tpl, r.valuation);
      s = r.score;
    }
    const int ops = operator_count(*f);
    if (!best.primitive || preferred(s, ops, best.score, best_ops)) {
      best.primitive = f;
      best.score = s;
      best_ops = ops;
    }
  }
  return best;
}

/// The same split with the other operator: op(x > pi) is the exact negation
/// of op'(x <= pi). Only single-face primitives have a box-shaped dual.
FormulaPtr single_face_dual(const Formula& f) {
  const auto p = as_primitive(f);
  if (!p || p->box->size() != 1)
    return nullptr;
  Face face = p->box->faces().front();
  face.cmp = face.cmp == Comparator::Greater ? Comparator::LessEqual : Comparator::Greater;
  FormulaPtr pred = make_predicate(face);
  return p->op == Temporal::Always ? make_eventually(p->t0, p->t1, std::move(pred))
                                   : make_always(p->t0, p->t1, std::move(pred));
}

std::vector<Valuation> combination_warm_starts(const PstlTemplate& tpl, const PrimitiveView& parent,
                                               const PrimitiveView& child) {
  std::vector<double> thresholds;
  for (const FaceSlot& slot : tpl.slots) {
    std::optional<double> value;
    for (const PrimitiveView* pv : {&parent, &child})
      for (const Face& f : pv->box->faces()) {
        if (f.variable != slot.variable || f.cmp != slot.cmp)
          continue;
        if (!value)
          value = f.threshold;
        else
          value = slot.cmp == Comparator::Greater ? std::max(*value, f.threshold) : std::min(*value, f.threshold);
      }
    thresholds.push_back(std::clamp(value.value_or(slot.lower_bound), slot.lower_bound, slot.upper_bound));
  }
  std::vector<Valuation> out;
  out.push_back({parent.t0, parent.t1, thresholds});
  out.push_back({child.t0, child.t1, thresholds});
  out.push_back({std::min(parent.t0, child.t0), std::max(parent.t1, child.t1), thresholds});
  const int lo = std::max(parent.t0, child.t0);
  const int hi = std::min(parent.t1, child.t1);
  if (lo <= hi)
    out.push_back({lo, hi, thresholds});
  return out;
}

class Builder {
public:
  Builder(const LabeledDataset& data, const CdtConfig& cfg)
      : cfg_(cfg), ranges_(threshold_ranges(data)), horizon_(data.horizon()),
        choices_(default_primitives(data, cfg)), restart_cap_(2 * data.dimension()) {}

  CdtResult run(const LabeledDataset& data, const SampleWeights& w) {
    NodeData root{data, std::vector<double>(w.values().begin(), w.values().end()),
                  std::vector<double>(data.size(), kRobustnessCap)};
    const Candidate cand = optimize_node(root, choices_, 0, cfg_, next_seed(), {});
    CdtResult out;
    out.root = expand(root, 0, cand, 0);
    out.log = std::move(log_);
    return out;
  }

private:
  std::uint64_t next_seed() { return mix(cfg_.pso.seed, ++calls_); }

  static NodeData child_of(const NodeData& nd, std::span<const double> cand_rho, bool top) {
    std::vector<std::size_t> idx;
    std::vector<double> weights, path;
    for (std::size_t i = 0; i < nd.path_rho.size(); ++i) {
      const double side = top ? cand_rho[i] : -cand_rho[i];
      const double r = std::min(nd.path_rho[i], side);
      const bool sat = std::min(nd.path_rho[i], cand_rho[i]) >= 0.0;
      if (sat != top)
        continue;
      idx.push_back(i);
      weights.push_back(nd.weights[i]);
      path.push_back(r);
    }
    if (idx.empty())
      return {LabeledDataset{}, {}, {}};
    return {nd.data.subset(idx), std::move(weights), std::move(path)};
  }

  CdtPtr expand(const NodeData& nd, int depth, Candidate cand, int restarts) {
    if (cand.label || should_stop(nd, depth, cfg_))
      return CdtNode::leaf(cand.label.value_or(leaf_label(nd)));
    if (!(cand.score.value > 0.0))
      return CdtNode::leaf(leaf_label(nd));

    const std::vector<double> cand_rho = primitive_robustness(nd, *cand.primitive);
    NodeData kids[2] = {child_of(nd, cand_rho, true), child_of(nd, cand_rho, false)};
    Candidate kid_cand[2];
    const auto parent_view = *as_primitive(*cand.primitive);
    for (int side = 0; side < 2; ++side) {
      kid_cand[side] = optimize_node(kids[side], choices_, depth + 1, cfg_, next_seed(), {});
      if (!kid_cand[side].primitive || restarts >= restart_cap_)
        continue;
      // Operators that differ may still meet through a single-face dual.
      const FormulaPtr& kid = kid_cand[side].primitive;
      std::pair<FormulaPtr, FormulaPtr> pairs[] = {
          {cand.primitive, kid}, {single_face_dual(*cand.primitive), kid}, {cand.primitive, single_face_dual(*kid)}};
      std::optional<PstlTemplate> tpl;
      FormulaPtr upper, lower;
      for (auto& [a, c] : pairs) {
        if (!a || !c)
          continue;
        tpl = combine_primitives(*a, *c, ranges_, horizon_);
        if (tpl && !(tpl->op == Temporal::Always ? cfg_.use_always : cfg_.use_eventually))
          tpl.reset();
        if (tpl) {
          upper = a;
          lower = c;
          break;
        }
      }
      if (!tpl || tpl->slots.size() <= parent_view.box->size())
        continue;
      const auto warm = combination_warm_starts(*tpl, *as_primitive(*upper), *as_primitive(*lower));
      const PrimitiveChoice merged[] = {*tpl};
      Candidate combined = optimize_node(nd, merged, depth, cfg_, next_seed(), warm);
      if (combined.primitive && combined.score.value > cand.score.value + kMinImprovement) {
        log_.events.push_back(
            {depth, cand.primitive, kid_cand[side].primitive, combined.primitive, cand.score.value,
             combined.score.value});
        return expand(nd, depth, std::move(combined), restarts + 1);
      }
    }
    CdtPtr sat = expand(kids[0], depth + 1, std::move(kid_cand[0]), 0);
    CdtPtr viol = expand(kids[1], depth + 1, std::move(kid_cand[1]), 0);
    return CdtNode::internal(cand.primitive, std::move(sat), std::move(viol));
  }

  static constexpr double kMinImprovement = 1e-9;

  const CdtConfig& cfg_;
  std::vector<std::pair<double, double>> ranges_;
  int horizon_;
  std::vector<PrimitiveChoice> choices_;
  int restart_cap_;
  std::uint64_t calls_ = 0;
  ConcisenessLog log_;
};

} // namespace

std::vector<PrimitiveChoice> default_primitives(const LabeledDataset& data, const CdtConfig& cfg) {
  std::vector<PrimitiveChoice> out;
  for (PstlTemplate& t : first_order_templates(data)) {
    if ((t.op == Temporal::Always && !cfg.use_always) || (t.op == Temporal::Eventually && !cfg.use_eventually))
      continue;
    out.emplace_back(std::move(t));
  }
  return out;
}

CdtResult build_cdt(const LabeledDataset& data, const SampleWeights& w, const CdtConfig& cfg) {
  cfg.validate();
  if (data.empty())
    throw SchemaError("cannot build a tree from an empty dataset");
  if (w.size() != data.size())
    throw ConfigError("sample weight count does not match the dataset");
  return Builder(data, cfg).run(data, w);
}

Candidate optimize_primitive(const LabeledDataset& data, const SampleWeights& w, const Formula& path,
                             std::span<const PrimitiveChoice> choices, int depth, const CdtConfig& cfg,
                             std::uint64_t seed, std::span<const Valuation> warm_starts) {
  cfg.validate();
  NodeData nd{data, std::vector<double>(w.values().begin(), w.values().end()), {}};
  nd.path_rho.resize(data.size());
  for (std::size_t i = 0; i < data.size(); ++i)
    nd.path_rho[i] = robustness(path, data.signal(i), 0);
  return optimize_node(nd, choices, depth, cfg, seed, warm_starts);
}

std::optional<PstlTemplate> combine_primitives(const Formula& parent, const Formula& child,
                                               std::span<const std::pair<double, double>> ranges, int horizon) {
  const auto p = as_primitive(parent);
  const auto c = as_primitive(child);
  if (!p || !c)
    throw NotAPrimitive("conciseness combination needs two temporal box primitives");
  if (p->op != c->op)
    return std::nullopt;
  PstlTemplate tpl{p->op, {}, horizon};
  for (const PrimitiveView* pv : {&*p, &*c})
    for (const Face& f : pv->box->faces()) {
      const bool present = std::any_of(tpl.slots.begin(), tpl.slots.end(), [&](const FaceSlot& s) {
        return s.variable == f.variable && s.cmp == f.cmp;
      });
      if (present)
        continue;
      if (f.variable < 0 || static_cast<std::size_t>(f.variable) >= ranges.size())
        throw DimensionMismatch("primitive references a variable without a threshold range");
      tpl.slots.push_back({f.variable, f.cmp, ranges[f.variable].first, ranges[f.variable].second});
    }
  return tpl;
}

FormulaPtr tree_to_stl(const CdtNode& node) {
  if (node.is_leaf())
    return make_constant(node.label() == Label::Positive);
  const FormulaPtr sat = tree_to_stl(*node.satisfied());
  const FormulaPtr viol = tree_to_stl(*node.violated());
  const auto* sat_c = sat->as<node::Constant>();
  const auto* viol_c = viol->as<node::Constant>();
  const FormulaPtr& p = node.primitive();

  auto branch = [](FormulaPtr literal, const FormulaPtr& rest, const node::Constant* c) -> FormulaPtr {
    if (c)
      return c->value ? literal : nullptr;
    return make_and({std::move(literal), rest});
  };
  FormulaPtr left = branch(p, sat, sat_c);
  FormulaPtr right = branch(make_not(p), viol, viol_c);
  if (sat_c && viol_c && sat_c->value == viol_c->value)
    return make_constant(sat_c->value);
  if (!left)
    return right ? right : make_constant(false);
  if (!right)
    return left;
  return make_or({std::move(left), std::move(right)});
}

Label classify(const CdtNode& root, const Signal& s) {
  const CdtNode* n = &root;
  while (!n->is_leaf())
    n = satisfies(*n->primitive(), s) ? n->satisfied().get() : n->violated().get();
  return n->label();
}

int tree_depth(const CdtNode& root) {
  if (root.is_leaf())
    return 0;
  return 1 + std::max(tree_depth(*root.satisfied()), tree_depth(*root.violated()));
}

} // namespace bcdt
