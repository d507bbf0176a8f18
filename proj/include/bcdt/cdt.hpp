#pragma once

#include "bcdt/dataset.hpp"
#include "bcdt/formula.hpp"
#include "bcdt/primitive.hpp"
#include "bcdt/pso.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace bcdt {

struct CdtConfig {
  int max_depth = 3;
  double lambda = 0.95; ///< stop once this fraction of a node's samples share a class
  bool use_always = true;
  bool use_eventually = true;
  PsoConfig pso;

  void validate() const;
};

class CdtNode;
using CdtPtr = std::shared_ptr<const CdtNode>;

/// Binary decision-tree node: a leaf label, or a primitive whose satisfying
/// samples go to `satisfied()` and violating ones to `violated()`.
class CdtNode {
public:
  static CdtPtr leaf(Label label);
  static CdtPtr internal(FormulaPtr primitive, CdtPtr satisfied, CdtPtr violated);

  bool is_leaf() const noexcept { return primitive_ == nullptr; }
  Label label() const noexcept { return label_; }
  const FormulaPtr& primitive() const noexcept { return primitive_; }
  const CdtPtr& satisfied() const noexcept { return satisfied_; }
  const CdtPtr& violated() const noexcept { return violated_; }

private:
  Label label_ = Label::Positive;
  FormulaPtr primitive_;
  CdtPtr satisfied_;
  CdtPtr violated_;
};

struct CombinationEvent {
  int depth = 0;
  FormulaPtr before;
  FormulaPtr child;
  FormulaPtr after;
  double gain_before = 0.0;
  double gain_after = 0.0;
};

struct ConcisenessLog {
  std::vector<CombinationEvent> events;
  std::size_t count() const noexcept { return events.size(); }
};

struct CdtResult {
  CdtPtr root;
  ConcisenessLog log;
};

/// Concise decision tree induction. Optimizer seeds derive from cfg.pso.seed.
CdtResult build_cdt(const LabeledDataset& data, const SampleWeights& w, const CdtConfig& cfg);

/// A member of a primitive set: a template to optimize, or an already valued
/// primitive that is only scored.
using PrimitiveChoice = std::variant<PstlTemplate, FormulaPtr>;

std::vector<PrimitiveChoice> default_primitives(const LabeledDataset& data, const CdtConfig& cfg);

/// Result of primitive optimization: a leaf label when the stop conditions
/// hold, otherwise the best primitive and its score.
struct Candidate {
  std::optional<Label> label;
  FormulaPtr primitive;
  Score score;
};

/// Best primitive for the node reached by `path` (all of `data` is assumed to
/// reach it). Ties across choices prefer fewer operators, then larger margin.
Candidate optimize_primitive(const LabeledDataset& data, const SampleWeights& w, const Formula& path,
                             std::span<const PrimitiveChoice> choices, int depth, const CdtConfig& cfg,
                             std::uint64_t seed, std::span<const Valuation> warm_starts = {});

/// Merges two valued primitives with the same temporal operator into one
/// template over the conjunction of their boxes, every threshold and both
/// interval endpoints free. Faces sharing variable and direction collapse to
/// one slot. Returns nullopt when the operators differ; throws NotAPrimitive
/// if either input is not a single temporal operator over a box.
std::optional<PstlTemplate> combine_primitives(const Formula& parent, const Formula& child,
                                               std::span<const std::pair<double, double>> ranges, int horizon);

/// STL formula accepting exactly the signals the tree sends to a positive
/// leaf: T(leaf) = true/false, T(node) = (p & T(sat)) | (!p & T(viol)),
/// with constant operands simplified away.
FormulaPtr tree_to_stl(const CdtNode& root);

Label classify(const CdtNode& root, const Signal& s);

/// Number of internal nodes on the longest root-to-leaf path.
int tree_depth(const CdtNode& root);

} // namespace bcdt
