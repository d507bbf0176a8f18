#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace bcdt {

enum class Comparator { Greater, LessEqual };

/// One half-space `x_j > threshold` or `x_j <= threshold`. Variables are
/// 0-based here and printed 1-based (`x1` is variable 0).
struct Face {
  int variable = 0;
  Comparator cmp = Comparator::LessEqual;
  double threshold = 0.0;

  friend bool operator==(const Face&, const Face&) = default;
};

/// Axis-aligned box: a non-empty conjunction of faces with at most one lower
/// and one upper face per variable, and lower < upper where both exist.
class BoxPredicate {
public:
  /// Throws SemanticError when the faces do not form a box.
  explicit BoxPredicate(std::vector<Face> faces);

  /// Returns nullopt instead of throwing.
  static std::optional<BoxPredicate> try_make(std::vector<Face> faces);

  const std::vector<Face>& faces() const noexcept { return faces_; }
  std::size_t size() const noexcept { return faces_.size(); }

  friend bool operator==(const BoxPredicate&, const BoxPredicate&) = default;

private:
  struct Unchecked {};
  BoxPredicate(Unchecked, std::vector<Face> faces) : faces_(std::move(faces)) {}
  static bool valid(const std::vector<Face>& faces);

  std::vector<Face> faces_;
};

enum class Temporal { Always, Eventually };

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

namespace node {
struct Predicate {
  BoxPredicate box;
};
struct Not {
  FormulaPtr child;
};
/// Conjunction. `weights` is empty or holds one positive weight per child.
struct And {
  std::vector<FormulaPtr> children;
  std::vector<double> weights;
};
struct Or {
  std::vector<FormulaPtr> children;
};
/// G_[lower,upper] or F_[lower,upper] with window offsets relative to the
/// evaluation time.
struct Temporal {
  bcdt::Temporal op;
  int lower;
  int upper;
  FormulaPtr child;
};
struct Constant {
  bool value;
};
} // namespace node

/// Immutable STL formula node. Build through the make_* factories.
class Formula {
public:
  using Node = std::variant<node::Predicate, node::Not, node::And, node::Or, node::Temporal, node::Constant>;

  explicit Formula(Node n) : node_(std::move(n)) {}

  const Node& node() const noexcept { return node_; }

  template <class T>
  const T* as() const noexcept {
    return std::get_if<T>(&node_);
  }
  template <class T>
  bool is() const noexcept {
    return std::holds_alternative<T>(node_);
  }

private:
  Node node_;
};

FormulaPtr make_predicate(BoxPredicate box);
FormulaPtr make_predicate(Face face);
FormulaPtr make_not(FormulaPtr child);

/// Unweighted conjunctions of predicates whose faces form a valid box are
/// folded into a single box predicate, and a single unweighted child is
/// returned as is. This keeps the AST canonical, so printing and parsing
/// round-trip exactly.
FormulaPtr make_and(std::vector<FormulaPtr> children, std::vector<double> weights = {});
FormulaPtr make_or(std::vector<FormulaPtr> children);
FormulaPtr make_temporal(Temporal op, int lower, int upper, FormulaPtr child);
FormulaPtr make_always(int lower, int upper, FormulaPtr child);
FormulaPtr make_eventually(int lower, int upper, FormulaPtr child);
FormulaPtr make_constant(bool value);

/// Deep structural equality (weights and thresholds compared exactly).
bool structurally_equal(const Formula& a, const Formula& b);

/// Number of Boolean and temporal operators. n-ary And/Or count n-1, a box
/// with k faces counts k-1.
int operator_count(const Formula& f);

/// Largest time offset the formula reads beyond its evaluation time.
int required_horizon(const Formula& f);

/// Highest 0-based variable index referenced, or -1 if none.
int max_variable(const Formula& f);

enum class NumberFormat {
  Exact, ///< shortest text that parses back to the same double
  Fixed2 ///< two decimals, for human-facing reports
};

std::string format_number(double v, NumberFormat fmt);

/// Canonical text in the formula grammar.
std::string to_string(const Formula& f, NumberFormat fmt = NumberFormat::Exact);

/// Parses the formula grammar; throws SyntaxError / SemanticError.
FormulaPtr parse_formula(std::string_view text);

} // namespace bcdt
