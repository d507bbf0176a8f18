#include "bcdt/formula.hpp"

#include "bcdt/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace bcdt {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

} // namespace

bool BoxPredicate::valid(const std::vector<Face>& faces) {
  if (faces.empty())
    return false;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    const Face& f = faces[i];
    if (f.variable < 0 || !std::isfinite(f.threshold))
      return false;
    for (std::size_t k = i + 1; k < faces.size(); ++k) {
      const Face& g = faces[k];
      if (g.variable != f.variable)
        continue;
      if (g.cmp == f.cmp)
        return false;
      const double lo = f.cmp == Comparator::Greater ? f.threshold : g.threshold;
      const double hi = f.cmp == Comparator::Greater ? g.threshold : f.threshold;
      if (!(lo < hi))
        return false;
    }
  }
  return true;
}

BoxPredicate::BoxPredicate(std::vector<Face> faces) : faces_(std::move(faces)) {
  if (!valid(faces_))
    throw SemanticError("faces do not form a box (duplicate face, empty interval or bad variable)");
}

std::optional<BoxPredicate> BoxPredicate::try_make(std::vector<Face> faces) {
  if (!valid(faces))
    return std::nullopt;
  return BoxPredicate(Unchecked{}, std::move(faces));
}

FormulaPtr make_predicate(BoxPredicate box) {
  return std::make_shared<const Formula>(node::Predicate{std::move(box)});
}

FormulaPtr make_predicate(Face face) { return make_predicate(BoxPredicate({face})); }

FormulaPtr make_not(FormulaPtr child) { return std::make_shared<const Formula>(node::Not{std::move(child)}); }

FormulaPtr make_and(std::vector<FormulaPtr> children, std::vector<double> weights) {
  if (children.empty())
    throw SemanticError("conjunction needs at least one operand");
  if (!weights.empty()) {
    if (weights.size() != children.size())
      throw SemanticError("weight count does not match conjunction arity");
    for (double w : weights)
      if (!(w > 0.0) || !std::isfinite(w))
        throw SemanticError("conjunction weights must be positive and finite");
    return std::make_shared<const Formula>(node::And{std::move(children), std::move(weights)});
  }
  if (children.size() == 1)
    return children.front();

  std::vector<Face> merged;
  bool all_predicates = true;
  for (const auto& c : children) {
    const auto* p = c->as<node::Predicate>();
    if (!p) {
      all_predicates = false;
      break;
    }
    merged.insert(merged.end(), p->box.faces().begin(), p->box.faces().end());
  }
  if (all_predicates)
    if (auto box = BoxPredicate::try_make(std::move(merged)))
      return make_predicate(std::move(*box));
  return std::make_shared<const Formula>(node::And{std::move(children), {}});
}

FormulaPtr make_or(std::vector<FormulaPtr> children) {
  if (children.empty())
    throw SemanticError("disjunction needs at least one operand");
  if (children.size() == 1)
    return children.front();
  return std::make_shared<const Formula>(node::Or{std::move(children)});
}

FormulaPtr make_temporal(Temporal op, int lower, int upper, FormulaPtr child) {
  if (lower < 0 || lower > upper)
    throw SemanticError("temporal interval [" + std::to_string(lower) + "," + std::to_string(upper) +
                        "] needs 0 <= a <= b");
  return std::make_shared<const Formula>(node::Temporal{op, lower, upper, std::move(child)});
}

FormulaPtr make_always(int lower, int upper, FormulaPtr child) {
  return make_temporal(Temporal::Always, lower, upper, std::move(child));
}

FormulaPtr make_eventually(int lower, int upper, FormulaPtr child) {
  return make_temporal(Temporal::Eventually, lower, upper, std::move(child));
}

FormulaPtr make_constant(bool value) { return std::make_shared<const Formula>(node::Constant{value}); }

static bool children_equal(const std::vector<FormulaPtr>& a, const std::vector<FormulaPtr>& b) {
  if (a.size() != b.size())
    return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!structurally_equal(*a[i], *b[i]))
      return false;
  return true;
}

bool structurally_equal(const Formula& a, const Formula& b) {
  if (a.node().index() != b.node().index())
    return false;
  return std::visit(
      Overloaded{
          [&](const node::Predicate& x) { return x.box == b.as<node::Predicate>()->box; },
          [&](const node::Not& x) { return structurally_equal(*x.child, *b.as<node::Not>()->child); },
          [&](const node::And& x) {
            const auto& y = *b.as<node::And>();
            return x.weights == y.weights && children_equal(x.children, y.children);
          },
          [&](const node::Or& x) { return children_equal(x.children, b.as<node::Or>()->children); },
          [&](const node::Temporal& x) {
            const auto& y = *b.as<node::Temporal>();
            return x.op == y.op && x.lower == y.lower && x.upper == y.upper &&
                   structurally_equal(*x.child, *y.child);
          },
          [&](const node::Constant& x) { return x.value == b.as<node::Constant>()->value; },
      },
      a.node());
}

int operator_count(const Formula& f) {
  return std::visit(Overloaded{
                        [](const node::Predicate& x) { return static_cast<int>(x.box.size()) - 1; },
                        [](const node::Not& x) { return 1 + operator_count(*x.child); },
                        [](const node::And& x) {
                          int n = static_cast<int>(x.children.size()) - 1;
                          for (const auto& c : x.children)
                            n += operator_count(*c);
                          return n;
                        },
                        [](const node::Or& x) {
                          int n = static_cast<int>(x.children.size()) - 1;
                          for (const auto& c : x.children)
                            n += operator_count(*c);
                          return n;
                        },
                        [](const node::Temporal& x) { return 1 + operator_count(*x.child); },
                        [](const node::Constant&) { return 0; },
                    },
                    f.node());
}

int required_horizon(const Formula& f) {
  return std::visit(Overloaded{
                        [](const node::Predicate&) { return 0; },
                        [](const node::Not& x) { return required_horizon(*x.child); },
                        [](const node::And& x) {
                          int h = 0;
                          for (const auto& c : x.children)
                            h = std::max(h, required_horizon(*c));
                          return h;
                        },
                        [](const node::Or& x) {
                          int h = 0;
                          for (const auto& c : x.children)
                            h = std::max(h, required_horizon(*c));
                          return h;
                        },
                        [](const node::Temporal& x) { return x.upper + required_horizon(*x.child); },
                        [](const node::Constant&) { return 0; },
                    },
                    f.node());
}

int max_variable(const Formula& f) {
  return std::visit(Overloaded{
                        [](const node::Predicate& x) {
                          int m = -1;
                          for (const Face& face : x.box.faces())
                            m = std::max(m, face.variable);
                          return m;
                        },
                        [](const node::Not& x) { return max_variable(*x.child); },
                        [](const node::And& x) {
                          int m = -1;
                          for (const auto& c : x.children)
                            m = std::max(m, max_variable(*c));
                          return m;
                        },
                        [](const node::Or& x) {
                          int m = -1;
                          for (const auto& c : x.children)
                            m = std::max(m, max_variable(*c));
                          return m;
                        },
                        [](const node::Temporal& x) { return max_variable(*x.child); },
                        [](const node::Constant&) { return -1; },
                    },
                    f.node());
}

std::string format_number(double v, NumberFormat fmt) {
  if (fmt == NumberFormat::Fixed2) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
  }
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".eEn") == std::string::npos)
    s += ".0";
  return s;
}

namespace {

std::string face_text(const Face& f, NumberFormat fmt) {
  return "x" + std::to_string(f.variable + 1) + (f.cmp == Comparator::Greater ? " > " : " <= ") +
         format_number(f.threshold, fmt);
}

std::string primary(const Formula& f, NumberFormat fmt);

std::string join_children(const std::vector<FormulaPtr>& children, const char* sep, NumberFormat fmt) {
  std::string out;
  for (std::size_t i = 0; i < children.size(); ++i) {
    if (i)
      out += sep;
    out += primary(*children[i], fmt);
  }
  return out;
}

std::string primary(const Formula& f, NumberFormat fmt) {
  return std::visit(Overloaded{
                        [&](const node::Predicate& x) {
                          const auto& faces = x.box.faces();
                          if (faces.size() == 1)
                            return "(" + face_text(faces.front(), fmt) + ")";
                          std::string out = "(";
                          for (std::size_t i = 0; i < faces.size(); ++i) {
                            if (i)
                              out += " & ";
                            out += "(" + face_text(faces[i], fmt) + ")";
                          }
                          return out + ")";
                        },
                        [&](const node::Not& x) { return "!" + primary(*x.child, fmt); },
                        [&](const node::And& x) {
                          if (x.weights.empty())
                            return "(" + join_children(x.children, " & ", fmt) + ")";
                          std::string w = "&^{";
                          for (std::size_t i = 0; i < x.weights.size(); ++i) {
                            if (i)
                              w += ",";
                            w += format_number(x.weights[i], fmt);
                          }
                          w += "}";
                          std::string out = "(" + primary(*x.children[0], fmt);
                          if (x.children.size() == 1)
                            return out + " " + w + ")";
                          for (std::size_t i = 1; i < x.children.size(); ++i)
                            out += (i == 1 ? " " + w + " " : std::string(" & ")) + primary(*x.children[i], fmt);
                          return out + ")";
                        },
                        [&](const node::Or& x) { return "(" + join_children(x.children, " | ", fmt) + ")"; },
                        [&](const node::Temporal& x) {
                          return std::string(x.op == Temporal::Always ? "G[" : "F[") + std::to_string(x.lower) +
                                 "," + std::to_string(x.upper) + "]" + primary(*x.child, fmt);
                        },
                        [&](const node::Constant& x) { return std::string(x.value ? "true" : "false"); },
                    },
                    f.node());
}

} // namespace

std::string to_string(const Formula& f, NumberFormat fmt) {
  if (const auto* p = f.as<node::Predicate>(); p && p->box.size() == 1)
    return face_text(p->box.faces().front(), fmt);
  return primary(f, fmt);
}

} // namespace bcdt
