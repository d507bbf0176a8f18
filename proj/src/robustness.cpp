#include "bcdt/robustness.hpp"

#include "bcdt/error.hpp"
#include "bcdt/kernels.hpp"

#include <algorithm>
#include <deque>
#include <string>

namespace bcdt {

namespace {

std::vector<kernels::FaceRow> bind_faces(const BoxPredicate& box, const Signal& s) {
  std::vector<kernels::FaceRow> rows;
  rows.reserve(box.size());
  for (const Face& f : box.faces())
    rows.push_back({s.row(f.variable).data(), f.threshold, f.cmp == Comparator::Greater});
  return rows;
}

// out[i] = reduce(in[i .. i + width - 1]) using a monotone deque, O(len).
std::vector<double> sliding_window(const std::vector<double>& in, std::size_t width, std::size_t count,
                                   bool take_min) {
  std::vector<double> out(count);
  std::deque<std::size_t> q;
  auto better = [take_min](double a, double b) { return take_min ? a <= b : a >= b; };
  std::size_t next = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t end = i + width;
    for (; next < end; ++next) {
      while (!q.empty() && better(in[next], in[q.back()]))
        q.pop_back();
      q.push_back(next);
    }
    while (q.front() < i)
      q.pop_front();
    out[i] = in[q.front()];
  }
  return out;
}

std::vector<double> trace(const Formula& f, const Signal& s, int first, int last);

std::vector<double> combine(const std::vector<FormulaPtr>& children, const Signal& s, int first, int last,
                            bool take_min) {
  std::vector<double> acc = trace(*children.front(), s, first, last);
  for (std::size_t i = 1; i < children.size(); ++i) {
    const std::vector<double> next = trace(*children[i], s, first, last);
    if (take_min)
      kernels::elementwise_min(acc, next, acc);
    else
      kernels::elementwise_max(acc, next, acc);
  }
  return acc;
}

std::vector<double> trace(const Formula& f, const Signal& s, int first, int last) {
  const std::size_t len = static_cast<std::size_t>(last - first + 1);
  if (const auto* p = f.as<node::Predicate>()) {
    std::vector<double> out(len);
    const auto rows = bind_faces(p->box, s);
    kernels::box_trace(rows, first, last, out);
    return out;
  }
  if (const auto* n = f.as<node::Not>()) {
    std::vector<double> out = trace(*n->child, s, first, last);
    for (double& v : out)
      v = -v;
    return out;
  }
  if (const auto* a = f.as<node::And>())
    return combine(a->children, s, first, last, true);
  if (const auto* o = f.as<node::Or>())
    return combine(o->children, s, first, last, false);
  if (const auto* c = f.as<node::Constant>())
    return std::vector<double>(len, c->value ? kRobustnessCap : -kRobustnessCap);

  const auto& tmp = *f.as<node::Temporal>();
  const bool take_min = tmp.op == Temporal::Always;
  if (const auto* p = tmp.child->as<node::Predicate>(); p && len == 1) {
    const auto rows = bind_faces(p->box, s);
    return {kernels::window_box(rows, first + tmp.lower, first + tmp.upper,
                                take_min ? kernels::Reduce::Min : kernels::Reduce::Max)};
  }
  const std::vector<double> inner = trace(*tmp.child, s, first + tmp.lower, last + tmp.upper);
  return sliding_window(inner, static_cast<std::size_t>(tmp.upper - tmp.lower + 1), len, take_min);
}

} // namespace

void check_evaluable(const Formula& f, const Signal& s, int first, int last) {
  if (first < 0 || last < first || last > s.horizon())
    throw OutOfHorizon("evaluation time outside [0, " + std::to_string(s.horizon()) + "]");
  if (max_variable(f) >= s.dimension())
    throw DimensionMismatch("formula references x" + std::to_string(max_variable(f) + 1) + " but the signal has " +
                            std::to_string(s.dimension()) + " components");
  const int h = required_horizon(f);
  if (last + h > s.horizon())
    throw OutOfHorizon("formula needs timepoints up to " + std::to_string(last + h) + " but the horizon is " +
                       std::to_string(s.horizon()));
}

std::vector<double> robustness_trace(const Formula& f, const Signal& s, int first, int last) {
  check_evaluable(f, s, first, last);
  return trace(f, s, first, last);
}

double robustness(const Formula& f, const Signal& s, int t) {
  check_evaluable(f, s, t, t);
  return trace(f, s, t, t).front();
}

bool satisfies(const Formula& f, const Signal& s) { return robustness(f, s, 0) >= 0.0; }

} // namespace bcdt
