#pragma once

// Independent reference implementations used to check the library. They
// follow the definitions literally and favour clarity over speed.

#include "bcdt/cdt.hpp"
#include "bcdt/dataset.hpp"
#include "bcdt/formula.hpp"
#include "bcdt/primitive.hpp"
#include "bcdt/pso.hpp"
#include "bcdt/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace oracle {

using namespace bcdt;

inline double rho(const Formula& f, const Signal& s, int t) {
  if (auto* p = f.as<node::Predicate>()) {
    double r = INFINITY;
    for (const Face& face : p->box.faces()) {
      const double v = s.at(face.variable, t);
      r = std::min(r, face.cmp == Comparator::Greater ? v - face.threshold : face.threshold - v);
    }
    return r;
  }
  if (auto* n = f.as<node::Not>())
    return -rho(*n->child, s, t);
  if (auto* a = f.as<node::And>()) {
    double r = INFINITY;
    for (const auto& c : a->children)
      r = std::min(r, rho(*c, s, t));
    return r;
  }
  if (auto* o = f.as<node::Or>()) {
    double r = -INFINITY;
    for (const auto& c : o->children)
      r = std::max(r, rho(*c, s, t));
    return r;
  }
  if (auto* k = f.as<node::Constant>())
    return k->value ? kRobustnessCap : -kRobustnessCap;
  const auto& tm = *f.as<node::Temporal>();
  double r = tm.op == Temporal::Always ? INFINITY : -INFINITY;
  for (int u = t + tm.lower; u <= t + tm.upper; ++u) {
    const double v = rho(*tm.child, s, u);
    r = tm.op == Temporal::Always ? std::min(r, v) : std::max(r, v);
  }
  return r;
}

/// Boosted misclassification gain written out from the definition.
inline double gain(const std::vector<Label>& labels, const std::vector<double>& w, const std::vector<double>& r) {
  double mass[2][2] = {{0, 0}, {0, 0}}; // [side: 0 sat, 1 viol][class: 0 pos, 1 neg]
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int side = r[i] >= 0 ? 0 : 1;
    const int cls = labels[i] == Label::Positive ? 0 : 1;
    mass[side][cls] += w[i] * std::fabs(r[i]);
  }
  const double total = mass[0][0] + mass[0][1] + mass[1][0] + mass[1][1];
  if (total == 0)
    return 0;
  auto mr = [](double pos, double neg) {
    const double d = pos + neg;
    return d == 0 ? 0.0 : std::min(pos, neg) / d;
  };
  double g = mr(mass[0][0] + mass[1][0], mass[0][1] + mass[1][1]);
  for (int side = 0; side < 2; ++side) {
    const double share = (mass[side][0] + mass[side][1]) / total;
    g -= share * mr(mass[side][0], mass[side][1]);
  }
  return g;
}

/// Random formula whose windows never reach past `budget`.
class FormulaGen {
public:
  FormulaGen(std::uint64_t seed, int dimension) : rng_(seed), n_(dimension) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  std::mt19937_64& rng() { return rng_; }

  BoxPredicate box() {
    for (;;) {
      std::vector<Face> faces;
      const int k = integer(1, 3);
      for (int i = 0; i < k; ++i)
        faces.push_back({integer(0, n_ - 1), integer(0, 1) ? Comparator::Greater : Comparator::LessEqual,
                         std::round(real(-5, 5) * 1000) / 1000 + (integer(0, 3) == 0 ? real(0, 1e-3) : 0)});
      if (auto b = BoxPredicate::try_make(faces))
        return *b;
    }
  }

  FormulaPtr formula(int depth, int budget) {
    const int pick = depth <= 0 ? 0 : integer(0, 6);
    switch (pick) {
    case 0:
      return integer(0, 15) == 0 ? make_constant(integer(0, 1) == 1) : make_predicate(box());
    case 1:
      return make_not(formula(depth - 1, budget));
    case 2:
    case 3: {
      std::vector<FormulaPtr> kids;
      const int k = integer(2, 3);
      for (int i = 0; i < k; ++i)
        kids.push_back(formula(depth - 1, budget));
      if (pick == 3)
        return make_or(std::move(kids));
      std::vector<double> weights;
      if (integer(0, 2) == 0)
        for (int i = 0; i < k; ++i)
          weights.push_back(real(0.1, 5));
      return make_and(std::move(kids), std::move(weights));
    }
    default: {
      const int a = integer(0, budget);
      const int b = integer(a, budget);
      return make_temporal(integer(0, 1) ? Temporal::Always : Temporal::Eventually, a, b,
                           formula(depth - 1, budget - b));
    }
    }
  }

  Signal signal(int horizon) {
    std::vector<double> v(static_cast<std::size_t>(n_) * (horizon + 1));
    for (double& x : v)
      x = std::round(real(-6, 6) * 4) / 4; // coarse values make ties common
    return Signal(n_, horizon, std::move(v));
  }

private:
  std::mt19937_64 rng_;
  int n_;
};

/// Small optimization instance whose objective only depends on which side of
/// each data value the threshold falls, so a grid over the data values holds
/// the continuum optimum.
struct StepInstance {
  LabeledDataset data;
  std::vector<double> weights;
  PstlTemplate tpl;
  std::vector<double> candidates;

  /// Classical weighted misclassification gain: every sample has unit margin.
  double value(const Valuation& v) const {
    std::vector<double> r(data.size());
    TemplateEvaluator(tpl, data).robustness(v, r);
    std::vector<double> unit(r.size());
    for (std::size_t i = 0; i < r.size(); ++i)
      unit[i] = r[i] >= 0 ? 1.0 : -1.0;
    return gain(data.labels(), weights, unit);
  }
};

inline StepInstance step_instance(std::uint64_t seed) {
  FormulaGen gen(seed, 1);
  StepInstance in;
  const int n = gen.integer(6, 10);
  const int T = gen.integer(4, 8);
  std::vector<Signal> s;
  std::vector<Label> l;
  for (int i = 0; i < n; ++i) {
    s.push_back(gen.signal(T));
    l.push_back(i % 2 ? Label::Negative : Label::Positive);
    in.weights.push_back(gen.real(0.5, 1.5));
  }
  in.data = LabeledDataset(s, l);
  const auto range = threshold_ranges(in.data).front();
  in.tpl = {gen.integer(0, 1) ? Temporal::Always : Temporal::Eventually,
            {{0, gen.integer(0, 1) ? Comparator::Greater : Comparator::LessEqual, range.first, range.second}},
            T};
  in.candidates = {range.first, range.second};
  for (const Signal& sig : s)
    for (double v : sig.values())
      in.candidates.push_back(v);
  std::sort(in.candidates.begin(), in.candidates.end());
  in.candidates.erase(std::unique(in.candidates.begin(), in.candidates.end()), in.candidates.end());
  return in;
}

/// Positive signals keep x2 inside (23.33, 32.55] from t = 17 on; half of
/// the negatives sit above the band there and half below.
inline LabeledDataset two_band(std::uint64_t seed, int per_class) {
  std::mt19937_64 rng(seed);
  auto uni = [&](double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); };
  const int T = 60;
  std::vector<Signal> s;
  std::vector<Label> l;
  for (int i = 0; i < 2 * per_class; ++i) {
    const bool pos = i < per_class;
    const bool above = i % 2 == 0;
    std::vector<double> v(2 * (T + 1));
    for (int t = 0; t <= T; ++t) {
      v[t] = uni(0, 1);
      double lo = 20, hi = 36;
      if (t >= 17) {
        lo = pos ? 24.0 : above ? 34.0 : 12.0;
        hi = pos ? 32.0 : above ? 44.0 : 22.0;
      }
      v[T + 1 + t] = uni(lo, hi);
    }
    s.emplace_back(2, T, std::move(v));
    l.push_back(pos ? Label::Positive : Label::Negative);
  }
  return {std::move(s), std::move(l)};
}

/// Random decision tree over G/F box primitives.
inline CdtPtr random_tree(FormulaGen& gen, int depth, int horizon) {
  if (depth == 0 || gen.integer(0, 3) == 0)
    return CdtNode::leaf(gen.integer(0, 1) ? Label::Positive : Label::Negative);
  const int a = gen.integer(0, horizon);
  const int b = gen.integer(a, horizon);
  auto p = make_temporal(gen.integer(0, 1) ? Temporal::Always : Temporal::Eventually, a, b, make_predicate(gen.box()));
  return CdtNode::internal(p, random_tree(gen, depth - 1, horizon), random_tree(gen, depth - 1, horizon));
}

} // namespace oracle
