// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include "bcdt/boost.hpp"
#include "bcdt/impurity.hpp"
#include "bcdt/kernels.hpp"
#include "bcdt/scenario.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

using namespace bcdt;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

int failures = 0;

void report(bool ok, const std::string& name, const std::string& detail) {
  std::printf("%s  %-40s %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
  failures += !ok;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

void robustness_oracle() {
  const auto start = Clock::now();
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    oracle::FormulaGen gen(10'000 + i, 1 + i % 3);
    const int T = gen.integer(0, 10);
    const FormulaPtr f = gen.formula(gen.integer(0, 4), T);
    const Signal s = gen.signal(T);
    for (int t = 0; t + required_horizon(*f) <= T; ++t)
      worst = std::max(worst, std::fabs(robustness(*f, s, t) - oracle::rho(*f, s, t)));
  }
  const double secs = seconds_since(start);
  report(worst <= 1e-9 && secs < 10, "robustness vs naive evaluator", fmt("max |diff| %.3g, %.2f s", worst, secs));
}

void parser_round_trip() {
  const auto start = Clock::now();
  int ok = 0;
  for (int i = 0; i < 1000; ++i) {
    oracle::FormulaGen gen(20'000 + i, 3);
    const FormulaPtr f = gen.formula(gen.integer(0, 4), 10);
    ok += structurally_equal(*parse_formula(to_string(*f)), *f);
  }
  const double secs = seconds_since(start);
  report(ok == 1000 && secs < 5, "parser round trip", fmt("%.0f/1000 equal, %.2f s", ok, secs));
}

void impurity_oracle() {
  double worst = 0;
  for (int i = 0; i < 200; ++i) {
    oracle::FormulaGen gen(30'000 + i, 2);
    const int n = gen.integer(1, 12);
    std::vector<Signal> signals;
    std::vector<Label> labels;
    std::vector<double> w;
    for (int k = 0; k < n; ++k) {
      signals.push_back(gen.signal(5));
      labels.push_back(gen.integer(0, 1) ? Label::Positive : Label::Negative);
      w.push_back(gen.real(0.01, 1));
    }
    const SampleWeights sw(w);
    const FormulaPtr f = gen.formula(3, 5);
    std::vector<double> rho;
    for (const Signal& s : signals)
      rho.push_back(oracle::rho(*f, s, 0));
    const std::vector<double> wn(sw.values().begin(), sw.values().end());
    const double g = misclassification_gain(LabeledDataset(signals, labels), sw, *f).gain;
    worst = std::max(worst, std::fabs(g - oracle::gain(labels, wn, rho)));
  }
  report(worst <= 1e-9, "impurity vs brute force", fmt("max |diff| %.3g over 200 datasets", worst));
}

void pso_vs_grid() {
  const auto start = Clock::now();
  int hits = 0;
  for (int i = 0; i < 20; ++i) {
    const auto in = oracle::step_instance(40'000 + i);
    auto obj = [&](const Valuation& v) { return Score{in.value(v), 0}; };
    const auto grid = grid_search(in.tpl, obj, 1, in.candidates);
    PsoConfig cfg;
    cfg.seed = static_cast<std::uint64_t>(i);
    hits += optimize(in.tpl, obj, cfg).score.value >= grid.score.value - 1e-6;
  }
  const double secs = seconds_since(start);
  report(hits >= 19 && secs < 60, "PSO vs grid oracle", fmt("%.0f/20 reach the grid optimum, %.2f s", hits, secs));
}

void adaboost_identity() {
  int rounds = 0, runs_with_rounds = 0;
  double worst = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const LabeledDataset d = oracle::two_band(50 + seed, 10);
    std::vector<Label> labels = d.labels();
    for (std::size_t i = seed % 3; i < labels.size(); i += 7)
      labels[i] = labels[i] == Label::Positive ? Label::Negative : Label::Positive;
    const LabeledDataset noisy(d.signals(), labels);
    BoostConfig cfg;
    cfg.trees = 4;
    cfg.cdt.max_depth = 1;
    cfg.cdt.pso.seed = seed;
    int here = 0;
    train_bcdt(noisy, cfg, [&](const RoundInfo& r) {
      if (!(r.epsilon > 0 && r.epsilon < 0.5))
        return;
      double err = 0;
      for (std::size_t i = 0; i < r.predictions.size(); ++i)
        if (r.predictions[i] != noisy.label(i))
          err += r.weights_after[i];
      worst = std::max(worst, std::fabs(err - 0.5));
      ++here;
    });
    rounds += here;
    runs_with_rounds += here > 0;
  }
  report(runs_with_rounds >= 10 && worst <= 1e-9, "AdaBoost weighted-error identity",
         fmt("%.0f runs, %.0f rounds, max |err - 0.5| %.3g", runs_with_rounds, rounds, worst));
}

void conciseness() {
  const LabeledDataset d = oracle::two_band(1, 30);
  const CdtResult r = build_cdt(d, SampleWeights::uniform(d.size()), CdtConfig{});
  bool increasing = !r.log.events.empty();
  std::string shape = "none";
  bool g_box = false;
  for (const CombinationEvent& e : r.log.events) {
    increasing = increasing && e.gain_after > e.gain_before;
    const auto p = as_primitive(*e.after);
    const bool box2 = p && p->op == Temporal::Always && p->box->size() == 2 &&
                      p->box->faces()[0].variable == p->box->faces()[1].variable &&
                      p->box->faces()[0].cmp != p->box->faces()[1].cmp;
    if (box2 && !g_box)
      shape = to_string(*e.after, NumberFormat::Fixed2);
    g_box = g_box || box2;
  }
  report(increasing && g_box, "conciseness on two bands",
         std::to_string(r.log.count()) + " combination(s), " + shape);
}

struct CvResult {
  double te_k1 = 0;
  double te_k3 = 0;
  bool pruned_simple = true;
  int max_ops = 0;
};

CvResult cross_validate(const LabeledDataset& d, BoostConfig cfg, int folds, std::uint64_t seed) {
  CvResult out;
  const FoldPlan plan = stratified_folds(d, folds, seed);
  cfg.trees = 3;
  cfg.cdt.pso.seed = seed;
  for (int f = 0; f < folds; ++f) {
    const LabeledDataset train = d.subset(plan.train_indices(f));
    const LabeledDataset test = d.subset(plan.test_indices(f));
    const BoostedModel m = train_bcdt(train, cfg);
    out.te_k3 += model_mcr(m, test) / folds;
    out.te_k1 += model_mcr(truncated(m, 1), test) / folds;
    const int ops = operator_count(*model_to_wstl(m));
    out.max_ops = std::max(out.max_ops, ops);
    out.pruned_simple = out.pruned_simple && m.pruned_index && ops <= 6;
  }
  return out;
}

void end_to_end() {
  const auto start = Clock::now();
  NavalScenarioConfig nc;
  nc.count_per_class = 100;
  nc.seed = 2024;
  BoostConfig cfg;
  cfg.cdt.max_depth = 3;
  const CvResult r = cross_validate(generate_naval(nc), cfg, 5, 1);
  const double secs = seconds_since(start);
  report(r.te_k3 == 0.0 && r.pruned_simple && secs < 600, "end-to-end naval 5-fold CV",
         fmt("TE-M %.2f%%, largest pruned formula %.0f ops, %.1f s", 100 * r.te_k3, r.max_ops, secs));
}

void noisy_trend() {
  const auto start = Clock::now();
  int wins = 0;
  double k1_mean = 0;
  for (int seed = 0; seed < 10; ++seed) {
    NavalScenarioConfig nc;
    nc.count_per_class = 60;
    nc.noise = 8.0;
    nc.seed = 1000 + static_cast<std::uint64_t>(seed);
    const CvResult r = cross_validate(generate_naval(nc), BoostConfig{}, 5, static_cast<std::uint64_t>(seed));
    wins += r.te_k3 <= r.te_k1;
    k1_mean += 100 * r.te_k1 / 10;
  }
  report(wins >= 8 && k1_mean >= 2.0, "noisy naval K=3 vs K=1",
         fmt("K=3 <= K=1 in %.0f/10 seeds, mean K=1 TE-M %.2f%%, %.1f s", wins, k1_mean, seconds_since(start)));
}

void pruning_rule() {
  auto tree = [](const char* formula) {
    BoostedTree t;
    t.formula = parse_formula(formula);
    t.root = CdtNode::leaf(Label::Positive);
    t.alpha = 100;
    return t;
  };
  BoostedModel m;
  m.trees = {tree("((G[0,1](x1 > 0) & F[0,1](x1 <= 4)) | G[0,1](x1 > 2))"),
             tree("(F[0,2](x1 > 1) | G[0,1](x1 > 2))")};
  const auto pick = select_pruned_tree(m);
  const int a = operator_count(*m.trees[0].formula), b = operator_count(*m.trees[1].formula);
  report(a == 5 && b == 3 && pick == std::optional<std::size_t>(1), "pruning picks the simpler perfect tree",
         fmt("operator counts (%.0f, %.0f), picked index %.0f", a, b, pick ? static_cast<double>(*pick) : -1.0));
}

bool nowhere_zero(const CdtNode& n, const Signal& s) {
  if (n.is_leaf())
    return true;
  return robustness(*n.primitive(), s) != 0.0 && nowhere_zero(*n.satisfied(), s) && nowhere_zero(*n.violated(), s);
}

void tree_formula_equivalence() {
  int agree = 0, total = 0;
  for (int i = 0; total < 1000; ++i) {
    oracle::FormulaGen gen(60'000 + i, 1 + i % 3);
    const CdtPtr t = oracle::random_tree(gen, 3, 8);
    std::vector<double> v(static_cast<std::size_t>(1 + i % 3) * 9);
    for (double& x : v)
      x = gen.real(-6, 6);
    const Signal s(1 + i % 3, 8, v);
    if (!nowhere_zero(*t, s))
      continue;
    ++total;
    agree += (classify(*t, s) == Label::Positive) == satisfies(*tree_to_stl(*t), s);
  }
  report(agree == total, "tree/formula classification", fmt("%.0f/%.0f agree", agree, total));
}

} // namespace

int main() {
  std::printf("kernels: %s\n", kernels::active_kernels().name);
  const std::pair<const char*, std::function<void()>> criteria[] = {
      {"robustness", robustness_oracle}, {"parser", parser_round_trip},  {"impurity", impurity_oracle},
      {"pso", pso_vs_grid},              {"adaboost", adaboost_identity}, {"conciseness", conciseness},
      {"end-to-end", end_to_end},        {"noisy", noisy_trend},          {"pruning", pruning_rule},
      {"equivalence", tree_formula_equivalence}};
  for (const auto& [name, run] : criteria) {
    try {
      run();
    } catch (const std::exception& e) {
      report(false, name, std::string("threw: ") + e.what());
    }
  }
  std::printf("%d criteria failed\n", failures);
  return failures;
}
