#include "bcdt/boost.hpp"

#include "bcdt/error.hpp"

#include <cmath>
#include <numeric>

namespace bcdt {

void BoostConfig::validate() const {
  if (trees < 1)
    throw ConfigError("number of trees must be at least 1");
  if (!(M > 0.0) || !std::isfinite(M))
    throw ConfigError("M must be a positive finite number");
  if (max_retries < 0)
    throw ConfigError("max retries must be non-negative");
  cdt.validate();
}

std::size_t BoostedModel::combinations() const {
  std::size_t n = 0;
  for (const BoostedTree& t : trees)
    n += t.combinations;
  return n;
}

double tree_weight(double epsilon, double M) {
  if (epsilon <= 0.0)
    return M;
  return 0.5 * std::log(1.0 / epsilon - 1.0);
}

namespace {

std::uint64_t round_seed(std::uint64_t base, std::size_t round, int attempt) {
  std::uint64_t x = base ^ (0x9e3779b97f4a7c15ULL * (round + 1)) ^ (0xc2b2ae3d27d4eb4fULL * (attempt + 1));
  x = (x ^ (x >> 33)) * 0xff51afd7ed558ccdULL;
  return x ^ (x >> 33);
}

} // namespace

BoostedModel train_bcdt(const LabeledDataset& data, const BoostConfig& cfg, const RoundObserver& observer) {
  cfg.validate();
  if (data.empty())
    throw SchemaError("cannot train on an empty dataset");

  BoostedModel model;
  model.dimension = data.dimension();
  model.horizon = data.horizon();
  model.M = cfg.M;
  model.config = cfg;

  const std::size_t n = data.size();
  std::vector<double> w(n, 1.0 / static_cast<double>(n));
  std::vector<Label> pred(n);

  for (std::size_t k = 0; k < static_cast<std::size_t>(cfg.trees); ++k) {
    std::optional<BoostedTree> accepted;
    for (int attempt = 0; attempt <= cfg.max_retries && !accepted; ++attempt) {
      CdtConfig cdt = cfg.cdt;
      cdt.pso.seed = round_seed(cfg.cdt.pso.seed, k, attempt);
      CdtResult built = build_cdt(data, SampleWeights(w), cdt);
      double eps = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        pred[i] = classify(*built.root, data.signal(i));
        if (pred[i] != data.label(i))
          eps += w[i];
      }
      if (eps >= 0.5)
        continue;
      BoostedTree t;
      t.root = built.root;
      t.epsilon = eps;
      t.alpha = tree_weight(eps, cfg.M);
      t.formula = tree_to_stl(*built.root);
      t.combinations = built.log.count();
      t.log = std::move(built.log);
      accepted = std::move(t);
    }
    if (!accepted) {
      model.warnings.push_back("round " + std::to_string(k + 1) + ": no tree beat chance after " +
                               std::to_string(cfg.max_retries) + " retries; stopping with " +
                               std::to_string(model.trees.size()) + " trees");
      break;
    }

    RoundInfo info;
    info.round = k;
    info.epsilon = accepted->epsilon;
    info.alpha = accepted->alpha;
    if (observer) {
      info.predictions = pred;
      info.weights_before = w;
    }
    // eps = 0 scales every weight by the same factor, so renormalizing gives
    // them back unchanged.
    if (accepted->epsilon > 0.0) {
      for (std::size_t i = 0; i < n; ++i)
        w[i] *= std::exp(-accepted->alpha * sign(data.label(i)) * sign(pred[i]));
      const double total = std::accumulate(w.begin(), w.end(), 0.0);
      for (double& v : w)
        v /= total;
    }
    model.trees.push_back(std::move(*accepted));
    if (observer) {
      info.weights_after = w;
      observer(info);
    }
  }
  if (model.trees.empty())
    throw ConfigError("no tree beat chance; the dataset may be unlearnable with these settings");
  model.pruned_index = select_pruned_tree(model);
  return model;
}

std::optional<std::size_t> select_pruned_tree(const BoostedModel& model) {
  std::optional<std::size_t> best;
  int best_ops = 0;
  for (std::size_t k = 0; k < model.trees.size(); ++k) {
    if (model.trees[k].alpha != model.M)
      continue;
    const int ops = operator_count(*model.trees[k].formula);
    if (!best || ops < best_ops) {
      best = k;
      best_ops = ops;
    }
  }
  return best;
}

Label predict(const BoostedModel& model, const Signal& s) {
  if (model.trees.empty())
    throw ConfigError("model has no trees");
  if (model.pruned_index)
    return classify(*model.trees.at(*model.pruned_index).root, s);
  double vote = 0.0;
  for (const BoostedTree& t : model.trees)
    vote += t.alpha * sign(classify(*t.root, s));
  return vote >= 0.0 ? Label::Positive : Label::Negative;
}

double model_mcr(const BoostedModel& model, const LabeledDataset& data) {
  if (data.empty())
    return 0.0;
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < data.size(); ++i)
    if (predict(model, data.signal(i)) != data.label(i))
      ++wrong;
  return static_cast<double>(wrong) / static_cast<double>(data.size());
}

FormulaPtr model_to_wstl(const BoostedModel& model) {
  if (model.trees.empty())
    throw ConfigError("model has no trees");
  if (model.pruned_index)
    return model.trees.at(*model.pruned_index).formula;
  std::vector<FormulaPtr> parts;
  std::vector<double> weights;
  for (const BoostedTree& t : model.trees) {
    parts.push_back(t.formula);
    weights.push_back(t.alpha);
  }
  return make_and(std::move(parts), std::move(weights));
}

BoostedModel truncated(const BoostedModel& model, std::size_t k) {
  if (k == 0)
    throw ConfigError("a truncated model needs at least one tree");
  BoostedModel out = model;
  if (out.trees.size() > k)
    out.trees.resize(k);
  out.config.trees = static_cast<int>(k);
  out.pruned_index = select_pruned_tree(out);
  return out;
}

} // namespace bcdt
