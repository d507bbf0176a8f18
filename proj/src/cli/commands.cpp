#include "bcdt/cli.hpp"

#include "bcdt/boost.hpp"
#include "bcdt/error.hpp"
#include "bcdt/model_io.hpp"
#include "bcdt/report.hpp"
#include "bcdt/robustness.hpp"
#include "bcdt/scenario.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>

namespace bcdt {
namespace {

enum class Level { Error, Warn, Info, Debug };

Level log_level() {
  const char* v = std::getenv("BCDT_LOG_LEVEL");
  const std::string s = v ? v : "";
  if (s == "error")
    return Level::Error;
  if (s == "info")
    return Level::Info;
  if (s == "debug")
    return Level::Debug;
  return Level::Warn;
}

struct Log {
  std::ostream& err;
  Level level = log_level();

  void warn(const std::string& m) const {
    if (level >= Level::Warn)
      err << "warning: " << m << '\n';
  }
  void info(const std::string& m) const {
    if (level >= Level::Info)
      err << m << '\n';
  }
};

/// Training flags; each one only overrides the config file when given.
struct TrainingOptions {
  std::string data;
  std::string config;
  std::string format = "text";
  std::vector<int> trees{3};
  int max_depth = 3;
  double lambda = 0.95;
  double M = 100.0;
  std::uint64_t seed = 0;
  int max_retries = 5;
  int swarm = 40;
  int iters = 60;
  double omega = 0.72;
  double c1 = 1.49;
  double c2 = 1.49;
  std::vector<CLI::Option*> opts; // parallel to the fields applied in resolve()

  void add(CLI::App& app, bool many_trees) {
    app.add_option("--data", data, "dataset CSV")->required();
    app.add_option("--config", config, "JSON config file (flags take precedence)");
    app.add_option("--format", format, "report format")->check(CLI::IsMember({"text", "json"}));
    auto* t = app.add_option("-K,--trees", trees, many_trees ? "tree budgets, e.g. 1,3" : "number of trees");
    if (many_trees)
      t->delimiter(',');
    else
      t->expected(1);
    opts = {t,
            app.add_option("--max-depth", max_depth, "maximum tree depth"),
            app.add_option("--lambda", lambda, "purity that stops splitting"),
            app.add_option("--M", M, "weight of a perfect tree"),
            app.add_option("--seed", seed, "random seed"),
            app.add_option("--max-retries", max_retries, "retrains per round after a discarded tree"),
            app.add_option("--pso-swarm", swarm, "particles"),
            app.add_option("--pso-iters", iters, "iterations"),
            app.add_option("--pso-omega", omega, "inertia"),
            app.add_option("--pso-c1", c1, "cognitive coefficient"),
            app.add_option("--pso-c2", c2, "social coefficient")};
  }

  BoostConfig resolve() const {
    BoostConfig cfg;
    if (!config.empty()) {
      std::ifstream in(config);
      if (!in)
        throw IoError("no such file: " + config);
      nlohmann::json j;
      try {
        in >> j;
      } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(config + ": " + e.what());
      }
      cfg = config_from_json(j, cfg);
    }
    auto given = [&](std::size_t k) { return opts[k]->count() > 0; };
    if (given(0))
      cfg.trees = *std::max_element(trees.begin(), trees.end());
    if (given(1))
      cfg.cdt.max_depth = max_depth;
    if (given(2))
      cfg.cdt.lambda = lambda;
    if (given(3))
      cfg.M = M;
    if (given(4))
      cfg.cdt.pso.seed = seed;
    if (given(5))
      cfg.max_retries = max_retries;
    if (given(6))
      cfg.cdt.pso.swarm_size = swarm;
    if (given(7))
      cfg.cdt.pso.iterations = iters;
    if (given(8))
      cfg.cdt.pso.inertia = omega;
    if (given(9))
      cfg.cdt.pso.cognitive = c1;
    if (given(10))
      cfg.cdt.pso.social = c2;
    for (int k : trees)
      if (k < 1)
        throw ConfigError("number of trees must be at least 1");
    cfg.validate();
    return cfg;
  }

  std::vector<int> budgets(const BoostConfig& cfg) const {
    if (opts[0]->count() == 0)
      return {cfg.trees};
    std::vector<int> out = trees;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
};

void emit_warnings(const BoostedModel& m, const Log& log) {
  for (const std::string& w : m.warnings)
    log.warn(w);
}

int cmd_train(const TrainingOptions& o, const std::string& out_path, std::ostream& out, const Log& log) {
  const BoostConfig cfg = o.resolve();
  const LabeledDataset data = load_csv(o.data);
  const auto start = std::chrono::steady_clock::now();
  const BoostedModel model = train_bcdt(data, cfg);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  emit_warnings(model, log);
  if (!out_path.empty())
    save_model(model, out_path);

  const double mcr = model_mcr(model, data);
  if (o.format == "json") {
    nlohmann::json trees = nlohmann::json::array();
    for (const BoostedTree& t : model.trees)
      trees.push_back({{"alpha", t.alpha}, {"epsilon", t.epsilon}, {"formula", to_string(*t.formula)},
                       {"CT", t.combinations}});
    nlohmann::json j{{"samples", data.size()}, {"train_mcr", mcr}, {"CT", model.combinations()},
                     {"trees", trees}, {"final", to_string(*model_to_wstl(model))},
                     {"prunedIndex", nullptr}};
    if (model.pruned_index)
      j["prunedIndex"] = *model.pruned_index;
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  out << "trained " << model.trees.size() << " tree(s) on " << data.size() << " signals in "
      << format_number(seconds, NumberFormat::Fixed2) << " s\n";
  for (std::size_t k = 0; k < model.trees.size(); ++k) {
    const BoostedTree& t = model.trees[k];
    out << "  tree " << k + 1 << ": alpha " << format_number(t.alpha, NumberFormat::Fixed2) << ", epsilon "
        << format_number(t.epsilon, NumberFormat::Fixed2) << ", CT " << t.combinations << "\n    "
        << to_string(*t.formula, NumberFormat::Fixed2) << '\n';
  }
  out << "final formula" << (model.pruned_index ? " (pruned to tree " + std::to_string(*model.pruned_index + 1) + ")" : "")
      << ":\n  " << to_string(*model_to_wstl(model), NumberFormat::Fixed2) << '\n';
  out << "training MCR " << format_number(100.0 * mcr, NumberFormat::Fixed2) << "%\n";
  if (!out_path.empty())
    out << "model written to " << out_path << '\n';
  return kExitOk;
}

int cmd_cv(const TrainingOptions& o, int folds, const std::string& save_dir, std::ostream& out, const Log& log) {
  const BoostConfig cfg = o.resolve();
  const std::vector<int> budgets = o.budgets(cfg);
  const LabeledDataset data = load_csv(o.data);
  const FoldPlan plan = stratified_folds(data, folds, cfg.cdt.pso.seed);
  if (!save_dir.empty())
    std::filesystem::create_directories(save_dir);

  const auto start = std::chrono::steady_clock::now();
  RunReport report;
  report.folds = folds;
  report.seed = cfg.cdt.pso.seed;
  for (int K : budgets)
    report.rows.push_back({K, {}, 0, 0, 0, 0, 0});
  BoostConfig run_cfg = cfg;
  run_cfg.trees = budgets.back();
  for (int f = 0; f < folds; ++f) {
    const LabeledDataset train = data.subset(plan.train_indices(f));
    const LabeledDataset test = data.subset(plan.test_indices(f));
    // smaller budgets are prefixes of the largest run
    const BoostedModel full = train_bcdt(train, run_cfg);
    emit_warnings(full, log);
    for (ReportRow& row : report.rows) {
      const BoostedModel model = truncated(full, static_cast<std::size_t>(row.K));
      row.folds.push_back(describe_fold(f, model, train, test));
      if (!save_dir.empty())
        save_model(model, std::filesystem::path(save_dir) /
                              ("fold" + std::to_string(f + 1) + "_K" + std::to_string(row.K) + ".json"));
    }
    log.info("fold " + std::to_string(f + 1) + "/" + std::to_string(folds) + " done");
  }
  for (ReportRow& row : report.rows)
    summarize(row);
  report.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (o.format == "json")
    out << report_to_json(report).dump(2) << '\n';
  else
    write_text(report, out);
  return kExitOk;
}

int cmd_eval(const std::string& model_path, const std::string& data_path, bool verdicts, const std::string& format,
             std::ostream& out) {
  const BoostedModel model = load_model(model_path);
  const LabeledDataset data = load_csv(data_path);
  if (data.dimension() != model.dimension)
    throw DimensionMismatch("model expects " + std::to_string(model.dimension) + " variables, dataset has " +
                            std::to_string(data.dimension()));
  const FormulaPtr final = model_to_wstl(model);
  for (const Signal& s : data.signals())
    check_evaluable(*final, s, 0, 0);

  const double mcr = model_mcr(model, data);
  if (format == "json") {
    nlohmann::json j{{"samples", data.size()}, {"mcr", mcr}, {"formula", to_string(*final)}};
    if (verdicts) {
      j["signals"] = nlohmann::json::array();
      for (std::size_t i = 0; i < data.size(); ++i)
        j["signals"].push_back({{"id", data.id(i)},
                                {"label", sign(data.label(i))},
                                {"prediction", sign(predict(model, data.signal(i)))},
                                {"robustness", robustness(*final, data.signal(i))}});
    }
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  out << "MCR " << format_number(100.0 * mcr, NumberFormat::Fixed2) << "% on " << data.size() << " signals\n";
  if (verdicts) {
    out << "id,label,prediction,robustness\n";
    for (std::size_t i = 0; i < data.size(); ++i)
      out << data.id(i) << ',' << sign(data.label(i)) << ',' << sign(predict(model, data.signal(i))) << ','
          << format_number(robustness(*final, data.signal(i)), NumberFormat::Exact) << '\n';
  }
  return kExitOk;
}

/// The offending line of `text` with a caret under the error column.
void caret(const std::string& text, const SyntaxError& e, std::ostream& err) {
  std::size_t begin = 0;
  for (int line = 1; line < e.line() && begin != std::string::npos; ++line) {
    begin = text.find('\n', begin);
    if (begin != std::string::npos)
      ++begin;
  }
  if (begin == std::string::npos)
    return;
  const std::size_t end = text.find('\n', begin);
  err << "  " << text.substr(begin, end == std::string::npos ? std::string::npos : end - begin) << '\n';
  err << "  " << std::string(static_cast<std::size_t>(std::max(e.column() - 1, 0)), ' ') << "^\n";
}

int cmd_monitor(const std::string& formula, const std::string& data_path, std::ostream& out, std::ostream& err) {
  FormulaPtr f;
  try {
    f = parse_formula(formula);
  } catch (const SyntaxError& e) {
    err << "error: " << e.what() << '\n';
    caret(formula, e, err);
    return kExitUserError;
  }
  const LabeledDataset data = load_csv(data_path);
  for (const Signal& s : data.signals())
    check_evaluable(*f, s, 0, 0);
  out << "id,label,robustness\n";
  for (std::size_t i = 0; i < data.size(); ++i)
    out << data.id(i) << ',' << sign(data.label(i)) << ','
        << format_number(robustness(*f, data.signal(i)), NumberFormat::Exact) << '\n';
  return kExitOk;
}

void write_dataset(const LabeledDataset& data, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    write_csv(data, out);
    return;
  }
  std::ofstream file(path);
  if (!file)
    throw IoError("cannot write " + path);
  write_csv(data, file);
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Boosted concise decision trees for signal temporal logic"};
  app.name("bcdt");
  app.require_subcommand(1);
  const Log log{err};

  TrainingOptions train_opts, cv_opts;
  std::string model_out;
  auto* train = app.add_subcommand("train", "train one model on a whole dataset");
  train_opts.add(*train, false);
  train->add_option("--out", model_out, "model JSON to write");

  int folds = 5;
  std::string save_dir;
  auto* cv = app.add_subcommand("cv", "stratified k-fold cross validation");
  cv_opts.add(*cv, true);
  cv->add_option("--folds", folds, "number of folds")->check(CLI::Range(2, 1000));
  cv->add_option("--save-models", save_dir, "directory for per-fold model files");

  std::string model_path, eval_data, eval_format = "text";
  bool verdicts = false;
  auto* eval = app.add_subcommand("eval", "misclassification rate of a saved model");
  eval->add_option("--model", model_path, "model JSON")->required();
  eval->add_option("--data", eval_data, "dataset CSV")->required();
  eval->add_flag("--verdicts", verdicts, "print per-signal predictions and robustness");
  eval->add_option("--format", eval_format, "output format")->check(CLI::IsMember({"text", "json"}));

  std::string formula, monitor_data;
  auto* monitor = app.add_subcommand("monitor", "robustness of a formula on every signal, as CSV");
  monitor->add_option("--formula", formula, "formula text")->required();
  monitor->add_option("--data", monitor_data, "dataset CSV")->required();

  NavalScenarioConfig naval;
  std::string naval_out;
  auto* gen_naval = app.add_subcommand("gen-naval", "synthetic vessel trajectories");
  gen_naval->add_option("--count", naval.count_per_class, "signals per class");
  gen_naval->add_option("--horizon", naval.horizon, "last time index");
  gen_naval->add_option("--noise", naval.noise, "Gaussian jitter");
  gen_naval->add_option("--seed", naval.seed, "random seed");
  gen_naval->add_option("--out", naval_out, "CSV to write (stdout if omitted)");

  UrbanScenarioConfig urban;
  std::string urban_out;
  auto* gen_urban = app.add_subcommand("gen-urban", "synthetic car-following traces");
  gen_urban->add_option("--count", urban.count_per_class, "signals per class");
  gen_urban->add_option("--horizon", urban.horizon, "last time index");
  gen_urban->add_option("--noise", urban.noise, "Gaussian jitter");
  gen_urban->add_option("--seed", urban.seed, "random seed");
  gen_urban->add_option("--out", urban_out, "CSV to write (stdout if omitted)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUserError;
  }

  try {
    if (train->parsed())
      return cmd_train(train_opts, model_out, out, log);
    if (cv->parsed())
      return cmd_cv(cv_opts, folds, save_dir, out, log);
    if (eval->parsed())
      return cmd_eval(model_path, eval_data, verdicts, eval_format, out);
    if (monitor->parsed())
      return cmd_monitor(formula, monitor_data, out, err);
    if (gen_naval->parsed()) {
      write_dataset(generate_naval(naval), naval_out, out);
      return kExitOk;
    }
    if (gen_urban->parsed()) {
      write_dataset(generate_urban(urban), urban_out, out);
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUserError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUserError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternalError;
  }
  return kExitInternalError;
}

} // namespace bcdt
