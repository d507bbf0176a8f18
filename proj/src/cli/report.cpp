#include "bcdt/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace bcdt {

void summarize(ReportRow& row) {
  const double n = static_cast<double>(row.folds.size());
  row.tr_mean = row.te_mean = row.tr_std = row.te_std = 0.0;
  row.ct = 0;
  if (row.folds.empty())
    return;
  for (const FoldOutcome& f : row.folds) {
    row.tr_mean += 100.0 * f.train_mcr / n;
    row.te_mean += 100.0 * f.test_mcr / n;
    row.ct += f.combinations;
  }
  for (const FoldOutcome& f : row.folds) {
    row.tr_std += std::pow(100.0 * f.train_mcr - row.tr_mean, 2) / n;
    row.te_std += std::pow(100.0 * f.test_mcr - row.te_mean, 2) / n;
  }
  row.tr_std = std::sqrt(row.tr_std);
  row.te_std = std::sqrt(row.te_std);
}

FoldOutcome describe_fold(int fold, const BoostedModel& model, const LabeledDataset& train,
                          const LabeledDataset& test) {
  FoldOutcome f;
  f.fold = fold;
  f.train_mcr = model_mcr(model, train);
  f.test_mcr = model_mcr(model, test);
  f.combinations = model.combinations();
  f.trees = model.trees.size();
  std::vector<FormulaPtr> parts;
  std::vector<double> weights;
  for (const BoostedTree& t : model.trees) {
    parts.push_back(t.formula);
    weights.push_back(t.alpha);
  }
  f.wstl = to_string(*make_and(std::move(parts), std::move(weights)));
  f.final = to_string(*model_to_wstl(model));
  f.pruned = model.pruned_index.has_value();
  return f;
}

namespace {

std::string fixed(double v, int decimals = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

} // namespace

void write_text(const RunReport& report, std::ostream& out) {
  char line[160];
  out << report.folds << "-fold cross validation, seed " << report.seed << "\n\n";
  std::snprintf(line, sizeof line, "%4s %8s %8s %8s %8s %10s %5s\n", "K", "TR-M", "TR-S", "TE-M", "TE-S", "R", "CT");
  out << line;
  for (const ReportRow& r : report.rows) {
    std::snprintf(line, sizeof line, "%4d %8.2f %8.2f %8.2f %8.2f %10.2f %5zu\n", r.K, r.tr_mean, r.tr_std, r.te_mean,
                  r.te_std, report.runtime_seconds, r.ct);
    out << line;
  }
  out << "\n(MCR columns in %, R in seconds for the whole run)\n";
  for (const ReportRow& r : report.rows) {
    out << "\nK = " << r.K << '\n';
    for (const FoldOutcome& f : r.folds) {
      out << "  fold " << f.fold + 1 << ": train " << fixed(100.0 * f.train_mcr) << "%, test "
          << fixed(100.0 * f.test_mcr) << "%, trees " << f.trees << ", CT " << f.combinations << '\n';
      out << "    wSTL  " << f.wstl << '\n';
      if (f.pruned)
        out << "    final " << f.final << '\n';
    }
  }
}

nlohmann::json report_to_json(const RunReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const ReportRow& r : report.rows) {
    nlohmann::json folds = nlohmann::json::array();
    for (const FoldOutcome& f : r.folds)
      folds.push_back({{"fold", f.fold},
                       {"train_mcr", f.train_mcr},
                       {"test_mcr", f.test_mcr},
                       {"trees", f.trees},
                       {"CT", f.combinations},
                       {"wstl", f.wstl},
                       {"final", f.final},
                       {"pruned", f.pruned}});
    rows.push_back({{"K", r.K},
                    {"TR-M", r.tr_mean},
                    {"TR-S", r.tr_std},
                    {"TE-M", r.te_mean},
                    {"TE-S", r.te_std},
                    {"CT", r.ct},
                    {"folds", std::move(folds)}});
  }
  return {{"folds", report.folds}, {"seed", report.seed}, {"rows", std::move(rows)}};
}

} // namespace bcdt
