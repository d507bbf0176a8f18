#pragma once

#include "bcdt/boost.hpp"

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace bcdt {

struct FoldOutcome {
  int fold = 0;
  double train_mcr = 0.0;
  double test_mcr = 0.0;
  std::size_t combinations = 0;
  std::size_t trees = 0;
  std::string wstl;    ///< weighted conjunction of every tree
  std::string final;   ///< pruned tree formula, or the wSTL when nothing was pruned
  bool pruned = false;
};

/// One row of the results table: a tree budget K evaluated over all folds.
struct ReportRow {
  int K = 0;
  std::vector<FoldOutcome> folds;
  // percentages over folds; std is the population deviation
  double tr_mean = 0.0;
  double tr_std = 0.0;
  double te_mean = 0.0;
  double te_std = 0.0;
  std::size_t ct = 0;
};

struct RunReport {
  int folds = 0;
  std::uint64_t seed = 0;
  std::vector<ReportRow> rows;
  double runtime_seconds = 0.0;
};

/// Fills the aggregate columns from the per-fold outcomes.
void summarize(ReportRow& row);

FoldOutcome describe_fold(int fold, const BoostedModel& model, const LabeledDataset& train, const LabeledDataset& test);

void write_text(const RunReport& report, std::ostream& out);
/// Machine-readable form; leaves out the runtime so reruns compare equal.
nlohmann::json report_to_json(const RunReport& report);

} // namespace bcdt
