#include "bcdt/dataset.hpp"
#include "bcdt/error.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

using namespace bcdt;

namespace {

LabeledDataset constants(std::vector<double> values, std::vector<Label> labels) {
  std::vector<Signal> s;
  for (double v : values)
    s.emplace_back(std::vector<std::vector<double>>{{v, v}});
  return {std::move(s), std::move(labels)};
}

LabeledDataset balanced(int per_class) {
  std::vector<double> v;
  std::vector<Label> l;
  for (int i = 0; i < 2 * per_class; ++i) {
    v.push_back(i);
    l.push_back(i % 2 ? Label::Negative : Label::Positive);
  }
  return constants(v, l);
}

std::string expect_schema_error(const std::string& csv) {
  std::istringstream in(csv);
  try {
    read_csv(in);
  } catch (const SchemaError& e) {
    return e.what();
  }
  ADD_FAILURE() << "no schema error for:\n" << csv;
  return {};
}

} // namespace

TEST(Dataset, ReadsLongCsv) {
  std::istringstream in("id,t,label,x1,x2\n"
                        "a,0,1,0.5,1\n"
                        "a,1,1,0.25,2\n"
                        "a,2,1,0,3\n"
                        "b,2,-1,9,9\n"
                        "b,0,-1,7,7\n"
                        "b,1,-1,8,8\n");
  const LabeledDataset d = read_csv(in);
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d.dimension(), 2);
  EXPECT_EQ(d.horizon(), 2);
  EXPECT_EQ(d.id(1), "b");
  EXPECT_EQ(d.label(1), Label::Negative);
  EXPECT_EQ(d.signal(1).at(0, 0), 7.0);
  EXPECT_EQ(d.signal(1).at(0, 2), 9.0);
  EXPECT_EQ(d.signal(0).at(1, 1), 2.0);
}

TEST(Dataset, ColumnOrderIsFree) {
  std::istringstream in("x1,label,t,id\n3,1,0,s\n4,1,1,s\n");
  const LabeledDataset d = read_csv(in);
  EXPECT_EQ(d.horizon(), 1);
  EXPECT_EQ(d.signal(0).at(0, 1), 4.0);
}

TEST(Dataset, SchemaErrors) {
  EXPECT_NE(expect_schema_error("id,t,x1\na,0,1\n").find("missing column"), std::string::npos);
  EXPECT_NE(expect_schema_error("id,t,label,x1\na,0,2,1\n").find("unknown label"), std::string::npos);
  EXPECT_NE(expect_schema_error("id,t,label,x1\na,0,1,1\na,0,1,2\n").find("duplicate"), std::string::npos);
  EXPECT_NE(expect_schema_error("id,t,label,x1\na,0,1,1\na,1,1,1\nb,0,1,1\n").find("ragged"), std::string::npos);
  EXPECT_NE(expect_schema_error("id,t,label,x1\na,0,1,1\na,2,1,1\n").find("ragged"), std::string::npos);
  EXPECT_NE(expect_schema_error("id,t,label,x1\na,0,1,1\na,1,-1,1\n").find("label"), std::string::npos);
  EXPECT_NE(expect_schema_error("id,t,label,x1\na,0,1,abc\n").find("bad value"), std::string::npos);
  EXPECT_NE(expect_schema_error("id,t,label,x1\na,0,1,nan\n").find("value"), std::string::npos);
}

TEST(Dataset, RaggedSeventhSignal) {
  std::ostringstream csv;
  csv << "id,t,label,x1\n";
  for (int id = 0; id < 10; ++id)
    for (int t = 0; t < (id == 7 ? 60 : 61); ++t)
      csv << id << ',' << t << ',' << (id % 2 ? -1 : 1) << ',' << t * 0.5 << '\n';
  EXPECT_NE(expect_schema_error(csv.str()).find("ragged"), std::string::npos);
}

TEST(Dataset, CsvRoundTrip) {
  const LabeledDataset d = constants({0.1, 1.0 / 3.0, -7e-5}, {Label::Positive, Label::Negative, Label::Positive});
  std::stringstream io;
  write_csv(d, io);
  const LabeledDataset back = read_csv(io);
  ASSERT_EQ(back.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    EXPECT_EQ(back.signal(i), d.signal(i));
    EXPECT_EQ(back.label(i), d.label(i));
    EXPECT_EQ(back.id(i), d.id(i));
  }
}

TEST(Dataset, MissingFile) {
  try {
    load_csv("/nonexistent/data.csv");
    FAIL();
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("no such file"), std::string::npos);
  }
}

TEST(Dataset, MisclassificationRate) {
  const LabeledDataset pos = constants({0, 1}, {Label::Positive, Label::Positive});
  const LabeledDataset neg = constants({0, 1}, {Label::Negative, Label::Negative});
  EXPECT_EQ(mcr(*make_constant(true), pos), 0.0);
  EXPECT_EQ(mcr(*make_constant(true), neg), 1.0);
  const LabeledDataset four =
      constants({0, 2, 0.5, 3}, {Label::Positive, Label::Positive, Label::Negative, Label::Negative});
  auto f = parse_formula("x1 <= 1");
  EXPECT_EQ(mcr(*f, four), 0.5);
  EXPECT_EQ(mcr(*f, four) + mcr(*make_not(f), four), 1.0);
}

TEST(Dataset, WeightsNormalize) {
  const SampleWeights w({1, 3});
  EXPECT_DOUBLE_EQ(w[0], 0.25);
  EXPECT_DOUBLE_EQ(w[1], 0.75);
  EXPECT_THROW(SampleWeights({0, 0}), ConfigError);
  EXPECT_THROW(SampleWeights({1, -1}), ConfigError);
  const SampleWeights u = SampleWeights::uniform(4);
  EXPECT_NEAR(std::accumulate(u.values().begin(), u.values().end(), 0.0), 1.0, 1e-12);
}

TEST(Dataset, RejectsMixedShapes) {
  std::vector<Signal> s{Signal({{1.0, 2.0}}), Signal({{1.0, 2.0, 3.0}})};
  EXPECT_THROW(LabeledDataset(s, {Label::Positive, Label::Negative}), SchemaError);
  EXPECT_THROW(Signal(std::vector<std::vector<double>>{{1.0, 2.0}, {1.0}}), SchemaError);
}

TEST(Folds, OnePairPerFold) {
  const LabeledDataset d = balanced(5);
  const FoldPlan p = stratified_folds(d, 5, 1);
  for (int f = 0; f < 5; ++f) {
    const auto test = p.test_indices(f);
    ASSERT_EQ(test.size(), 2u);
    EXPECT_NE(d.label(test[0]), d.label(test[1]));
    EXPECT_EQ(p.train_indices(f).size(), 8u);
  }
}

TEST(Folds, Deterministic) {
  const LabeledDataset d = balanced(20);
  EXPECT_EQ(stratified_folds(d, 5, 42).assignment, stratified_folds(d, 5, 42).assignment);
  EXPECT_NE(stratified_folds(d, 5, 42).assignment, stratified_folds(d, 5, 43).assignment);
}

TEST(Folds, LargeBalancedSplit) {
  const LabeledDataset d = balanced(1000);
  const FoldPlan p = stratified_folds(d, 5, 9);
  for (int f = 0; f < 5; ++f) {
    const auto test = p.test_indices(f);
    ASSERT_EQ(test.size(), 400u);
    std::size_t pos = 0;
    for (std::size_t i : test)
      pos += d.label(i) == Label::Positive;
    EXPECT_EQ(pos, 200u);
  }
}

TEST(Folds, UnevenClassesStayStratified) {
  std::vector<double> v;
  std::vector<Label> l;
  for (int i = 0; i < 23; ++i) {
    v.push_back(i);
    l.push_back(i < 13 ? Label::Positive : Label::Negative);
  }
  const LabeledDataset d = constants(v, l);
  const FoldPlan p = stratified_folds(d, 4, 3);
  const double ratio = 13.0 / 23.0;
  for (int f = 0; f < 4; ++f) {
    const auto test = p.test_indices(f);
    EXPECT_GE(test.size(), 5u);
    EXPECT_LE(test.size(), 6u);
    double pos = 0;
    for (std::size_t i : test)
      pos += d.label(i) == Label::Positive;
    EXPECT_LE(std::abs(pos - ratio * test.size()), 1.0);
  }
}

TEST(Folds, TooFewSamples) {
  EXPECT_THROW(stratified_folds(balanced(3), 5, 0), TooFewSamples);
  EXPECT_THROW(stratified_folds(balanced(3), 1, 0), TooFewSamples);
}
