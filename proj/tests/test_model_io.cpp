#include "bcdt/error.hpp"
#include "bcdt/model_io.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <filesystem>

using namespace bcdt;
using nlohmann::json;

namespace {

BoostedModel trained() {
  const LabeledDataset d = oracle::two_band(3, 8);
  std::vector<Label> labels = d.labels();
  labels[2] = Label::Negative;
  BoostConfig cfg;
  cfg.trees = 3;
  cfg.cdt.max_depth = 2;
  cfg.cdt.pso.swarm_size = 16;
  cfg.cdt.pso.iterations = 20;
  cfg.cdt.pso.seed = 77;
  return train_bcdt(LabeledDataset(d.signals(), labels), cfg);
}

} // namespace

TEST(ModelIo, RoundTripPreservesPredictions) {
  const BoostedModel m = trained();
  const json j = model_to_json(m);
  EXPECT_EQ(j["version"], kModelVersion);
  EXPECT_EQ(j["n"], 2);
  EXPECT_EQ(j["T"], 60);
  const BoostedModel back = model_from_json(j);
  ASSERT_EQ(back.trees.size(), m.trees.size());
  for (std::size_t k = 0; k < m.trees.size(); ++k) {
    EXPECT_EQ(back.trees[k].alpha, m.trees[k].alpha);
    EXPECT_EQ(back.trees[k].epsilon, m.trees[k].epsilon);
    EXPECT_TRUE(structurally_equal(*back.trees[k].formula, *m.trees[k].formula));
    EXPECT_EQ(back.trees[k].combinations, m.trees[k].combinations);
  }
  EXPECT_EQ(back.pruned_index, m.pruned_index);
  EXPECT_EQ(model_to_json(back), j);
  oracle::FormulaGen gen(1, 2);
  for (int i = 0; i < 50; ++i) {
    const Signal s = gen.signal(60);
    EXPECT_EQ(predict(back, s), predict(m, s));
  }
}

TEST(ModelIo, TreeStructureShape) {
  auto tree = CdtNode::internal(parse_formula("G[0,2](x1 > 1)"), CdtNode::leaf(Label::Positive),
                                CdtNode::leaf(Label::Negative));
  const json j = tree_to_json(*tree);
  EXPECT_EQ(j["primitive"], "G[0,2](x1 > 1.0)");
  EXPECT_EQ(j["satisfied"]["label"], 1);
  EXPECT_EQ(j["violated"]["label"], -1);
  EXPECT_TRUE(structurally_equal(*tree_to_stl(*tree_from_json(j)), *tree_to_stl(*tree)));
}

TEST(ModelIo, FileRoundTrip) {
  const BoostedModel m = trained();
  const auto path = std::filesystem::temp_directory_path() / "bcdt_model_io_test.json";
  save_model(m, path);
  const BoostedModel back = load_model(path);
  EXPECT_EQ(model_to_json(back), model_to_json(m));
  std::filesystem::remove(path);
  EXPECT_THROW(load_model(path), IoError);
}

TEST(ModelIo, RejectsBrokenDocuments) {
  const json good = model_to_json(trained());
  json j = good;
  j.erase("trees");
  EXPECT_THROW(model_from_json(j), SchemaError);
  j = good;
  j["version"] = 99;
  EXPECT_THROW(model_from_json(j), SchemaError);
  j = good;
  j["trees"][0]["formulaText"] = "G[0,1](x1 > 12345)";
  EXPECT_THROW(model_from_json(j), SchemaError);
  j = good;
  j["trees"][0]["treeStructure"] = json{{"label", 3}};
  EXPECT_THROW(model_from_json(j), SchemaError);
  j = good;
  j["trees"][0]["epsilon"] = 0.7;
  EXPECT_THROW(model_from_json(j), SchemaError);
  j = good;
  j["prunedIndex"] = 17;
  EXPECT_THROW(model_from_json(j), SchemaError);
  j = good;
  j["trees"][0]["formulaText"] = "G[0,1](x1 >";
  EXPECT_THROW(model_from_json(j), SyntaxError);
}

TEST(ModelIo, ConfigOverlay) {
  const BoostConfig c = config_from_json(json::parse(R"({"trees": 5, "lambda": 0.9, "pso": {"swarm": 12}})"));
  EXPECT_EQ(c.trees, 5);
  EXPECT_EQ(c.cdt.lambda, 0.9);
  EXPECT_EQ(c.cdt.pso.swarm_size, 12);
  EXPECT_EQ(c.cdt.pso.iterations, 60);
  EXPECT_EQ(c.M, 100.0);
  EXPECT_THROW(config_from_json(json::parse(R"({"tres": 5})")), ConfigError);
  EXPECT_THROW(config_from_json(json::parse(R"({"trees": "five"})")), ConfigError);
  const BoostConfig round = config_from_json(config_to_json(c));
  EXPECT_EQ(config_to_json(round), config_to_json(c));
}
