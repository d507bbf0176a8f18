#include "bcdt/model_io.hpp"

#include "bcdt/error.hpp"
#include "bcdt/primitive.hpp"

#include <fstream>

namespace bcdt {

using nlohmann::json;

json config_to_json(const BoostConfig& cfg) {
  const PsoConfig& p = cfg.cdt.pso;
  return json{
      {"trees", cfg.trees},
      {"M", cfg.M},
      {"max_retries", cfg.max_retries},
      {"max_depth", cfg.cdt.max_depth},
      {"lambda", cfg.cdt.lambda},
      {"use_always", cfg.cdt.use_always},
      {"use_eventually", cfg.cdt.use_eventually},
      {"seed", p.seed},
      {"pso", {{"swarm", p.swarm_size},
               {"iters", p.iterations},
               {"omega", p.inertia},
               {"c1", p.cognitive},
               {"c2", p.social},
               {"velocity_clamp", p.velocity_clamp},
               {"stall_restart", p.stall_restart},
               {"polish_points", p.polish_points},
               {"polish_passes", p.polish_passes}}},
  };
}

namespace {

template <class T>
void read_key(const json& j, const char* key, T& out) {
  if (!j.contains(key))
    return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("config key '") + key + "' has the wrong type");
  }
}

void reject_unknown(const json& j, std::initializer_list<const char*> known, const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* k : known)
      ok = ok || key == k;
    if (!ok)
      throw ConfigError("unknown config key '" + where + key + "'");
  }
}

} // namespace

BoostConfig config_from_json(const json& j, BoostConfig base) {
  if (!j.is_object())
    throw ConfigError("config must be a JSON object");
  reject_unknown(j, {"trees", "M", "max_retries", "max_depth", "lambda", "use_always", "use_eventually", "seed", "pso"},
                 "");
  read_key(j, "trees", base.trees);
  read_key(j, "M", base.M);
  read_key(j, "max_retries", base.max_retries);
  read_key(j, "max_depth", base.cdt.max_depth);
  read_key(j, "lambda", base.cdt.lambda);
  read_key(j, "use_always", base.cdt.use_always);
  read_key(j, "use_eventually", base.cdt.use_eventually);
  read_key(j, "seed", base.cdt.pso.seed);
  if (j.contains("pso")) {
    const json& p = j.at("pso");
    if (!p.is_object())
      throw ConfigError("config key 'pso' must be an object");
    reject_unknown(p, {"swarm", "iters", "omega", "c1", "c2", "velocity_clamp", "stall_restart", "polish_points",
                      "polish_passes"},
                  "pso.");
    PsoConfig& o = base.cdt.pso;
    read_key(p, "swarm", o.swarm_size);
    read_key(p, "iters", o.iterations);
    read_key(p, "omega", o.inertia);
    read_key(p, "c1", o.cognitive);
    read_key(p, "c2", o.social);
    read_key(p, "velocity_clamp", o.velocity_clamp);
    read_key(p, "stall_restart", o.stall_restart);
    read_key(p, "polish_points", o.polish_points);
    read_key(p, "polish_passes", o.polish_passes);
  }
  return base;
}

json tree_to_json(const CdtNode& root) {
  if (root.is_leaf())
    return json{{"label", sign(root.label())}};
  return json{{"primitive", to_string(*root.primitive())},
              {"satisfied", tree_to_json(*root.satisfied())},
              {"violated", tree_to_json(*root.violated())}};
}

CdtPtr tree_from_json(const json& j) {
  if (!j.is_object())
    throw SchemaError("tree node must be an object");
  if (j.contains("label")) {
    const json& l = j.at("label");
    if (!l.is_number_integer() || (l.get<int>() != 1 && l.get<int>() != -1))
      throw SchemaError("leaf label must be 1 or -1");
    return CdtNode::leaf(label_from_sign(l.get<int>()));
  }
  if (!j.contains("primitive") || !j.at("primitive").is_string() || !j.contains("satisfied") ||
      !j.contains("violated"))
    throw SchemaError("tree node needs either 'label' or 'primitive', 'satisfied' and 'violated'");
  FormulaPtr p = parse_formula(j.at("primitive").get<std::string>());
  return CdtNode::internal(std::move(p), tree_from_json(j.at("satisfied")), tree_from_json(j.at("violated")));
}

json model_to_json(const BoostedModel& model) {
  json trees = json::array();
  for (const BoostedTree& t : model.trees)
    trees.push_back({{"alpha", t.alpha},
                     {"epsilon", t.epsilon},
                     {"formulaText", to_string(*t.formula)},
                     {"treeStructure", tree_to_json(*t.root)},
                     {"conciseness", t.combinations}});
  json out{{"version", kModelVersion},
           {"n", model.dimension},
           {"T", model.horizon},
           {"M", model.M},
           {"trees", std::move(trees)},
           {"prunedIndex", nullptr},
           {"config", config_to_json(model.config)}};
  if (model.pruned_index)
    out["prunedIndex"] = *model.pruned_index;
  return out;
}

namespace {

const json& field(const json& j, const char* key) {
  if (!j.contains(key))
    throw SchemaError(std::string("model is missing '") + key + "'");
  return j.at(key);
}

template <class T>
T number(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number())
    throw SchemaError(std::string("model field '") + key + "' must be a number");
  return v.get<T>();
}

} // namespace

BoostedModel model_from_json(const json& j) {
  if (!j.is_object())
    throw SchemaError("model must be a JSON object");
  if (number<int>(j, "version") != kModelVersion)
    throw SchemaError("unsupported model version");
  BoostedModel m;
  m.dimension = number<int>(j, "n");
  m.horizon = number<int>(j, "T");
  m.M = number<double>(j, "M");
  try {
    m.config = config_from_json(field(j, "config"));
  } catch (const ConfigError& e) {
    throw SchemaError(std::string("bad model config: ") + e.what());
  }
  const json& trees = field(j, "trees");
  if (!trees.is_array() || trees.empty())
    throw SchemaError("model needs a non-empty 'trees' array");
  for (const json& tj : trees) {
    if (!tj.is_object())
      throw SchemaError("tree entry must be an object");
    BoostedTree t;
    t.alpha = number<double>(tj, "alpha");
    t.epsilon = number<double>(tj, "epsilon");
    if (!(t.epsilon >= 0.0 && t.epsilon < 0.5))
      throw SchemaError("tree epsilon must lie in [0, 0.5)");
    t.root = tree_from_json(field(tj, "treeStructure"));
    const json& text = field(tj, "formulaText");
    if (!text.is_string())
      throw SchemaError("formulaText must be a string");
    t.formula = parse_formula(text.get<std::string>());
    if (!structurally_equal(*t.formula, *tree_to_stl(*t.root)))
      throw SchemaError("formulaText does not match treeStructure");
    if (tj.contains("conciseness"))
      t.combinations = number<std::size_t>(tj, "conciseness");
    m.trees.push_back(std::move(t));
  }
  const json& pruned = field(j, "prunedIndex");
  if (!pruned.is_null()) {
    if (!pruned.is_number_unsigned() || pruned.get<std::size_t>() >= m.trees.size())
      throw SchemaError("prunedIndex out of range");
    m.pruned_index = pruned.get<std::size_t>();
    if (m.trees[*m.pruned_index].alpha != m.M)
      throw SchemaError("prunedIndex names a tree whose weight is not M");
  }
  return m;
}

void save_model(const BoostedModel& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out)
    throw IoError("cannot write " + path.string());
  out << model_to_json(model).dump(2) << '\n';
  if (!out)
    throw IoError("failed writing " + path.string());
}

BoostedModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw IoError("no such file: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
  return model_from_json(j);
}

} // namespace bcdt
