#include "bcdt/dataset.hpp"

#include "bcdt/error.hpp"
#include "bcdt/robustness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>

namespace bcdt {

LabeledDataset::LabeledDataset(std::vector<Signal> signals, std::vector<Label> labels, std::vector<std::string> ids)
    : signals_(std::move(signals)), labels_(std::move(labels)), ids_(std::move(ids)) {
  if (signals_.empty())
    throw SchemaError("dataset is empty");
  if (labels_.size() != signals_.size())
    throw SchemaError("label count does not match signal count");
  if (ids_.empty()) {
    ids_.reserve(signals_.size());
    for (std::size_t i = 0; i < signals_.size(); ++i)
      ids_.push_back(std::to_string(i));
  } else if (ids_.size() != signals_.size()) {
    throw SchemaError("id count does not match signal count");
  }
  const int n = signals_.front().dimension();
  const int T = signals_.front().horizon();
  for (const Signal& s : signals_)
    if (s.dimension() != n || s.horizon() != T)
      throw SchemaError("ragged dataset: signals differ in dimension or horizon");
}

std::size_t LabeledDataset::count(Label l) const { return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), l)); }

LabeledDataset LabeledDataset::subset(std::span<const std::size_t> indices) const {
  std::vector<Signal> s;
  std::vector<Label> l;
  std::vector<std::string> ids;
  s.reserve(indices.size());
  l.reserve(indices.size());
  ids.reserve(indices.size());
  for (std::size_t i : indices) {
    s.push_back(signals_.at(i));
    l.push_back(labels_.at(i));
    ids.push_back(ids_.at(i));
  }
  return LabeledDataset(std::move(s), std::move(l), std::move(ids));
}

SampleWeights::SampleWeights(std::vector<double> values) : w_(std::move(values)) {
  double total = 0.0;
  for (double v : w_) {
    if (!(v >= 0.0) || !std::isfinite(v))
      throw ConfigError("sample weights must be finite and non-negative");
    total += v;
  }
  if (!(total > 0.0))
    throw ConfigError("sample weights have zero total mass");
  for (double& v : w_)
    v /= total;
}

SampleWeights SampleWeights::uniform(std::size_t n) { return SampleWeights(std::vector<double>(n, 1.0)); }

SampleWeights SampleWeights::subset(std::span<const std::size_t> indices) const {
  std::vector<double> w;
  w.reserve(indices.size());
  for (std::size_t i : indices)
    w.push_back(w_.at(i));
  return SampleWeights(std::move(w));
}

std::vector<std::size_t> FoldPlan::test_indices(int fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignment.size(); ++i)
    if (assignment[i] == fold)
      out.push_back(i);
  return out;
}

std::vector<std::size_t> FoldPlan::train_indices(int fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignment.size(); ++i)
    if (assignment[i] != fold)
      out.push_back(i);
  return out;
}

FoldPlan stratified_folds(const LabeledDataset& data, int k, std::uint64_t seed) {
  if (k < 2)
    throw TooFewSamples("fold count must be at least 2");
  FoldPlan plan{k, seed, std::vector<int>(data.size(), -1)};
  std::mt19937_64 rng(seed);
  std::size_t offset = 0;
  for (Label cls : {Label::Positive, Label::Negative}) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < data.size(); ++i)
      if (data.label(i) == cls)
        members.push_back(i);
    if (members.size() < static_cast<std::size_t>(k))
      throw TooFewSamples("class " + std::to_string(sign(cls)) + " has " + std::to_string(members.size()) +
                          " samples, fewer than " + std::to_string(k) + " folds");
    std::shuffle(members.begin(), members.end(), rng);
    // Continue dealing where the previous class stopped so fold sizes stay within one.
    for (std::size_t r = 0; r < members.size(); ++r)
      plan.assignment[members[r]] = static_cast<int>((offset + r) % static_cast<std::size_t>(k));
    offset += members.size();
  }
  return plan;
}

double mcr(const Formula& f, const LabeledDataset& data) {
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const bool sat = satisfies(f, data.signal(i));
    if (sat != (data.label(i) == Label::Positive))
      ++wrong;
  }
  return static_cast<double>(wrong) / static_cast<double>(data.size());
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos)
      break;
    start = comma + 1;
  }
  return out;
}

template <class T>
bool parse_number(std::string_view s, T& out) {
  if (!s.empty() && s.front() == '+')
    s.remove_prefix(1);
  auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc{} && res.ptr == s.data() + s.size();
}

struct PendingSignal {
  int label = 0;
  std::map<int, std::vector<double>> rows; // t -> values
};

} // namespace

LabeledDataset read_csv(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t line_no = 0;
  auto where = [&] { return source + ":" + std::to_string(line_no) + ": "; };

  // Header: first non-empty line.
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty())
      break;
  }
  if (trim(line).empty())
    throw SchemaError(source + ": missing header");
  const auto header = split(line);
  int col_id = -1, col_t = -1, col_label = -1;
  std::map<int, int> var_cols; // 0-based variable -> column
  for (std::size_t c = 0; c < header.size(); ++c) {
    const std::string_view h = header[c];
    if (h == "id")
      col_id = static_cast<int>(c);
    else if (h == "t")
      col_t = static_cast<int>(c);
    else if (h == "label")
      col_label = static_cast<int>(c);
    else if (h.size() > 1 && h[0] == 'x') {
      int v = 0;
      if (!parse_number(h.substr(1), v) || v < 1)
        throw SchemaError(where() + "bad variable column '" + std::string(h) + "'");
      if (!var_cols.emplace(v - 1, static_cast<int>(c)).second)
        throw SchemaError(where() + "duplicate column '" + std::string(h) + "'");
    } else {
      throw SchemaError(where() + "unknown column '" + std::string(h) + "'");
    }
  }
  if (col_id < 0)
    throw SchemaError(where() + "missing column 'id'");
  if (col_t < 0)
    throw SchemaError(where() + "missing column 't'");
  if (col_label < 0)
    throw SchemaError(where() + "missing column 'label'");
  if (var_cols.empty())
    throw SchemaError(where() + "missing signal columns x1..xn");
  const int n = static_cast<int>(var_cols.size());
  if (var_cols.rbegin()->first != n - 1)
    throw SchemaError(where() + "signal columns must be x1..x" + std::to_string(n) + " without gaps");

  std::vector<std::string> order;
  std::unordered_map<std::string, PendingSignal> pending;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty())
      continue;
    const auto cells = split(line);
    if (cells.size() != header.size())
      throw SchemaError(where() + "expected " + std::to_string(header.size()) + " fields, got " +
                        std::to_string(cells.size()));
    const std::string id(cells[col_id]);
    if (id.empty())
      throw SchemaError(where() + "empty id");
    int t = 0;
    if (!parse_number(cells[col_t], t) || t < 0)
      throw SchemaError(where() + "bad time index '" + std::string(cells[col_t]) + "'");
    int label = 0;
    if (!parse_number(cells[col_label], label) || (label != 1 && label != -1))
      throw SchemaError(where() + "unknown label '" + std::string(cells[col_label]) + "' (expected 1 or -1)");
    std::vector<double> values(static_cast<std::size_t>(n));
    for (const auto& [var, col] : var_cols) {
      double v = 0.0;
      if (!parse_number(cells[col], v) || !std::isfinite(v))
        throw SchemaError(where() + "bad value '" + std::string(cells[col]) + "' for x" + std::to_string(var + 1));
      values[static_cast<std::size_t>(var)] = v;
    }
    auto [it, inserted] = pending.try_emplace(id);
    if (inserted) {
      order.push_back(id);
      it->second.label = label;
    } else if (it->second.label != label) {
      throw SchemaError(where() + "label changes within signal '" + id + "'");
    }
    if (!it->second.rows.emplace(t, std::move(values)).second)
      throw SchemaError(where() + "duplicate (id, t) = (" + id + ", " + std::to_string(t) + ")");
  }
  if (order.empty())
    throw SchemaError(source + ": no data rows");

  std::vector<Signal> signals;
  std::vector<Label> labels;
  const std::size_t length = pending.at(order.front()).rows.size();
  for (const std::string& id : order) {
    const PendingSignal& p = pending.at(id);
    if (p.rows.size() != length)
      throw SchemaError(source + ": ragged signals: '" + id + "' has " + std::to_string(p.rows.size()) +
                        " timepoints, expected " + std::to_string(length));
    if (p.rows.rbegin()->first != static_cast<int>(length) - 1)
      throw SchemaError(source + ": ragged signals: '" + id + "' has gaps in its time index");
    std::vector<double> flat(static_cast<std::size_t>(n) * length);
    for (const auto& [t, vals] : p.rows)
      for (int j = 0; j < n; ++j)
        flat[static_cast<std::size_t>(j) * length + static_cast<std::size_t>(t)] = vals[static_cast<std::size_t>(j)];
    signals.emplace_back(n, static_cast<int>(length) - 1, std::move(flat));
    labels.push_back(label_from_sign(p.label));
  }
  return LabeledDataset(std::move(signals), std::move(labels), std::move(order));
}

LabeledDataset load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw IoError("no such file: " + path.string());
  return read_csv(in, path.string());
}

void write_csv(const LabeledDataset& data, std::ostream& out) {
  out << "id,t,label";
  for (int j = 0; j < data.dimension(); ++j)
    out << ",x" << j + 1;
  out << '\n';
  char buf[64];
  for (std::size_t i = 0; i < data.size(); ++i) {
    const Signal& s = data.signal(i);
    for (int t = 0; t <= s.horizon(); ++t) {
      out << data.id(i) << ',' << t << ',' << sign(data.label(i));
      for (int j = 0; j < s.dimension(); ++j) {
        auto res = std::to_chars(buf, buf + sizeof buf, s.at(j, t));
        out << ',' << std::string_view(buf, static_cast<std::size_t>(res.ptr - buf));
      }
      out << '\n';
    }
  }
}

} // namespace bcdt
