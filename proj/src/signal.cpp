#include "bcdt/signal.hpp"

#include "bcdt/error.hpp"

#include <cmath>
#include <string>

namespace bcdt {

SyntaxError::SyntaxError(std::string message, int line, int column, std::vector<std::string> expected)
    : Error(std::move(message)), line_(line), column_(column), expected_(std::move(expected)) {}

Signal::Signal(const std::vector<std::vector<double>>& rows) {
  if (rows.empty())
    throw SchemaError("signal needs at least one component");
  const std::size_t len = rows.front().size();
  if (len == 0)
    throw SchemaError("signal needs at least one timepoint");
  dimension_ = static_cast<int>(rows.size());
  horizon_ = static_cast<int>(len) - 1;
  values_.reserve(rows.size() * len);
  for (const auto& r : rows) {
    if (r.size() != len)
      throw SchemaError("ragged signal: component lengths differ");
    values_.insert(values_.end(), r.begin(), r.end());
  }
  validate();
}

Signal::Signal(int dimension, int horizon, std::vector<double> values)
    : dimension_(dimension), horizon_(horizon), values_(std::move(values)) {
  if (dimension_ < 1 || horizon_ < 0)
    throw SchemaError("signal needs n >= 1 and T >= 0");
  if (values_.size() != static_cast<std::size_t>(dimension_) * static_cast<std::size_t>(horizon_ + 1))
    throw SchemaError("signal buffer size does not match n*(T+1)");
  validate();
}

void Signal::validate() const {
  for (double v : values_)
    if (!std::isfinite(v))
      throw SchemaError("signal contains a non-finite value");
}

} // namespace bcdt
