#pragma once

#include "bcdt/formula.hpp"
#include "bcdt/signal.hpp"

#include <vector>

namespace bcdt {

/// Robustness assigned to `true` (and negated for `false`). A finite cap keeps
/// min/max dominance and sign while staying printable in CSV output.
inline constexpr double kRobustnessCap = 1e12;

/// Quantitative semantics rho(f, s, t). Conjunction weights are annotation only
/// and do not change the value. Throws OutOfHorizon when a window reaches past
/// the signal's horizon and DimensionMismatch for an unknown variable.
double robustness(const Formula& f, const Signal& s, int t = 0);

/// rho(f, s, t) for every t in [first, last].
std::vector<double> robustness_trace(const Formula& f, const Signal& s, int first, int last);

/// s |= f at time 0; robustness exactly 0 counts as satisfaction.
bool satisfies(const Formula& f, const Signal& s);

/// Throws unless f can be evaluated on s over [first, last].
void check_evaluable(const Formula& f, const Signal& s, int first, int last);

} // namespace bcdt
