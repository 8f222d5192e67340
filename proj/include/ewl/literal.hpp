#pragma once

#include "ewl/analysis.hpp"
#include "ewl/quantum.hpp"

#include <string>
#include <string_view>

namespace ewl {

/// Parses an angle literal: a decimal number, `pi`, or the products and
/// quotients "k*pi", "pi/d", "k*pi/d", each with an optional sign.
double parse_angle(std::string_view text);

/// Parses "U(theta,alpha,beta)" with angle literals as above.
UnitaryStrategy parse_strategy(std::string_view text);

/// Parses either a single strategy or a mixture
/// "mix[p1*U(...), p2*U(...), ...]".
MixedUnitaryStrategy parse_strategy_mix(std::string_view text);

/// Parses a strategy-set literal: one of
///   one_param | two_param | three_param | finite[U(...),...] |
///   one_param+[U(...),...]
/// optionally followed by whitespace and "grid=<n>", which sets every free
/// parameter's resolution to n.
StrategySetSpec parse_strategy_set(std::string_view text);

/// Formats an angle, preferring exact small multiples of pi ("pi/2",
/// "-3*pi/4") and falling back to decimal.
std::string format_angle(double value);

/// "U(pi/2,0,-pi/2)"; alpha and beta are printed reduced to (-pi, pi].
std::string format_strategy(const UnitaryStrategy& s);

std::string format_strategy_mix(const MixedUnitaryStrategy& s);

}  // namespace ewl
