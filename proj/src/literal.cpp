#include "ewl/literal.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace ewl {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void bad(std::string_view what, std::string_view text) {
  throw std::invalid_argument(std::string(what) + ": \"" + std::string(text) + "\"");
}

double parse_factor(std::string_view token, std::string_view full) {
  token = trim(token);
  if (token == "pi") return M_PI;
  if (token.empty()) bad("empty angle factor", full);
  char* end = nullptr;
  const std::string text(token);
  const double value = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size()) bad("bad angle", full);
  return value;
}

// Splits on top-level commas, respecting (), [] nesting.
std::vector<std::string_view> split_args(std::string_view body) {
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < body.size(); ++i) {
    const char c = body[i];
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(body.substr(start, i - start));
      start = i + 1;
    }
  }
  parts.push_back(body.substr(start));
  return parts;
}

double reduce_near_pi(double value) {
  // Prefer the (-pi, pi] representative for printing.
  double w = std::fmod(value + M_PI, 2.0 * M_PI);
  if (w <= 0.0) w += 2.0 * M_PI;
  w -= M_PI;
  return w == 0.0 ? 0.0 : w;
}

}  // namespace

double parse_angle(std::string_view text) {
  std::string_view rest = trim(text);
  if (rest.empty()) bad("empty angle", text);
  double sign = 1.0;
  while (!rest.empty() && (rest.front() == '-' || rest.front() == '+')) {
    if (rest.front() == '-') sign = -sign;
    rest.remove_prefix(1);
    rest = trim(rest);
  }
  // factor ('*' factor)* ('/' factor)*, left to right
  double value = 1.0;
  std::size_t start = 0;
  char pending = '*';
  for (std::size_t i = 0; i <= rest.size(); ++i) {
    if (i < rest.size() && rest[i] != '*' && rest[i] != '/') continue;
    const double factor = parse_factor(rest.substr(start, i - start), text);
    value = pending == '*' ? value * factor : value / factor;
    if (i < rest.size()) pending = rest[i];
    start = i + 1;
  }
  return sign * value;
}

UnitaryStrategy parse_strategy(std::string_view text) {
  std::string_view body = trim(text);
  if (body.size() < 4 || (body[0] != 'U' && body[0] != 'u') || body[1] != '(' ||
      body.back() != ')')
    bad("expected strategy literal U(theta,alpha,beta)", text);
  body = body.substr(2, body.size() - 3);
  const auto args = split_args(body);
  if (args.size() != 3) bad("strategy literal needs three angles", text);
  return {parse_angle(args[0]), parse_angle(args[1]), parse_angle(args[2])};
}

MixedUnitaryStrategy parse_strategy_mix(std::string_view text) {
  std::string_view body = trim(text);
  if (body.rfind("mix[", 0) != 0) return MixedUnitaryStrategy::pure(parse_strategy(body));
  if (body.back() != ']') bad("unterminated mixture literal", text);
  body = body.substr(4, body.size() - 5);
  MixedUnitaryStrategy mix;
  for (std::string_view part : split_args(body)) {
    part = trim(part);
    const auto star = part.find('*');
    if (star == std::string_view::npos) bad("mixture atom needs the form p*U(...)", text);
    const double p = parse_angle(part.substr(0, star));
    mix.atoms.emplace_back(p, parse_strategy(part.substr(star + 1)));
  }
  mix.validate();
  return mix;
}

StrategySetSpec parse_strategy_set(std::string_view text) {
  std::string_view body = trim(text);
  int grid = 0;
  const auto grid_pos = body.find("grid=");
  if (grid_pos != std::string_view::npos) {
    const std::string number(trim(body.substr(grid_pos + 5)));
    try {
      grid = std::stoi(number);
    } catch (const std::exception&) {
      bad("bad grid override", text);
    }
    body = trim(body.substr(0, grid_pos));
  }

  StrategySetSpec set;
  if (body == "one_param") {
    set = StrategySetSpec::one_parameter();
  } else if (body == "two_param") {
    set = StrategySetSpec::two_parameter();
  } else if (body == "three_param") {
    set = StrategySetSpec::three_parameter();
  } else if (body.rfind("finite[", 0) == 0 && body.back() == ']') {
    std::vector<UnitaryStrategy> members;
    for (std::string_view part : split_args(body.substr(7, body.size() - 8)))
      members.push_back(parse_strategy(part));
    set = StrategySetSpec::finite(std::move(members));
  } else if (body.rfind("one_param+[", 0) == 0 && body.back() == ']') {
    std::vector<UnitaryStrategy> extras;
    for (std::string_view part : split_args(body.substr(11, body.size() - 12)))
      extras.push_back(parse_strategy(part));
    set = StrategySetSpec::one_parameter_plus(std::move(extras));
  } else {
    bad("unknown strategy set", text);
  }
  if (grid > 0) {
    set.theta_resolution = grid;
    set.alpha_resolution = grid;
    set.beta_resolution = grid;
  }
  set.validate();
  return set;
}

std::string format_angle(double value) {
  // k * pi / d for small d, exact within 1e-12.
  for (int d : {1, 2, 3, 4, 6, 8, 12}) {
    const double k = value * d / M_PI;
    const double rounded = std::round(k);
    if (std::abs(k - rounded) < 1e-12 && std::abs(rounded) <= 24.0) {
      const long num = static_cast<long>(rounded);
      if (num == 0) return "0";
      std::string head;
      if (num == -1) head = "-pi";
      else if (num == 1) head = "pi";
      else head = std::to_string(num) + "*pi";
      return d == 1 ? head : head + "/" + std::to_string(d);
    }
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string format_strategy(const UnitaryStrategy& s) {
  return "U(" + format_angle(s.theta) + "," + format_angle(reduce_near_pi(s.alpha)) + "," +
         format_angle(reduce_near_pi(s.beta)) + ")";
}

std::string format_strategy_mix(const MixedUnitaryStrategy& s) {
  if (s.atoms.size() == 1 && s.atoms[0].first == 1.0) return format_strategy(s.atoms[0].second);
  std::string out = "mix[";
  for (std::size_t k = 0; k < s.atoms.size(); ++k) {
    if (k) out += ",";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", s.atoms[k].first);
    out += buf;
    out += "*";
    out += format_strategy(s.atoms[k].second);
  }
  return out + "]";
}

}  // namespace ewl
