#include "ewl/qasm.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

namespace ewl {

namespace {

constexpr Complex kI{0.0, 1.0};

// Reduce to (-pi, pi], mapping -pi to +pi and flushing -0.
double wrap_pi(double x) {
  double w = std::fmod(x + M_PI, 2.0 * M_PI);
  if (w <= 0.0) w += 2.0 * M_PI;
  w -= M_PI;
  return w == 0.0 ? 0.0 : w;
}

// Shortest decimal form that round-trips, e.g. pi -> 3.141592653589793.
std::string format_param(double v) {
  char buf[40];
  auto result = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, result.ptr);
}

int param_count(GateKind kind) {
  switch (kind) {
    case GateKind::u1: return 1;
    case GateKind::u2: return 2;
    case GateKind::u3: return 3;
    case GateKind::x:
    case GateKind::cx: return 0;
  }
  return -1;
}

int qubit_count(GateKind kind) { return kind == GateKind::cx ? 2 : 1; }

}  // namespace

const char* gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::u1: return "u1";
    case GateKind::u2: return "u2";
    case GateKind::u3: return "u3";
    case GateKind::x: return "x";
    case GateKind::cx: return "cx";
  }
  return "?";
}

void IbmGateParams::validate() const {
  if (static_cast<int>(params.size()) != param_count(kind))
    throw std::invalid_argument(std::string(gate_name(kind)) + ": wrong parameter count");
  if (static_cast<int>(qubits.size()) != qubit_count(kind))
    throw std::invalid_argument(std::string(gate_name(kind)) + ": wrong operand count");
  for (int q : qubits)
    if (q < 0) throw std::invalid_argument("negative qubit operand");
  if (kind == GateKind::cx && qubits[0] == qubits[1])
    throw std::invalid_argument("cx operands must differ");
}

Eigen::Matrix2cd ibm_gate_matrix(GateKind kind, const std::vector<double>& params) {
  double theta = 0.0, phi = 0.0, lambda = 0.0;
  switch (kind) {
    case GateKind::u1: lambda = params.at(0); break;
    case GateKind::u2: theta = M_PI / 2.0; phi = params.at(0); lambda = params.at(1); break;
    case GateKind::u3: theta = params.at(0); phi = params.at(1); lambda = params.at(2); break;
    case GateKind::x: {
      Eigen::Matrix2cd x;
      x << 0, 1, 1, 0;
      return x;
    }
    case GateKind::cx: throw std::invalid_argument("cx is not a single-qubit gate");
  }
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  Eigen::Matrix2cd u;
  u << c, -std::exp(kI * lambda) * s, std::exp(kI * phi) * s,
      std::exp(kI * (lambda + phi)) * c;
  return u;
}

StrategyGate to_ibm_params(const UnitaryStrategy& s) {
  const double phi = wrap_pi(M_PI / 2.0 - s.alpha - s.beta);
  const double lambda = wrap_pi(s.beta - s.alpha - M_PI / 2.0);
  StrategyGate out;
  out.global_phase = s.alpha;
  if (s.theta == 0.0) {
    out.gate = {GateKind::u1, {wrap_pi(phi + lambda)}, {0}};
  } else if (s.theta == M_PI / 2.0) {
    out.gate = {GateKind::u2, {phi, lambda}, {0}};
  } else {
    out.gate = {GateKind::u3, {s.theta, phi, lambda}, {0}};
  }
  return out;
}

EntanglerDecomposition entangler_decomposition() {
  const double h = M_PI / 2.0;
  EntanglerDecomposition d;
  d.j_gates = {{GateKind::cx, {}, {0, 1}},
               {GateKind::u2, {h, -h}, {0}},
               {GateKind::cx, {}, {0, 1}}};
  d.j_dagger_gates = {{GateKind::cx, {}, {0, 1}},
                      {GateKind::u2, {-h, h}, {0}},
                      {GateKind::cx, {}, {0, 1}}};
  return d;
}

Eigen::Matrix4cd compose_two_qubit(const std::vector<IbmGateParams>& gates) {
  Eigen::Matrix4cd total = Eigen::Matrix4cd::Identity();
  for (const auto& g : gates) {
    g.validate();
    Eigen::Matrix4cd step = Eigen::Matrix4cd::Identity();
    if (g.kind == GateKind::cx) {
      step.setZero();
      for (int idx = 0; idx < 4; ++idx) {
        const int control = g.qubits[0], target = g.qubits[1];
        int out = idx;
        if ((idx >> control) & 1) out = idx ^ (1 << target);
        step(out, idx) = 1.0;
      }
    } else {
      const Eigen::Matrix2cd u = ibm_gate_matrix(g.kind, g.params);
      const int q = g.qubits[0];
      step.setZero();
      for (int idx = 0; idx < 4; ++idx) {
        const int bit = (idx >> q) & 1;
        for (int to = 0; to < 2; ++to) step(idx ^ ((bit ^ to) << q), idx) = u(to, bit);
      }
    }
    total = step * total;
  }
  return total;
}

void QasmCircuit::validate() const {
  if (qreg_size < 1 || creg_size < 0) throw std::invalid_argument("bad register sizes");
  for (const auto& g : gates) {
    g.validate();
    for (int q : g.qubits)
      if (q >= qreg_size) throw std::invalid_argument("qubit operand out of range");
  }
  std::set<int> used_cbits;
  for (const auto& [q, c] : measurements) {
    if (q < 0 || q >= qreg_size) throw std::invalid_argument("measured qubit out of range");
    if (c < 0 || c >= creg_size) throw std::invalid_argument("classical bit out of range");
    if (!used_cbits.insert(c).second)
      throw std::invalid_argument("classical bit measured twice");
  }
}

QasmCircuit build_ewl_circuit(const UnitaryStrategy& s1, const UnitaryStrategy& s2) {
  const auto decomposition = entangler_decomposition();
  QasmCircuit circuit;
  circuit.qreg_size = 15;  // register sizes match the reference layout
  circuit.creg_size = 5;
  circuit.gates = decomposition.j_gates;

  // Player 2 acts on q[0], player 1 on q[1]; global phases do not affect
  // measurement and are dropped.
  IbmGateParams g2 = to_ibm_params(s2).gate;
  g2.qubits = {0};
  circuit.gates.push_back(g2);
  IbmGateParams g1 = to_ibm_params(s1).gate;
  g1.qubits = {1};
  circuit.gates.push_back(g1);

  circuit.gates.insert(circuit.gates.end(), decomposition.j_dagger_gates.begin(),
                       decomposition.j_dagger_gates.end());
  circuit.measurements = {{0, 0}, {1, 1}};
  circuit.validate();
  return circuit;
}

std::string emit_qasm(const QasmCircuit& circuit) {
  circuit.validate();
  std::ostringstream out;
  out << "OPENQASM 2.0;\n"
      << "include \"qelib1.inc\";\n"
      << "qreg " << circuit.qreg_name << "[" << circuit.qreg_size << "];\n"
      << "creg " << circuit.creg_name << "[" << circuit.creg_size << "];\n";
  for (const auto& g : circuit.gates) {
    out << gate_name(g.kind);
    if (!g.params.empty()) {
      out << '(';
      for (std::size_t k = 0; k < g.params.size(); ++k)
        out << (k ? ", " : "") << format_param(g.params[k]);
      out << ')';
    }
    out << ' ';
    for (std::size_t k = 0; k < g.qubits.size(); ++k)
      out << (k ? ", " : "") << circuit.qreg_name << '[' << g.qubits[k] << ']';
    out << ";\n";
  }
  for (const auto& [q, c] : circuit.measurements)
    out << "measure " << circuit.qreg_name << '[' << q << "] -> " << circuit.creg_name << '['
        << c << "];\n";
  return out.str();
}

std::string emit_ewl_qasm(const UnitaryStrategy& s1, const UnitaryStrategy& s2) {
  return emit_qasm(build_ewl_circuit(s1, s2));
}

QasmParseError::QasmParseError(const std::string& message, int line_in, int column_in)
    : std::runtime_error("qasm:" + std::to_string(line_in) + ":" + std::to_string(column_in) +
                         ": " + message),
      line(line_in),
      column(column_in) {}

namespace {

struct Token {
  enum Kind { identifier, number, string, punct, end } kind;
  std::string text;
  int line;
  int column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_space();
    if (pos_ >= text_.size()) return {Token::end, "", line_, column_};
    const int line = line_, column = column_;
    const char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string word;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        word.push_back(advance());
      return {Token::identifier, word, line, column};
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::string num;
      while (pos_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.' ||
              text_[pos_] == 'e' || text_[pos_] == 'E' ||
              ((text_[pos_] == '+' || text_[pos_] == '-') && !num.empty() &&
               (num.back() == 'e' || num.back() == 'E'))))
        num.push_back(advance());
      return {Token::number, num, line, column};
    }
    if (c == '"') {
      advance();
      std::string content;
      while (pos_ < text_.size() && text_[pos_] != '"') content.push_back(advance());
      if (pos_ >= text_.size()) throw QasmParseError("unterminated string", line, column);
      advance();
      return {Token::string, content, line, column};
    }
    if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
      advance();
      advance();
      return {Token::punct, "->", line, column};
    }
    if (std::string("();,[]*/+-").find(c) != std::string::npos) {
      advance();
      return {Token::punct, std::string(1, c), line, column};
    }
    throw QasmParseError(std::string("unexpected character '") + c + "'", line, column);
  }

 private:
  char advance() {
    const char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) { shift(); }

  QasmCircuit parse() {
    expect_identifier("OPENQASM");
    if (current_.kind != Token::number || current_.text != "2.0")
      fail("expected version 2.0");
    shift();
    expect_punct(";");
    if (current_.kind == Token::identifier && current_.text == "include") {
      shift();
      if (current_.kind != Token::string) fail("expected include file name");
      shift();
      expect_punct(";");
    }

    QasmCircuit circuit;
    bool saw_qreg = false, saw_creg = false, saw_measure = false;
    while (current_.kind != Token::end) {
      if (current_.kind != Token::identifier) fail("expected statement");
      const Token statement = current_;
      const std::string word = current_.text;
      shift();
      if (word == "qreg" || word == "creg") {
        if (saw_measure) fail("register declared after measurement");
        if (current_.kind != Token::identifier) fail("expected register name");
        const std::string name = current_.text;
        shift();
        expect_punct("[");
        const int size = parse_int();
        expect_punct("]");
        expect_punct(";");
        if (word == "qreg") {
          if (saw_qreg) fail("multiple qreg declarations are not supported");
          saw_qreg = true;
          circuit.qreg_name = name;
          circuit.qreg_size = size;
        } else {
          if (saw_creg) fail("multiple creg declarations are not supported");
          saw_creg = true;
          circuit.creg_name = name;
          circuit.creg_size = size;
        }
        continue;
      }
      if (!saw_qreg) fail("statement before qreg declaration");
      if (word == "measure") {
        const int q = parse_operand(circuit.qreg_name, circuit.qreg_size);
        expect_punct("->");
        if (!saw_creg) fail("measurement without creg declaration");
        const int c = parse_operand(circuit.creg_name, circuit.creg_size);
        expect_punct(";");
        circuit.measurements.emplace_back(q, c);
        saw_measure = true;
        continue;
      }
      GateKind kind;
      if (word == "u1") kind = GateKind::u1;
      else if (word == "u2") kind = GateKind::u2;
      else if (word == "u3") kind = GateKind::u3;
      else if (word == "x") kind = GateKind::x;
      else if (word == "cx") kind = GateKind::cx;
      else fail("unsupported statement \"" + word + "\"", statement);
      if (saw_measure) fail("gate after measurement", statement);

      IbmGateParams gate;
      gate.kind = kind;
      if (param_count(kind) > 0) {
        expect_punct("(");
        for (int k = 0; k < param_count(kind); ++k) {
          if (k) expect_punct(",");
          gate.params.push_back(parse_param());
        }
        expect_punct(")");
      }
      for (int k = 0; k < qubit_count(kind); ++k) {
        if (k) expect_punct(",");
        gate.qubits.push_back(parse_operand(circuit.qreg_name, circuit.qreg_size));
      }
      expect_punct(";");
      circuit.gates.push_back(std::move(gate));
    }
    if (!saw_qreg) fail("missing qreg declaration");
    try {
      circuit.validate();
    } catch (const std::invalid_argument& e) {
      throw QasmParseError(e.what(), current_.line, current_.column);
    }
    return circuit;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { fail(message, current_); }
  [[noreturn]] void fail(const std::string& message, const Token& at) const {
    throw QasmParseError(message, at.line, at.column);
  }

  void shift() { current_ = lexer_.next(); }

  void expect_identifier(const std::string& word) {
    if (current_.kind != Token::identifier || current_.text != word)
      fail("expected \"" + word + "\"");
    shift();
  }

  void expect_punct(const std::string& text) {
    if (current_.kind != Token::punct || current_.text != text)
      fail("expected \"" + text + "\"");
    shift();
  }

  int parse_int() {
    if (current_.kind != Token::number) fail("expected integer");
    int value = 0;
    const auto& text = current_.text;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) fail("expected integer");
    shift();
    return value;
  }

  // number | pi, optional leading sign, with * and / products.
  double parse_param() {
    double sign = 1.0;
    while (current_.kind == Token::punct && (current_.text == "-" || current_.text == "+")) {
      if (current_.text == "-") sign = -sign;
      shift();
    }
    double value = parse_factor();
    while (current_.kind == Token::punct && (current_.text == "*" || current_.text == "/")) {
      const bool multiply = current_.text == "*";
      shift();
      const double rhs = parse_factor();
      value = multiply ? value * rhs : value / rhs;
    }
    return sign * value;
  }

  double parse_factor() {
    if (current_.kind == Token::identifier && current_.text == "pi") {
      shift();
      return M_PI;
    }
    if (current_.kind != Token::number) fail("expected number or pi");
    const std::string text = current_.text;
    char* end = nullptr;
    const double value = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size()) fail("bad number \"" + text + "\"");
    shift();
    return value;
  }

  int parse_operand(const std::string& name, int size) {
    if (current_.kind != Token::identifier || current_.text != name)
      fail("expected register \"" + name + "\"");
    shift();
    expect_punct("[");
    const Token index_token = current_;
    const int index = parse_int();
    expect_punct("]");
    if (index < 0 || index >= size)
      throw QasmParseError("operand " + name + "[" + std::to_string(index) + "] out of range",
                           index_token.line, index_token.column);
    return index;
  }

  Lexer lexer_;
  Token current_{Token::end, "", 1, 1};
};

// Gate-by-gate state-vector evolution over the touched qubits only.
struct CompactSimulation {
  std::vector<int> touched;              // ascending qasm qubit indices
  Eigen::VectorXcd amplitudes;           // index bit k = touched[k]
  std::map<std::string, double> key_probabilities;
};

CompactSimulation run_circuit(const QasmCircuit& circuit) {
  circuit.validate();
  std::set<int> touched_set;
  for (const auto& g : circuit.gates) touched_set.insert(g.qubits.begin(), g.qubits.end());
  for (const auto& [q, c] : circuit.measurements) touched_set.insert(q);
  if (touched_set.size() > 8)
    throw std::invalid_argument("circuit touches more than 8 qubits");
  if (touched_set.empty()) touched_set.insert(0);

  CompactSimulation sim;
  sim.touched.assign(touched_set.begin(), touched_set.end());
  auto bit_of = [&](int qubit) {
    return static_cast<int>(std::lower_bound(sim.touched.begin(), sim.touched.end(), qubit) -
                            sim.touched.begin());
  };

  const Index dim = Index(1) << sim.touched.size();
  sim.amplitudes = Eigen::VectorXcd::Zero(dim);
  sim.amplitudes(0) = 1.0;

  for (const auto& g : circuit.gates) {
    if (g.kind == GateKind::cx) {
      const Index control = Index(1) << bit_of(g.qubits[0]);
      const Index target = Index(1) << bit_of(g.qubits[1]);
      for (Index idx = 0; idx < dim; ++idx)
        if ((idx & control) && !(idx & target))
          std::swap(sim.amplitudes(idx), sim.amplitudes(idx | target));
      continue;
    }
    const Eigen::Matrix2cd u = ibm_gate_matrix(g.kind, g.params);
    const Index mask = Index(1) << bit_of(g.qubits[0]);
    for (Index idx = 0; idx < dim; ++idx) {
      if (idx & mask) continue;
      const Complex a0 = sim.amplitudes(idx);
      const Complex a1 = sim.amplitudes(idx | mask);
      sim.amplitudes(idx) = u(0, 0) * a0 + u(0, 1) * a1;
      sim.amplitudes(idx | mask) = u(1, 0) * a0 + u(1, 1) * a1;
    }
  }

  // Classical bits sorted descending: c[highest] is the leftmost key char.
  std::vector<std::pair<int, int>> readout = circuit.measurements;  // (qubit, cbit)
  std::sort(readout.begin(), readout.end(),
            [](const auto& a, const auto& b) { return a.second > b.second; });
  for (Index idx = 0; idx < dim; ++idx) {
    const double p = std::norm(sim.amplitudes(idx));
    if (p <= 1e-15) continue;
    std::string key;
    key.reserve(readout.size());
    for (const auto& [q, c] : readout)
      key.push_back((idx >> bit_of(q)) & 1 ? '1' : '0');
    sim.key_probabilities[key] += p;
  }
  return sim;
}

}  // namespace

QasmCircuit parse_qasm(std::string_view text) { return Parser(text).parse(); }

std::map<std::string, double> circuit_distribution(const QasmCircuit& circuit) {
  return run_circuit(circuit).key_probabilities;
}

ShotHistogram simulate_shots(const QasmCircuit& circuit, long shots, std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("shot count must be at least 1");
  const auto distribution = circuit_distribution(circuit);

  std::vector<std::pair<std::string, double>> cumulative(distribution.begin(),
                                                         distribution.end());
  double running = 0.0;
  for (auto& [key, p] : cumulative) {
    running += p;
    p = running;
  }

  ShotHistogram histogram;
  histogram.shots = shots;
  histogram.seed = seed;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  for (long shot = 0; shot < shots; ++shot) {
    const double u = uniform(rng) * running;
    auto it = std::lower_bound(cumulative.begin(), cumulative.end(), u,
                               [](const auto& entry, double v) { return entry.second < v; });
    if (it == cumulative.end()) it = std::prev(cumulative.end());
    ++histogram.counts[it->first];
  }
  return histogram;
}

void export_histogram_csv(const ShotHistogram& histogram, std::ostream& out) {
  out << "bitstring,count\n";
  for (const auto& [key, count] : histogram.counts) out << key << ',' << count << '\n';
}

}  // namespace ewl
