#pragma once

#include "ewl/quantum.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ewl {

enum class GateKind { u1, u2, u3, x, cx };

const char* gate_name(GateKind kind);

/// One gate in IBM's parametrization: u3(theta,phi,lambda), u2(phi,lambda),
/// u1(lambda), x, or cx. Parameter count must match the kind (3/2/1/0/0).
struct IbmGateParams {
  GateKind kind;
  std::vector<double> params;
  std::vector<int> qubits;

  void validate() const;
};

/// Matrix of a single-qubit gate, cosine convention:
///   u3(t,p,l) = [ cos(t/2)            -e^{il} sin(t/2)      ]
///               [ e^{ip} sin(t/2)      e^{i(l+p)} cos(t/2)  ]
Eigen::Matrix2cd ibm_gate_matrix(GateKind kind, const std::vector<double>& params);

/// Conversion U(theta,alpha,beta) = e^{i phase} * gate with
/// gate = u3(theta, pi/2 - alpha - beta, beta - alpha - pi/2) and
/// phase = alpha. Angles are reduced to (-pi, pi]; theta == pi/2 emits u2,
/// theta == 0 emits u1.
struct StrategyGate {
  IbmGateParams gate;
  double global_phase;
};

StrategyGate to_ibm_params(const UnitaryStrategy& s);

/// A circuit over one quantum and one classical register; measurements
/// come after all gates.
struct QasmCircuit {
  int qreg_size = 0;
  int creg_size = 0;
  std::string qreg_name = "q";
  std::string creg_name = "c";
  std::vector<IbmGateParams> gates;
  std::vector<std::pair<int, int>> measurements;  // qubit -> classical bit

  void validate() const;
};

/// Gate sequences realizing the two-qubit entangler and its adjoint:
///   J     = cx(0,1)  u2(pi/2,-pi/2) q[0]  cx(0,1)
///   Jdag  = cx(0,1)  u2(-pi/2,pi/2) q[0]  cx(0,1)
struct EntanglerDecomposition {
  std::vector<IbmGateParams> j_gates;
  std::vector<IbmGateParams> j_dagger_gates;
};

EntanglerDecomposition entangler_decomposition();

/// The 4x4 matrix of a two-qubit gate list over qubits {0,1}, with basis
/// index q1*2 + q0.
Eigen::Matrix4cd compose_two_qubit(const std::vector<IbmGateParams>& gates);

/// Circuit realizing the two-player EWL protocol: J, player 2's gate on
/// q[0], player 1's gate on q[1], J adjoint, then measurements into c[0]
/// and c[1]. Registers are q[15] / c[5].
QasmCircuit build_ewl_circuit(const UnitaryStrategy& s1, const UnitaryStrategy& s2);

std::string emit_qasm(const QasmCircuit& circuit);
std::string emit_ewl_qasm(const UnitaryStrategy& s1, const UnitaryStrategy& s2);

struct QasmParseError : std::runtime_error {
  QasmParseError(const std::string& message, int line, int column);
  int line;
  int column;
};

/// Parses the OpenQASM 2.0 subset written by emit_qasm: header, include,
/// one qreg/creg pair, u1/u2/u3/x/cx statements and trailing measurements.
/// Anything else raises QasmParseError with a line number.
QasmCircuit parse_qasm(std::string_view text);

/// Exact distribution over classical bitstrings (highest classical bit
/// leftmost) after running the circuit on |0...0>. Only qubits that are
/// actually touched are simulated; at most 8 may be touched.
std::map<std::string, double> circuit_distribution(const QasmCircuit& circuit);

struct ShotHistogram {
  long shots = 0;
  std::map<std::string, long> counts;
  std::uint64_t seed = 0;
  std::string rng = "mt19937_64";
};

/// Samples the measured classical register `shots` times with a seeded
/// mt19937_64; identical seeds give identical histograms.
ShotHistogram simulate_shots(const QasmCircuit& circuit, long shots, std::uint64_t seed);

/// CSV lines "bitstring,count" sorted by bitstring.
void export_histogram_csv(const ShotHistogram& histogram, std::ostream& out);

}  // namespace ewl
