#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qmpsig/circuit.hpp"
#include "qmpsig/density.hpp"

namespace qmpsig {

enum class SymbolKind : std::uint8_t { Skip, Nonparametric, Angle };

struct Symbol {
  char id = 'a';
  SymbolKind kind = SymbolKind::Skip;
  /// Only meaningful for SymbolKind::Angle; kept in [0, 2*pi).
  double angle = 0.0;

  friend bool operator==(const Symbol&, const Symbol&) = default;
};

class Alphabet {
 public:
  /// Throws InvalidArgument on empty or duplicate symbols.
  explicit Alphabet(std::vector<Symbol> symbols);

  const std::vector<Symbol>& symbols() const { return symbols_; }
  std::size_t size() const { return symbols_.size(); }
  const Symbol* find(char id) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<Symbol> symbols_;
};

/// Cyclic list of gate templates G_1..G_L. Template targets are reduced
/// modulo the register size at compile time.
struct GateRule {
  std::vector<GateOp> cycle;

  friend bool operator==(const GateRule&, const GateRule&) = default;
};

/// The public signing rule: alphabet, gate cycle and digest length.
struct MessageRule {
  Alphabet alphabet;
  GateRule gates;
  int gamma = 16;

  friend bool operator==(const MessageRule&, const MessageRule&) = default;
};

/// A word over a public alphabet. Validity is checked against a rule when used.
class Message {
 public:
  Message() = default;
  explicit Message(std::string word) : word_(std::move(word)) {}

  const std::string& word() const { return word_; }
  std::size_t size() const { return word_.size(); }
  bool empty() const { return word_.empty(); }

  friend auto operator<=>(const Message&, const Message&) = default;

 private:
  std::string word_;
};

/// Four-symbol default: a = skip, b = non-parametric, c = pi/4, d = 3*pi/2,
/// over the cycle (H@0, RZ@1, CNOT 0->1, RY@0) with gamma = 16.
MessageRule default_rule();

/// Throws InvalidArgument if a symbol is not in the alphabet or the length
/// exceeds gamma.
void validate_message(const Message& m, const MessageRule& rule);

/// Gate for template `tmpl` under `symbol` on a register of num_qubits:
///   skip           -> no gate
///   non-parametric -> the template gate; rotation templates use angle pi
///   angle theta    -> rotation templates at theta; H and CNOT become the
///                     rotations they generate (HRot, CXRot) at theta.
/// Throws InvalidArgument for an angle symbol on a template without an
/// angle map.
std::optional<GateOp> resolve_gate(const GateOp& tmpl, const Symbol& symbol, int num_qubits);

/// U_m = prod_j G_{i(j)}^{(m_j)} with i(j) = (j mod L) + 1 for 1-based j.
/// Factor j = 1 is applied to the state first.
Circuit compile_unitary(const Message& m, const MessageRule& rule, int num_qubits);

/// Reversed order, each gate replaced by its adjoint.
Circuit invert_circuit(const Circuit& c);

/// U_m rho U_m^dagger.
DensityMatrix apply_message_unitary(const DensityMatrix& rho, const Message& m, const MessageRule& rule);

/// min over phi of ||U - e^{i phi} V||_F / sqrt(dim): zero iff U and V
/// implement the same channel.
double unitary_distance(const ComplexMatrix& u, const ComplexMatrix& v);

struct Collision {
  Message first;
  Message second;
  double distance = 0.0;
  bool same_length() const { return first.size() == second.size(); }
};

struct InjectivityReport {
  int max_len = 0;
  std::size_t messages_checked = 0;
  std::vector<Collision> collisions;

  std::size_t same_length_collisions() const;
  std::size_t cross_length_collisions() const;
};

inline constexpr std::size_t kInjectivityBudget = 100000;
inline constexpr double kCollisionThreshold = 1e-8;

/// Enumerates every word of length 0..max_len, compiles each to a full
/// unitary on num_qubits and reports all pairs closer than
/// kCollisionThreshold (phase-insensitive). Throws InvalidArgument if the
/// number of words exceeds kInjectivityBudget.
InjectivityReport check_injectivity(const MessageRule& rule, int max_len, int num_qubits);

/// Public sponge hash over a fixed ARX permutation; returns exactly gamma
/// symbols of the alphabet. Not a standardized cryptographic hash.
Message hash_message(std::string_view input, int gamma, const Alphabet& alphabet);

}  // namespace qmpsig
