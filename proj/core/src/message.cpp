#include "qmpsig/message.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numbers>

#include "qmpsig/error.hpp"

namespace qmpsig {

Alphabet::Alphabet(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw InvalidArgument("alphabet must not be empty");
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (symbols_[i].id == symbols_[j].id) {
        throw InvalidArgument(std::string("duplicate alphabet symbol '") + symbols_[i].id + "'");
      }
    }
    auto& s = symbols_[i];
    if (s.kind == SymbolKind::Angle) {
      if (!std::isfinite(s.angle)) throw InvalidArgument("symbol angle must be finite");
      s.angle = normalize_angle(s.angle);
    } else {
      s.angle = 0.0;
    }
  }
}

const Symbol* Alphabet::find(char id) const {
  auto it = std::find_if(symbols_.begin(), symbols_.end(), [id](const Symbol& s) { return s.id == id; });
  return it == symbols_.end() ? nullptr : &*it;
}

MessageRule default_rule() {
  using std::numbers::pi;
  Alphabet alphabet({
      {'a', SymbolKind::Skip, 0.0},
      {'b', SymbolKind::Nonparametric, 0.0},
      {'c', SymbolKind::Angle, pi / 4},
      {'d', SymbolKind::Angle, 3 * pi / 2},
  });
  GateRule gates{{
      GateOp::make(Gate::H, {0}),
      GateOp::make(Gate::RZ, {1}, 0.0),
      GateOp::make(Gate::CNOT, {0, 1}),
      GateOp::make(Gate::RY, {0}, 0.0),
  }};
  return MessageRule{std::move(alphabet), std::move(gates), 16};
}

void validate_message(const Message& m, const MessageRule& rule) {
  if (static_cast<int>(m.size()) > rule.gamma) {
    throw InvalidArgument("message length " + std::to_string(m.size()) + " exceeds gamma = " +
                          std::to_string(rule.gamma));
  }
  for (char c : m.word()) {
    if (rule.alphabet.find(c) == nullptr) {
      throw InvalidArgument(std::string("symbol '") + c + "' is not in the alphabet");
    }
  }
}

std::optional<GateOp> resolve_gate(const GateOp& tmpl, const Symbol& symbol, int num_qubits) {
  if (num_qubits < 1) throw InvalidArgument("register must have at least one qubit");
  if (arity(tmpl.gate) > num_qubits) {
    throw InvalidArgument(std::string(gate_name(tmpl.gate)) + " template needs " + std::to_string(arity(tmpl.gate)) +
                          " qubits, register has " + std::to_string(num_qubits));
  }
  std::vector<int> targets;
  for (int t : tmpl.targets) targets.push_back(t % num_qubits);

  switch (symbol.kind) {
    case SymbolKind::Skip:
      return std::nullopt;
    case SymbolKind::Nonparametric:
      if (is_parametric(tmpl.gate)) return GateOp::make(tmpl.gate, std::move(targets), std::numbers::pi);
      return GateOp::make(tmpl.gate, std::move(targets));
    case SymbolKind::Angle:
      if (is_parametric(tmpl.gate)) return GateOp::make(tmpl.gate, std::move(targets), symbol.angle);
      if (tmpl.gate == Gate::H) return GateOp::make(Gate::HRot, std::move(targets), symbol.angle);
      if (tmpl.gate == Gate::CNOT) return GateOp::make(Gate::CXRot, std::move(targets), symbol.angle);
      throw InvalidArgument("angle map undefined for template gate " + std::string(gate_name(tmpl.gate)));
  }
  throw InvalidArgument("unknown symbol kind");
}

Circuit compile_unitary(const Message& m, const MessageRule& rule, int num_qubits) {
  validate_message(m, rule);
  const auto& cycle = rule.gates.cycle;
  if (cycle.empty()) throw InvalidArgument("gate rule cycle must not be empty");
  Circuit c;
  c.num_qubits = num_qubits;
  const std::size_t period = cycle.size();
  for (std::size_t j = 1; j <= m.size(); ++j) {
    const Symbol& symbol = *rule.alphabet.find(m.word()[j - 1]);
    // i(j) = (j mod L) + 1 is 1-based; j mod L is the 0-based template index.
    if (auto op = resolve_gate(cycle[j % period], symbol, num_qubits)) c.ops.push_back(std::move(*op));
  }
  c.validate();
  return c;
}

Circuit invert_circuit(const Circuit& c) {
  Circuit out;
  out.num_qubits = c.num_qubits;
  out.ops.reserve(c.ops.size());
  for (auto it = c.ops.rbegin(); it != c.ops.rend(); ++it) out.ops.push_back(adjoint(*it));
  return out;
}

DensityMatrix apply_message_unitary(const DensityMatrix& rho, const Message& m, const MessageRule& rule) {
  return run_circuit(rho, compile_unitary(m, rule, rho.num_qubits()));
}

double unitary_distance(const ComplexMatrix& u, const ComplexMatrix& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) throw InvalidArgument("unitary_distance: dimension mismatch");
  const Complex overlap = (v.adjoint() * u).trace();
  const Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex{1.0, 0.0};
  return (u - phase * v).norm() / std::sqrt(static_cast<double>(u.rows()));
}

std::size_t InjectivityReport::same_length_collisions() const {
  return static_cast<std::size_t>(
      std::count_if(collisions.begin(), collisions.end(), [](const Collision& c) { return c.same_length(); }));
}

std::size_t InjectivityReport::cross_length_collisions() const {
  return collisions.size() - same_length_collisions();
}

InjectivityReport check_injectivity(const MessageRule& rule, int max_len, int num_qubits) {
  if (max_len < 0) throw InvalidArgument("max_len must be non-negative");
  const std::size_t base = rule.alphabet.size();
  std::size_t total = 0, layer = 1;
  for (int len = 0; len <= max_len; ++len) {
    total += layer;
    if (total > kInjectivityBudget) {
      throw InvalidArgument("injectivity scan exceeds budget of " + std::to_string(kInjectivityBudget) + " messages");
    }
    layer *= base;
  }

  std::vector<Message> words;
  words.reserve(total);
  words.emplace_back();
  for (std::size_t i = 0; i < words.size() && words.size() < total; ++i) {
    if (static_cast<int>(words[i].size()) == max_len) continue;
    for (const auto& s : rule.alphabet.symbols()) words.emplace_back(words[i].word() + s.id);
  }

  std::vector<ComplexMatrix> unitaries;
  unitaries.reserve(words.size());
  for (const auto& w : words) unitaries.push_back(circuit_unitary(compile_unitary(w, rule, num_qubits)));

  InjectivityReport report;
  report.max_len = max_len;
  report.messages_checked = words.size();
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t j = i + 1; j < words.size(); ++j) {
      const double d = unitary_distance(unitaries[i], unitaries[j]);
      if (d < kCollisionThreshold) report.collisions.push_back({words[i], words[j], d});
    }
  }
  return report;
}

namespace {

// SipHash round function as the fixed public permutation.
void permute(std::array<std::uint64_t, 4>& v, int rounds) {
  for (int r = 0; r < rounds; ++r) {
    v[0] += v[1]; v[1] = std::rotl(v[1], 13); v[1] ^= v[0]; v[0] = std::rotl(v[0], 32);
    v[2] += v[3]; v[3] = std::rotl(v[3], 16); v[3] ^= v[2];
    v[0] += v[3]; v[3] = std::rotl(v[3], 21); v[3] ^= v[0];
    v[2] += v[1]; v[1] = std::rotl(v[1], 17); v[1] ^= v[2]; v[2] = std::rotl(v[2], 32);
  }
}

}  // namespace

Message hash_message(std::string_view input, int gamma, const Alphabet& alphabet) {
  if (gamma < 0) throw InvalidArgument("gamma must be non-negative");
  std::array<std::uint64_t, 4> state{0x736f6d6570736575ULL, 0x646f72616e646f6dULL, 0x6c7967656e657261ULL,
                                     0x7465646279746573ULL};
  state[1] ^= static_cast<std::uint64_t>(gamma);

  // Absorb 8-byte little-endian blocks with 10*-padding into the rate word.
  std::string padded(input);
  padded.push_back(static_cast<char>(0x80));
  while (padded.size() % 8 != 0) padded.push_back('\0');
  for (std::size_t off = 0; off < padded.size(); off += 8) {
    std::uint64_t block = 0;
    for (std::size_t b = 0; b < 8; ++b) {
      block |= static_cast<std::uint64_t>(static_cast<unsigned char>(padded[off + b])) << (8 * b);
    }
    state[0] ^= block;
    permute(state, 4);
  }
  state[3] ^= 0xff;
  permute(state, 8);

  std::string word;
  word.reserve(static_cast<std::size_t>(gamma));
  const auto& symbols = alphabet.symbols();
  for (int i = 0; i < gamma; ++i) {
    word.push_back(symbols[state[0] % symbols.size()].id);
    permute(state, 4);
  }
  return Message(std::move(word));
}

}  // namespace qmpsig
