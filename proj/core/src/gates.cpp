#include "qmpsig/gates.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qmpsig/error.hpp"

namespace qmpsig {
namespace {

struct GateInfo {
  Gate gate;
  std::string_view name;
  int arity;
  bool parametric;
};

constexpr std::array<GateInfo, 11> kGates{{
    {Gate::H, "H", 1, false},
    {Gate::X, "X", 1, false},
    {Gate::S, "S", 1, false},
    {Gate::Sdg, "SDG", 1, false},
    {Gate::T, "T", 1, false},
    {Gate::Tdg, "TDG", 1, false},
    {Gate::CNOT, "CNOT", 2, false},
    {Gate::RZ, "RZ", 1, true},
    {Gate::RY, "RY", 1, true},
    {Gate::HRot, "HROT", 1, true},
    {Gate::CXRot, "CXROT", 2, true},
}};

const GateInfo& info(Gate g) { return kGates[static_cast<std::size_t>(g)]; }

ComplexMatrix hadamard() {
  const double r = std::numbers::sqrt2 / 2.0;
  ComplexMatrix m(2, 2);
  m << r, r, r, -r;
  return m;
}

ComplexMatrix cnot() {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = m(1, 1) = 1.0;
  m(2, 3) = m(3, 2) = 1.0;
  return m;
}

// exp(-i theta G / 2) for an involution G.
ComplexMatrix involution_rotation(const ComplexMatrix& g, double theta) {
  const Complex c{std::cos(theta / 2.0), 0.0};
  const Complex s{0.0, -std::sin(theta / 2.0)};
  return c * ComplexMatrix::Identity(g.rows(), g.cols()) + s * g;
}

}  // namespace

int arity(Gate g) { return info(g).arity; }
bool is_parametric(Gate g) { return info(g).parametric; }
std::string_view gate_name(Gate g) { return info(g).name; }

std::optional<Gate> parse_gate(std::string_view name) {
  for (const auto& gi : kGates) {
    if (gi.name == name) return gi.gate;
  }
  return std::nullopt;
}

double normalize_angle(double theta) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(theta, two_pi);
  if (r < 0.0) r += two_pi;
  if (r >= two_pi) r = 0.0;
  return r;
}

GateOp GateOp::make(Gate gate, std::vector<int> targets, std::optional<double> param) {
  if (static_cast<int>(targets.size()) != arity(gate)) {
    throw InvalidArgument("gate " + std::string(gate_name(gate)) + " expects " +
                          std::to_string(arity(gate)) + " target(s)");
  }
  for (int t : targets) {
    if (t < 0) throw InvalidArgument("gate target must be non-negative");
  }
  if (targets.size() == 2 && targets[0] == targets[1]) {
    throw InvalidArgument("two-qubit gate targets must be distinct");
  }
  if (param.has_value() != is_parametric(gate)) {
    throw InvalidArgument(std::string("gate ") + std::string(gate_name(gate)) +
                          (is_parametric(gate) ? " requires an angle" : " takes no angle"));
  }
  if (param && !std::isfinite(*param)) throw InvalidArgument("gate angle must be finite");
  if (param) param = normalize_angle(*param);
  return GateOp{gate, std::move(targets), param};
}

void GateOp::require_within(int num_qubits) const {
  for (int t : targets) {
    if (t < 0 || t >= num_qubits) {
      throw InvalidArgument("gate " + to_string(*this) + " targets qubit outside [0, " +
                            std::to_string(num_qubits) + ")");
    }
  }
}

ComplexMatrix gate_matrix(const GateOp& op) {
  using namespace std::complex_literals;
  const double theta = op.param.value_or(0.0);
  switch (op.gate) {
    case Gate::H:
      return hadamard();
    case Gate::X: {
      ComplexMatrix m(2, 2);
      m << 0, 1, 1, 0;
      return m;
    }
    case Gate::S:
    case Gate::Sdg:
    case Gate::T:
    case Gate::Tdg: {
      const double phi = (op.gate == Gate::S)     ? std::numbers::pi / 2
                         : (op.gate == Gate::Sdg) ? -std::numbers::pi / 2
                         : (op.gate == Gate::T)   ? std::numbers::pi / 4
                                                  : -std::numbers::pi / 4;
      ComplexMatrix m = ComplexMatrix::Zero(2, 2);
      m(0, 0) = 1.0;
      m(1, 1) = std::polar(1.0, phi);
      return m;
    }
    case Gate::CNOT:
      return cnot();
    case Gate::RZ: {
      ComplexMatrix m = ComplexMatrix::Zero(2, 2);
      m(0, 0) = std::polar(1.0, -theta / 2);
      m(1, 1) = std::polar(1.0, theta / 2);
      return m;
    }
    case Gate::RY: {
      const double c = std::cos(theta / 2), s = std::sin(theta / 2);
      ComplexMatrix m(2, 2);
      m << c, -s, s, c;
      return m;
    }
    case Gate::HRot:
      return involution_rotation(hadamard(), theta);
    case Gate::CXRot:
      return involution_rotation(cnot(), theta);
  }
  throw InvalidArgument("unknown gate");
}

GateOp adjoint(const GateOp& op) {
  GateOp out = op;
  switch (op.gate) {
    case Gate::S: out.gate = Gate::Sdg; break;
    case Gate::Sdg: out.gate = Gate::S; break;
    case Gate::T: out.gate = Gate::Tdg; break;
    case Gate::Tdg: out.gate = Gate::T; break;
    default: break;
  }
  if (op.param) out.param = normalize_angle(2.0 * std::numbers::pi - *op.param);
  return out;
}

std::string to_string(const GateOp& op) {
  std::ostringstream os;
  os << gate_name(op.gate);
  if (op.param) os << "(" << *op.param << ")";
  os << "@";
  for (std::size_t i = 0; i < op.targets.size(); ++i) os << (i ? "," : "") << op.targets[i];
  return os.str();
}

}  // namespace qmpsig
