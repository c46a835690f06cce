#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "qmpsig/attacks.hpp"
#include "qmpsig/feasibility.hpp"
#include "qmpsig/keygen.hpp"
#include "qmpsig/message.hpp"
#include "qmpsig/protocol.hpp"
#include "qmpsig/tomography.hpp"

namespace qmpsig {

using Json = nlohmann::ordered_json;

// Every top-level document carries "kind" and "version". Readers
// throw FormatError on a wrong kind, a newer version, missing or mistyped
// fields, or contents that fail the type's own validation.

Json to_json(const ComplexMatrix& m);
Json to_json(const DensityMatrix& rho);
Json to_json(const QubitSubset& s);
Json to_json(const GateOp& op);
Json to_json(const Circuit& c);
Json to_json(const PrivateKey& sk);
Json to_json(const PublicKey& pk);
Json to_json(const Challenge& ch);
Json to_json(const SessionConfig& cfg);
Json to_json(const SignatureBundle& b);
Json to_json(const MeasurementRecord& r);
Json to_json(const VerdictReport& r);
Json to_json(const Transcript& t);
Json to_json(const CldmInstance& inst);
Json to_json(const FeasibilityResult& r);
Json to_json(const GameTranscript& t);
Json to_json(const CalibrationReport& r);
Json to_json(const ShotCalibration& r);
Json to_json(const InjectivityReport& r);
Json to_json(const MessageRule& rule);

ComplexMatrix complex_matrix_from_json(const Json& j);
DensityMatrix density_from_json(const Json& j);
QubitSubset subset_from_json(const Json& j);
GateOp gate_op_from_json(const Json& j);
Circuit circuit_from_json(const Json& j);
PrivateKey private_key_from_json(const Json& j);
PublicKey public_key_from_json(const Json& j);
Challenge challenge_from_json(const Json& j);
SessionConfig session_config_from_json(const Json& j);
SignatureBundle bundle_from_json(const Json& j);
MeasurementRecord record_from_json(const Json& j);
CldmInstance cldm_instance_from_json(const Json& j);

/// Parses a file; IoError if it cannot be read, FormatError if it is not JSON.
Json read_json_file(const std::filesystem::path& path);
/// Writes j with two-space indentation and a trailing newline; IoError on failure.
void write_json_file(const std::filesystem::path& path, const Json& j);

/// One column per series, rows padded with empty cells.
std::string distances_csv(const CalibrationReport& r);

}  // namespace qmpsig
