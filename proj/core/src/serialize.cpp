#include "qmpsig/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qmpsig/config.hpp"
#include "qmpsig/error.hpp"

namespace qmpsig {
namespace {

const Json& member(const Json& j, const char* key) {
  if (!j.is_object()) throw FormatError(std::string("expected an object holding '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) throw FormatError(std::string("missing field '") + key + "'");
  return *it;
}

std::uint64_t get_u64(const Json& j, const char* key) {
  const auto& v = member(j, key);
  if (!v.is_number_unsigned()) throw FormatError(std::string("field '") + key + "' must be a non-negative integer");
  return v.get<std::uint64_t>();
}

int get_int(const Json& j, const char* key) {
  const auto& v = member(j, key);
  if (!v.is_number_integer()) throw FormatError(std::string("field '") + key + "' must be an integer");
  const auto x = v.get<std::int64_t>();
  if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
    throw FormatError(std::string("field '") + key + "' is out of range");
  }
  return static_cast<int>(x);
}

double get_double(const Json& j, const char* key) {
  const auto& v = member(j, key);
  if (!v.is_number()) throw FormatError(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

std::string get_string(const Json& j, const char* key) {
  const auto& v = member(j, key);
  if (!v.is_string()) throw FormatError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

bool get_bool(const Json& j, const char* key) {
  const auto& v = member(j, key);
  if (!v.is_boolean()) throw FormatError(std::string("field '") + key + "' must be a boolean");
  return v.get<bool>();
}

const Json& get_array(const Json& j, const char* key) {
  const auto& v = member(j, key);
  if (!v.is_array()) throw FormatError(std::string("field '") + key + "' must be an array");
  return v;
}

// Validation failures inside a document become format errors.
template <class F>
auto guarded(const char* what, F f) -> decltype(f()) {
  try {
    return f();
  } catch (const FormatError& e) {
    throw FormatError(std::string(what) + ": " + e.what());
  } catch (const InvalidArgument& e) {
    throw FormatError(std::string(what) + ": " + e.what());
  } catch (const Json::exception& e) {
    throw FormatError(std::string(what) + ": " + e.what());
  }
}

Json header(const char* kind) {
  Json j;
  j["kind"] = kind;
  j["version"] = config::kFormatVersion;
  return j;
}

void check_header(const Json& j, const char* kind) {
  const auto k = get_string(j, "kind");
  if (k != kind) throw FormatError("expected a " + std::string(kind) + " document, found '" + k + "'");
  const auto v = get_int(j, "version");
  if (v < 1 || v > config::kFormatVersion) throw FormatError("unsupported version " + std::to_string(v));
}

Json entries_to_json(const std::vector<PublicKeyEntry>& entries) {
  Json arr = Json::array();
  for (const auto& e : entries) arr.push_back({{"subset", to_json(e.subset)}, {"marginal", to_json(e.marginal)}});
  return arr;
}

std::vector<PublicKeyEntry> entries_from_json(const Json& arr) {
  std::vector<PublicKeyEntry> out;
  for (const auto& e : arr) out.push_back({subset_from_json(member(e, "subset")), density_from_json(member(e, "marginal"))});
  return out;
}

Json message_to_json(const Message& m) { return m.word(); }

}  // namespace

Json to_json(const ComplexMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
  }
  return out;
}

Json to_json(const DensityMatrix& rho) { return to_json(rho.matrix()); }

Json to_json(const QubitSubset& s) { return Json(s.vec()); }

Json to_json(const GateOp& op) {
  Json j{{"gate", std::string(gate_name(op.gate))}, {"targets", op.targets}};
  if (op.param) j["param"] = *op.param;
  return j;
}

Json to_json(const Circuit& c) {
  Json ops = Json::array();
  for (const auto& op : c.ops) ops.push_back(to_json(op));
  return Json{{"N", c.num_qubits}, {"seed", c.seed}, {"ops", std::move(ops)}};
}

Json to_json(const PrivateKey& sk) {
  auto j = header("private_key");
  j["N"] = sk.circuit.num_qubits;
  j["lambda"] = sk.lambda;
  j["seed"] = sk.circuit.seed;
  j["ops"] = to_json(sk.circuit)["ops"];
  return j;
}

Json to_json(const PublicKey& pk) {
  auto j = header("public_key");
  j["N"] = pk.num_qubits;
  j["k"] = pk.k;
  j["lambda"] = pk.lambda;
  j["entries"] = entries_to_json(pk.entries);
  return j;
}

Json to_json(const Challenge& ch) {
  return Json{{"subset", to_json(ch.subset())}, {"nonce", ch.nonce()}, {"N", ch.num_qubits()}, {"k", ch.k()}};
}

Json to_json(const SessionConfig& cfg) {
  return Json{{"N", cfg.num_qubits},     {"k", cfg.k},
              {"M", cfg.m_size},              {"lambda", cfg.lambda},
              {"epsilon", cfg.epsilon},       {"delta", cfg.delta},
              {"noise_p", cfg.noise_p},       {"seed", cfg.seed},
              {"shots", cfg.shots},           {"diagnostic", cfg.diagnostic},
              {"exact_statistics", cfg.exact_statistics}, {"subset_sample", cfg.subset_sample}};
}

Json to_json(const SignatureBundle& b) {
  auto j = header("signature");
  j["message"] = message_to_json(b.message);
  j["challenge"] = to_json(b.challenge);
  j["copies"] = b.copies;
  j["state"] = to_json(b.state);
  return j;
}

Json to_json(const MeasurementRecord& r) {
  Json counts = Json::object();
  for (std::size_t o = 0; o < r.counts.size(); ++o) {
    counts[outcome_label(o, static_cast<int>(r.basis.size()))] = r.counts[o];
  }
  return Json{{"basis", r.basis}, {"shots", r.shots}, {"counts", std::move(counts)}};
}

Json to_json(const VerdictReport& r) {
  Json per = Json::array();
  for (const auto& c : r.per_subset) {
    Json records = Json::array();
    for (const auto& rec : c.records) {
      auto jr = to_json(rec);
      jr["subset"] = to_json(c.subset);
      records.push_back(std::move(jr));
    }
    per.push_back({{"subset", to_json(c.subset)},
                   {"distance", c.distance},
                   {"threshold", c.threshold},
                   {"shots", c.shots},
                   {"basis_transcripts", std::move(records)}});
  }
  auto j = header("verdict");
  j["verdict"] = std::string(to_string(r.verdict));
  j["max_distance"] = r.max_distance();
  j["first_failure"] = r.first_failure ? to_json(*r.first_failure) : Json(nullptr);
  j["copies_consumed"] = r.total_copies_consumed;
  j["per_subset"] = std::move(per);
  return j;
}

Json to_json(const Transcript& t) {
  auto report = to_json(t.report);
  auto j = header("transcript");
  j["mode"] = std::string(to_string(t.mode));
  j["key_seed"] = t.key_seed;
  j["seed"] = t.seed;
  j["config"] = to_json(t.config);
  j["challenge"] = to_json(t.challenge);
  j["message"] = t.message ? message_to_json(*t.message) : Json(nullptr);
  j["copies_sent"] = t.copies_sent;
  j["copies_consumed"] = t.report.total_copies_consumed;
  j["verdict"] = report["verdict"];
  j["max_distance"] = report["max_distance"];
  j["first_failure"] = report["first_failure"];
  j["per_subset"] = std::move(report["per_subset"]);
  return j;
}

Json to_json(const CldmInstance& inst) {
  auto j = header("cldm_instance");
  j["N"] = inst.num_qubits;
  j["beta"] = inst.beta;
  j["entries"] = entries_to_json(inst.entries);
  return j;
}

Json to_json(const FeasibilityResult& r) {
  auto j = header("feasibility");
  j["status"] = std::string(to_string(r.status));
  j["residual"] = r.residual;
  j["iterations"] = r.iterations;
  j["witness"] = r.witness ? to_json(*r.witness) : Json(nullptr);
  return j;
}

Json to_json(const GameTranscript& t) {
  Json queries = Json::array();
  for (const auto& q : t.queries) queries.push_back({{"message", message_to_json(q.message)}, {"bundle", to_json(q.bundle)}});
  auto j = header("game");
  j["strategy"] = std::string(to_string(t.strategy));
  j["seed"] = t.seed;
  j["queries"] = std::move(queries);
  j["forgery"] = {{"message", message_to_json(t.forged_message)}, {"bundle", to_json(t.forgery)}};
  j["forged_message_fresh"] = t.forged_message_fresh;
  j["verdict"] = std::string(to_string(t.verdict()));
  j["won"] = t.won();
  j["report"] = to_json(t.report);
  return j;
}

Json to_json(const CalibrationReport& r) {
  auto j = header("calibration");
  j["noise_p"] = r.noise_p;
  j["trials"] = r.trials;
  j["shots"] = r.shots;
  j["honest_p99"] = r.honest_p99;
  j["forgery_p01"] = r.forgery_p01;
  j["outcome"] = r.separated() ? "Separated" : "NoSeparation";
  j["epsilon_star"] = r.epsilon_star ? Json(*r.epsilon_star) : Json(nullptr);
  j["honest"] = r.honest;
  j["forgery"] = r.forgery;
  return j;
}

Json to_json(const ShotCalibration& r) {
  auto j = header("shot_calibration");
  j["k"] = r.k;
  j["epsilon"] = r.epsilon;
  j["delta"] = r.delta;
  j["trials"] = r.trials;
  j["repeats"] = r.repeats;
  j["constant"] = r.constant;
  j["shots"] = r.shots;
  j["success_rate"] = r.success_rate;
  return j;
}

Json to_json(const InjectivityReport& r) {
  Json collisions = Json::array();
  for (const auto& c : r.collisions) {
    collisions.push_back({{"first", c.first.word()},
                          {"second", c.second.word()},
                          {"distance", c.distance},
                          {"same_length", c.same_length()}});
  }
  auto j = header("injectivity");
  j["max_len"] = r.max_len;
  j["messages_checked"] = r.messages_checked;
  j["same_length_collisions"] = r.same_length_collisions();
  j["cross_length_collisions"] = r.cross_length_collisions();
  j["collisions"] = std::move(collisions);
  return j;
}

Json to_json(const MessageRule& rule) {
  Json alphabet = Json::array();
  for (const auto& s : rule.alphabet.symbols()) {
    Json js{{"id", std::string(1, s.id)}};
    switch (s.kind) {
      case SymbolKind::Skip: js["kind"] = "skip"; break;
      case SymbolKind::Nonparametric: js["kind"] = "nonparametric"; break;
      case SymbolKind::Angle:
        js["kind"] = "angle";
        js["angle"] = s.angle;
        break;
    }
    alphabet.push_back(std::move(js));
  }
  Json cycle = Json::array();
  for (const auto& op : rule.gates.cycle) cycle.push_back(to_json(op));
  return Json{{"symbols", std::move(alphabet)}, {"cycle", std::move(cycle)}, {"gamma", rule.gamma}};
}

ComplexMatrix complex_matrix_from_json(const Json& j) {
  return guarded("matrix", [&] {
    if (!j.is_array() || j.empty()) throw FormatError("matrix must be a non-empty array of [re, im] pairs");
    const auto dim = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(j.size()))));
    if (static_cast<std::size_t>(dim * dim) != j.size()) throw FormatError("matrix is not square");
    ComplexMatrix m(dim, dim);
    for (Eigen::Index i = 0; i < dim * dim; ++i) {
      const auto& e = j[static_cast<std::size_t>(i)];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        throw FormatError("matrix entries must be [re, im] number pairs");
      }
      m(i / dim, i % dim) = Complex(e[0].get<double>(), e[1].get<double>());
    }
    return m;
  });
}

DensityMatrix density_from_json(const Json& j) {
  return guarded("density matrix", [&] { return DensityMatrix::from_matrix(complex_matrix_from_json(j)); });
}

QubitSubset subset_from_json(const Json& j) {
  return guarded("subset", [&] {
    if (!j.is_array()) throw FormatError("subset must be an array");
    std::vector<int> idx;
    for (const auto& v : j) {
      if (!v.is_number_integer()) throw FormatError("subset indices must be integers");
      idx.push_back(v.get<int>());
    }
    return QubitSubset(std::move(idx));
  });
}

GateOp gate_op_from_json(const Json& j) {
  return guarded("gate", [&] {
    const auto name = get_string(j, "gate");
    const auto g = parse_gate(name);
    if (!g) throw FormatError("unknown gate '" + name + "'");
    std::vector<int> targets;
    for (const auto& t : get_array(j, "targets")) {
      if (!t.is_number_integer()) throw FormatError("gate targets must be integers");
      targets.push_back(t.get<int>());
    }
    std::optional<double> param;
    if (j.contains("param")) param = get_double(j, "param");
    return GateOp::make(*g, std::move(targets), param);
  });
}

Circuit circuit_from_json(const Json& j) {
  return guarded("circuit", [&] {
    Circuit c{.num_qubits = get_int(j, "N"), .ops = {}, .seed = get_u64(j, "seed")};
    for (const auto& op : get_array(j, "ops")) c.ops.push_back(gate_op_from_json(op));
    c.validate();
    return c;
  });
}

PrivateKey private_key_from_json(const Json& j) {
  return guarded("private key", [&] {
    check_header(j, "private_key");
    PrivateKey sk{.lambda = get_int(j, "lambda"), .circuit = circuit_from_json(j), .cached_state = {}};
    if (sk.lambda < 1) throw FormatError("lambda must be >= 1");
    return sk;
  });
}

PublicKey public_key_from_json(const Json& j) {
  return guarded("public key", [&] {
    check_header(j, "public_key");
    PublicKey pk{.num_qubits = get_int(j, "N"),
                 .k = get_int(j, "k"),
                 .lambda = get_int(j, "lambda"),
                 .entries = entries_from_json(get_array(j, "entries"))};
    pk.validate();
    return pk;
  });
}

Challenge challenge_from_json(const Json& j) {
  return guarded("challenge", [&] {
    return Challenge::create(subset_from_json(member(j, "subset")), get_u64(j, "nonce"), get_int(j, "N"),
                             get_int(j, "k"));
  });
}

SessionConfig session_config_from_json(const Json& j) {
  return guarded("session config", [&] {
    SessionConfig cfg{.num_qubits = get_int(j, "N"),
                      .k = get_int(j, "k"),
                      .m_size = get_int(j, "M"),
                      .lambda = get_int(j, "lambda"),
                      .epsilon = get_double(j, "epsilon"),
                      .delta = get_double(j, "delta"),
                      .noise_p = get_double(j, "noise_p"),
                      .seed = get_u64(j, "seed"),
                      .shots = get_u64(j, "shots"),
                      .diagnostic = get_bool(j, "diagnostic"),
                      .exact_statistics = get_bool(j, "exact_statistics"),
                      .subset_sample = get_u64(j, "subset_sample")};
    cfg.validate();
    return cfg;
  });
}

SignatureBundle bundle_from_json(const Json& j) {
  return guarded("signature", [&] {
    check_header(j, "signature");
    SignatureBundle b{.message = Message(get_string(j, "message")),
                      .challenge = challenge_from_json(member(j, "challenge")),
                      .copies = get_u64(j, "copies"),
                      .state = density_from_json(member(j, "state"))};
    b.validate();
    return b;
  });
}

MeasurementRecord record_from_json(const Json& j) {
  return guarded("measurement record", [&] {
    MeasurementRecord r{.basis = get_string(j, "basis"), .counts = {}, .shots = get_u64(j, "shots")};
    const auto& counts = member(j, "counts");
    if (!counts.is_object()) throw FormatError("counts must be an object");
    r.counts.assign(std::size_t{1} << r.basis.size(), 0);
    for (const auto& [label, n] : counts.items()) {
      if (label.size() != r.basis.size()) throw FormatError("outcome label '" + label + "' has the wrong length");
      if (!n.is_number_unsigned()) throw FormatError("counts must be non-negative integers");
      r.counts[parse_outcome_label(label)] = n.get<std::uint64_t>();
    }
    r.validate();
    return r;
  });
}

CldmInstance cldm_instance_from_json(const Json& j) {
  return guarded("CLDM instance", [&] {
    // A public key is accepted as an instance with the default beta.
    const auto kind = get_string(j, "kind");
    CldmInstance inst;
    if (kind == "public_key") {
      inst = CldmInstance::from_public_key(public_key_from_json(j), CldmInstance{}.beta);
    } else {
      check_header(j, "cldm_instance");
      inst = CldmInstance{.num_qubits = get_int(j, "N"),
                          .entries = entries_from_json(get_array(j, "entries")),
                          .beta = j.contains("beta") ? get_double(j, "beta") : CldmInstance{}.beta};
    }
    inst.validate();
    return inst;
  });
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path.string());
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << j.dump(2) << '\n';
  out.flush();
  if (!out) throw IoError("cannot write " + path.string());
}

std::string distances_csv(const CalibrationReport& r) {
  std::ostringstream os;
  os.precision(17);
  os << "trial,honest,forgery\n";
  const auto n = std::max(r.honest.size(), r.forgery.size());
  for (std::size_t i = 0; i < n; ++i) {
    os << i << ',';
    if (i < r.honest.size()) os << r.honest[i];
    os << ',';
    if (i < r.forgery.size()) os << r.forgery[i];
    os << '\n';
  }
  return os.str();
}

}  // namespace qmpsig
