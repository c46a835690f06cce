#include "qmpsig/protocol.hpp"

#include <algorithm>
#include <cmath>

#include "qmpsig/config.hpp"
#include "qmpsig/error.hpp"
#include "qmpsig/rng.hpp"

namespace qmpsig {
namespace {

// Stream tags for derive_seed.
constexpr std::uint64_t kTagChallenge = 0x6368616c;
constexpr std::uint64_t kTagVerify = 0x766572;
constexpr std::uint64_t kTagSample = 0x73616d70;

void check_bounds(int n, int k, int m) {
  if (k < 1 || k >= m || m >= n) {
    throw InvalidArgument("need 1 <= k < M < N, got k = " + std::to_string(k) + ", M = " + std::to_string(m) +
                          ", N = " + std::to_string(n));
  }
}

std::vector<QubitSubset> local_subsets(const Challenge& ch, const SessionConfig& cfg) {
  auto all = enumerate_subsets(ch.m_size(), ch.k());
  if (cfg.subset_sample == 0 || cfg.subset_sample >= all.size()) return all;
  Rng rng(derive_seed(cfg.seed, {kTagSample, ch.nonce()}));
  for (std::size_t i = 0; i < cfg.subset_sample; ++i) {
    std::swap(all[i], all[i + rng.below(all.size() - i)]);
  }
  all.resize(cfg.subset_sample);
  std::sort(all.begin(), all.end());
  return all;
}

}  // namespace

std::string_view to_string(Verdict v) { return v == Verdict::Accept ? "ACCEPT" : "REJECT"; }

std::string_view to_string(SessionMode mode) {
  return mode == SessionMode::Authenticate ? "authenticate" : "sign-verify";
}

void SessionConfig::validate() const {
  check_bounds(num_qubits, k, m_size);
  if (num_qubits > max_qubits()) {
    throw InvalidArgument("N = " + std::to_string(num_qubits) + " exceeds ambient cap of " +
                          std::to_string(max_qubits()) + " qubits");
  }
  if (lambda < 1) throw InvalidArgument("lambda must be >= 1");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw InvalidArgument("epsilon must be in (0, 1]");
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("delta must be in (0, 1)");
  if (!(noise_p >= 0.0 && noise_p <= 1.0)) throw InvalidArgument("noise_p must be in [0, 1]");
  if (shots != 0 && shots < static_cast<std::uint64_t>(std::pow(3, k))) {
    throw InvalidArgument("shots must cover all 3^k measurement settings");
  }
}

std::uint64_t SessionConfig::subsets_checked() const {
  const auto all = binomial(m_size, k);
  return subset_sample == 0 ? all : std::min<std::uint64_t>(all, subset_sample);
}

std::uint64_t SessionConfig::shots_per_subset() const {
  if (shots != 0) return shots;
  const auto n = static_cast<double>(subsets_checked());
  return std::max<std::uint64_t>(required_shots(k, epsilon / 2.0, delta / n),
                                 static_cast<std::uint64_t>(std::pow(3, k)));
}

std::uint64_t SessionConfig::copies_required() const { return shots_per_subset() * subsets_checked(); }

Challenge Challenge::create(QubitSubset subset, std::uint64_t nonce, int num_qubits, int k) {
  check_bounds(num_qubits, k, static_cast<int>(subset.size()));
  subset.require_within(num_qubits);
  return Challenge(std::move(subset), nonce, num_qubits, k);
}

void CopyBudget::consume(std::uint64_t n) {
  if (n > remaining_) {
    throw BudgetExhausted("copy budget exhausted: need " + std::to_string(n) + ", have " +
                          std::to_string(remaining_));
  }
  remaining_ -= n;
  consumed_ += n;
}

void SignatureBundle::validate() const {
  if (challenge.m_size() == 0) throw InvalidArgument("signature bundle has no challenge");
  if (state.num_qubits() != challenge.m_size()) {
    throw InvalidArgument("signature state has " + std::to_string(state.num_qubits()) + " qubits, challenge has " +
                          std::to_string(challenge.m_size()));
  }
}

double VerdictReport::max_distance() const {
  double d = 0.0;
  for (const auto& c : per_subset) d = std::max(d, c.distance);
  return d;
}

Challenge make_challenge(const SessionConfig& cfg, std::uint64_t seed) {
  check_bounds(cfg.num_qubits, cfg.k, cfg.m_size);
  Rng rng(derive_seed(seed, {kTagChallenge}));
  std::vector<int> all(static_cast<std::size_t>(cfg.num_qubits));
  for (int i = 0; i < cfg.num_qubits; ++i) all[static_cast<std::size_t>(i)] = i;
  for (std::size_t i = 0; i < static_cast<std::size_t>(cfg.m_size); ++i) {
    std::swap(all[i], all[i + rng.below(all.size() - i)]);
  }
  all.resize(static_cast<std::size_t>(cfg.m_size));
  std::sort(all.begin(), all.end());
  return Challenge::create(QubitSubset(std::move(all)), rng.next(), cfg.num_qubits, cfg.k);
}

DensityMatrix respond(const PrivateKey& sk, const Challenge& ch) {
  if (ch.num_qubits() != sk.num_qubits()) throw InvalidArgument("challenge does not match key size");
  return partial_trace(sk.state(), ch.subset());
}

DensityMatrix transmit(const DensityMatrix& state, double noise_p) {
  if (noise_p == 0.0) return state;
  return depolarize(state, noise_p);
}

VerdictReport check_marginals(const DensityMatrix& received, const Challenge& ch, const PublicKey& pk,
                              const SessionConfig& cfg, CopyBudget& budget) {
  if (received.num_qubits() != ch.m_size()) throw InvalidArgument("response size does not match challenge");
  if (pk.num_qubits != ch.num_qubits() || pk.k != ch.k()) {
    throw InvalidArgument("challenge does not match public key");
  }
  const auto shots = cfg.shots_per_subset();
  const auto tomo_seed = derive_seed(cfg.seed, {kTagVerify, ch.nonce()});

  VerdictReport report;
  report.verdict = Verdict::Accept;
  for (const auto& local : local_subsets(ch, cfg)) {
    const auto global = local.lift(ch.subset());
    const auto* entry = pk.find(global);
    if (entry == nullptr) throw InvalidArgument("public key has no entry for " + global.to_string());

    const auto marginal = partial_trace(received, local);
    SubsetCheck check{.subset = global, .threshold = cfg.epsilon};
    TomographyEstimate estimate;
    if (cfg.exact_statistics) {
      estimate = reconstruct_exact(marginal, global);
    } else {
      budget.consume(shots);
      check.shots = shots;
      check.records = measure_all_bases(marginal, global, shots, tomo_seed);
      estimate = reconstruct(check.records, global);
    }
    check.distance = trace_distance(estimate.projected, entry->marginal);
    report.total_copies_consumed += check.shots;
    const bool failed = check.distance > cfg.epsilon;
    report.per_subset.push_back(std::move(check));
    if (failed && report.verdict == Verdict::Accept) {
      report.verdict = Verdict::Reject;
      report.first_failure = global;
      if (!cfg.diagnostic) break;
    }
  }
  return report;
}

VerdictReport authenticate_response(const DensityMatrix& response, const Challenge& ch, const PublicKey& pk,
                                    const SessionConfig& cfg) {
  cfg.validate();
  CopyBudget budget(cfg.copies_required());
  return check_marginals(response, ch, pk, cfg, budget);
}

VerdictReport authenticate(const PrivateKey& sk, const PublicKey& pk, const SessionConfig& cfg) {
  cfg.validate();
  const auto ch = make_challenge(cfg, cfg.seed);
  return authenticate_response(transmit(respond(sk, ch), cfg.noise_p), ch, pk, cfg);
}

SignatureBundle sign(const PrivateKey& sk, const Challenge& ch, const Message& m, const MessageRule& rule,
                     const SessionConfig& cfg) {
  cfg.validate();
  validate_message(m, rule);
  return SignatureBundle{.message = m,
                         .challenge = ch,
                         .copies = cfg.copies_required(),
                         .state = apply_message_unitary(respond(sk, ch), m, rule)};
}

VerdictReport verify(const PublicKey& pk, const Message& m, const SignatureBundle& bundle, const SessionConfig& cfg,
                     const MessageRule& rule) {
  cfg.validate();
  bundle.validate();
  validate_message(m, rule);
  const auto undo = invert_circuit(compile_unitary(m, rule, bundle.state.num_qubits()));
  const auto restored = run_circuit(bundle.state, undo);
  CopyBudget budget(bundle.copies);
  return check_marginals(restored, bundle.challenge, pk, cfg, budget);
}

Transcript run_session(const SessionConfig& cfg, SessionMode mode, std::uint64_t seed, const MessageRule& rule,
                       std::string_view message_input) {
  cfg.validate();
  const auto keys = keygen(cfg.lambda, cfg.num_qubits, cfg.k, cfg.seed);
  SessionConfig run = cfg;
  run.seed = seed;
  const auto ch = make_challenge(run, seed);

  Transcript t{.config = run, .mode = mode, .key_seed = cfg.seed, .seed = seed, .challenge = ch};
  if (mode == SessionMode::Authenticate) {
    t.copies_sent = run.copies_required();
    t.report = authenticate_response(transmit(respond(keys.private_key, ch), run.noise_p), ch, keys.public_key, run);
  } else {
    const auto m = hash_message(message_input, rule.gamma, rule.alphabet);
    auto bundle = sign(keys.private_key, ch, m, rule, run);
    bundle.state = transmit(bundle.state, run.noise_p);
    t.message = m;
    t.copies_sent = bundle.copies;
    t.report = verify(keys.public_key, m, bundle, run, rule);
  }
  return t;
}

}  // namespace qmpsig
