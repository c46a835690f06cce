#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qmpsig/config.hpp"
#include "qmpsig/density.hpp"
#include "qmpsig/keygen.hpp"
#include "qmpsig/message.hpp"
#include "qmpsig/subset.hpp"
#include "qmpsig/tomography.hpp"

namespace qmpsig {

enum class Verdict { Accept, Reject };
std::string_view to_string(Verdict v);

struct SessionConfig {
  int num_qubits = config::kFixtureQubits;
  int k = config::kFixtureK;
  int m_size = config::kFixtureM;
  int lambda = config::kFixtureLambda;
  /// Acceptance threshold on the per-subsystem trace distance, in (0, 1].
  double epsilon = config::kCalibratedEpsilon;
  /// Session failure budget, split evenly over the checked subsystems.
  double delta = config::kDefaultDelta;
  /// Depolarizing strength of the transmission channel.
  double noise_p = 0.0;
  std::uint64_t seed = config::kFixtureSeed;
  /// Shots per k-qubit subsystem; 0 selects required_shots(k, eps/2, delta / subsets).
  std::uint64_t shots = 0;
  /// Keep measuring after the first failing subsystem.
  bool diagnostic = false;
  /// Feed exact Born probabilities instead of samples (consumes no copies).
  bool exact_statistics = false;
  /// Check only this many randomly chosen subsystems; 0 checks all (M choose k).
  std::size_t subset_sample = 0;

  /// Requires 1 <= k < M < N, epsilon in (0, 1], delta in (0, 1), noise_p in [0, 1].
  void validate() const;
  std::uint64_t subsets_checked() const;
  std::uint64_t shots_per_subset() const;
  /// Copies a verifier consumes when every checked subsystem is measured.
  std::uint64_t copies_required() const;
};

/// M-qubit challenge subset with k < M < N.
class Challenge {
 public:
  Challenge() = default;

  /// Throws InvalidArgument on a subset violating k < M < N or out of range.
  static Challenge create(QubitSubset subset, std::uint64_t nonce, int num_qubits, int k);

  const QubitSubset& subset() const { return subset_; }
  std::uint64_t nonce() const { return nonce_; }
  int num_qubits() const { return num_qubits_; }
  int k() const { return k_; }
  int m_size() const { return static_cast<int>(subset_.size()); }

  friend bool operator==(const Challenge&, const Challenge&) = default;

 private:
  Challenge(QubitSubset subset, std::uint64_t nonce, int n, int k)
      : subset_(std::move(subset)), nonce_(nonce), num_qubits_(n), k_(k) {}

  QubitSubset subset_;
  std::uint64_t nonce_ = 0;
  int num_qubits_ = 0;
  int k_ = 0;
};

/// Consumed one copy per measurement shot.
class CopyBudget {
 public:
  explicit CopyBudget(std::uint64_t copies) : remaining_(copies) {}
  /// Throws BudgetExhausted if fewer than n copies remain.
  void consume(std::uint64_t n);
  std::uint64_t remaining() const { return remaining_; }
  std::uint64_t consumed() const { return consumed_; }

 private:
  std::uint64_t remaining_;
  std::uint64_t consumed_ = 0;
};

struct SignatureBundle {
  Message message;
  Challenge challenge;
  /// Number of identical copies of `state` available to the verifier.
  std::uint64_t copies = 0;
  /// sigma_m on the M challenged qubits.
  DensityMatrix state = DensityMatrix::maximally_mixed(0);

  void validate() const;
};

struct SubsetCheck {
  /// Global qubit indices.
  QubitSubset subset;
  double distance = 0.0;
  double threshold = 0.0;
  std::uint64_t shots = 0;
  std::vector<MeasurementRecord> records;
};

struct VerdictReport {
  Verdict verdict = Verdict::Reject;
  std::vector<SubsetCheck> per_subset;
  std::optional<QubitSubset> first_failure;
  std::uint64_t total_copies_consumed = 0;

  double max_distance() const;
};

/// Uniform M-subset of [0, N), deterministic in seed.
Challenge make_challenge(const SessionConfig& cfg, std::uint64_t seed);

/// rho_M: the challenged marginal of the key state.
DensityMatrix respond(const PrivateKey& sk, const Challenge& ch);

/// Simulated quantum channel: depolarizing noise of strength noise_p.
DensityMatrix transmit(const DensityMatrix& state, double noise_p);

/// Tomographic check of every k-subset of the challenge against the public
/// key. Local positions are lifted to global indices before lookup. The
/// returned verdict is Reject iff some distance exceeds cfg.epsilon;
/// without cfg.diagnostic the loop stops at the first failure.
VerdictReport check_marginals(const DensityMatrix& received, const Challenge& ch, const PublicKey& pk,
                              const SessionConfig& cfg, CopyBudget& budget);

/// Runs one challenge/response round: draws the challenge from cfg.seed,
/// takes the honest response, applies channel noise and checks it.
VerdictReport authenticate(const PrivateKey& sk, const PublicKey& pk, const SessionConfig& cfg);

/// Checks an arbitrary response state for a given challenge (copies are unbounded).
VerdictReport authenticate_response(const DensityMatrix& response, const Challenge& ch, const PublicKey& pk,
                                    const SessionConfig& cfg);

/// sigma_m = U_m rho_M U_m^dagger with a copy budget of cfg.copies_required().
SignatureBundle sign(const PrivateKey& sk, const Challenge& ch, const Message& m, const MessageRule& rule,
                     const SessionConfig& cfg);

/// Undoes U_m on the received state and checks its marginals. Throws
/// BudgetExhausted when the bundle carries too few copies.
VerdictReport verify(const PublicKey& pk, const Message& m, const SignatureBundle& bundle, const SessionConfig& cfg,
                     const MessageRule& rule);

enum class SessionMode { Authenticate, SignVerify };
std::string_view to_string(SessionMode mode);

struct Transcript {
  SessionConfig config;
  SessionMode mode = SessionMode::Authenticate;
  std::uint64_t key_seed = 0;
  std::uint64_t seed = 0;
  Challenge challenge;
  std::optional<Message> message;
  std::uint64_t copies_sent = 0;
  VerdictReport report;
};

/// keygen -> challenge -> respond/sign -> channel -> verify. The key is
/// generated from cfg.seed; the challenge and measurement streams derive
/// from seed, which replaces cfg.seed in the recorded config. In SignVerify
/// mode the message is hash_message(message_input, rule.gamma).
Transcript run_session(const SessionConfig& cfg, SessionMode mode, std::uint64_t seed,
                       const MessageRule& rule, std::string_view message_input = "qmpsig session");

}  // namespace qmpsig
