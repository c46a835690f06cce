#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "qmpsig/protocol.hpp"

namespace qmpsig {

/// Layers of random_layered_circuit used for random-state forgeries.
inline constexpr int kForgeryLayers = 4;

/// Largest number of signing queries in one game.
inline constexpr int kMaxGameQueries = 64;

/// Signs m with the challenged marginal of a leaked full key state.
SignatureBundle full_leak_attack(const PublicKey& pk, const DensityMatrix& leaked_state, const Challenge& ch,
                                 const Message& m, const MessageRule& rule, const SessionConfig& cfg);

/// Random layered circuit on M qubits applied to |0...0>, then signed with the public U_m.
SignatureBundle random_state_forgery(const PublicKey& pk, const Challenge& ch, const Message& m,
                                     const MessageRule& rule, const SessionConfig& cfg, std::uint64_t seed);

enum class Strategy { RandomState, ReplayMutate, LeakFull };
std::string_view to_string(Strategy s);
/// "random-state", "replay-mutate" or "leak-full"; throws InvalidArgument.
Strategy parse_strategy(std::string_view text);

struct GameQuery {
  Message message;
  SignatureBundle bundle;
};

struct GameTranscript {
  Strategy strategy = Strategy::RandomState;
  std::uint64_t seed = 0;
  std::vector<GameQuery> queries;
  Message forged_message;
  SignatureBundle forgery;
  bool forged_message_fresh = false;
  VerdictReport report;

  Verdict verdict() const { return report.verdict; }
  /// ACCEPT on a fresh message.
  bool won() const { return forged_message_fresh && report.verdict == Verdict::Accept; }
};

/// The challenger generates the key from cfg.seed and announces the forgery
/// challenge; the adversary makes q signing queries on that challenge and
/// outputs a forgery, which is verified with cfg. Everything else derives
/// from seed.
GameTranscript run_euf_qcma_game(Strategy adversary, int q, const SessionConfig& cfg, std::uint64_t seed,
                                 const MessageRule& rule);

/// (N choose M): challenges needed to observe every M-subset once.
std::uint64_t subset_coverage_cost(int num_qubits, int m_size);

/// Linear-interpolation percentile, q in [0, 1].
double percentile(std::vector<double> values, double q);

struct CalibrationReport {
  double noise_p = 0.0;
  int trials = 0;
  std::uint64_t shots = 0;
  /// Per-session maximum distance over all checked subsystems.
  std::vector<double> honest;
  std::vector<double> forgery;
  double honest_p99 = 0.0;
  double forgery_p01 = 0.0;
  /// Midpoint of honest_p99 and forgery_p01; absent when they overlap.
  std::optional<double> epsilon_star;

  bool separated() const { return epsilon_star.has_value(); }
};

inline constexpr int kMinCalibrationTrials = 30;

/// Honest sign/verify sessions at noise_p against random-state forgeries
/// at noise 0, all on the key generated from cfg.seed, with every subsystem
/// measured (cfg.shots per subsystem).
CalibrationReport calibrate_threshold(const SessionConfig& cfg, double noise_p, int trials, std::uint64_t seed);

struct ShotCalibration {
  int k = 0;
  double epsilon = 0.0;
  double delta = 0.0;
  int trials = 0;
  int repeats = 0;
  double constant = 0.0;
  std::uint64_t shots = 0;
  /// Lowest success rate over the repeats.
  double success_rate = 0.0;
};

/// Smallest constant on a grid of `step` for which reconstructions of
/// random k-qubit states with required_shots(k, epsilon, delta, c) shots
/// land within epsilon in at least 1 - delta of the trials, in each of
/// `repeats` independent batches (seeds seed, seed + 1, ...).
ShotCalibration calibrate_shot_constant(int k, double epsilon, double delta, int trials, std::uint64_t seed,
                                        int repeats = 5, double step = 0.05);

/// Fraction of random k-qubit states reconstructed within epsilon from `shots` shots.
double tomography_success_rate(int k, double epsilon, std::uint64_t shots, int trials, std::uint64_t seed);

}  // namespace qmpsig
