#include "qmpsig/attacks.hpp"

#include <algorithm>
#include <string>

#include "qmpsig/error.hpp"
#include "qmpsig/rng.hpp"

namespace qmpsig {
namespace {

constexpr std::uint64_t kTagForgeState = 0x666f7267;
constexpr std::uint64_t kTagGameChallenge = 0x67636800;
constexpr std::uint64_t kTagGameVerify = 0x67766572;

Message game_message(std::string_view role, std::uint64_t seed, int index, const MessageRule& rule) {
  return hash_message(std::string(role) + ":" + std::to_string(seed) + ":" + std::to_string(index), rule.gamma,
                      rule.alphabet);
}

}  // namespace

SignatureBundle full_leak_attack(const PublicKey& pk, const DensityMatrix& leaked_state, const Challenge& ch,
                                 const Message& m, const MessageRule& rule, const SessionConfig& cfg) {
  if (leaked_state.num_qubits() != pk.num_qubits) throw InvalidArgument("leaked state does not match key size");
  validate_message(m, rule);
  return SignatureBundle{.message = m,
                         .challenge = ch,
                         .copies = cfg.copies_required(),
                         .state = apply_message_unitary(partial_trace(leaked_state, ch.subset()), m, rule)};
}

SignatureBundle random_state_forgery(const PublicKey& pk, const Challenge& ch, const Message& m,
                                     const MessageRule& rule, const SessionConfig& cfg, std::uint64_t seed) {
  if (ch.num_qubits() != pk.num_qubits) throw InvalidArgument("challenge does not match key size");
  validate_message(m, rule);
  Rng rng(derive_seed(seed, {kTagForgeState}));
  const auto circuit = random_layered_circuit(ch.m_size(), kForgeryLayers, rng);
  return SignatureBundle{.message = m,
                         .challenge = ch,
                         .copies = cfg.copies_required(),
                         .state = apply_message_unitary(prepare_state(circuit), m, rule)};
}

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::RandomState: return "random-state";
    case Strategy::ReplayMutate: return "replay-mutate";
    case Strategy::LeakFull: return "leak-full";
  }
  return "?";
}

Strategy parse_strategy(std::string_view text) {
  for (auto s : {Strategy::RandomState, Strategy::ReplayMutate, Strategy::LeakFull}) {
    if (text == to_string(s)) return s;
  }
  throw InvalidArgument("unknown strategy '" + std::string(text) +
                        "' (expected random-state, replay-mutate or leak-full)");
}

GameTranscript run_euf_qcma_game(Strategy adversary, int q, const SessionConfig& cfg, std::uint64_t seed,
                                 const MessageRule& rule) {
  cfg.validate();
  if (q < 0 || q > kMaxGameQueries) {
    throw InvalidArgument("query count must be in [0, " + std::to_string(kMaxGameQueries) + "]");
  }
  if (adversary == Strategy::ReplayMutate && q < 1) throw InvalidArgument("replay-mutate needs q >= 1");

  const auto keys = keygen(cfg.lambda, cfg.num_qubits, cfg.k, cfg.seed);
  const auto ch = make_challenge(cfg, derive_seed(seed, {kTagGameChallenge}));

  GameTranscript t{.strategy = adversary, .seed = seed};
  for (int i = 0; i < q; ++i) {
    auto m = game_message("query", seed, i, rule);
    t.queries.push_back({m, sign(keys.private_key, ch, m, rule, cfg)});
  }

  auto queried = [&](const Message& m) {
    return std::any_of(t.queries.begin(), t.queries.end(), [&](const GameQuery& g) { return g.message == m; });
  };
  int attempt = 0;
  do {
    t.forged_message = game_message("forge", seed, attempt++, rule);
  } while (queried(t.forged_message) && attempt < 1000);
  t.forged_message_fresh = !queried(t.forged_message);

  switch (adversary) {
    case Strategy::LeakFull:
      t.forgery = full_leak_attack(keys.public_key, keys.private_key.state(), ch, t.forged_message, rule, cfg);
      break;
    case Strategy::RandomState:
      t.forgery = random_state_forgery(keys.public_key, ch, t.forged_message, rule, cfg, seed);
      break;
    case Strategy::ReplayMutate:
      t.forgery = t.queries.front().bundle;
      t.forgery.message = t.forged_message;
      break;
  }

  SessionConfig verifier = cfg;
  verifier.seed = derive_seed(seed, {kTagGameVerify});
  t.report = verify(keys.public_key, t.forged_message, t.forgery, verifier, rule);
  return t;
}

std::uint64_t subset_coverage_cost(int num_qubits, int m_size) {
  if (m_size < 2 || m_size >= num_qubits) {
    throw InvalidArgument("need k < M < N with k >= 1, got M = " + std::to_string(m_size) +
                          ", N = " + std::to_string(num_qubits));
  }
  return binomial(num_qubits, m_size);
}

}  // namespace qmpsig
