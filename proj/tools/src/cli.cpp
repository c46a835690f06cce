#include "qmpsig/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>

#include "qmpsig/attacks.hpp"
#include "qmpsig/config.hpp"
#include "qmpsig/error.hpp"
#include "qmpsig/feasibility.hpp"
#include "qmpsig/serialize.hpp"

namespace qmpsig::cli {
namespace {

namespace fs = std::filesystem;

struct Options {
  SessionConfig cfg;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string in;
  std::string sk;
  std::string pk;
  std::string message;
  std::string word;
  std::string strategy = "random-state";
  std::string mode = "sign-verify";
  int trials = 100;
  int queries = 4;
  int repeats = 10;
  int max_len = 4;
  int max_iter = kDefaultFeasibilityIterations;
  double tol = kDefaultFeasibilityTolerance;
  std::optional<double> beta;
  std::optional<int> bell;
  std::uint64_t key_seed = config::kFixtureSeed;
};

struct Context {
  const std::vector<std::string>& args;
  std::ostream& out;
  Options& opt;
  CLI::Option* message_opt = nullptr;
  CLI::Option* word_opt = nullptr;
};

fs::path manifest_path(const fs::path& out) {
  return out.parent_path() / (out.stem().string() + ".manifest.json");
}

void write_manifest(const Context& ctx, const std::string& command, const fs::path& path,
                    const std::vector<fs::path>& inputs, const std::vector<fs::path>& outputs,
                    const std::optional<SessionConfig>& cfg) {
  auto j = Json::object();
  j["kind"] = "manifest";
  j["version"] = config::kFormatVersion;
  j["code_version"] = config::kCodeVersion;
  j["command"] = command;
  j["args"] = ctx.args;
  j["seed"] = ctx.opt.seed ? Json(*ctx.opt.seed) : Json(nullptr);
  j["config"] = cfg ? to_json(*cfg) : Json(nullptr);
  Json in = Json::array(), out = Json::array();
  for (const auto& p : inputs) in.push_back(p.filename().string());
  for (const auto& p : outputs) out.push_back(p.filename().string());
  j["inputs"] = std::move(in);
  j["outputs"] = std::move(out);
  write_json_file(path, j);
}

Message message_from_flags(const Context& ctx, const MessageRule& rule) {
  const bool has_word = ctx.word_opt->count() > 0, has_message = ctx.message_opt->count() > 0;
  if (has_word == has_message) throw InvalidArgument("give exactly one of --message or --word");
  if (has_message) return hash_message(ctx.opt.message, rule.gamma, rule.alphabet);
  Message m(ctx.opt.word);
  validate_message(m, rule);
  return m;
}

int cmd_keygen(const Context& ctx) {
  auto& o = ctx.opt;
  const auto keys = keygen(o.cfg.lambda, o.cfg.num_qubits, o.cfg.k, *o.seed);
  const fs::path dir(o.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  const auto sk_path = dir / "private_key.json", pk_path = dir / "public_key.json";
  write_json_file(sk_path, to_json(keys.private_key));
  write_json_file(pk_path, to_json(keys.public_key));
  write_manifest(ctx, "keygen", dir / "manifest.json", {}, {sk_path, pk_path}, std::nullopt);

  const auto& pk = keys.public_key;
  ctx.out << "public key: " << pk.entries.size() << " entries (N=" << pk.num_qubits << ", k=" << pk.k
          << ", lambda=" << pk.lambda << ", circuit seed " << keys.private_key.circuit.seed << ")\n";
  ctx.out << "subset      purity\n";
  for (const auto& e : pk.entries) {
    ctx.out << std::left << std::setw(12) << e.subset.to_string() << std::fixed << std::setprecision(6)
            << e.marginal.purity() << '\n';
  }
  return kOk;
}

int cmd_sign(const Context& ctx) {
  auto& o = ctx.opt;
  const auto sk = private_key_from_json(read_json_file(o.sk));
  const auto rule = default_rule();
  SessionConfig cfg = o.cfg;
  cfg.num_qubits = sk.num_qubits();
  cfg.lambda = sk.lambda;
  cfg.seed = *o.seed;
  cfg.validate();
  const auto m = message_from_flags(ctx, rule);
  const auto ch = make_challenge(cfg, cfg.seed);
  auto bundle = sign(sk, ch, m, rule, cfg);
  bundle.state = transmit(bundle.state, cfg.noise_p);
  const fs::path out(o.out);
  write_json_file(out, to_json(bundle));
  write_manifest(ctx, "sign", manifest_path(out), {o.sk}, {out}, cfg);
  ctx.out << "signed '" << m.word() << "' on challenge " << ch.subset().to_string() << ", " << bundle.copies
          << " copies\n";
  return kOk;
}

int cmd_verify(const Context& ctx) {
  auto& o = ctx.opt;
  const auto pk = public_key_from_json(read_json_file(o.pk));
  const auto bundle = bundle_from_json(read_json_file(o.in));
  if (bundle.challenge.num_qubits() != pk.num_qubits || bundle.challenge.k() != pk.k) {
    throw FormatError("signature challenge does not match the public key");
  }
  const auto rule = default_rule();
  SessionConfig cfg = o.cfg;
  cfg.num_qubits = pk.num_qubits;
  cfg.k = pk.k;
  cfg.lambda = pk.lambda;
  cfg.m_size = bundle.challenge.m_size();
  cfg.seed = *o.seed;
  const bool explicit_message = ctx.word_opt->count() > 0 || ctx.message_opt->count() > 0;
  const auto m = explicit_message ? message_from_flags(ctx, rule) : bundle.message;
  const auto report = verify(pk, m, bundle, cfg, rule);
  const fs::path out(o.out);
  write_json_file(out, to_json(report));
  write_manifest(ctx, "verify", manifest_path(out), {o.pk, o.in}, {out}, cfg);
  ctx.out << to_string(report.verdict) << " max distance " << report.max_distance() << " (epsilon "
          << cfg.epsilon << ", " << report.total_copies_consumed << " copies consumed)\n";
  return report.verdict == Verdict::Accept ? kOk : kReject;
}

int cmd_attack(const Context& ctx) {
  auto& o = ctx.opt;
  const auto strategy = parse_strategy(o.strategy);
  if (o.trials < 1) throw InvalidArgument("--trials must be positive");
  SessionConfig cfg = o.cfg;
  cfg.seed = o.key_seed;
  cfg.validate();
  const auto rule = default_rule();
  Json games = Json::array();
  int wins = 0;
  for (int i = 0; i < o.trials; ++i) {
    const auto t = run_euf_qcma_game(strategy, o.queries, cfg, *o.seed + static_cast<std::uint64_t>(i), rule);
    wins += t.won() ? 1 : 0;
    games.push_back(to_json(t));
  }
  const double rate = static_cast<double>(wins) / o.trials;
  auto j = Json::object();
  j["kind"] = "attack";
  j["version"] = config::kFormatVersion;
  j["strategy"] = std::string(to_string(strategy));
  j["trials"] = o.trials;
  j["queries"] = o.queries;
  j["wins"] = wins;
  j["win_rate"] = rate;
  j["games"] = std::move(games);
  const fs::path out(o.out);
  write_json_file(out, j);
  write_manifest(ctx, "attack", manifest_path(out), {}, {out}, cfg);
  ctx.out << to_string(strategy) << ": " << wins << "/" << o.trials << " wins, win rate " << rate << '\n';
  return kOk;
}

int cmd_calibrate(const Context& ctx) {
  auto& o = ctx.opt;
  SessionConfig cfg = o.cfg;
  cfg.seed = o.key_seed;
  if (cfg.shots == 0) cfg.shots = config::kCalibrationShots;
  const auto report = calibrate_threshold(cfg, cfg.noise_p, o.trials, *o.seed);
  const fs::path out(o.out);
  const auto csv = out.parent_path() / (out.stem().string() + ".csv");
  write_json_file(out, to_json(report));
  std::ofstream f(csv, std::ios::binary | std::ios::trunc);
  if (!(f << distances_csv(report))) throw IoError("cannot write " + csv.string());
  f.close();
  write_manifest(ctx, "calibrate", manifest_path(out), {}, {out, csv}, cfg);
  ctx.out << "honest p99 " << report.honest_p99 << ", forgery p1 " << report.forgery_p01 << '\n';
  if (!report.separated()) {
    ctx.out << "NoSeparation: no threshold separates honest and forged sessions\n";
    return kNoSeparation;
  }
  ctx.out << std::setprecision(17) << "epsilon* " << *report.epsilon_star << '\n';
  return kOk;
}

int cmd_calibrate_shots(const Context& ctx) {
  auto& o = ctx.opt;
  const auto r = calibrate_shot_constant(o.cfg.k, o.cfg.epsilon, o.cfg.delta, o.trials, *o.seed, o.repeats);
  const fs::path out(o.out);
  write_json_file(out, to_json(r));
  write_manifest(ctx, "calibrate-shots", manifest_path(out), {}, {out}, std::nullopt);
  ctx.out << "shot constant " << r.constant << " (" << r.shots << " shots, worst success rate " << r.success_rate
          << ")\n";
  return kOk;
}

int cmd_oracle(const Context& ctx) {
  auto& o = ctx.opt;
  if (o.bell.has_value() == !o.in.empty()) throw InvalidArgument("give exactly one of --in or --bell");
  std::vector<fs::path> inputs;
  CldmInstance inst;
  if (o.bell) {
    inst = bell_contradiction_instance(*o.bell, o.beta.value_or(CldmInstance{}.beta));
  } else {
    inst = cldm_instance_from_json(read_json_file(o.in));
    if (o.beta) inst.beta = *o.beta;
    inputs.push_back(o.in);
  }
  const auto r = cldm_feasibility(inst, o.max_iter, o.tol);
  const fs::path out(o.out);
  write_json_file(out, to_json(r));
  write_manifest(ctx, "oracle", manifest_path(out), inputs, {out}, std::nullopt);
  ctx.out << to_string(r.status) << " residual " << r.residual << " after " << r.iterations << " iterations\n";
  switch (r.status) {
    case FeasibilityStatus::Feasible: return kOk;
    case FeasibilityStatus::Infeasible: return kReject;
    case FeasibilityStatus::Undecided: return kUndecided;
  }
  return kUndecided;
}

int cmd_session(const Context& ctx) {
  auto& o = ctx.opt;
  SessionMode mode;
  if (o.mode == "authenticate") {
    mode = SessionMode::Authenticate;
  } else if (o.mode == "sign-verify") {
    mode = SessionMode::SignVerify;
  } else {
    throw InvalidArgument("--mode must be authenticate or sign-verify");
  }
  const std::string input = ctx.message_opt->count() > 0 ? o.message : "qmpsig session";
  SessionConfig cfg = o.cfg;
  cfg.seed = o.key_seed;
  const auto t = run_session(cfg, mode, *o.seed, default_rule(), input);
  const fs::path out(o.out);
  write_json_file(out, to_json(t));
  write_manifest(ctx, "session", manifest_path(out), {}, {out}, t.config);
  ctx.out << to_string(t.report.verdict) << " max distance " << t.report.max_distance() << ", "
          << t.report.total_copies_consumed << "/" << t.copies_sent << " copies consumed\n";
  return t.report.verdict == Verdict::Accept ? kOk : kReject;
}

int cmd_injectivity(const Context& ctx) {
  auto& o = ctx.opt;
  const auto r = check_injectivity(default_rule(), o.max_len, o.cfg.m_size);
  const fs::path out(o.out);
  write_json_file(out, to_json(r));
  write_manifest(ctx, "injectivity", manifest_path(out), {}, {out}, std::nullopt);
  ctx.out << r.messages_checked << " messages, " << r.collisions.size() << " collisions ("
          << r.same_length_collisions() << " same-length, " << r.cross_length_collisions() << " cross-length)\n";
  return r.collisions.empty() ? kOk : kReject;
}

// Re-runs the argument list recorded in a manifest. Input files are taken
// from their recorded paths, or from next to the manifest when those are
// gone; outputs are redirected into out_dir.
int cmd_replay(const std::string& manifest_file, const std::string& out_dir, std::ostream& out, std::ostream& err) {
  const fs::path manifest(manifest_file);
  const auto j = read_json_file(manifest);
  if (!j.is_object() || j.value("kind", "") != "manifest" || !j.contains("args") || !j["args"].is_array()) {
    throw FormatError(manifest_file + ": not a manifest");
  }
  const auto recorded = j["args"].get<std::vector<std::string>>();
  if (!recorded.empty() && recorded.front() == "replay") throw InvalidArgument("manifest records a replay");
  fs::create_directories(out_dir);
  auto rewrite = [&](const std::string& flag, const std::string& value) -> std::string {
    if (flag == "--out") return (recorded.front() == "keygen" ? fs::path(out_dir) : fs::path(out_dir) / fs::path(value).filename()).string();
    if (flag == "--sk" || flag == "--pk" || flag == "--in") {
      if (fs::exists(value)) return value;
      return (manifest.parent_path() / fs::path(value).filename()).string();
    }
    return value;
  };
  std::vector<std::string> args;
  for (std::size_t i = 0; i < recorded.size(); ++i) {
    const auto& a = recorded[i];
    const auto eq = a.find('=');
    if (a.rfind("--", 0) == 0 && eq != std::string::npos) {
      args.push_back(a.substr(0, eq + 1) + rewrite(a.substr(0, eq), a.substr(eq + 1)));
    } else if (a.rfind("--", 0) == 0 && i + 1 < recorded.size()) {
      args.push_back(a);
      const auto value = rewrite(a, recorded[i + 1]);
      if (value != recorded[i + 1]) {
        args.push_back(value);
        ++i;
      }
    } else {
      args.push_back(a);
    }
  }
  return run(args, out, err);
}

void add_register_flags(CLI::App* app, Options& o) {
  app->add_option("--n", o.cfg.num_qubits, "Register size N");
  app->add_option("--k", o.cfg.k, "Marginal size k");
  app->add_option("--m-size", o.cfg.m_size, "Challenge size M");
  app->add_option("--lambda", o.cfg.lambda, "Security parameter (circuit layers)");
}

void add_verifier_flags(CLI::App* app, Options& o) {
  app->add_option("--epsilon", o.cfg.epsilon, "Acceptance threshold");
  app->add_option("--delta", o.cfg.delta, "Session failure budget");
  app->add_option("--shots", o.cfg.shots, "Shots per subsystem (0 = derived from epsilon and delta)");
  app->add_option("--noise-p", o.cfg.noise_p, "Depolarizing channel strength");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"qmpsig: quantum-marginal signatures at desk scale", "qmpsig"};
  app.require_subcommand(1);

  auto seed = [&](CLI::App* sub) { sub->add_option("--seed", o.seed, "Seed (mandatory)")->required(); };
  auto output = [&](CLI::App* sub, const char* what) { sub->add_option("--out", o.out, what)->required(); };
  struct MessageFlags {
    CLI::App* sub;
    CLI::Option* message;
    CLI::Option* word;
  };
  std::vector<MessageFlags> message_flags;
  auto message = [&](CLI::App* sub) {
    message_flags.push_back({sub, sub->add_option("--message", o.message, "Text to hash into a message"),
                             sub->add_option("--word", o.word, "Raw message word over the alphabet")});
  };

  auto* keygen_cmd = app.add_subcommand("keygen", "Generate a key pair");
  add_register_flags(keygen_cmd, o);
  seed(keygen_cmd);
  output(keygen_cmd, "Output directory");

  auto* sign_cmd = app.add_subcommand("sign", "Sign a message on a seeded challenge");
  sign_cmd->add_option("--sk", o.sk, "Private key file")->required();
  sign_cmd->add_option("--k", o.cfg.k, "Marginal size k");
  sign_cmd->add_option("--m-size", o.cfg.m_size, "Challenge size M");
  add_verifier_flags(sign_cmd, o);
  message(sign_cmd);
  seed(sign_cmd);
  output(sign_cmd, "Signature bundle file");

  auto* verify_cmd = app.add_subcommand("verify", "Verify a signature bundle");
  verify_cmd->add_option("--pk", o.pk, "Public key file")->required();
  verify_cmd->add_option("--in", o.in, "Signature bundle file")->required();
  add_verifier_flags(verify_cmd, o);
  verify_cmd->add_flag("--diagnostic", o.cfg.diagnostic, "Measure every subsystem after a failure");
  message(verify_cmd);
  seed(verify_cmd);
  output(verify_cmd, "Verdict report file");

  auto* attack_cmd = app.add_subcommand("attack", "Run forgery games against the fixture key");
  attack_cmd->add_option("--strategy", o.strategy, "random-state, replay-mutate or leak-full");
  attack_cmd->add_option("--trials", o.trials, "Number of games");
  attack_cmd->add_option("--queries", o.queries, "Signing queries per game");
  attack_cmd->add_option("--key-seed", o.key_seed, "Challenger key seed");
  add_register_flags(attack_cmd, o);
  add_verifier_flags(attack_cmd, o);
  seed(attack_cmd);
  output(attack_cmd, "Attack report file");

  auto* calibrate_cmd = app.add_subcommand("calibrate", "Calibrate the acceptance threshold");
  calibrate_cmd->add_option("--trials", o.trials, "Honest and forged sessions each");
  calibrate_cmd->add_option("--key-seed", o.key_seed, "Fixture key seed");
  add_register_flags(calibrate_cmd, o);
  add_verifier_flags(calibrate_cmd, o);
  seed(calibrate_cmd);
  output(calibrate_cmd, "Calibration report file (a .csv is written alongside)");

  auto* shots_cmd = app.add_subcommand("calibrate-shots", "Calibrate the tomography shot constant");
  shots_cmd->add_option("--k", o.cfg.k, "Marginal size k");
  shots_cmd->add_option("--epsilon", o.cfg.epsilon, "Target reconstruction error");
  shots_cmd->add_option("--delta", o.cfg.delta, "Target failure rate");
  shots_cmd->add_option("--trials", o.trials, "Random states per batch");
  shots_cmd->add_option("--repeats", o.repeats, "Independent batches");
  seed(shots_cmd);
  output(shots_cmd, "Calibration report file");

  auto* oracle_cmd = app.add_subcommand("oracle", "Decide a CLDM instance by alternating projections");
  oracle_cmd->add_option("--in", o.in, "Instance or public key file");
  oracle_cmd->add_option("--bell", o.bell, "Use the Bell-contradiction instance on N qubits");
  oracle_cmd->add_option("--beta", o.beta, "Promise gap (default 0.1)");
  oracle_cmd->add_option("--max-iter", o.max_iter, "Iteration cap");
  oracle_cmd->add_option("--tol", o.tol, "Feasibility tolerance");
  output(oracle_cmd, "Feasibility result file");

  auto* session_cmd = app.add_subcommand("session", "Run keygen, challenge, sign and verify end to end");
  session_cmd->add_option("--mode", o.mode, "authenticate or sign-verify");
  session_cmd->add_option("--key-seed", o.key_seed, "Key generation seed");
  add_register_flags(session_cmd, o);
  add_verifier_flags(session_cmd, o);
  session_cmd->add_flag("--diagnostic", o.cfg.diagnostic, "Measure every subsystem after a failure");
  message(session_cmd);
  seed(session_cmd);
  output(session_cmd, "Transcript file");

  auto* inj_cmd = app.add_subcommand("injectivity", "Search for colliding message unitaries");
  inj_cmd->add_option("--max-len", o.max_len, "Longest message enumerated");
  inj_cmd->add_option("--m-size", o.cfg.m_size, "Register size of the compiled unitaries");
  output(inj_cmd, "Report file");

  std::string manifest_file;
  auto* replay_cmd = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  replay_cmd->add_option("--manifest", manifest_file, "Manifest file")->required();
  output(replay_cmd, "Directory for the regenerated artifacts");

  std::vector<std::string> argv_store{"qmpsig"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidArgs;
  }

  try {
    Context ctx{args, out, o};
    for (const auto& f : message_flags) {
      if (f.sub->parsed()) {
        ctx.message_opt = f.message;
        ctx.word_opt = f.word;
      }
    }
    if (keygen_cmd->parsed()) return cmd_keygen(ctx);
    if (sign_cmd->parsed()) return cmd_sign(ctx);
    if (verify_cmd->parsed()) return cmd_verify(ctx);
    if (attack_cmd->parsed()) return cmd_attack(ctx);
    if (calibrate_cmd->parsed()) return cmd_calibrate(ctx);
    if (shots_cmd->parsed()) return cmd_calibrate_shots(ctx);
    if (oracle_cmd->parsed()) return cmd_oracle(ctx);
    if (session_cmd->parsed()) return cmd_session(ctx);
    if (inj_cmd->parsed()) return cmd_injectivity(ctx);
    if (replay_cmd->parsed()) return cmd_replay(manifest_file, o.out, out, err);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidArgs;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoFailure;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kMalformed;
  } catch (const BudgetExhausted& e) {
    err << "error: " << e.what() << '\n';
    return kBudget;
  }
  return kInvalidArgs;
}

}  // namespace qmpsig::cli
