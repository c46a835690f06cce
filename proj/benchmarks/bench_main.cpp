#include <benchmark/benchmark.h>

#include "qmpsig/config.hpp"
#include "qmpsig/feasibility.hpp"
#include "qmpsig/keygen.hpp"
#include "qmpsig/protocol.hpp"
#include "qmpsig/tomography.hpp"

namespace qmpsig {
namespace {

const KeyPair& fixture_keys() {
  static const KeyPair keys = keygen(config::kFixtureLambda, config::kFixtureQubits, config::kFixtureK,
                                     config::kFixtureSeed);
  return keys;
}

void BM_PartialTrace(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto rho = prepare_state(generate_circuit(2, n, 1));
  const QubitSubset keep({0, n - 1});
  for (auto _ : state) benchmark::DoNotOptimize(partial_trace(rho, keep));
}
BENCHMARK(BM_PartialTrace)->DenseRange(4, 10, 2);

void BM_ApplyCnot(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto rho = DensityMatrix::maximally_mixed(n);
  const auto op = GateOp::make(Gate::CNOT, {0, n - 1});
  for (auto _ : state) benchmark::DoNotOptimize(apply_gate(rho, op));
}
BENCHMARK(BM_ApplyCnot)->DenseRange(4, 10, 2);

void BM_Reconstruct(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const auto rho = DensityMatrix::maximally_mixed(k);
  const auto subset = QubitSubset::first(k);
  const auto records = measure_all_bases(rho, subset, 10000, 1);
  for (auto _ : state) benchmark::DoNotOptimize(reconstruct(records, subset));
}
BENCHMARK(BM_Reconstruct)->DenseRange(1, 3);

void BM_Keygen(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(keygen(2, n, 2, 1));
}
BENCHMARK(BM_Keygen)->DenseRange(4, 8, 2);

void BM_CldmOracle(benchmark::State& state) {
  const auto inst = CldmInstance::from_public_key(keygen(2, static_cast<int>(state.range(0)), 2, 1).public_key, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(cldm_feasibility(inst));
}
BENCHMARK(BM_CldmOracle)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_SignVerify(benchmark::State& state) {
  const auto& keys = fixture_keys();
  const auto rule = default_rule();
  const SessionConfig cfg;
  const auto ch = make_challenge(cfg, 1);
  const Message m("abcdabcdabcdabcd");
  for (auto _ : state) {
    const auto bundle = sign(keys.private_key, ch, m, rule, cfg);
    benchmark::DoNotOptimize(verify(keys.public_key, m, bundle, cfg, rule));
  }
}
BENCHMARK(BM_SignVerify)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace qmpsig

BENCHMARK_MAIN();
