#include <benchmark/benchmark.h>

#include "fluxgate/analysis.hpp"
#include "fluxgate/config.hpp"

using namespace fluxgate;

namespace {

void BM_BuildHamiltonian(benchmark::State& state) {
    const HilbertLayout layout(static_cast<int>(state.range(0)));
    const DeviceConfig config = paper_config();
    const std::vector<CouplingTerm> couplings{{1, config.qubit1.g},
                                              {2, config.qubit2.g}};
    const std::vector<DriveTerm> drives{{1, 1, 3, config.rabi, -M_PI / 2.0}};
    for (auto _ : state) {
        auto h = build_hamiltonian(layout, couplings, drives);
        benchmark::DoNotOptimize(h.entries.data());
    }
}
BENCHMARK(BM_BuildHamiltonian)->Arg(1)->Arg(2)->Arg(4);

void BM_PropagateUnitary(benchmark::State& state) {
    const HilbertLayout layout(static_cast<int>(state.range(0)));
    const DeviceConfig config = paper_config();
    const std::vector<CouplingTerm> couplings{{1, config.qubit1.g},
                                              {2, config.qubit2.g}};
    const auto h = build_hamiltonian(layout, couplings, {});
    const auto psi = basis_ket(layout, 1, 1, 0);
    for (auto _ : state) {
        auto out = propagate_unitary(h, 2.5e-9, psi);
        benchmark::DoNotOptimize(out.vec.data());
    }
}
BENCHMARK(BM_PropagateUnitary)->Arg(1)->Arg(2)->Arg(4);

void BM_RunProtocolSequential(benchmark::State& state) {
    const DeviceConfig config = paper_config();
    const HilbertLayout layout(config.cavity.n_max);
    const auto psi = basis_ket(layout, 1, 1, 0);
    for (auto _ : state) {
        auto run = run_protocol(config, psi);
        benchmark::DoNotOptimize(run.final_state.vec.data());
    }
}
BENCHMARK(BM_RunProtocolSequential);

void BM_ExtractGateConcurrent(benchmark::State& state) {
    DeviceConfig config = paper_config();
    config.mode = RunMode::Concurrent;
    for (auto _ : state) {
        auto report = extract_gate(config);
        benchmark::DoNotOptimize(report.process_fidelity);
    }
}
BENCHMARK(BM_ExtractGateConcurrent);

void BM_LindbladStepRate(benchmark::State& state) {
    DeviceConfig config = paper_config();
    config.cavity.n_max = static_cast<int>(state.range(0));
    const HilbertLayout layout(config.cavity.n_max);
    const std::vector<CouplingTerm> couplings{{1, config.qubit1.g},
                                              {2, config.qubit2.g}};
    const auto h = build_hamiltonian(layout, couplings, {});
    DecoherenceSpec spec;
    spec.kappa = config.cavity.kappa();
    const auto collapse = collapse_operators(layout, spec);
    const auto rho = basis_ket(layout, 1, 1, 0).to_density();

    const int steps = 200;
    const double dt = 1e-12;
    for (auto _ : state) {
        auto out = propagate_lindblad(h, collapse, steps * dt, dt, rho);
        benchmark::DoNotOptimize(out.rho.data());
    }
    state.counters["steps/s"] = benchmark::Counter(
        static_cast<double>(steps) * state.iterations(),
        benchmark::Counter::kIsRate);
}
BENCHMARK(BM_LindbladStepRate)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
