#include <benchmark/benchmark.h>

#include "qcss/decode.hpp"
#include "qcss/experiment.hpp"
#include "qcss/gf2.hpp"
#include "qcss/rng.hpp"
#include "qcss/tanner.hpp"

using namespace qcss;

namespace {

const BuiltCode& b08() {
    static const BuiltCode code = build_code(*find_code("b08"));
    return code;
}

const BuiltCode& reg480() {
    static const BuiltCode code = build_code(*find_code("reg480"));
    return code;
}

void bm_rref(benchmark::State& state) {
    const BinMatrix& h = b08().h();
    for (auto _ : state) benchmark::DoNotOptimize(rref(h));
}
BENCHMARK(bm_rref)->Unit(benchmark::kMillisecond);

void bm_mat_mul(benchmark::State& state) {
    const BinMatrix& h = b08().h();
    const BinMatrix ht = h.transposed();
    for (auto _ : state) benchmark::DoNotOptimize(mat_mul(h, ht));
}
BENCHMARK(bm_mat_mul)->Unit(benchmark::kMillisecond);

void bm_encode(benchmark::State& state) {
    const BuiltCode& code = b08();
    Rng rng(1);
    const BinVector msg = rng.random_vector(code.encoder->message_length());
    for (auto _ : state) benchmark::DoNotOptimize(code.encoder->encode(msg));
}
BENCHMARK(bm_encode)->Unit(benchmark::kMicrosecond);

void bm_build_pair(benchmark::State& state) {
    const BuiltCode& code = b08();
    for (auto _ : state) benchmark::DoNotOptimize(build_pair(code));
}
BENCHMARK(bm_build_pair)->Unit(benchmark::kMillisecond);

ChannelObservation noisy_obs(const BinMatrix& h, double eps, std::uint64_t seed) {
    Rng rng(seed);
    const BinVector e = rng.bernoulli_vector(h.cols(), eps);
    return ChannelObservation::bsc(e, eps);
}

void bm_sum_product(benchmark::State& state) {
    const BinMatrix& h = b08().h();
    const ChannelObservation obs = noisy_obs(h, 0.02, 3);
    for (auto _ : state)
        benchmark::DoNotOptimize(sum_product_bsc(h, obs, 100));
}
BENCHMARK(bm_sum_product)->Unit(benchmark::kMillisecond);

void bm_bit_serial(benchmark::State& state) {
    const BinMatrix& h = b08().h();
    const ChannelObservation obs = noisy_obs(h, 0.02, 3);
    for (auto _ : state)
        benchmark::DoNotOptimize(bit_serial_sp(h, obs, 100));
}
BENCHMARK(bm_bit_serial)->Unit(benchmark::kMillisecond);

void bm_remove_4cycles(benchmark::State& state) {
    const CssPair pair = build_pair(reg480());
    for (auto _ : state) benchmark::DoNotOptimize(remove_4cycles(pair.h2));
}
BENCHMARK(bm_remove_4cycles)->Unit(benchmark::kMillisecond);

void bm_osd_order2(benchmark::State& state) {
    const BinMatrix& h = reg480().h();
    const auto basis = nullspace_basis(h);
    BinMatrix gen(basis.size(), h.cols());
    for (std::size_t r = 0; r < basis.size(); ++r) gen.set_row(r, basis[r]);
    const ChannelObservation obs = noisy_obs(h, 0.03, 5);
    for (auto _ : state) benchmark::DoNotOptimize(osd(gen, obs, 2));
}
BENCHMARK(bm_osd_order2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
