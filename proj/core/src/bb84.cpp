#include "qcss/bb84.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>

#include "qcss/rng.hpp"

namespace qcss {

namespace {
// child stream labels; fixed so recorded seeds replay exactly
constexpr std::uint64_t kStreamX = 1;
constexpr std::uint64_t kStreamE = 2;
constexpr std::uint64_t kStreamU = 3;
}  // namespace

ProtocolRun run_protocol(const CssPair& pair, const KeyMap& keymap,
                         double epsilon, const DecoderConfig& decoder,
                         std::uint64_t seed) {
    if (!(epsilon >= 0.0 && epsilon < 0.5))
        throw std::invalid_argument("run_protocol: epsilon must be in [0, 0.5)");
    if (keymap.map.cols() != pair.n())
        throw std::invalid_argument("run_protocol: keymap does not match the pair");
    const std::size_t n = pair.n();

    ProtocolRun run;
    Rng rx(derive_seed(seed, kStreamX));
    Rng re(derive_seed(seed, kStreamE));
    Rng ru(derive_seed(seed, kStreamU));

    run.x = rx.random_vector(n);
    run.e = re.bernoulli_vector(n, epsilon);
    run.u = BinVector(n);
    for (const auto& g : pair.g1)
        if (ru.next() & 1) run.u.xor_in(g);
    run.announced = run.x ^ run.u;

    const BinVector bob_in = run.u ^ run.e;  // (x+e) + (x+u)
    const ChannelObservation obs = ChannelObservation::bsc(bob_in, epsilon);
    run.decode = decoder.schedule == Schedule::flooding
                     ? sum_product_bsc(pair.h1, obs, decoder.max_iter)
                     : bit_serial_sp(pair.h1, obs, decoder.max_iter);

    run.alice_key = keymap.key(run.u);
    if (run.decode.converged) {
        run.u_prime = run.decode.word;
        run.bob_key = keymap.key(*run.u_prime);
        run.agreed = coset_equal(pair, run.u, *run.u_prime, CosetMode::c1_mod_c2);
    }
    return run;
}

double eve_bound(const EveBoundInput& in) {
    if (!(in.delta >= 0.0 && in.delta < 1.0))
        throw std::invalid_argument("eve_bound: delta must be in [0, 1)");
    if (in.k == 0) throw std::invalid_argument("eve_bound: k must be >= 1");
    const double d = in.delta;
    if (d == 0.0) return 0.0;
    // log2(2^{2k} - 1) = 2k + log2(1 - 2^{-2k}), evaluated in the log domain
    const double twok = 2.0 * static_cast<double>(in.k);
    const double correction = std::log1p(-std::exp2(-twok)) / std::numbers::ln2;
    const double h2 = -(1.0 - d) * std::log2(1.0 - d) - d * std::log2(d);
    return h2 + d * (twok + correction);
}

double eve_bound(double delta, std::size_t k) {
    return eve_bound(EveBoundInput{delta, k});
}

double CoverageStat::coverage() const {
    if (codeword_failures == 0) return std::numeric_limits<double>::quiet_NaN();
    return static_cast<double>(covered) / static_cast<double>(codeword_failures);
}

std::vector<CoverageStat> coset_coverage_stats(
    const CssPair& pair, const std::vector<CoverageTrial>& trials) {
    std::map<double, CoverageStat> buckets;
    for (const auto& t : trials) {
        auto& b = buckets[t.crossover];
        b.crossover = t.crossover;
        ++b.trials;
        const bool plain_ok = t.decoded && *t.decoded == t.transmitted;
        if (plain_ok) continue;
        ++b.plain_failures;
        if (!t.decoded || !pair.h2.mul(*t.decoded).is_zero()) continue;
        ++b.codeword_failures;
        if (in_rowspace(pair.rref1, *t.decoded ^ t.transmitted)) ++b.covered;
    }
    std::vector<CoverageStat> out;
    out.reserve(buckets.size());
    for (auto& [eps, stat] : buckets) out.push_back(std::move(stat));
    return out;
}

}  // namespace qcss
