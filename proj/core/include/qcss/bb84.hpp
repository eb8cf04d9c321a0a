#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qcss/css.hpp"
#include "qcss/decode.hpp"

namespace qcss {

/// One simulated classical post-processing round. announced = x + u;
/// Bob's decoder input is (x + e) + (x + u) = u + e.
struct ProtocolRun {
    BinVector x;          // Alice's raw string
    BinVector e;          // channel error pattern
    BinVector u;          // Alice's random C1 codeword
    BinVector announced;  // x + u
    std::optional<BinVector> u_prime;  // Bob's decode, when it converged
    BinVector alice_key;
    std::optional<BinVector> bob_key;
    bool agreed = false;  // coset_equal(C1/C2, u, u') with a converged u'
    DecodeResult decode;
};

/// Sum-product settings for Bob's C1 decoding step.
struct DecoderConfig {
    Schedule schedule = Schedule::flooding;
    std::size_t max_iter = 100;
};

/// Runs steps 1-4 over a BSC(epsilon). x, e and u come from independent
/// streams derived from the seed, so runs are reproducible bit-for-bit.
ProtocolRun run_protocol(const CssPair& pair, const KeyMap& keymap,
                         double epsilon, const DecoderConfig& decoder,
                         std::uint64_t seed);

struct EveBoundInput {
    double delta = 0.0;   // decoding error probability of the worse code
    std::size_t k = 1;    // key length in bits
};

/// -(1-d)log2(1-d) - d*log2(d/(2^{2k}-1, with the 2^{2k} factor kept in
/// the log domain so large k stays finite. Continuous extension 0 at d=0.
double eve_bound(const EveBoundInput& in);
double eve_bound(double delta, std::size_t k);

/// One decoded trial from the null(h2) evaluation pipeline.
struct CoverageTrial {
    double crossover = 0.0;
    BinVector transmitted;
    std::optional<BinVector> decoded;
};

struct CoverageStat {
    double crossover = 0.0;
    std::size_t trials = 0;
    std::size_t plain_failures = 0;     // decoded != transmitted or no decode
    std::size_t codeword_failures = 0;  // plain failures that are null(h2) words
    std::size_t covered = 0;            // of those, difference in rowspace(h1)
    /// covered / codeword_failures; NaN when the bucket is empty.
    double coverage() const;
};

/// Per-crossover coverage in the C2perp/C1perp quotient, ascending order.
std::vector<CoverageStat> coset_coverage_stats(
    const CssPair& pair, const std::vector<CoverageTrial>& trials);

}  // namespace qcss
