#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qcss/css.hpp"
#include "qcss/gf2.hpp"

namespace qcss {

/// Message magnitude cap; keeps tanh/atanh away from their saturation poles.
inline constexpr double kLlrClamp = 30.0;

/// Soft channel output. Convention: llr = ln(P(bit=0)/P(bit=1)), so a
/// positive value favors 0. BSC observations carry constant magnitude
/// ln((1-eps)/eps) (capped at kLlrClamp, which also covers eps = 0);
/// erased positions carry llr exactly 0.
struct ChannelObservation {
    BinVector hard_bits;
    std::vector<double> llr;
    std::vector<std::size_t> erasures;  // sorted; empty on the BSC

    static ChannelObservation bsc(const BinVector& received, double eps);
    static ChannelObservation bec(const BinVector& word,
                                  std::vector<std::size_t> erased);
    /// Arbitrary per-bit reliabilities; hard bits are re-derived from signs.
    static ChannelObservation soft(std::vector<double> llr);

    std::size_t size() const { return hard_bits.size(); }
};

struct DecodeResult {
    std::optional<BinVector> word;  // nullopt on failure
    bool converged = false;         // all parity checks of the decoding matrix hold
    std::size_t iterations = 0;
    std::string flavor;
};

enum class Schedule { flooding, serial };

/// Flooding-schedule sum-product decoding with zero-syndrome stopping.
/// When posteriors is non-null it receives the final per-bit LLRs.
DecodeResult sum_product_bsc(const BinMatrix& h, const ChannelObservation& obs,
                             std::size_t max_iter,
                             std::vector<double>* posteriors = nullptr);

/// Serial (shuffled) schedule: variables updated in ascending order, check
/// messages refreshed immediately from the current state.
DecodeResult bit_serial_sp(const BinMatrix& h, const ChannelObservation& obs,
                           std::size_t max_iter,
                           std::vector<double>* posteriors = nullptr);

/// Order-w OSD over the code spanned by the rows of gen (which must be
/// independent). Reprocesses every error pattern of weight <= order on the
/// most reliable basis, weight ascending then lexicographic, and returns
/// the candidate with the smallest soft discrepancy against obs.
BinVector osd(const BinMatrix& gen, const ChannelObservation& obs,
              std::size_t order);

/// Soft discrepancy sum over positions where word disagrees with obs.
double osd_metric(const BinVector& word, const ChannelObservation& obs);

struct CombinedParams {
    std::size_t max_iter = 256;
    std::size_t order = 2;
    Schedule schedule = Schedule::flooding;  // flooding = original, serial = modified
    bool cycles_removed = false;   // caller's assertion that remove_4cycles ran on h
    bool osd_on_channel_llr = false;  // default feeds SP posteriors to OSD
};

/// Sum-product plus OSD fallback. Precomputes the nullspace generator of h,
/// so one instance amortizes across Monte-Carlo trials.
class CombinedDecoder {
public:
    CombinedDecoder(BinMatrix h, CombinedParams params);
    DecodeResult decode(const ChannelObservation& obs) const;
    const BinMatrix& matrix() const { return h_; }

private:
    BinMatrix h_;
    BinMatrix gen_;
    CombinedParams params_;
};

DecodeResult combined_decode(const BinMatrix& h, const ChannelObservation& obs,
                             const CombinedParams& params);

/// Residual of a failed peeling run; every check touching it does so twice+.
struct StoppingSet {
    std::vector<std::size_t> variables;  // ascending
};

struct PeelingResult {
    DecodeResult result;
    StoppingSet residual;  // empty on success
};

/// Iteratively solves checks with exactly one erased neighbor. known_bits
/// values at erased positions are ignored. Rejects inputs whose non-erased
/// bits are provably inconsistent with every codeword.
PeelingResult bec_peeling(const BinMatrix& h,
                          const std::vector<std::size_t>& erasures,
                          const BinVector& known_bits);

/// Exact erasure decoding: solves the linear system on the erased columns.
/// Unique solution -> success; ambiguous -> failure; inconsistent -> reject.
DecodeResult bec_ml(const BinMatrix& h, const std::vector<std::size_t>& erasures,
                    const BinVector& known_bits);

/// Row operations driving each erased column toward weight 1 (ascending
/// index, full column clearing); columns whose pivots are exhausted stay at
/// their minimum achieved weight. Nullspace preserved.
BinMatrix transform_for_erasures(const BinMatrix& h,
                                 const std::vector<std::size_t>& erasures);

/// Genie-aided evaluation of null(h2) on the BSC: reduce the weights of the
/// columns that actually carry errors, remove 4-cycles, then run flooding
/// sum-product on the transformed matrix. Simulation-only by design.
DecodeResult approximative_decode(const CssPair& pair,
                                  const std::vector<std::size_t>& error_positions,
                                  const ChannelObservation& obs,
                                  std::size_t max_iter);

/// Majority vote over several parity-check matrices of one code. The
/// constructor removes 4-cycles from each matrix and verifies pairwise
/// nullspace equality, rejecting mismatched inputs.
class GeneralizedDecoder {
public:
    explicit GeneralizedDecoder(std::vector<BinMatrix> hs);
    DecodeResult decode(const ChannelObservation& obs, std::size_t max_iter) const;
    const std::vector<BinMatrix>& matrices() const { return hs_; }

private:
    std::vector<BinMatrix> hs_;
};

DecodeResult generalized_decode(const std::vector<BinMatrix>& hs,
                                const ChannelObservation& obs,
                                std::size_t max_iter);

}  // namespace qcss
