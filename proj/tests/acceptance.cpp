// Acceptance gate: every release-blocking claim, one PASS/FAIL line each.
// Exits nonzero when any criterion fails. Tolerances are pinned below and
// are not configurable on purpose.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qcss/bb84.hpp"
#include "qcss/css.hpp"
#include "qcss/decode.hpp"
#include "qcss/experiment.hpp"
#include "qcss/gf2.hpp"
#include "qcss/rng.hpp"

using namespace qcss;

namespace {

// --- pinned tolerances and frozen experiment parameters ---------------------

constexpr double kEveBoundRef = 1.79248;   // eve_bound(0.5, 1)
constexpr double kEveBoundTol = 1e-5;

constexpr std::size_t kErasureInstances = 1200;  // >= 1000 required
constexpr std::size_t kOsdCodes = 50;
constexpr std::size_t kOsdObsPerCode = 100;

// Schedule separation: C2perp/C1perp coset decoding of the (3,15) n=480 pair.
// The two points sit in the measured waterfall of this code instance
// (original-combined coset BLER ~0.21 and ~0.34); the published curves use a
// different instance, so only the direction is checked. Paired one-sided
// exact McNemar at alpha = 0.05 per point, pairing justified by trial seeds
// that do not depend on the decoder choice.
constexpr double kC5Crossovers[2] = {0.0075, 0.01};
constexpr std::size_t kC5Trials = 2000;  // per point, >= 2000 required
constexpr std::size_t kC5MaxIter = 256;
constexpr std::size_t kC5OsdOrder = 2;
constexpr std::uint64_t kC5Seed = 2026;
constexpr double kC5Alpha = 0.05;

constexpr std::size_t kBb84Noiseless = 1000;
constexpr std::size_t kBb84Perturbed = 1000;
constexpr std::size_t kBb84NoisyRuns = 100;
constexpr double kBb84NoisyEps = 0.04;
constexpr std::size_t kBb84NoisyAgreeMin = 99;

struct Gate {
    int failed = 0;

    void report(int idx, const std::string& name, bool ok,
                const std::string& detail, double secs) {
        std::printf("%s  C%d %-22s %s  [%.1fs]\n", ok ? "PASS" : "FAIL", idx,
                    name.c_str(), detail.c_str(), secs);
        std::fflush(stdout);
        if (!ok) ++failed;
    }

    template <typename Fn>
    void run(int idx, const std::string& name, Fn&& fn) {
        const auto t0 = std::chrono::steady_clock::now();
        bool ok = false;
        std::string detail;
        try {
            ok = fn(detail);
        } catch (const std::exception& e) {
            ok = false;
            detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        report(idx, name, ok, detail, secs);
    }
};

// P(Bin(D, 1/2) <= k), exact; D stays far below long-double overflow here
double binom_tail_le(std::size_t d, std::size_t k) {
    long double coef = 1.0L, sum = 1.0L;
    for (std::size_t i = 1; i <= k; ++i) {
        coef = coef * static_cast<long double>(d - i + 1) / static_cast<long double>(i);
        sum += coef;
    }
    long double p = sum;
    for (std::size_t i = 0; i < d; ++i) p *= 0.5L;
    return static_cast<double>(p);
}

BinVector random_combination(Rng& rng, const std::vector<BinVector>& basis,
                             std::size_t len) {
    BinVector w(len);
    for (const auto& b : basis)
        if (rng.next() & 1) w.xor_in(b);
    return w;
}

// --- criteria ---------------------------------------------------------------

bool c1_construction(std::string& detail) {
    const CatalogReport rep = verify_catalog();
    std::size_t pass = 0;
    for (const auto& c : rep.codes) pass += c.pass;
    detail = std::to_string(pass) + "/" + std::to_string(rep.codes.size()) +
             " codes exact";
    if (!rep.pass)
        for (const auto& c : rep.codes)
            for (const auto& f : c.failures) detail += "; " + c.code_id + ": " + f;
    return rep.pass && rep.codes.size() == 10;
}

bool c2_css_identity(std::string& detail) {
    std::size_t checked = 0;
    for (const auto& entry : builtin_catalog()) {
        const BuiltCode code = build_code(entry);
        const CssPair pair = build_pair(code);
        const CssReport rep = verify_css(pair);
        if (!rep.pass || !rep.product_zero) {
            detail = entry.id + ": h1*h2^T != O";
            return false;
        }
        const std::size_t n = pair.n(), m = pair.m();
        if (pair.rank_h2 == m) {
            // css_rate = 2r - 1 with r = (n-m)/n
            const Rational want = make_rational(
                2 * static_cast<std::int64_t>(n - m) - static_cast<std::int64_t>(n),
                static_cast<std::int64_t>(n));
            if (!(css_rate(pair) == want)) {
                detail = entry.id + ": css_rate != 2r-1";
                return false;
            }
        }
        if (entry.id == "b08") {
            // rounds to the published 0.56 for the B/0.8 pair
            if (!(css_rate(pair) == make_rational(21, 37)) ||
                std::fabs(css_rate(pair).value() - 0.5676) > 5e-5) {
                detail = "b08 css rate != 21/37";
                return false;
            }
        }
        ++checked;
    }
    detail = "h1*h2^T = O and rate 2r-1 on " + std::to_string(checked) + " codes";
    return checked == 10;
}

bool c3_erasure_equivalence(std::string& detail) {
    Rng rng(13371);
    std::size_t ml_ok_count = 0, peel_ok_count = 0;
    for (std::size_t inst = 0; inst < kErasureInstances; ++inst) {
        const std::size_t n = 8 + rng.below(23);       // 8..30
        const std::size_t rows = 2 + rng.below(n - 3); // 2..n-2
        const BinMatrix h = oracle::random_code(rng, rows, n);
        const BinVector u = oracle::random_codeword(rng, h);
        std::vector<std::size_t> erased;
        for (std::size_t i = 0; i < n; ++i)
            if (rng.uniform() < 0.25) erased.push_back(i);
        const ChannelObservation obs = ChannelObservation::bec(u, erased);

        const DecodeResult ml = bec_ml(h, obs.erasures, obs.hard_bits);
        const BinMatrix ht = transform_for_erasures(h, obs.erasures);
        const PeelingResult peel = bec_peeling(ht, obs.erasures, obs.hard_bits);

        if (ml.converged != peel.result.converged) {
            detail = "instance " + std::to_string(inst) +
                     ": peel-after-transform and ML disagree on success";
            return false;
        }
        if (ml.converged) {
            ++ml_ok_count;
            if (!(*ml.word == *peel.result.word && *ml.word == u)) {
                detail = "instance " + std::to_string(inst) + ": outputs differ";
                return false;
            }
        }
        peel_ok_count += peel.result.converged;
    }
    detail = std::to_string(kErasureInstances) + " instances, " +
             std::to_string(ml_ok_count) + " uniquely decodable, 0 mismatches";
    return ml_ok_count == peel_ok_count && ml_ok_count > 0 &&
           ml_ok_count < kErasureInstances;  // both outcomes exercised
}

bool c4_osd_oracle(std::string& detail) {
    Rng rng(90210);
    std::size_t codes = 0, observations = 0;
    while (codes < kOsdCodes) {
        const std::size_t n = 10 + rng.below(13);  // 10..22
        const std::size_t rows = n - 4 - rng.below(7);
        const BinMatrix h = oracle::random_code(rng, rows, n);
        const auto basis = nullspace_basis(h);
        const std::size_t dim = basis.size();
        if (dim < 3 || dim > 10) continue;
        BinMatrix gen(dim, n);
        for (std::size_t r = 0; r < dim; ++r) gen.set_row(r, basis[r]);
        const auto words = oracle::codewords(h);

        for (std::size_t t = 0; t < kOsdObsPerCode; ++t) {
            const BinVector sent = random_combination(rng, basis, n);
            const ChannelObservation obs = oracle::noisy_soft_obs(rng, sent, 0.2);
            const oracle::MlAnswer ml = oracle::ml_decode(words, obs);

            const BinVector full = osd(gen, obs, dim);  // full reprocessing
            if (std::fabs(osd_metric(full, obs) - ml.best) > 1e-9 ||
                (ml.unique && !(full == ml.word))) {
                detail = "code " + std::to_string(codes) + " obs " +
                         std::to_string(t) + ": full-order OSD != ML";
                return false;
            }
            const double m0 = osd_metric(osd(gen, obs, 0), obs);
            const double m2 = osd_metric(osd(gen, obs, 2), obs);
            if (m2 > m0 + 1e-12) {
                detail = "order-2 metric worse than order-0";
                return false;
            }
            ++observations;
        }
        ++codes;
    }
    detail = std::to_string(codes) + " codes x " +
             std::to_string(kOsdObsPerCode) + " observations, OSD == ML";
    return observations == kOsdCodes * kOsdObsPerCode;
}

SweepResult c5_sweep(const std::string& decoder) {
    SweepConfig cfg;
    cfg.code_id = "reg480";
    cfg.mode = EvalMode::c2perp_coset;
    cfg.decoder = decoder;
    cfg.max_iter = kC5MaxIter;
    cfg.osd_order = kC5OsdOrder;
    cfg.crossovers.assign(std::begin(kC5Crossovers), std::end(kC5Crossovers));
    cfg.trials = kC5Trials;
    cfg.seed = kC5Seed;
    cfg.per_trial_rows = true;
    return run_sweep(cfg);
}

bool c5_schedule_direction(std::string& detail,
                          std::vector<const SweepResult*>& dominance_pool,
                          SweepResult& orig_out, SweepResult& mod_out) {
    orig_out = c5_sweep("combined-original");
    mod_out = c5_sweep("combined-modified");
    dominance_pool.push_back(&orig_out);
    dominance_pool.push_back(&mod_out);

    std::ostringstream d;
    bool ok = true;
    for (std::size_t pi = 0; pi < 2; ++pi) {
        std::size_t n01 = 0, n10 = 0;  // modified worse / modified better
        for (std::size_t t = 0; t < kC5Trials; ++t) {
            const TrialRecord& ro = orig_out.records[pi * kC5Trials + t];
            const TrialRecord& rm = mod_out.records[pi * kC5Trials + t];
            if (ro.trial_seed != rm.trial_seed)
                throw std::logic_error("sweep pairing broke");
            n01 += ro.coset_success && !rm.coset_success;
            n10 += !ro.coset_success && rm.coset_success;
        }
        const std::size_t dd = n01 + n10;
        const double p = dd == 0 ? 0.0 : binom_tail_le(dd, n01);
        const bool point_ok = dd == 0 || p <= kC5Alpha;
        ok = ok && point_ok;
        if (pi) d << "; ";
        d << "eps " << kC5Crossovers[pi] << ": "
          << orig_out.points[pi].coset_failures << " vs "
          << mod_out.points[pi].coset_failures << " failures, n01=" << n01
          << " n10=" << n10 << " p=" << p;
    }
    detail = d.str();
    return ok;
}

bool c6_coset_dominance(std::string& detail,
                        std::vector<const SweepResult*> pool,
                        SweepResult& extra) {
    SweepConfig cfg;  // an independent plain-SP sweep joins the pool
    cfg.code_id = "b08";
    cfg.mode = EvalMode::c1_coset;
    cfg.crossovers = {0.015, 0.02};
    cfg.trials = 250;
    cfg.seed = 7;
    extra = run_sweep(cfg);
    pool.push_back(&extra);

    std::size_t points = 0;
    for (const SweepResult* res : pool)
        for (const auto& p : res->points) {
            if (p.coset_failures > p.plain_failures) {
                detail = "coset successes < plain successes at eps " +
                         std::to_string(p.crossover);
                return false;
            }
            ++points;
        }

    // injected faults: decoder output u + (row of h1) must land in the same
    // C2perp/C1perp coset and be counted as covered
    const BuiltCode mini = build_code(*find_code("mini08"));
    const CssPair pair = build_pair(mini);
    Rng rng(606);
    std::vector<CoverageTrial> trials;
    for (std::size_t t = 0; t < 200; ++t) {
        const BinVector u = random_combination(rng, pair.g2perp, pair.n());
        BinVector dec = u;
        dec.xor_in(pair.h1.row(rng.below(pair.m())));
        trials.push_back({0.05, u, dec});
    }
    const auto stats = coset_coverage_stats(pair, trials);
    if (stats.size() != 1 || stats[0].trials != 200 ||
        stats[0].plain_failures != 200 || stats[0].codeword_failures != 200 ||
        stats[0].covered != 200 || stats[0].coverage() != 1.0) {
        detail = "injected h1-row faults not fully covered";
        return false;
    }
    detail = std::to_string(points) + " sweep points dominated; 200/200 injected"
             " faults covered";
    return points > 0;
}

bool c7_eve_bound(std::string& detail) {
    const double v = eve_bound(0.5, 1);
    if (std::fabs(v - kEveBoundRef) > kEveBoundTol) {
        detail = "eve_bound(0.5, 1) = " + std::to_string(v);
        return false;
    }
    // monotone on (0, 1/2]: d/ddelta = log2((1-delta)/delta) + log2(4^k - 1)
    // is positive there for every k >= 1 (the bound does taper off as
    // delta -> 1, so the grid stops at the regime the bound is used in)
    for (const std::size_t k : {1u, 16u, 712u}) {
        double prev = eve_bound(1e-9, k);
        for (int i = 1; i <= 100; ++i) {  // 100-point grid in delta
            const double delta = 0.5 * i / 100.0;
            const double cur = eve_bound(delta, k);
            if (!std::isfinite(cur) || cur <= prev) {
                detail = "not increasing in delta at k=" + std::to_string(k);
                return false;
            }
            prev = cur;
        }
    }
    double prevk = 0.0;
    for (std::size_t k = 1; k <= 100; ++k) {  // and in key length
        const double cur = eve_bound(0.3, k);
        if (!std::isfinite(cur) || cur <= prevk) {
            detail = "not increasing in k";
            return false;
        }
        prevk = cur;
    }
    if (!std::isfinite(eve_bound(1.0 - 1e-12, 712))) {
        detail = "log-domain evaluation not finite at k=712";
        return false;
    }

    // measured-vs-published framing: the report prints both columns
    SweepResult c1s, c2s;
    c1s.cfg.mode = EvalMode::c1_coset;
    c2s.cfg.mode = EvalMode::c2perp_coset;
    PointSummary p;
    p.trials = 1000;
    p.crossover = 0.065;
    p.coset_failures = 2;
    c1s.points.push_back(p);
    c2s.points.push_back(p);
    p.crossover = 0.0675;
    p.coset_failures = 11;
    c1s.points.push_back(p);
    c2s.points.push_back(p);
    const EveReport rep =
        report_eve(c1s, c2s, 712, {{0.065, 0.5936}, {0.0675, 6.312}});
    const std::string text = rep.text();
    if (text.find("0.5936") == std::string::npos ||
        text.find("6.312") == std::string::npos) {
        detail = "report does not print the supplied reference bounds";
        return false;
    }
    detail = "eve_bound(0.5,1) = " + std::to_string(v) +
             "; monotone; finite at k=712; references printed";
    return true;
}

bool c8_bb84(std::string& detail) {
    const BuiltCode mini = build_code(*find_code("mini08"));
    const CssPair pair = build_pair(mini);
    const KeyMap keymap = make_key_map(pair);

    std::size_t noiseless = 0;
    for (std::size_t i = 0; i < kBb84Noiseless; ++i) {
        const ProtocolRun run = run_protocol(pair, keymap, 0.0,
                                             {Schedule::flooding, 100},
                                             derive_seed(901, i));
        noiseless += run.agreed && run.bob_key && *run.bob_key == run.alice_key;
    }
    if (noiseless != kBb84Noiseless) {
        detail = "noiseless agreement " + std::to_string(noiseless) + "/" +
                 std::to_string(kBb84Noiseless);
        return false;
    }

    // decoder output shifted by a C2 element: same coset, same key
    Rng rng(909);
    std::size_t perturbed = 0;
    std::vector<BinVector> h2rows;
    for (std::size_t r = 0; r < pair.h2.rows(); ++r)
        h2rows.push_back(pair.h2.row(r));
    for (std::size_t i = 0; i < kBb84Perturbed; ++i) {
        const BinVector u = random_combination(rng, pair.g1, pair.n());
        const BinVector shifted = u ^ random_combination(rng, h2rows, pair.n());
        perturbed += coset_equal(pair, u, shifted, CosetMode::c1_mod_c2) &&
                     keymap.key(u) == keymap.key(shifted);
    }
    if (perturbed != kBb84Perturbed) {
        detail = "C2-perturbed agreement " + std::to_string(perturbed) + "/" +
                 std::to_string(kBb84Perturbed);
        return false;
    }

    const BuiltCode big = build_code(*find_code("b055"));
    const CssPair bigpair = build_pair(big);
    const KeyMap bigmap = make_key_map(bigpair);
    std::size_t noisy = 0;
    for (std::size_t i = 0; i < kBb84NoisyRuns; ++i) {
        const ProtocolRun run = run_protocol(bigpair, bigmap, kBb84NoisyEps,
                                             {Schedule::flooding, 200},
                                             derive_seed(902, i));
        noisy += run.agreed && run.bob_key && *run.bob_key == run.alice_key;
    }
    detail = "noiseless " + std::to_string(noiseless) + "/1000, C2-perturbed " +
             std::to_string(perturbed) + "/1000, b055@0.04 " +
             std::to_string(noisy) + "/100";
    return noisy >= kBb84NoisyAgreeMin;
}

bool c9_reproducibility(std::string& detail) {
    SweepConfig cfg;
    cfg.code_id = "b08";
    cfg.mode = EvalMode::c1_coset;
    cfg.crossovers = {0.01, 0.02};
    cfg.trials = 250;
    cfg.seed = 42;
    cfg.per_trial_rows = true;
    const SweepResult a = run_sweep(cfg);
    const SweepResult b = run_sweep(cfg);
    const bool ok = a.summary_csv() == b.summary_csv() &&
                    a.trials_csv() == b.trials_csv();
    detail = ok ? "summary and per-trial CSV byte-identical across two runs"
                : "CSV outputs differ between identical runs";
    return ok;
}

}  // namespace

int main() {
    Gate gate;
    std::vector<const SweepResult*> dominance_pool;
    SweepResult c5_orig, c5_mod, c6_extra;

    gate.run(1, "construction-fidelity", c1_construction);
    gate.run(2, "css-identity", c2_css_identity);
    gate.run(3, "erasure-equivalence", c3_erasure_equivalence);
    gate.run(4, "osd-vs-ml", c4_osd_oracle);
    gate.run(5, "schedule-separation", [&](std::string& d) {
        return c5_schedule_direction(d, dominance_pool, c5_orig, c5_mod);
    });
    gate.run(6, "coset-dominance", [&](std::string& d) {
        return c6_coset_dominance(d, dominance_pool, c6_extra);
    });
    gate.run(7, "eve-bound", c7_eve_bound);
    gate.run(8, "bb84-end-to-end", c8_bb84);
    gate.run(9, "reproducibility", c9_reproducibility);

    if (gate.failed) {
        std::printf("acceptance: %d criterion(s) FAILED\n", gate.failed);
        return 1;
    }
    std::printf("acceptance: all criteria passed\n");
    return 0;
}
