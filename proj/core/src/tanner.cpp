#include "qcss/tanner.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace qcss {

TannerGraph::TannerGraph(const BinMatrix& h)
    : variables(h.cols()), checks(h.rows()),
      var_checks(h.cols()), check_vars(h.rows()) {
    for (std::size_t r = 0; r < h.rows(); ++r) {
        auto rw = h.row_words(r);
        for (std::size_t wi = 0; wi < rw.size(); ++wi) {
            std::uint64_t x = rw[wi];
            while (x) {
                const std::size_t c = wi * 64 + std::countr_zero(x);
                x &= x - 1;
                check_vars[r].push_back(static_cast<std::uint32_t>(c));
                var_checks[c].push_back(static_cast<std::uint32_t>(r));
            }
        }
    }
}

std::vector<FourCycle> enumerate_4cycles(const BinMatrix& h) {
    std::vector<FourCycle> cycles;
    std::vector<std::size_t> shared;
    for (std::size_t ca = 0; ca + 1 < h.rows(); ++ca) {
        for (std::size_t cb = ca + 1; cb < h.rows(); ++cb) {
            shared.clear();
            auto wa = h.row_words(ca);
            auto wb = h.row_words(cb);
            for (std::size_t wi = 0; wi < wa.size(); ++wi) {
                std::uint64_t x = wa[wi] & wb[wi];
                while (x) {
                    shared.push_back(wi * 64 + std::countr_zero(x));
                    x &= x - 1;
                }
            }
            for (std::size_t i = 0; i + 1 < shared.size(); ++i)
                for (std::size_t j = i + 1; j < shared.size(); ++j)
                    cycles.push_back({shared[i], shared[j], ca, cb});
        }
    }
    return cycles;
}

std::size_t count_4cycles(const BinMatrix& h) {
    std::size_t n = 0;
    for (std::size_t a = 0; a + 1 < h.rows(); ++a)
        for (std::size_t b = a + 1; b < h.rows(); ++b) {
            const std::size_t ov = h.row_overlap(a, b);
            n += ov * (ov - 1) / 2;
        }
    return n;
}

namespace {

// Change in the global 4-cycle count if row `target` of h were replaced
// by `candidate`. Only pairs involving `target` are affected.
long long cycle_delta(const BinMatrix& h, std::size_t target,
                      const BinVector& candidate) {
    long long delta = 0;
    auto cw = candidate.words();
    for (std::size_t t = 0; t < h.rows(); ++t) {
        if (t == target) continue;
        auto tw = h.row_words(t);
        std::size_t ov_new = 0;
        for (std::size_t i = 0; i < tw.size(); ++i)
            ov_new += std::popcount(tw[i] & cw[i]);
        const std::size_t ov_old = h.row_overlap(t, target);
        delta += static_cast<long long>(ov_new * (ov_new - 1) / 2);
        delta -= static_cast<long long>(ov_old * (ov_old - 1) / 2);
    }
    return delta;
}

}  // namespace

BinMatrix remove_4cycles(const BinMatrix& h, std::size_t max_passes) {
    BinMatrix m = h;
    if (m.rows() < 2) return m;
    std::vector<std::size_t> weights(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) weights[r] = m.row_weight(r);
    std::size_t cycles = count_4cycles(m);

    for (std::size_t pass = 0; pass < max_passes && cycles > 0; ++pass) {
        bool changed = false;
        for (std::size_t a = 0; a + 1 < m.rows() && cycles > 0; ++a) {
            for (std::size_t b = a + 1; b < m.rows(); ++b) {
                if (m.row_overlap(a, b) < 2) continue;
                // heavier row is replaced; ties resolved toward the later row
                const std::size_t target = weights[a] > weights[b] ? a : b;
                const std::size_t other = target == a ? b : a;
                BinVector cand = m.row(target) ^ m.row(other);
                const long long dc = cycle_delta(m, target, cand);
                const long long dw = static_cast<long long>(cand.weight()) -
                                     static_cast<long long>(weights[target]);
                if (dc < 0 || (dc == 0 && dw < 0)) {
                    m.set_row(target, cand);
                    weights[target] = cand.weight();
                    cycles = static_cast<std::size_t>(
                        static_cast<long long>(cycles) + dc);
                    changed = true;
                    if (cycles == 0) break;
                }
            }
        }
        if (!changed) break;
    }
    return m;
}

ColumnWeightResult reduce_column_weights(const BinMatrix& h,
                                         const std::vector<std::size_t>& targets,
                                         std::size_t max_weight) {
    if (max_weight == 0)
        throw std::invalid_argument("reduce_column_weights: max_weight must be >= 1");
    for (std::size_t t : targets)
        if (t >= h.cols())
            throw std::invalid_argument("reduce_column_weights: target out of range");

    BinMatrix m = h;
    std::vector<std::size_t> ordered = targets;
    std::sort(ordered.begin(), ordered.end());
    ordered.erase(std::unique(ordered.begin(), ordered.end()), ordered.end());

    for (std::size_t col : ordered) {
        std::vector<std::size_t> incident;
        for (std::size_t r = 0; r < m.rows(); ++r)
            if (m.get(r, col)) incident.push_back(r);
        if (incident.size() <= max_weight) continue;
        std::size_t pivot = incident[0];
        std::size_t best_w = m.row_weight(pivot);
        for (std::size_t r : incident) {
            const std::size_t w = m.row_weight(r);
            if (w < best_w) { pivot = r; best_w = w; }
        }
        std::size_t remaining = incident.size();
        for (std::size_t r : incident) {
            if (remaining <= max_weight) break;
            if (r == pivot) continue;
            m.xor_rows(r, pivot);
            --remaining;
        }
    }

    ColumnWeightResult out{std::move(m), {}};
    out.achieved.reserve(targets.size());
    for (std::size_t t : targets) out.achieved.push_back(out.mat.col_weight(t));
    return out;
}

}  // namespace qcss
