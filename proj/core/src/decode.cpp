#include "qcss/decode.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <stdexcept>

#include "qcss/tanner.hpp"

namespace qcss {

namespace {

double clamp_llr(double x) { return std::clamp(x, -kLlrClamp, kLlrClamp); }

// 2*atanh(t) with saturation; t is a product of tanh values so |t| < 1,
// but guard the poles anyway
double atanh2(double t) {
    if (t >= 1.0) return kLlrClamp;
    if (t <= -1.0) return -kLlrClamp;
    return clamp_llr(2.0 * std::atanh(t));
}

BinVector hard_decide(const std::vector<double>& llr) {
    BinVector w(llr.size());
    for (std::size_t i = 0; i < llr.size(); ++i)
        if (llr[i] < 0.0) w.set(i, true);
    return w;
}

bool syndrome_zero(const TannerGraph& g, const BinVector& w) {
    for (const auto& vars : g.check_vars) {
        bool s = false;
        for (const auto v : vars) s ^= w.get(v);
        if (s) return false;
    }
    return true;
}

// check-major edge layout shared by both schedules
struct EdgeLayout {
    TannerGraph g;
    std::vector<std::size_t> off;                    // per check, size checks+1
    std::vector<std::uint32_t> evar;                 // per edge: its variable
    std::vector<std::uint32_t> echeck;               // per edge: its check
    std::vector<std::vector<std::uint32_t>> vedges;  // per variable: edge ids

    explicit EdgeLayout(const BinMatrix& h) : g(h) {
        off.assign(g.checks + 1, 0);
        for (std::size_t c = 0; c < g.checks; ++c)
            off[c + 1] = off[c] + g.check_vars[c].size();
        evar.resize(off.back());
        echeck.resize(off.back());
        vedges.resize(g.variables);
        for (std::size_t c = 0; c < g.checks; ++c)
            for (std::size_t t = 0; t < g.check_vars[c].size(); ++t) {
                const std::size_t e = off[c] + t;
                evar[e] = g.check_vars[c][t];
                echeck[e] = static_cast<std::uint32_t>(c);
                vedges[g.check_vars[c][t]].push_back(static_cast<std::uint32_t>(e));
            }
    }
};

DecodeResult sp_decode(const BinMatrix& h, const ChannelObservation& obs,
                       std::size_t max_iter, Schedule schedule,
                       std::vector<double>* posteriors) {
    if (obs.size() != h.cols())
        throw std::invalid_argument("sum-product: observation length mismatch");
    const char* flavor =
        schedule == Schedule::flooding ? "sum-product" : "bit-serial";
    const EdgeLayout lay(h);
    const std::size_t n = lay.g.variables, checks = lay.g.checks;
    const std::size_t edges = lay.evar.size();

    std::vector<double> post(obs.llr);
    const auto finish = [&](std::optional<BinVector> w, bool conv,
                            std::size_t iters) {
        if (posteriors) *posteriors = post;
        return DecodeResult{std::move(w), conv, iters, flavor};
    };

    // channel hard decisions may already satisfy every check
    {
        BinVector w = hard_decide(post);
        if (syndrome_zero(lay.g, w)) return finish(std::move(w), true, 0);
    }

    std::vector<double> m_vc(edges);
    for (std::size_t e = 0; e < edges; ++e) m_vc[e] = clamp_llr(obs.llr[lay.evar[e]]);

    std::size_t max_deg = 0;
    for (std::size_t c = 0; c < checks; ++c)
        max_deg = std::max(max_deg, lay.off[c + 1] - lay.off[c]);

    if (schedule == Schedule::flooding) {
        std::vector<double> e_cv(edges, 0.0);
        std::vector<double> fwd(max_deg + 1), th(max_deg);
        for (std::size_t iter = 1; iter <= max_iter; ++iter) {
            for (std::size_t c = 0; c < checks; ++c) {
                const std::size_t b = lay.off[c], d = lay.off[c + 1] - b;
                fwd[0] = 1.0;
                for (std::size_t i = 0; i < d; ++i) {
                    th[i] = std::tanh(0.5 * m_vc[b + i]);
                    fwd[i + 1] = fwd[i] * th[i];
                }
                double bwd = 1.0;
                for (std::size_t i = d; i-- > 0;) {
                    e_cv[b + i] = atanh2(fwd[i] * bwd);
                    bwd *= th[i];
                }
            }
            for (std::size_t v = 0; v < n; ++v) {
                double s = obs.llr[v];
                for (const auto e : lay.vedges[v]) s += e_cv[e];
                post[v] = s;
                for (const auto e : lay.vedges[v]) m_vc[e] = clamp_llr(s - e_cv[e]);
            }
            BinVector w = hard_decide(post);
            if (syndrome_zero(lay.g, w)) return finish(std::move(w), true, iter);
        }
    } else {
        std::size_t max_vdeg = 0;
        for (const auto& ve : lay.vedges) max_vdeg = std::max(max_vdeg, ve.size());
        std::vector<double> e_cv_local(max_vdeg);
        // within a check, edges are ordered by ascending variable index, so when
        // variable v is processed every earlier edge already carries this
        // iteration's value and every later edge still carries the previous one:
        // the outgoing message is (prefix of new) * (suffix of old)
        std::vector<double> suf_old(edges);  // per edge, product of old tanh after it
        std::vector<double> pre_new(checks);
        for (std::size_t iter = 1; iter <= max_iter; ++iter) {
            for (std::size_t c = 0; c < checks; ++c) {
                double run = 1.0;
                for (std::size_t e = lay.off[c + 1]; e-- > lay.off[c];) {
                    suf_old[e] = run;
                    run *= std::tanh(0.5 * m_vc[e]);
                }
                pre_new[c] = 1.0;
            }
            for (std::size_t v = 0; v < n; ++v) {
                const auto& ve = lay.vedges[v];
                for (std::size_t t = 0; t < ve.size(); ++t) {
                    const std::size_t e = ve[t];
                    e_cv_local[t] = atanh2(pre_new[lay.echeck[e]] * suf_old[e]);
                }
                double s = obs.llr[v];
                for (std::size_t t = 0; t < ve.size(); ++t) s += e_cv_local[t];
                post[v] = s;
                for (std::size_t t = 0; t < ve.size(); ++t) {
                    const std::size_t e = ve[t];
                    m_vc[e] = clamp_llr(s - e_cv_local[t]);
                    pre_new[lay.echeck[e]] *= std::tanh(0.5 * m_vc[e]);
                }
            }
            BinVector w = hard_decide(post);
            if (syndrome_zero(lay.g, w)) return finish(std::move(w), true, iter);
        }
    }
    return finish(std::nullopt, false, max_iter);
}

}  // namespace

ChannelObservation ChannelObservation::bsc(const BinVector& received, double eps) {
    if (!(eps >= 0.0 && eps < 0.5))
        throw std::invalid_argument("ChannelObservation::bsc: eps must be in [0, 0.5)");
    const double mag =
        eps == 0.0 ? kLlrClamp : std::min(std::log((1.0 - eps) / eps), kLlrClamp);
    ChannelObservation o;
    o.hard_bits = received;
    o.llr.resize(received.size());
    for (std::size_t i = 0; i < received.size(); ++i)
        o.llr[i] = received.get(i) ? -mag : mag;
    return o;
}

ChannelObservation ChannelObservation::bec(const BinVector& word,
                                           std::vector<std::size_t> erased) {
    std::sort(erased.begin(), erased.end());
    erased.erase(std::unique(erased.begin(), erased.end()), erased.end());
    if (!erased.empty() && erased.back() >= word.size())
        throw std::invalid_argument("ChannelObservation::bec: erasure out of range");
    ChannelObservation o;
    o.hard_bits = word;
    o.llr.assign(word.size(), 0.0);
    for (std::size_t i = 0; i < word.size(); ++i)
        o.llr[i] = word.get(i) ? -kLlrClamp : kLlrClamp;
    for (const auto e : erased) {
        o.hard_bits.set(e, false);
        o.llr[e] = 0.0;
    }
    o.erasures = std::move(erased);
    return o;
}

ChannelObservation ChannelObservation::soft(std::vector<double> llr) {
    ChannelObservation o;
    o.hard_bits = hard_decide(llr);
    o.llr = std::move(llr);
    return o;
}

DecodeResult sum_product_bsc(const BinMatrix& h, const ChannelObservation& obs,
                             std::size_t max_iter,
                             std::vector<double>* posteriors) {
    return sp_decode(h, obs, max_iter, Schedule::flooding, posteriors);
}

DecodeResult bit_serial_sp(const BinMatrix& h, const ChannelObservation& obs,
                           std::size_t max_iter,
                           std::vector<double>* posteriors) {
    return sp_decode(h, obs, max_iter, Schedule::serial, posteriors);
}

double osd_metric(const BinVector& word, const ChannelObservation& obs) {
    if (word.size() != obs.size())
        throw std::invalid_argument("osd_metric: length mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < word.size(); ++i)
        if (word.get(i) != obs.hard_bits.get(i)) m += std::abs(obs.llr[i]);
    return m;
}

BinVector osd(const BinMatrix& gen, const ChannelObservation& obs,
              std::size_t order) {
    const std::size_t g = gen.rows(), n = gen.cols();
    if (obs.size() != n) throw std::invalid_argument("osd: observation length mismatch");
    if (g == 0) return BinVector(n);  // the zero code

    std::vector<double> rel(n);
    for (std::size_t i = 0; i < n; ++i) rel[i] = std::abs(obs.llr[i]);
    std::vector<std::size_t> by_rel(n);
    std::iota(by_rel.begin(), by_rel.end(), 0);
    std::stable_sort(by_rel.begin(), by_rel.end(),
                     [&](std::size_t a, std::size_t b) { return rel[a] > rel[b]; });

    // most reliable basis: reliability-ordered pivoting with full reduction
    BinMatrix G = gen;
    std::vector<char> used(g, 0);
    std::vector<std::size_t> mrb_pos, mrb_row;
    for (const auto pos : by_rel) {
        std::size_t r = g;
        for (std::size_t i = 0; i < g; ++i)
            if (!used[i] && G.get(i, pos)) { r = i; break; }
        if (r == g) continue;
        for (std::size_t i = 0; i < g; ++i)
            if (i != r && G.get(i, pos)) G.xor_rows(i, r);
        used[r] = 1;
        mrb_pos.push_back(pos);
        mrb_row.push_back(r);
        if (mrb_pos.size() == g) break;
    }
    if (mrb_pos.size() < g)
        throw std::invalid_argument("osd: generator rank " +
                                    std::to_string(mrb_pos.size()) + " < rows " +
                                    std::to_string(g));

    BinVector d0(n);
    for (std::size_t t = 0; t < g; ++t)
        if (obs.hard_bits.get(mrb_pos[t])) d0.xor_in(G.row(mrb_row[t]));

    BinVector best = d0;
    double best_metric = osd_metric(d0, obs);
    // weight-ascending, then lexicographic: first strict improvement wins ties
    const std::size_t wmax = std::min(order, g);
    std::vector<std::size_t> combo;
    for (std::size_t w = 1; w <= wmax; ++w) {
        combo.resize(w);
        std::iota(combo.begin(), combo.end(), 0);
        while (true) {
            BinVector cand = d0;
            for (const auto t : combo) cand.xor_in(G.row(mrb_row[t]));
            const double m = osd_metric(cand, obs);
            if (m < best_metric) {
                best_metric = m;
                best = std::move(cand);
            }
            // advance to the next w-combination of [0, g)
            std::size_t i = w;
            bool exhausted = true;
            while (i-- > 0)
                if (combo[i] != g - w + i) { exhausted = false; break; }
            if (exhausted) break;
            ++combo[i];
            for (std::size_t t = i + 1; t < w; ++t) combo[t] = combo[t - 1] + 1;
        }
    }
    return best;
}

CombinedDecoder::CombinedDecoder(BinMatrix h, CombinedParams params)
    : h_(std::move(h)), params_(params) {
    if (!params_.cycles_removed)
        throw std::invalid_argument(
            "CombinedDecoder: preprocess h with remove_4cycles and set cycles_removed");
    const auto basis = nullspace_basis(h_);
    gen_ = BinMatrix(basis.size(), h_.cols());
    for (std::size_t i = 0; i < basis.size(); ++i) gen_.set_row(i, basis[i]);
}

DecodeResult CombinedDecoder::decode(const ChannelObservation& obs) const {
    std::vector<double> post;
    DecodeResult sp = sp_decode(h_, obs, params_.max_iter, params_.schedule, &post);
    const char* base = params_.schedule == Schedule::flooding ? "combined-original"
                                                              : "combined-modified";
    if (sp.converged) {
        sp.flavor = base;
        return sp;
    }
    const ChannelObservation oin = params_.osd_on_channel_llr
                                       ? obs
                                       : ChannelObservation::soft(std::move(post));
    BinVector cand = osd(gen_, oin, params_.order);
    return DecodeResult{std::move(cand), true, sp.iterations,
                        std::string(base) + "+osd"};
}

DecodeResult combined_decode(const BinMatrix& h, const ChannelObservation& obs,
                             const CombinedParams& params) {
    return CombinedDecoder(h, params).decode(obs);
}

PeelingResult bec_peeling(const BinMatrix& h,
                          const std::vector<std::size_t>& erasures,
                          const BinVector& known_bits) {
    if (known_bits.size() != h.cols())
        throw std::invalid_argument("bec_peeling: length mismatch");
    const TannerGraph g(h);
    const std::size_t n = g.variables;

    std::vector<char> erased(n, 0);
    for (const auto e : erasures) {
        if (e >= n) throw std::invalid_argument("bec_peeling: erasure out of range");
        erased[e] = 1;
    }
    BinVector w = known_bits;
    for (std::size_t v = 0; v < n; ++v)
        if (erased[v]) w.set(v, false);

    std::vector<char> par(g.checks, 0);
    std::vector<std::uint32_t> ecount(g.checks, 0);
    for (std::size_t c = 0; c < g.checks; ++c)
        for (const auto v : g.check_vars[c]) {
            if (erased[v]) ++ecount[c];
            else par[c] ^= static_cast<char>(w.get(v));
        }

    std::deque<std::size_t> ready;
    for (std::size_t c = 0; c < g.checks; ++c)
        if (ecount[c] == 1) ready.push_back(c);

    std::size_t steps = 0;
    while (!ready.empty()) {
        const std::size_t c = ready.front();
        ready.pop_front();
        if (ecount[c] != 1) continue;
        std::size_t v = n;
        for (const auto cand : g.check_vars[c])
            if (erased[cand]) { v = cand; break; }
        const bool value = par[c] != 0;
        w.set(v, value);
        erased[v] = 0;
        ++steps;
        for (const auto c2 : g.var_checks[v]) {
            --ecount[c2];
            par[c2] ^= static_cast<char>(value);
            if (ecount[c2] == 1) ready.push_back(c2);
        }
    }

    for (std::size_t c = 0; c < g.checks; ++c)
        if (ecount[c] == 0 && par[c])
            throw std::invalid_argument(
                "bec_peeling: known bits inconsistent with the code");

    PeelingResult out;
    for (std::size_t v = 0; v < n; ++v)
        if (erased[v]) out.residual.variables.push_back(v);
    if (out.residual.variables.empty())
        out.result = DecodeResult{std::move(w), true, steps, "bec-peeling"};
    else
        out.result = DecodeResult{std::nullopt, false, steps, "bec-peeling"};
    return out;
}

DecodeResult bec_ml(const BinMatrix& h, const std::vector<std::size_t>& erasures,
                    const BinVector& known_bits) {
    if (known_bits.size() != h.cols())
        throw std::invalid_argument("bec_ml: length mismatch");
    std::vector<std::size_t> es(erasures);
    std::sort(es.begin(), es.end());
    es.erase(std::unique(es.begin(), es.end()), es.end());
    if (!es.empty() && es.back() >= h.cols())
        throw std::invalid_argument("bec_ml: erasure out of range");

    BinVector w0 = known_bits;
    for (const auto e : es) w0.set(e, false);
    const BinVector s = h.mul(w0);
    const BinMatrix he = h.select_columns(es);
    const auto x = solve(he, s);
    if (!x)
        throw std::invalid_argument("bec_ml: known bits inconsistent with the code");
    if (rank(he) < es.size())
        return DecodeResult{std::nullopt, false, 0, "bec-ml"};  // ambiguous
    BinVector w = w0;
    for (std::size_t t = 0; t < es.size(); ++t)
        if (x->get(t)) w.set(es[t], true);
    return DecodeResult{std::move(w), true, 0, "bec-ml"};
}

BinMatrix transform_for_erasures(const BinMatrix& h,
                                 const std::vector<std::size_t>& erasures) {
    std::vector<std::size_t> es(erasures);
    std::sort(es.begin(), es.end());
    es.erase(std::unique(es.begin(), es.end()), es.end());
    if (!es.empty() && es.back() >= h.cols())
        throw std::invalid_argument("transform_for_erasures: erasure out of range");

    BinMatrix out = h;
    std::vector<char> pivot_row(h.rows(), 0);
    for (const auto col : es) {
        std::size_t r = h.rows();
        for (std::size_t i = 0; i < h.rows(); ++i)
            if (!pivot_row[i] && out.get(i, col)) { r = i; break; }
        if (r == h.rows()) continue;  // weight not reducible past earlier pivots
        for (std::size_t i = 0; i < h.rows(); ++i)
            if (i != r && out.get(i, col)) out.xor_rows(i, r);
        pivot_row[r] = 1;
    }
    return out;
}

DecodeResult approximative_decode(const CssPair& pair,
                                  const std::vector<std::size_t>& error_positions,
                                  const ChannelObservation& obs,
                                  std::size_t max_iter) {
    const ColumnWeightResult cw =
        reduce_column_weights(pair.h2, error_positions, 2);
    const BinMatrix h = remove_4cycles(cw.mat);
    DecodeResult res = sum_product_bsc(h, obs, max_iter);
    res.flavor = "approximative";
    return res;
}

GeneralizedDecoder::GeneralizedDecoder(std::vector<BinMatrix> hs) {
    if (hs.empty())
        throw std::invalid_argument("GeneralizedDecoder: empty matrix list");
    const std::size_t cols = hs.front().cols();
    hs_.reserve(hs.size());
    for (auto& h : hs) {
        if (h.cols() != cols)
            throw std::invalid_argument("GeneralizedDecoder: column count mismatch");
        hs_.push_back(remove_4cycles(h));
    }
    const std::size_t r0 = rank(hs_.front());
    const auto basis0 = nullspace_basis(hs_.front());
    for (std::size_t i = 1; i < hs_.size(); ++i) {
        if (rank(hs_[i]) != r0)
            throw std::invalid_argument("GeneralizedDecoder: matrices not code-equivalent");
        for (const auto& v : basis0)
            if (!hs_[i].mul(v).is_zero())
                throw std::invalid_argument(
                    "GeneralizedDecoder: matrices not code-equivalent");
    }
}

DecodeResult GeneralizedDecoder::decode(const ChannelObservation& obs,
                                        std::size_t max_iter) const {
    struct Cand {
        BinVector w;
        std::size_t votes = 0;
        double metric = 0.0;
        std::size_t first_idx = 0;
        std::size_t iters = 0;
    };
    std::vector<Cand> cands;
    for (std::size_t i = 0; i < hs_.size(); ++i) {
        auto r = sum_product_bsc(hs_[i], obs, max_iter);
        if (!r.converged) continue;
        bool found = false;
        for (auto& c : cands)
            if (c.w == *r.word) {
                ++c.votes;
                found = true;
                break;
            }
        if (!found) {
            const double metric = osd_metric(*r.word, obs);
            cands.push_back(Cand{std::move(*r.word), 1, metric, i, r.iterations});
        }
    }
    if (cands.empty())
        return DecodeResult{std::nullopt, false, max_iter, "generalized"};
    std::size_t best = 0;
    for (std::size_t i = 1; i < cands.size(); ++i) {
        const auto& a = cands[i];
        const auto& b = cands[best];
        if (a.votes > b.votes ||
            (a.votes == b.votes &&
             (a.metric < b.metric ||
              (a.metric == b.metric && a.first_idx < b.first_idx))))
            best = i;
    }
    return DecodeResult{std::move(cands[best].w), true, cands[best].iters,
                        "generalized"};
}

DecodeResult generalized_decode(const std::vector<BinMatrix>& hs,
                                const ChannelObservation& obs,
                                std::size_t max_iter) {
    return GeneralizedDecoder(hs).decode(obs, max_iter);
}

}  // namespace qcss
