#include "qcss/css.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qcss {

namespace {

// first set bit at position >= from, or len when none
std::size_t first_set_from(const BinVector& v, std::size_t from) {
    const auto w = v.words();
    std::size_t wi = from >> 6;
    if (wi >= w.size()) return v.size();
    std::uint64_t cur = w[wi] & (~std::uint64_t{0} << (from & 63));
    while (true) {
        if (cur) {
            const std::size_t bit = (wi << 6) + std::countr_zero(cur);
            return bit < v.size() ? bit : v.size();
        }
        if (++wi == w.size()) return v.size();
        cur = w[wi];
    }
}

}  // namespace

Rational make_rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
    if (den < 0) { num = -num; den = -den; }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
    return Rational{num, den};
}

CssPair build_css(const BinMatrix& h1, const Encoder& encoder, ColumnPick pick) {
    const std::size_t m = h1.rows(), n = h1.cols();
    if (m >= n) throw std::invalid_argument("build_css: h1 must have more columns than rows");

    CssPair pair;
    pair.h1 = h1;
    pair.rref1 = rref(h1);
    if (pair.rref1.rank != m)
        throw std::invalid_argument("build_css: h1 rank deficient (rank " +
                                    std::to_string(pair.rref1.rank) + " of " +
                                    std::to_string(m) + ")");
    if (encoder.message_length() != n - m || encoder.block_length() != n)
        throw std::invalid_argument("build_css: encoder dimensions do not match h1");

    const std::vector<std::size_t> weights = h1.column_weights();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (weights[a] != weights[b])
            return pick == ColumnPick::lightest ? weights[a] < weights[b]
                                                : weights[a] > weights[b];
        return a < b;
    });
    pair.selected_columns.assign(order.begin(), order.begin() + (n - m));
    std::sort(pair.selected_columns.begin(), pair.selected_columns.end());

    pair.h2 = BinMatrix(m, n);
    for (std::size_t r = 0; r < m; ++r) {
        BinVector msg(n - m);
        for (std::size_t t = 0; t < pair.selected_columns.size(); ++t)
            if (h1.get(r, pair.selected_columns[t])) msg.set(t, true);
        const BinVector cw = encoder.encode(msg);
        if (cw.size() != n)
            throw std::invalid_argument("build_css: encoder emitted wrong length");
        pair.h2.set_row(r, cw);
    }

    // the CSS identity h1 * h2^T = O, i.e. every h2 row is a C1 codeword
    const BinMatrix prod = mat_mul(h1, pair.h2.transposed());
    for (std::size_t c = 0; c < m; ++c)
        for (std::size_t r = 0; r < m; ++r)
            if (prod.get(r, c))
                throw std::invalid_argument(
                    "build_css: encoder inconsistent with h1 (h2 row " +
                    std::to_string(c) + " violates a parity check)");

    pair.rref2 = rref(pair.h2);
    pair.rank_h2 = pair.rref2.rank;
    pair.g1 = nullspace_basis(pair.rref1, n);
    pair.g2perp = nullspace_basis(pair.rref2, n);
    return pair;
}

Rational css_rate(const CssPair& pair) {
    return make_rational(
        static_cast<std::int64_t>(pair.n() - pair.m() - pair.rank_h2),
        static_cast<std::int64_t>(pair.n()));
}

CssReport verify_css(const BinMatrix& h1, const BinMatrix& h2) {
    CssReport rep;
    if (h1.cols() != h2.cols() || h1.rows() == 0) return rep;
    const BinMatrix prod = mat_mul(h1, h2.transposed());
    rep.product_zero = true;
    for (std::size_t c = 0; c < h2.rows() && !rep.bad_row; ++c)
        for (std::size_t r = 0; r < h1.rows(); ++r)
            if (prod.get(r, c)) {
                rep.product_zero = false;
                rep.bad_row = c;
                break;
            }
    rep.rank_h2 = rank(h2);
    const std::size_t nm = h2.cols() - h1.rows();
    rep.css_dimension = nm >= rep.rank_h2 ? nm - rep.rank_h2 : 0;
    rep.pass = rep.product_zero;
    return rep;
}

CssReport verify_css(const CssPair& pair) { return verify_css(pair.h1, pair.h2); }

KeyMap make_key_map(const CssPair& pair) {
    const std::size_t m = pair.m(), n = pair.n();
    if (pair.rank_h2 != m)
        throw std::invalid_argument("make_key_map: rank(h2) = " +
                                    std::to_string(pair.rank_h2) +
                                    ", need full rank " + std::to_string(m));

    // Dual construction: rows of h1 span C1perp, a subspace of null(h2).
    // Extending that basis by null(h2) vectors yields n-2m functionals that
    // vanish on C2 = rowspace(h2) and separate the C2 cosets inside C1.
    std::vector<BinVector> rows;
    std::vector<std::ptrdiff_t> row_with_pivot(n, -1);
    rows.reserve(n - m);
    for (std::size_t r = 0; r < pair.rref1.rank; ++r) {
        rows.push_back(pair.rref1.mat.row(r));
        row_with_pivot[pair.rref1.pivot_cols[r]] = static_cast<std::ptrdiff_t>(r);
    }

    KeyMap km;
    km.key_len = n - 2 * m;
    km.map = BinMatrix(km.key_len, n);
    std::size_t accepted = 0;
    for (const BinVector& v0 : pair.g2perp) {
        BinVector v = v0;
        // each stored row has zeros before its pivot, so the lead only moves right
        std::size_t lead = first_set_from(v, 0);
        while (lead < n && row_with_pivot[lead] >= 0) {
            v.xor_in(rows[static_cast<std::size_t>(row_with_pivot[lead])]);
            lead = first_set_from(v, lead + 1);
        }
        if (lead == n) continue;  // already spanned
        row_with_pivot[lead] = static_cast<std::ptrdiff_t>(rows.size());
        rows.push_back(v);
        if (accepted < km.key_len) km.map.set_row(accepted, v);
        ++accepted;
    }
    if (accepted != km.key_len)
        throw std::logic_error("make_key_map: extension produced " +
                               std::to_string(accepted) + " rows, expected " +
                               std::to_string(km.key_len));
    return km;
}

bool coset_equal(const CssPair& pair, const BinVector& a, const BinVector& b,
                 CosetMode mode) {
    if (a.size() != pair.n() || b.size() != pair.n())
        throw std::invalid_argument("coset_equal: vector length mismatch");
    if (mode == CosetMode::c1_mod_c2) {
        if (!pair.h1.mul(a).is_zero() || !pair.h1.mul(b).is_zero())
            throw std::invalid_argument("coset_equal: inputs must lie in C1");
        return in_rowspace(pair.rref2, a ^ b);
    }
    if (!pair.h2.mul(a).is_zero() || !pair.h2.mul(b).is_zero())
        throw std::invalid_argument("coset_equal: inputs must lie in null(h2)");
    return in_rowspace(pair.rref1, a ^ b);
}

}  // namespace qcss
