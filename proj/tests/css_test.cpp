#include <doctest.h>

#include <map>
#include <set>

#include "oracles.hpp"
#include "qcss/construct.hpp"
#include "qcss/css.hpp"

using namespace qcss;

namespace {

CssPair toy_pair() {
    const LdpcCode toy = build_base(3, 2, 2);
    StructuredEncoder enc(toy);
    return build_css(toy.h, enc);
}

/// Small random full-rank pair with a nonzero key length, exhaustively
/// checkable: |C1| = 2^(cols - rows).
CssPair small_pair(std::uint64_t seed, std::size_t rows = 3,
                   std::size_t cols = 8) {
    Rng rng(seed);
    for (;;) {
        const BinMatrix h1 = oracle::random_code(rng, rows, cols, 0.45);
        if (rank(h1) != rows) continue;
        SystematicEncoder enc(h1);
        CssPair pair = build_css(h1, enc);
        if (pair.rank_h2 == rows) return pair;
    }
}

std::vector<BinVector> all_c1_words(const CssPair& pair) {
    return oracle::codewords(pair.h1);
}

}  // namespace

TEST_CASE("build_css on the hand-worked smallest instance") {
    BinMatrix h1(1, 2);
    h1.set(0, 0, true);
    h1.set(0, 1, true);
    SystematicEncoder enc(h1);
    const CssPair pair = build_css(h1, enc);

    REQUIRE(pair.selected_columns.size() == 1);
    CHECK(pair.selected_columns[0] == 0);  // tie broken by index
    CHECK(pair.h2.rows() == 1);
    CHECK(pair.h2.get(0, 0));
    CHECK(pair.h2.get(0, 1));
    CHECK(mat_mul(pair.h1, pair.h2.transposed()).total_weight() == 0);
    CHECK(pair.rank_h2 == 1);
    CHECK(pair.css_dimension() == 0);
}

TEST_CASE("build_css on the toy structured code") {
    const CssPair pair = toy_pair();
    CHECK(pair.h2.rows() == 6);
    CHECK(pair.h2.cols() == 12);
    for (std::size_t r = 0; r < pair.h2.rows(); ++r)
        CHECK(pair.h1.mul(pair.h2.row(r)).is_zero());
    CHECK(mat_mul(pair.h1, pair.h2.transposed()).total_weight() == 0);
    CHECK(pair.css_dimension() == 0);
    CHECK(css_rate(pair) == make_rational(0, 1));
}

TEST_CASE("build_css selects the lightest columns") {
    const CssPair pair = small_pair(77);
    const auto weights = pair.h1.column_weights();
    std::size_t heaviest_selected = 0, lightest_rest = SIZE_MAX;
    std::set<std::size_t> sel(pair.selected_columns.begin(),
                              pair.selected_columns.end());
    for (std::size_t c = 0; c < pair.n(); ++c) {
        if (sel.count(c))
            heaviest_selected = std::max(heaviest_selected, weights[c]);
        else
            lightest_rest = std::min(lightest_rest, weights[c]);
    }
    CHECK(heaviest_selected <= lightest_rest);
    // ascending, no duplicates
    for (std::size_t i = 1; i < pair.selected_columns.size(); ++i)
        CHECK(pair.selected_columns[i - 1] < pair.selected_columns[i]);

    const LdpcCode b08 = apply_mask(build_base(59, 8, 29), load_mask("B/0.8"));
    StructuredEncoder enc(b08);
    const CssPair light = build_css(b08.h, enc, ColumnPick::lightest);
    const CssPair heavy = build_css(b08.h, enc, ColumnPick::heaviest);
    CHECK(light.selected_columns != heavy.selected_columns);
    CHECK(mat_mul(heavy.h1, heavy.h2.transposed()).total_weight() == 0);
}

TEST_CASE("build_css rejects rank-deficient h1 and foreign encoders") {
    BinMatrix h1(2, 4);
    h1.set(0, 0, true);
    h1.set(1, 0, true);  // duplicate rows: rank 1 < 2
    h1.set(0, 1, true);
    h1.set(1, 1, true);
    Rng rng(5);
    BinMatrix other = oracle::random_code(rng, 2, 4, 0.6);
    while (rank(other) != 2) other = oracle::random_code(rng, 2, 4, 0.6);
    SystematicEncoder enc(other);
    CHECK_THROWS(build_css(h1, enc));

    // encoder for a different code of the same shape must be rejected
    BinMatrix h1b = other;
    h1b.flip(0, rank(other) == 2 ? 3 : 0);
    if (rank(h1b) == 2) {
        bool mismatch_caught = false;
        try {
            const CssPair p = build_css(h1b, enc);
            // only reachable if every encoded row happened to satisfy h1b
            mismatch_caught = mat_mul(p.h1, p.h2.transposed()).total_weight() == 0;
        } catch (const std::exception&) {
            mismatch_caught = true;
        }
        CHECK(mismatch_caught);
    }
}

TEST_CASE("css_rate values for the appendix pairs") {
    const LdpcCode b08 = apply_mask(build_base(59, 8, 29), load_mask("B/0.8"));
    StructuredEncoder enc(b08);
    const CssPair pair = build_css(b08.h, enc);
    CHECK(pair.rank_h2 == 472);
    CHECK(css_rate(pair) == make_rational(1239, 2183));
    // equals 2r - 1 exactly: 2*(1711/2183) - 1
    CHECK(css_rate(pair) == make_rational(2 * 1711 - 2183, 2183));
    CHECK(pair.css_dimension() == 1239);

    // rank-0 degenerate: rate (N-M)/N
    CssPair degenerate = pair;
    degenerate.h2 = BinMatrix(472, 2183);
    degenerate.rank_h2 = 0;
    CHECK(css_rate(degenerate) == make_rational(1711, 2183));
}

TEST_CASE("verify_css reports pass and injected faults") {
    const CssPair pair = toy_pair();
    CHECK(verify_css(pair).pass);

    CssPair broken = pair;
    broken.h2.flip(4, 0);  // parity column: now h1*h2' != 0
    const CssReport rep = verify_css(broken);
    CHECK_FALSE(rep.pass);
    REQUIRE(rep.bad_row.has_value());
    CHECK(*rep.bad_row == 4);
}

TEST_CASE("make_key_map kernel and coset constancy") {
    const CssPair pair = small_pair(101);
    const KeyMap km = make_key_map(pair);
    CHECK(km.key_len == pair.css_dimension());
    CHECK(km.key_len > 0);

    Rng rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        // u in C2 => zero key
        BinVector w(pair.n());
        for (std::size_t r = 0; r < pair.h2.rows(); ++r)
            if (rng.next() & 1) w.xor_in(pair.h2.row(r));
        CHECK(km.key(w).is_zero());

        // keys constant on C2 cosets
        const BinVector u = oracle::random_codeword(rng, pair.h1);
        CHECK(km.key(u) == km.key(u ^ w));
    }
}

TEST_CASE("key map buckets C1 into equal cosets, exhaustively") {
    for (const std::uint64_t seed : {101ull, 202ull, 303ull}) {
        const CssPair pair = small_pair(seed);
        const KeyMap km = make_key_map(pair);
        const auto words = all_c1_words(pair);
        REQUIRE(words.size() ==
                1ull << (pair.n() - pair.m()));

        std::map<std::string, std::size_t> buckets;
        for (const auto& u : words) ++buckets[km.key(u).to_string()];
        CHECK(buckets.size() == 1ull << km.key_len);
        const std::size_t c2_size = 1ull << pair.rank_h2;
        for (const auto& [key, count] : buckets) CHECK(count == c2_size);
    }

    // degenerate key length zero on the toy pair: single bucket
    const CssPair toy = toy_pair();
    const KeyMap km = make_key_map(toy);
    CHECK(km.key_len == 0);
    CHECK(km.key(all_c1_words(toy)[5]).size() == 0);
}

TEST_CASE("make_key_map rejects rank deficiency with the measured rank") {
    CssPair pair = toy_pair();
    pair.h2 = BinMatrix(6, 12);  // rank 0
    pair.rank_h2 = 0;
    try {
        make_key_map(pair);
        FAIL("expected rejection");
    } catch (const std::exception& e) {
        CHECK(std::string(e.what()).find("0") != std::string::npos);
    }
}

TEST_CASE("coset_equal examples and brute-force agreement") {
    const CssPair pair = small_pair(55);
    Rng rng(8);
    const BinVector a = oracle::random_codeword(rng, pair.h1);
    CHECK(coset_equal(pair, a, a, CosetMode::c1_mod_c2));
    CHECK(coset_equal(pair, a, a ^ pair.h2.row(1), CosetMode::c1_mod_c2));

    // brute-force coset tables over all codeword pairs
    const auto words = all_c1_words(pair);
    const KeyMap km = make_key_map(pair);
    for (std::size_t i = 0; i < words.size(); ++i)
        for (std::size_t j = 0; j < words.size(); ++j) {
            const bool same =
                coset_equal(pair, words[i], words[j], CosetMode::c1_mod_c2);
            CHECK(same == oracle::in_rowspace_brute(pair.h2, words[i] ^ words[j]));
            CHECK(same == (km.key(words[i]) == km.key(words[j])));
        }

    // C2perp/C1perp side
    const auto perp_words = oracle::codewords(pair.h2);
    for (std::size_t i = 0; i < std::min<std::size_t>(perp_words.size(), 16); ++i)
        for (std::size_t j = 0; j < std::min<std::size_t>(perp_words.size(), 16); ++j)
            CHECK(coset_equal(pair, perp_words[i], perp_words[j],
                              CosetMode::c2perp_mod_c1perp) ==
                  oracle::in_rowspace_brute(pair.h1, perp_words[i] ^ perp_words[j]));

    // membership precondition
    BinVector outside = a;
    bool found_outside = false;
    for (std::size_t i = 0; i < outside.size() && !found_outside; ++i) {
        outside.flip(i);
        if (!pair.h1.mul(outside).is_zero()) found_outside = true;
        else outside.flip(i);
    }
    REQUIRE(found_outside);
    CHECK_THROWS(coset_equal(pair, a, outside, CosetMode::c1_mod_c2));
}
