#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qcss/construct.hpp"
#include "qcss/gf2.hpp"

namespace qcss {

/// Exact rate bookkeeping; always stored reduced with a positive denominator.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    friend bool operator==(const Rational&, const Rational&) = default;
};
Rational make_rational(std::int64_t num, std::int64_t den);

enum class ColumnPick { lightest, heaviest };

/// Nested code pair: C1 = null(h1), C2 = rowspace(h2) with rows of h2
/// codewords of C1, so C2 is contained in C1. C2perp = null(h2).
/// Reduced forms and bases are cached for coset tests and key extraction.
struct CssPair {
    BinMatrix h1;
    BinMatrix h2;
    std::vector<std::size_t> selected_columns;  // ascending; the H1' columns
    std::size_t rank_h2 = 0;
    Rref rref1;  // rowspace(h1) membership
    Rref rref2;  // rowspace(h2) membership
    std::vector<BinVector> g1;       // basis of C1
    std::vector<BinVector> g2perp;   // basis of C2perp

    std::size_t n() const { return h1.cols(); }
    std::size_t m() const { return h1.rows(); }
    std::size_t css_dimension() const { return (n() - m()) - rank_h2; }
};

/// Selects the n-m lightest columns of h1 (ties by ascending index), reads
/// each h1 row restricted to those columns as an information vector, and
/// encodes it to a C1 codeword; the codewords are the rows of h2.
/// The pick flag flips the selection to the heaviest columns for comparison.
/// Throws when h1 is rank deficient or the encoder emits a non-codeword.
CssPair build_css(const BinMatrix& h1, const Encoder& encoder,
                  ColumnPick pick = ColumnPick::lightest);

/// ((n-m) - rank(h2)) / n; equals 2*rate(C1) - 1 when rank(h2) = m.
Rational css_rate(const CssPair& pair);

struct CssReport {
    bool pass = false;
    bool product_zero = false;                 // h1 * h2^T == O
    std::optional<std::size_t> bad_row;        // first h2 row outside null(h1)
    std::size_t rank_h2 = 0;
    std::size_t css_dimension = 0;
};
CssReport verify_css(const BinMatrix& h1, const BinMatrix& h2);
CssReport verify_css(const CssPair& pair);

/// Linear coset labeling: key(u) = map * u is constant on cosets of C2 and,
/// restricted to C1, has kernel exactly C2 and full rank key_len.
struct KeyMap {
    std::size_t key_len = 0;
    BinMatrix map;  // key_len x n

    BinVector key(const BinVector& u) const { return map.mul(u); }
};

/// Requires rank(h2) = m; rejects otherwise, reporting the measured rank.
KeyMap make_key_map(const CssPair& pair);

enum class CosetMode { c1_mod_c2, c2perp_mod_c1perp };

/// c1_mod_c2: a, b must lie in C1; equal iff a+b in rowspace(h2).
/// c2perp_mod_c1perp: a, b must lie in null(h2); equal iff a+b in rowspace(h1).
bool coset_equal(const CssPair& pair, const BinVector& a, const BinVector& b,
                 CosetMode mode);

}  // namespace qcss
