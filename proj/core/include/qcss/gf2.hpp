#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qcss {

/// Dense bit-packed vector over GF(2).
class BinVector {
public:
    BinVector() = default;
    explicit BinVector(std::size_t len) : len_(len), w_(words_for(len), 0) {}

    /// Parses a string of '0'/'1' characters.
    static BinVector from_string(std::string_view bits);

    std::size_t size() const { return len_; }
    bool empty() const { return len_ == 0; }

    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool v) {
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (v) w_[i >> 6] |= mask; else w_[i >> 6] &= ~mask;
    }
    void flip(std::size_t i) { w_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    std::size_t weight() const;
    bool is_zero() const;
    std::vector<std::size_t> support() const;

    /// In-place XOR with a vector of the same length.
    void xor_in(const BinVector& other);
    /// GF(2) inner product.
    bool dot(const BinVector& other) const;

    std::string to_string() const;

    std::span<const std::uint64_t> words() const { return w_; }
    std::span<std::uint64_t> words() { return w_; }

    friend BinVector operator^(BinVector a, const BinVector& b) {
        a.xor_in(b);
        return a;
    }
    bool operator==(const BinVector&) const = default;

    static std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

private:
    std::size_t len_ = 0;
    std::vector<std::uint64_t> w_;
};

/// Dense bit-packed matrix over GF(2). Rows are stored contiguously so
/// row operations (XOR, swap, overlap) work on whole 64-bit words.
class BinMatrix {
public:
    BinMatrix() = default;
    BinMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), wpr_(BinVector::words_for(cols)),
          w_(rows * wpr_, 0) {}

    static BinMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const {
        return (w_[r * wpr_ + (c >> 6)] >> (c & 63)) & 1u;
    }
    void set(std::size_t r, std::size_t c, bool v) {
        const std::uint64_t mask = std::uint64_t{1} << (c & 63);
        if (v) w_[r * wpr_ + (c >> 6)] |= mask;
        else   w_[r * wpr_ + (c >> 6)] &= ~mask;
    }
    void flip(std::size_t r, std::size_t c) {
        w_[r * wpr_ + (c >> 6)] ^= std::uint64_t{1} << (c & 63);
    }

    std::span<const std::uint64_t> row_words(std::size_t r) const {
        return {w_.data() + r * wpr_, wpr_};
    }
    std::span<std::uint64_t> row_words(std::size_t r) {
        return {w_.data() + r * wpr_, wpr_};
    }

    BinVector row(std::size_t r) const;
    void set_row(std::size_t r, const BinVector& v);

    /// dst_row ^= src_row.
    void xor_rows(std::size_t dst, std::size_t src);
    /// dst_row ^= v (v.size() == cols).
    void xor_row_with(std::size_t dst, const BinVector& v);
    void swap_rows(std::size_t a, std::size_t b);

    std::size_t row_weight(std::size_t r) const;
    std::size_t col_weight(std::size_t c) const;
    std::vector<std::size_t> column_weights() const;
    std::size_t total_weight() const;

    /// popcount(row a AND row b).
    std::size_t row_overlap(std::size_t a, std::size_t b) const;

    /// Syndrome m * x^T as a column vector of length rows().
    BinVector mul(const BinVector& x) const;

    BinMatrix transposed() const;

    /// Submatrix keeping the given columns, in the given order.
    BinMatrix select_columns(const std::vector<std::size_t>& cols) const;

    bool operator==(const BinMatrix&) const = default;

private:
    std::size_t rows_ = 0, cols_ = 0, wpr_ = 0;
    std::vector<std::uint64_t> w_;
};

/// Reduced row-echelon form with pivot bookkeeping. Pivoting is
/// leftmost-column, topmost-row, so the result is deterministic.
struct Rref {
    BinMatrix mat;
    std::vector<std::size_t> pivot_cols;  // ascending
    std::size_t rank = 0;
};

Rref rref(const BinMatrix& m);
std::size_t rank(const BinMatrix& m);

/// Basis of {x : m x^T = 0}, one vector per free column, ordered by
/// ascending free-column index. Size is always cols - rank.
std::vector<BinVector> nullspace_basis(const BinMatrix& m);
std::vector<BinVector> nullspace_basis(const Rref& r, std::size_t cols);

/// GF(2) product a*b; throws std::invalid_argument on dimension mismatch.
BinMatrix mat_mul(const BinMatrix& a, const BinMatrix& b);

/// Any particular solution of m x^T = rhs (free variables set to 0), or
/// nullopt when the system is inconsistent.
std::optional<BinVector> solve(const BinMatrix& m, const BinVector& rhs);

/// True iff x is a GF(2) combination of the rows of m.
bool in_rowspace(const BinMatrix& m, const BinVector& x);
/// Same, against a precomputed rref of the matrix.
bool in_rowspace(const Rref& r, const BinVector& x);

// --- shared matrix text format -------------------------------------------
// First line "rows cols", then one line of '0'/'1' characters per row.

std::string to_text(const BinMatrix& m);
BinMatrix matrix_from_text(std::string_view text);
BinMatrix load_matrix(const std::string& path);
void save_matrix(const BinMatrix& m, const std::string& path);

}  // namespace qcss
