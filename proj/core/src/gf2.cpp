#include "qcss/gf2.hpp"

#include <bit>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qcss {

namespace {

// Mask that zeroes the unused bits of the last word.
std::uint64_t tail_mask(std::size_t bits) {
    const std::size_t rem = bits & 63;
    return rem == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << rem) - 1;
}

std::size_t popcount_span(std::span<const std::uint64_t> w) {
    std::size_t n = 0;
    for (std::uint64_t x : w) n += std::popcount(x);
    return n;
}

}  // namespace

BinVector BinVector::from_string(std::string_view bits) {
    BinVector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') v.set(i, true);
        else if (bits[i] != '0')
            throw std::invalid_argument("BinVector::from_string: bad character");
    }
    return v;
}

std::size_t BinVector::weight() const { return popcount_span(w_); }

bool BinVector::is_zero() const {
    for (std::uint64_t x : w_) if (x) return false;
    return true;
}

std::vector<std::size_t> BinVector::support() const {
    std::vector<std::size_t> out;
    for (std::size_t wi = 0; wi < w_.size(); ++wi) {
        std::uint64_t x = w_[wi];
        while (x) {
            out.push_back(wi * 64 + std::countr_zero(x));
            x &= x - 1;
        }
    }
    return out;
}

void BinVector::xor_in(const BinVector& other) {
    if (other.len_ != len_)
        throw std::invalid_argument("BinVector::xor_in: length mismatch");
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= other.w_[i];
}

bool BinVector::dot(const BinVector& other) const {
    if (other.len_ != len_)
        throw std::invalid_argument("BinVector::dot: length mismatch");
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < w_.size(); ++i) acc ^= w_[i] & other.w_[i];
    return std::popcount(acc) & 1;
}

std::string BinVector::to_string() const {
    std::string s(len_, '0');
    for (std::size_t i = 0; i < len_; ++i)
        if (get(i)) s[i] = '1';
    return s;
}

BinMatrix BinMatrix::identity(std::size_t n) {
    BinMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

BinVector BinMatrix::row(std::size_t r) const {
    BinVector v(cols_);
    auto src = row_words(r);
    std::copy(src.begin(), src.end(), v.words().begin());
    return v;
}

void BinMatrix::set_row(std::size_t r, const BinVector& v) {
    if (v.size() != cols_)
        throw std::invalid_argument("BinMatrix::set_row: length mismatch");
    auto dst = row_words(r);
    std::copy(v.words().begin(), v.words().end(), dst.begin());
}

void BinMatrix::xor_rows(std::size_t dst, std::size_t src) {
    auto* d = w_.data() + dst * wpr_;
    const auto* s = w_.data() + src * wpr_;
    for (std::size_t i = 0; i < wpr_; ++i) d[i] ^= s[i];
}

void BinMatrix::xor_row_with(std::size_t dst, const BinVector& v) {
    if (v.size() != cols_)
        throw std::invalid_argument("BinMatrix::xor_row_with: length mismatch");
    auto* d = w_.data() + dst * wpr_;
    auto s = v.words();
    for (std::size_t i = 0; i < wpr_; ++i) d[i] ^= s[i];
}

void BinMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    auto* pa = w_.data() + a * wpr_;
    auto* pb = w_.data() + b * wpr_;
    for (std::size_t i = 0; i < wpr_; ++i) std::swap(pa[i], pb[i]);
}

std::size_t BinMatrix::row_weight(std::size_t r) const {
    return popcount_span(row_words(r));
}

std::size_t BinMatrix::col_weight(std::size_t c) const {
    std::size_t n = 0;
    for (std::size_t r = 0; r < rows_; ++r) n += get(r, c);
    return n;
}

std::vector<std::size_t> BinMatrix::column_weights() const {
    std::vector<std::size_t> w(cols_, 0);
    for (std::size_t r = 0; r < rows_; ++r) {
        auto rw = row_words(r);
        for (std::size_t wi = 0; wi < wpr_; ++wi) {
            std::uint64_t x = rw[wi];
            while (x) {
                ++w[wi * 64 + std::countr_zero(x)];
                x &= x - 1;
            }
        }
    }
    return w;
}

std::size_t BinMatrix::total_weight() const { return popcount_span(w_); }

std::size_t BinMatrix::row_overlap(std::size_t a, std::size_t b) const {
    const auto* pa = w_.data() + a * wpr_;
    const auto* pb = w_.data() + b * wpr_;
    std::size_t n = 0;
    for (std::size_t i = 0; i < wpr_; ++i) n += std::popcount(pa[i] & pb[i]);
    return n;
}

BinVector BinMatrix::mul(const BinVector& x) const {
    if (x.size() != cols_)
        throw std::invalid_argument("BinMatrix::mul: length mismatch");
    BinVector s(rows_);
    auto xw = x.words();
    for (std::size_t r = 0; r < rows_; ++r) {
        const auto* p = w_.data() + r * wpr_;
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < wpr_; ++i) acc ^= p[i] & xw[i];
        if (std::popcount(acc) & 1) s.set(r, true);
    }
    return s;
}

BinMatrix BinMatrix::transposed() const {
    BinMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        auto rw = row_words(r);
        for (std::size_t wi = 0; wi < wpr_; ++wi) {
            std::uint64_t x = rw[wi];
            while (x) {
                t.set(wi * 64 + std::countr_zero(x), r, true);
                x &= x - 1;
            }
        }
    }
    return t;
}

BinMatrix BinMatrix::select_columns(const std::vector<std::size_t>& cols) const {
    BinMatrix out(rows_, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j] >= cols_)
            throw std::invalid_argument("BinMatrix::select_columns: index out of range");
        for (std::size_t r = 0; r < rows_; ++r)
            if (get(r, cols[j])) out.set(r, j, true);
    }
    return out;
}

Rref rref(const BinMatrix& m) {
    Rref out{m, {}, 0};
    BinMatrix& a = out.mat;
    std::size_t next = 0;
    for (std::size_t c = 0; c < a.cols() && next < a.rows(); ++c) {
        std::size_t pivot = next;
        while (pivot < a.rows() && !a.get(pivot, c)) ++pivot;
        if (pivot == a.rows()) continue;
        a.swap_rows(next, pivot);
        for (std::size_t r = 0; r < a.rows(); ++r)
            if (r != next && a.get(r, c)) a.xor_rows(r, next);
        out.pivot_cols.push_back(c);
        ++next;
    }
    out.rank = out.pivot_cols.size();
    return out;
}

std::size_t rank(const BinMatrix& m) { return rref(m).rank; }

std::vector<BinVector> nullspace_basis(const Rref& r, std::size_t cols) {
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t p : r.pivot_cols) is_pivot[p] = true;
    std::vector<BinVector> basis;
    basis.reserve(cols - r.rank);
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        BinVector x(cols);
        x.set(f, true);
        for (std::size_t t = 0; t < r.rank; ++t)
            if (r.mat.get(t, f)) x.set(r.pivot_cols[t], true);
        basis.push_back(std::move(x));
    }
    return basis;
}

std::vector<BinVector> nullspace_basis(const BinMatrix& m) {
    return nullspace_basis(rref(m), m.cols());
}

BinMatrix mat_mul(const BinMatrix& a, const BinMatrix& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("mat_mul: dimension mismatch");
    BinMatrix c(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        auto rw = a.row_words(r);
        for (std::size_t wi = 0; wi < rw.size(); ++wi) {
            std::uint64_t x = rw[wi];
            while (x) {
                const std::size_t k = wi * 64 + std::countr_zero(x);
                x &= x - 1;
                auto dst = c.row_words(r);
                auto src = b.row_words(k);
                for (std::size_t i = 0; i < dst.size(); ++i) dst[i] ^= src[i];
            }
        }
    }
    return c;
}

std::optional<BinVector> solve(const BinMatrix& m, const BinVector& rhs) {
    if (rhs.size() != m.rows())
        throw std::invalid_argument("solve: rhs length mismatch");
    BinMatrix a = m;
    BinVector b = rhs;
    std::vector<std::size_t> pivot_cols;
    std::size_t next = 0;
    for (std::size_t c = 0; c < a.cols() && next < a.rows(); ++c) {
        std::size_t pivot = next;
        while (pivot < a.rows() && !a.get(pivot, c)) ++pivot;
        if (pivot == a.rows()) continue;
        a.swap_rows(next, pivot);
        if (pivot != next) {
            const bool t = b.get(next);
            b.set(next, b.get(pivot));
            b.set(pivot, t);
        }
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r != next && a.get(r, c)) {
                a.xor_rows(r, next);
                if (b.get(next)) b.flip(r);
            }
        }
        pivot_cols.push_back(c);
        ++next;
    }
    // rows beyond the rank must have zero rhs, else inconsistent
    for (std::size_t r = pivot_cols.size(); r < a.rows(); ++r)
        if (b.get(r)) return std::nullopt;
    BinVector x(m.cols());
    for (std::size_t t = 0; t < pivot_cols.size(); ++t)
        if (b.get(t)) x.set(pivot_cols[t], true);
    return x;
}

bool in_rowspace(const Rref& r, const BinVector& x) {
    if (x.size() != r.mat.cols())
        throw std::invalid_argument("in_rowspace: length mismatch");
    BinVector y = x;
    for (std::size_t t = 0; t < r.rank; ++t)
        if (y.get(r.pivot_cols[t])) y.xor_in(r.mat.row(t));
    return y.is_zero();
}

bool in_rowspace(const BinMatrix& m, const BinVector& x) {
    return in_rowspace(rref(m), x);
}

std::string to_text(const BinMatrix& m) {
    std::string out = std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
    out.reserve(out.size() + m.rows() * (m.cols() + 1));
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c)
            out.push_back(m.get(r, c) ? '1' : '0');
        out.push_back('\n');
    }
    return out;
}

BinMatrix matrix_from_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::size_t rows = 0, cols = 0;
    if (!(in >> rows >> cols))
        throw std::invalid_argument("matrix text: bad header");
    BinMatrix m(rows, cols);
    std::string line;
    std::getline(in, line);  // rest of header line
    for (std::size_t r = 0; r < rows; ++r) {
        if (!std::getline(in, line))
            throw std::invalid_argument("matrix text: missing row " + std::to_string(r));
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.size() != cols)
            throw std::invalid_argument("matrix text: row " + std::to_string(r) +
                                        " has length " + std::to_string(line.size()));
        for (std::size_t c = 0; c < cols; ++c) {
            if (line[c] == '1') m.set(r, c, true);
            else if (line[c] != '0')
                throw std::invalid_argument("matrix text: bad character in row " +
                                            std::to_string(r));
        }
    }
    return m;
}

BinMatrix load_matrix(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return matrix_from_text(ss.str());
}

void save_matrix(const BinMatrix& m, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << to_text(m);
}

}  // namespace qcss
