#include "qcss/construct.hpp"

#include <algorithm>
#include <stdexcept>

#include "embedded_masks.hpp"
#include "qcss/rng.hpp"

namespace qcss {

namespace {

bool is_odd_prime(std::uint32_t p) {
    if (p < 3 || p % 2 == 0) return false;
    for (std::uint32_t d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

const detail::EmbeddedMask* find_mask(const std::string& id) {
    for (std::size_t i = 0; i < detail::kEmbeddedMaskCount; ++i)
        if (id == detail::kEmbeddedMasks[i].id) return &detail::kEmbeddedMasks[i];
    return nullptr;
}

}  // namespace

LdpcCode build_base(std::uint32_t p, std::uint32_t j, std::uint32_t k) {
    if (!is_odd_prime(p))
        throw std::invalid_argument("build_base: p must be an odd prime");
    if (!(2 <= j && j <= k && k <= p - 1))
        throw std::invalid_argument("build_base: need 2 <= j <= k <= p-1");

    const std::size_t m = std::size_t{p} * j;
    const std::size_t n = std::size_t{p} * (j + k);
    LdpcCode code{BinMatrix(m, n), p, j, k, ""};
    BinMatrix& h = code.h;

    // parity part: T then paired identities marching down the diagonal
    // block row 0: T at block col 0, I at block col 1
    for (std::uint32_t r = 0; r < p; ++r) {
        h.set(r, r, true);                       // T diagonal
        if (r + 1 < p) h.set(r, r + 1, true);    // T superdiagonal
        h.set(r, std::size_t{p} + r, true);      // I at block col 1
    }
    // block rows 1..j-2: I at block cols i and i+1
    for (std::uint32_t i = 1; i + 1 < j; ++i)
        for (std::uint32_t r = 0; r < p; ++r) {
            h.set(std::size_t{i} * p + r, std::size_t{i} * p + r, true);
            h.set(std::size_t{i} * p + r, std::size_t{i + 1} * p + r, true);
        }
    // block row j-1: lone I at block col j-1
    for (std::uint32_t r = 0; r < p; ++r)
        h.set(std::size_t{j - 1} * p + r, std::size_t{j - 1} * p + r, true);

    // data part: block (i, l) is the shift permutation P^(i*l),
    // P being the cyclic down-shift, so entry (r, c) with r = c + i*l mod p
    for (std::uint32_t i = 0; i < j; ++i)
        for (std::uint32_t l = 1; l <= k; ++l) {
            const std::uint32_t shift =
                static_cast<std::uint32_t>((std::uint64_t{i} * l) % p);
            const std::size_t row0 = std::size_t{i} * p;
            const std::size_t col0 = m + std::size_t{l - 1} * p;
            for (std::uint32_t c = 0; c < p; ++c)
                h.set(row0 + (c + shift) % p, col0 + c, true);
        }
    return code;
}

LdpcCode apply_mask(const LdpcCode& code, const MaskMatrix& w) {
    if (w.w.rows() != code.j || w.w.cols() != code.k)
        throw std::invalid_argument("apply_mask: mask shape does not match (j, k)");
    LdpcCode out = code;
    const std::uint32_t p = code.p;
    const std::size_t m = code.m();
    for (std::uint32_t i = 0; i < code.j; ++i)
        for (std::uint32_t l = 1; l <= code.k; ++l) {
            if (w.w.get(i, l - 1)) continue;
            const std::size_t row0 = std::size_t{i} * p;
            const std::size_t col0 = m + std::size_t{l - 1} * p;
            for (std::uint32_t r = 0; r < p; ++r)
                for (std::uint32_t c = 0; c < p; ++c)
                    out.h.set(row0 + r, col0 + c, false);
        }
    out.mask_id = w.id;
    return out;
}

MaskMatrix load_mask(const std::string& id) {
    const auto* e = find_mask(id);
    if (!e) throw std::invalid_argument("load_mask: unknown mask id " + id);
    return MaskMatrix{matrix_from_text(e->text), id};
}

const std::vector<std::string>& mask_ids() {
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> v;
        for (std::size_t i = 0; i < detail::kEmbeddedMaskCount; ++i)
            v.emplace_back(detail::kEmbeddedMasks[i].id);
        return v;
    }();
    return ids;
}

MaskChecksum mask_checksum(const std::string& id) {
    const MaskMatrix m = load_mask(id);
    MaskChecksum c{m.w.rows(), m.w.cols(), {}};
    c.row_weights.reserve(m.w.rows());
    for (std::size_t r = 0; r < m.w.rows(); ++r)
        c.row_weights.push_back(m.w.row_weight(r));
    return c;
}

BinVector efficient_encode(const LdpcCode& code, const BinVector& data) {
    const std::uint32_t p = code.p, j = code.j, k = code.k;
    if (p == 0) throw std::invalid_argument("efficient_encode: not a structured code");
    if (data.size() != std::size_t{p} * k)
        throw std::invalid_argument("efficient_encode: data must have length p*k");

    const std::size_t m = code.m();
    // block-row syndromes of the data part: s_i = H_d(i) * data
    std::vector<BinVector> s(j, BinVector(p));
    for (std::uint32_t i = 0; i < j; ++i) {
        const std::size_t row0 = std::size_t{i} * p;
        for (std::uint32_t l = 0; l < k; ++l) {
            const std::size_t col0 = m + std::size_t{l} * p;
            // skip masked-out blocks; probe one column of the block
            bool empty = true;
            for (std::uint32_t r = 0; r < p && empty; ++r)
                if (code.h.get(row0 + r, col0)) empty = false;
            if (empty) continue;
            const std::uint32_t shift =
                static_cast<std::uint32_t>((std::uint64_t{i} * (l + 1)) % p);
            for (std::uint32_t c = 0; c < p; ++c)
                if (data.get(std::size_t{l} * p + c))
                    s[i].flip((c + shift) % p);
        }
    }

    // back-substitution through the parity blocks, bottom row up
    std::vector<BinVector> par(j, BinVector(p));
    par[j - 1] = s[j - 1];
    for (std::uint32_t i = j - 1; i-- > 1;) {
        par[i] = s[i];
        par[i].xor_in(par[i + 1]);
    }
    // block row 0: T par_0 = s_0 + par_1; T is unit upper bidiagonal
    BinVector rhs = s[0];
    rhs.xor_in(par[1]);
    BinVector& p0 = par[0];
    p0.set(p - 1, rhs.get(p - 1));
    for (std::uint32_t r = p - 1; r-- > 0;)
        p0.set(r, rhs.get(r) ^ p0.get(r + 1));

    BinVector c(code.n());
    for (std::uint32_t i = 0; i < j; ++i)
        for (std::uint32_t r = 0; r < p; ++r)
            if (par[i].get(r)) c.set(std::size_t{i} * p + r, true);
    for (std::size_t t = 0; t < data.size(); ++t)
        if (data.get(t)) c.set(m + t, true);
    return c;
}

BinMatrix near_regular_ldpc(std::size_t n, std::size_t col_weight,
                            std::size_t row_weight, std::uint64_t seed) {
    if (n == 0 || col_weight == 0 || row_weight == 0)
        throw std::invalid_argument("near_regular_ldpc: zero parameter");
    const std::size_t edges = n * col_weight;
    const std::size_t rows = (edges + row_weight / 2) / row_weight;
    if (rows == 0 || col_weight > rows)
        throw std::invalid_argument("near_regular_ldpc: infeasible degree sequence");
    // row degrees are base or base+1; both must stay within one of row_weight
    const std::size_t base = edges / rows;
    const std::size_t hi = edges % rows == 0 ? base : base + 1;
    if (base + 1 < row_weight || hi > row_weight + 1)
        throw std::invalid_argument("near_regular_ldpc: infeasible degree sequence");

    Rng rng(derive_seed(seed, 0x6e726567ull));  // label: near-regular generator
    // socket pool: row r appears deg(r) times
    std::vector<std::uint32_t> sockets;
    sockets.reserve(edges);
    const std::size_t extra = edges % rows;
    for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t deg = base + (r < extra ? 1 : 0);
        for (std::size_t t = 0; t < deg; ++t)
            sockets.push_back(static_cast<std::uint32_t>(r));
    }
    // Fisher-Yates with our own uniform draw, for cross-platform determinism
    for (std::size_t i = sockets.size(); i-- > 1;)
        std::swap(sockets[i], sockets[rng.below(i + 1)]);

    BinMatrix h(rows, n);
    std::size_t cursor = 0;
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t t = 0; t < col_weight; ++t) {
            // take the next socket whose row is not yet used by this column;
            // search forward and swap it into place
            std::size_t pick = cursor;
            while (pick < sockets.size() && h.get(sockets[pick], c)) ++pick;
            if (pick == sockets.size()) {
                // all remaining sockets collide; steal from a random earlier row
                std::uint32_t r;
                do {
                    r = static_cast<std::uint32_t>(rng.below(rows));
                } while (h.get(r, c));
                h.set(r, c, true);
                continue;
            }
            std::swap(sockets[cursor], sockets[pick]);
            h.set(sockets[cursor], c, true);
            ++cursor;
        }
    }
    return h;
}

StructuredEncoder::StructuredEncoder(LdpcCode code) : code_(std::move(code)) {
    if (code_.p == 0)
        throw std::invalid_argument("StructuredEncoder: not a structured code");
}

std::size_t StructuredEncoder::message_length() const {
    return std::size_t{code_.p} * code_.k;
}

std::size_t StructuredEncoder::block_length() const { return code_.n(); }

BinVector StructuredEncoder::encode(const BinVector& msg) const {
    return efficient_encode(code_, msg);
}

SystematicEncoder::SystematicEncoder(const BinMatrix& h)
    : rref_(rref(h)), cols_(h.cols()) {
    if (rref_.rank != h.rows())
        throw std::invalid_argument("SystematicEncoder: matrix is not full row rank");
    std::vector<bool> is_pivot(cols_, false);
    for (std::size_t p : rref_.pivot_cols) is_pivot[p] = true;
    for (std::size_t c = 0; c < cols_; ++c)
        if (!is_pivot[c]) info_cols_.push_back(c);
}

std::size_t SystematicEncoder::message_length() const { return info_cols_.size(); }

std::size_t SystematicEncoder::block_length() const { return cols_; }

BinVector SystematicEncoder::encode(const BinVector& msg) const {
    if (msg.size() != info_cols_.size())
        throw std::invalid_argument("SystematicEncoder: wrong message length");
    BinVector c(cols_);
    for (std::size_t t = 0; t < info_cols_.size(); ++t)
        if (msg.get(t)) c.set(info_cols_[t], true);
    // pivot bits follow from the reduced rows: x[pivot_t] = R_t . c_info
    const BinVector s = rref_.mat.mul(c);
    for (std::size_t t = 0; t < rref_.rank; ++t)
        if (s.get(t)) c.set(rref_.pivot_cols[t], true);
    return c;
}

}  // namespace qcss
