#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "qcss/gf2.hpp"

namespace qcss {

/// Structured irregular LDPC code: H = [H_p | H_d] built from an odd
/// prime p and block parameters 2 <= j <= k <= p-1. H_p is the M x M
/// parity part (T and paired identity blocks), H_d the M x N-M data part
/// of shift-permutation blocks, optionally masked.
struct LdpcCode {
    BinMatrix h;
    std::uint32_t p = 0;
    std::uint32_t j = 0;
    std::uint32_t k = 0;
    std::string mask_id;  // empty when unmasked

    std::size_t n() const { return h.cols(); }
    std::size_t m() const { return h.rows(); }
};

struct MaskMatrix {
    BinMatrix w;  // j x k; entry 1 keeps the block, 0 zeroes it
    std::string id;
};

/// Builds the unmasked base matrix for (p, j, k).
/// Throws std::invalid_argument when p is not an odd prime or the
/// constraint 2 <= j <= k <= p-1 fails.
LdpcCode build_base(std::uint32_t p, std::uint32_t j, std::uint32_t k);

/// Zeroes every data block (i, l) whose mask entry w(i, l-1) is 0.
LdpcCode apply_mask(const LdpcCode& code, const MaskMatrix& w);

/// Masking matrices shipped with the library. Known ids:
/// A/0.82, A/3-4, A/2-3, A/0.55, B/0.8, B/0.55.
MaskMatrix load_mask(const std::string& id);
const std::vector<std::string>& mask_ids();

/// Transcription checksums for a shipped mask: shape plus per-row weights.
struct MaskChecksum {
    std::size_t rows = 0, cols = 0;
    std::vector<std::size_t> row_weights;
};
MaskChecksum mask_checksum(const std::string& id);

/// Encodes p*k data bits into a codeword (parity || data) by block
/// back-substitution through H_p; cost is linear in the matrix weight.
BinVector efficient_encode(const LdpcCode& code, const BinVector& data);

/// Random LDPC matrix with every column weight col_weight and row
/// weights within one of row_weight. Deterministic given the seed.
BinMatrix near_regular_ldpc(std::size_t n, std::size_t col_weight,
                            std::size_t row_weight, std::uint64_t seed);

/// Maps information words of length block_length - rows(h) to codewords.
class Encoder {
public:
    virtual ~Encoder() = default;
    virtual std::size_t message_length() const = 0;
    virtual std::size_t block_length() const = 0;
    virtual BinVector encode(const BinVector& msg) const = 0;
};

/// Back-substitution encoder for codes from build_base / apply_mask.
class StructuredEncoder final : public Encoder {
public:
    explicit StructuredEncoder(LdpcCode code);
    std::size_t message_length() const override;
    std::size_t block_length() const override;
    BinVector encode(const BinVector& msg) const override;

private:
    LdpcCode code_;
};

/// Gaussian-elimination systematic encoder for an arbitrary full-row-rank
/// parity-check matrix. Information positions are the non-pivot columns.
class SystematicEncoder final : public Encoder {
public:
    explicit SystematicEncoder(const BinMatrix& h);
    std::size_t message_length() const override;
    std::size_t block_length() const override;
    BinVector encode(const BinVector& msg) const override;
    const std::vector<std::size_t>& info_positions() const { return info_cols_; }

private:
    Rref rref_;
    std::size_t cols_ = 0;
    std::vector<std::size_t> info_cols_;
};

}  // namespace qcss
