#pragma once

#include <cstddef>

namespace qcss::detail {

struct EmbeddedMask {
    const char* id;
    const char* text;
};

// generated from masks/*.txt at build time, sorted by id
extern const EmbeddedMask kEmbeddedMasks[];
extern const std::size_t kEmbeddedMaskCount;

}  // namespace qcss::detail
