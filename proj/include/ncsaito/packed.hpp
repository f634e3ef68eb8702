#pragma once

// Internal packed-index representation for dense truncated series work.
// Words of degree d are ranked base-n; indices are offset by degree so the
// packed order coincides with the global degree-then-lex term order.

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "ncsaito/series.hpp"

namespace ncsaito::detail {

struct Packer {
    int n = 0;
    int trunc = 0;
    bool ok = false;
    std::vector<std::int64_t> offsets;  // offsets[d] = #words of degree < d
    std::vector<std::int64_t> pow;      // pow[d] = n^d

    Packer(int nvars, int trunc);

    std::int64_t pack(const Word& w) const;
    Word unpack(std::int64_t idx, int deg) const;
};

struct PackedTerm {
    std::int64_t idx;
    int deg;
    Rat c;
};

using PackedSeries = std::vector<PackedTerm>;

PackedSeries pack_series(const Series::TermMap& terms, const Packer& p);
void unpack_into(const PackedSeries& terms, const Packer& p, Series::TermMap& out);
PackedSeries finalize(std::unordered_map<std::int64_t, Rat>& acc, const Packer& p);
PackedSeries add_packed(const PackedSeries& a, const PackedSeries& b);
PackedSeries mul_packed(const PackedSeries& a, const PackedSeries& b, const Packer& p,
                        int budget);

}  // namespace ncsaito::detail
