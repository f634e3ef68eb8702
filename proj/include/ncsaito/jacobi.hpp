#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "ncsaito/cyclic.hpp"
#include "ncsaito/derive.hpp"
#include "ncsaito/series.hpp"

namespace ncsaito {

inline constexpr std::int64_t kDefaultSizeGuard = 1 << 22;

// Enumerates the words of degree <= level over n generators: degree first,
// then lexicographic, matching the global term order.
class WordIndexer {
public:
    WordIndexer(int nvars, int level);

    std::int64_t total() const { return offsets_.back(); }
    std::int64_t index(const Word& w) const;
    Word word(std::int64_t idx) const;
    std::int64_t degree_offset(int d) const { return offsets_[d]; }
    std::int64_t words_of_degree(int d) const { return offsets_[d + 1] - offsets_[d]; }

private:
    int nvars_;
    int level_;
    std::vector<std::int64_t> offsets_;  // offsets_[d] = #words of degree < d
};

// Sparse vector over word indices.
using SparseRow = std::map<std::int64_t, Rat>;

// Incremental reduced row echelon basis of a subspace of F/m^{level+1},
// rows keyed by their pivot index.
class RowBasis {
public:
    // Reduces r against the basis in place; returns the remainder.
    SparseRow reduce(SparseRow r) const;
    // Reduces and, if nonzero, inserts (pivot coefficient normalized to 1,
    // existing rows back-substituted). Returns true when the rank grew.
    bool insert(SparseRow r);
    bool contains(const SparseRow& r) const { return reduce(r).empty(); }
    std::size_t rank() const { return rows_.size(); }
    const std::map<std::int64_t, SparseRow>& rows() const { return rows_; }

private:
    std::map<std::int64_t, SparseRow> rows_;
};

// Row-reduced basis of (J + m^{level+1})/m^{level+1} for the two-sided ideal
// J generated by the given series.
class TruncatedIdeal {
public:
    TruncatedIdeal(int nvars, int level, WordIndexer indexer, RowBasis basis)
        : nvars_(nvars), level_(level), indexer_(std::move(indexer)), basis_(std::move(basis)) {}

    int nvars() const { return nvars_; }
    int level() const { return level_; }
    const WordIndexer& indexer() const { return indexer_; }
    const RowBasis& basis() const { return basis_; }

    bool contains(const Series& f) const;
    Series reduce(const Series& f) const;
    std::size_t rank() const { return basis_.rank(); }

private:
    int nvars_;
    int level_;
    WordIndexer indexer_;
    RowBasis basis_;
};

SparseRow series_to_row(const Series& f, const WordIndexer& indexer);
Series row_to_series(const SparseRow& r, const WordIndexer& indexer, int nvars, int trunc);

// [D_1 Phi, ..., D_n Phi].
std::vector<Series> jacobi_generators(const Superpotential& phi);

// Span of { u g v : g in gens, deg(u) + ord(g) + deg(v) <= level }, truncated
// at the level. Throws Error(LevelTooLarge) when the monomial basis exceeds
// the guard.
TruncatedIdeal ideal_span(const std::vector<Series>& gens, int nvars, int level,
                          std::int64_t size_guard = kDefaultSizeGuard);

struct JacobiReport {
    bool finite = false;
    int nil_degree = 0;         // minimal N with m^N contained in J, when finite
    std::int64_t dimension = 0; // dim of the Jacobi algebra, when finite
    std::vector<Word> normal_words;
    int searched_to = 0;        // highest level examined
};

// Searches N = 1..n_max for the first N with every degree-N word inside the
// ideal span at level N; failure is inconclusive, not a disproof.
JacobiReport finite_dim_certificate(const Superpotential& phi, int n_max,
                                    std::int64_t size_guard = kDefaultSizeGuard);

// Residue of [Theta] in HH_0 of the Jacobi algebra of Phi: the canonical
// representative of Theta reduced modulo the canonicalized ideal rows.
// Zero iff [Theta] = 0. Throws Error(NotCertifiedFinite) unless the report
// certifies finiteness.
Series class_in_hh0(const Superpotential& theta, const Superpotential& phi,
                    const JacobiReport& report,
                    std::int64_t size_guard = kDefaultSizeGuard);

// True iff [Phi] = 0 in HH_0, i.e. Phi lies in pi(J(F, Phi)).
bool is_quasi_homogeneous(const Superpotential& phi, const JacobiReport& report,
                          std::int64_t size_guard = kDefaultSizeGuard);

}  // namespace ncsaito
