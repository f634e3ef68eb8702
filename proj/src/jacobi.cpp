#include "ncsaito/jacobi.hpp"

#include <algorithm>

namespace ncsaito {

WordIndexer::WordIndexer(int nvars, int level) : nvars_(nvars), level_(level) {
    offsets_.assign(static_cast<std::size_t>(level) + 2, 0);
    std::int64_t count = 1;
    for (int d = 0; d <= level; ++d) {
        offsets_[static_cast<std::size_t>(d) + 1] = offsets_[static_cast<std::size_t>(d)] + count;
        count *= nvars;
    }
}

std::int64_t WordIndexer::index(const Word& w) const {
    const int d = static_cast<int>(w.size());
    if (d > level_)
        throw Error(ErrorCode::InvalidArgument, "word degree exceeds indexer level");
    std::int64_t v = 0;
    for (int letter : w) v = v * nvars_ + letter;
    return offsets_[static_cast<std::size_t>(d)] + v;
}

Word WordIndexer::word(std::int64_t idx) const {
    int d = 0;
    while (d < level_ && idx >= offsets_[static_cast<std::size_t>(d) + 1]) ++d;
    std::int64_t v = idx - offsets_[static_cast<std::size_t>(d)];
    Word w(static_cast<std::size_t>(d));
    for (int k = d; k-- > 0;) {
        w[static_cast<std::size_t>(k)] = static_cast<int>(v % nvars_);
        v /= nvars_;
    }
    return w;
}

SparseRow RowBasis::reduce(SparseRow r) const {
    auto it = r.begin();
    while (it != r.end()) {
        auto p = rows_.find(it->first);
        if (p == rows_.end()) {
            ++it;
            continue;
        }
        const Rat c = it->second;
        const std::int64_t here = it->first;
        for (const auto& [idx, val] : p->second) {
            auto [slot, inserted] = r.emplace(idx, 0);
            slot->second -= c * val;
            if (slot->second == 0) r.erase(slot);
        }
        it = r.upper_bound(here);
    }
    return r;
}

bool RowBasis::insert(SparseRow r) {
    r = reduce(std::move(r));
    if (r.empty()) return false;
    const std::int64_t pivot = r.begin()->first;
    const Rat lead = r.begin()->second;
    for (auto& [idx, val] : r) val /= lead;
    // Keep the basis fully reduced.
    for (auto& [p, row] : rows_) {
        auto hit = row.find(pivot);
        if (hit == row.end()) continue;
        const Rat c = hit->second;
        for (const auto& [idx, val] : r) {
            auto [slot, inserted] = row.emplace(idx, 0);
            slot->second -= c * val;
            if (slot->second == 0) row.erase(slot);
        }
    }
    rows_.emplace(pivot, std::move(r));
    return true;
}

SparseRow series_to_row(const Series& f, const WordIndexer& indexer) {
    SparseRow r;
    for (const auto& [w, c] : f.terms()) r.emplace(indexer.index(w), c);
    return r;
}

Series row_to_series(const SparseRow& r, const WordIndexer& indexer, int nvars, int trunc) {
    Series f(nvars, trunc);
    for (const auto& [idx, c] : r) f.add_term(indexer.word(idx), c);
    return f;
}

bool TruncatedIdeal::contains(const Series& f) const {
    return basis_.contains(series_to_row(f.truncated(level_), indexer_));
}

Series TruncatedIdeal::reduce(const Series& f) const {
    SparseRow rem = basis_.reduce(series_to_row(f.truncated(level_), indexer_));
    return row_to_series(rem, indexer_, nvars_, f.trunc());
}

std::vector<Series> jacobi_generators(const Superpotential& phi) {
    std::vector<Series> gens;
    gens.reserve(static_cast<std::size_t>(phi.nvars()));
    for (int i = 0; i < phi.nvars(); ++i) gens.push_back(cyclic_derivative(phi, i));
    return gens;
}

TruncatedIdeal ideal_span(const std::vector<Series>& gens, int nvars, int level,
                          std::int64_t size_guard) {
    WordIndexer indexer(nvars, level);
    if (indexer.total() > size_guard)
        throw Error(ErrorCode::LevelTooLarge, "monomial basis exceeds the size guard");

    RowBasis basis;
    for (const Series& g : gens) {
        if (g.is_zero()) continue;
        const int ord = g.order();
        if (ord > level) continue;
        // All products u g v with deg(u) + ord(g) + deg(v) <= level.
        for (int du = 0; du + ord <= level; ++du) {
            for (int dv = 0; du + ord + dv <= level; ++dv) {
                const std::int64_t u_begin = indexer.degree_offset(du);
                const std::int64_t u_count = indexer.words_of_degree(du);
                const std::int64_t v_begin = indexer.degree_offset(dv);
                const std::int64_t v_count = indexer.words_of_degree(dv);
                for (std::int64_t ui = 0; ui < u_count; ++ui) {
                    Word u = indexer.word(u_begin + ui);
                    for (std::int64_t vi = 0; vi < v_count; ++vi) {
                        Word v = indexer.word(v_begin + vi);
                        SparseRow row;
                        for (const auto& [gw, gc] : g.terms()) {
                            if (du + static_cast<int>(gw.size()) + dv > level) break;
                            Word w = u;
                            w.insert(w.end(), gw.begin(), gw.end());
                            w.insert(w.end(), v.begin(), v.end());
                            auto [slot, inserted] = row.emplace(indexer.index(w), gc);
                            if (!inserted) {
                                slot->second += gc;
                                if (slot->second == 0) row.erase(slot);
                            }
                        }
                        basis.insert(std::move(row));
                    }
                }
            }
        }
    }
    return TruncatedIdeal(nvars, level, std::move(indexer), std::move(basis));
}

JacobiReport finite_dim_certificate(const Superpotential& phi, int n_max,
                                    std::int64_t size_guard) {
    if (phi.is_zero())
        throw Error(ErrorCode::ZeroPotential, "certificate of the zero superpotential");
    std::vector<Series> gens = jacobi_generators(phi);

    JacobiReport report;
    for (int level = 1; level <= n_max; ++level) {
        report.searched_to = level;
        TruncatedIdeal span = ideal_span(gens, phi.nvars(), level, size_guard);
        const WordIndexer& indexer = span.indexer();
        bool covered = true;
        for (std::int64_t i = 0; i < indexer.words_of_degree(level); ++i) {
            SparseRow row{{indexer.degree_offset(level) + i, Rat(1)}};
            if (!span.basis().contains(row)) {
                covered = false;
                break;
            }
        }
        if (!covered) continue;

        // m^level is inside J; the Jacobi algebra is (F/m^level) / image of J.
        report.finite = true;
        report.nil_degree = level;
        TruncatedIdeal quotient_span =
            ideal_span(gens, phi.nvars(), level - 1, size_guard);
        const WordIndexer& qindexer = quotient_span.indexer();
        std::vector<bool> is_pivot(static_cast<std::size_t>(qindexer.total()), false);
        for (const auto& [pivot, row] : quotient_span.basis().rows())
            is_pivot[static_cast<std::size_t>(pivot)] = true;
        for (std::int64_t i = 0; i < qindexer.total(); ++i)
            if (!is_pivot[static_cast<std::size_t>(i)]) report.normal_words.push_back(qindexer.word(i));
        report.dimension = static_cast<std::int64_t>(report.normal_words.size());
        return report;
    }
    return report;
}

Series class_in_hh0(const Superpotential& theta, const Superpotential& phi,
                    const JacobiReport& report, std::int64_t size_guard) {
    if (!report.finite)
        throw Error(ErrorCode::NotCertifiedFinite,
                    "Jacobi algebra is not certified finite dimensional");
    const Series& rep = theta.rep();
    const int level = std::max(report.nil_degree, std::max(rep.max_degree(), 0));

    std::vector<Series> gens = jacobi_generators(phi);
    TruncatedIdeal span = ideal_span(gens, phi.nvars(), level, size_guard);
    WordIndexer indexer(phi.nvars(), level);

    // Necklace coordinates: canonicalizing the ideal rows collapses the
    // commutator span for free.
    RowBasis cyc_basis;
    for (const auto& [pivot, row] : span.basis().rows()) {
        Series row_series = row_to_series(row, indexer, phi.nvars(), level);
        cyc_basis.insert(series_to_row(canonicalize(row_series).rep(), indexer));
    }
    SparseRow residue = cyc_basis.reduce(series_to_row(rep.truncated(level), indexer));
    return row_to_series(residue, indexer, phi.nvars(), phi.trunc());
}

bool is_quasi_homogeneous(const Superpotential& phi, const JacobiReport& report,
                          std::int64_t size_guard) {
    return class_in_hh0(phi, phi, report, size_guard).is_zero();
}

}  // namespace ncsaito
