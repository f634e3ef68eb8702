#include "ncsaito/saito.hpp"

#include <algorithm>

namespace ncsaito {

WeightType canonical_type(const WeightType& r) {
    WeightType out = r;
    std::sort(out.weights.begin(), out.weights.end());
    return out;
}

bool is_weighted_homogeneous(const Superpotential& phi, const WeightType& r) {
    if (static_cast<int>(r.weights.size()) != phi.nvars())
        throw Error(ErrorCode::InvalidArgument, "weight type has wrong arity");
    for (const auto& [w, c] : phi.rep().terms()) {
        Rat sum = 0;
        for (int letter : w) sum += r.weights[static_cast<std::size_t>(letter)];
        if (sum != 1) return false;
    }
    return true;
}

Derivation euler_solve(const Superpotential& phi, const JacobiReport& report,
                       std::int64_t size_guard) {
    if (!report.finite)
        throw Error(ErrorCode::NotCertifiedFinite,
                    "Jacobi algebra is not certified finite dimensional");
    const int n = phi.nvars();
    const int trunc = phi.trunc();
    std::vector<Series> gens = jacobi_generators(phi);
    int min_ord = trunc + 1;
    for (const Series& g : gens)
        if (!g.is_zero()) min_ord = std::min(min_ord, g.order());
    if (min_ord > trunc)
        throw Error(ErrorCode::NotQuasiHomogeneous, "all cyclic derivatives vanish");

    WordIndexer indexer(n, trunc);
    if (indexer.total() > size_guard)
        throw Error(ErrorCode::LevelTooLarge, "monomial basis exceeds the size guard");

    // Unknowns: coefficients of g_i on words of degree 1..d_max. The nil
    // degree bounds the useful corrections; escalate if the truncated system
    // happens to need higher-degree terms.
    const int d_cap = std::max(1, trunc - min_ord);
    int d_max = std::min(std::max(report.nil_degree - 1, 1), d_cap);

    for (;; ++d_max) {
        // Columns: canonicalize(w * D_i Phi) in standard-word coordinates.
        std::vector<std::pair<int, Word>> unknowns;
        std::vector<SparseRow> columns;
        for (int i = 0; i < n; ++i) {
            if (gens[static_cast<std::size_t>(i)].is_zero()) continue;
            for (int d = 1; d <= d_max; ++d) {
                for (std::int64_t k = 0; k < indexer.words_of_degree(d); ++k) {
                    Word w = indexer.word(indexer.degree_offset(d) + k);
                    Series prod = Series::monomial(n, trunc, w, 1) * gens[static_cast<std::size_t>(i)];
                    Series col = canonicalize(prod).rep();
                    if (col.is_zero()) continue;
                    unknowns.emplace_back(i, std::move(w));
                    columns.push_back(series_to_row(col, indexer));
                }
            }
        }

        // Dense solve in the standard-word coordinates that actually occur.
        std::map<std::int64_t, Eigen::Index> coord_of;
        auto touch = [&](const SparseRow& r) {
            for (const auto& [idx, c] : r)
                coord_of.emplace(idx, static_cast<Eigen::Index>(coord_of.size()));
        };
        SparseRow rhs = series_to_row(phi.rep(), indexer);
        touch(rhs);
        for (const SparseRow& col : columns) touch(col);

        RatMatrix m = RatMatrix::Zero(static_cast<Eigen::Index>(coord_of.size()),
                                      static_cast<Eigen::Index>(columns.size()));
        RatVector b = RatVector::Zero(static_cast<Eigen::Index>(coord_of.size()));
        for (std::size_t j = 0; j < columns.size(); ++j)
            for (const auto& [idx, c] : columns[j]) m(coord_of.at(idx), static_cast<Eigen::Index>(j)) = c;
        for (const auto& [idx, c] : rhs) b(coord_of.at(idx)) = c;

        if (auto x = try_solve(m, b)) {
            std::vector<Series> images(static_cast<std::size_t>(n), Series(n, trunc));
            for (std::size_t j = 0; j < unknowns.size(); ++j) {
                const auto& [i, w] = unknowns[j];
                images[static_cast<std::size_t>(i)].add_term(w, (*x)(static_cast<Eigen::Index>(j)));
            }
            Derivation xi(n, trunc, std::move(images));
            // The Euler property is always re-verified, never assumed.
            if (apply_derivation(xi, phi) != phi)
                throw Error(ErrorCode::NotQuasiHomogeneous, "Euler solve verification failed");
            return xi;
        }
        if (d_max >= d_cap)
            throw Error(ErrorCode::NotQuasiHomogeneous,
                        "no derivation xi with Phi_#(xi) = Phi at this truncation");
    }
}

WeightsResult weights(const Superpotential& phi, const JacobiReport& report,
                      std::int64_t size_guard) {
    Derivation xi = euler_solve(phi, report, size_guard);
    JCDecomposition jc = jordan_chevalley(xi);
    // Phi_#(xi_S) = Phi: the semisimple part is again an Euler derivation.
    if (apply_derivation(jc.semisimple, phi) != phi)
        throw Error(ErrorCode::NotQuasiHomogeneous,
                    "semisimple part fails the Euler property");
    for (const Rat& r : jc.eigenvalues) {
        if (!(r > 0 && r < Rat(1, 2)))
            throw Error(ErrorCode::WeightOutOfRange,
                        "weight " + rat_to_string(r) + " outside (0, 1/2)");
    }
    WeightsResult out{WeightType{jc.eigenvalues}, std::move(xi), std::move(jc)};
    return out;
}

NormalizationResult normalize(const Superpotential& phi, const JacobiReport& report,
                              std::int64_t size_guard) {
    WeightsResult wr = weights(phi, report, size_guard);
    const Endomorphism& h = wr.jc.conjugator;
    Superpotential normal_form = canonicalize(substitute(h, phi.rep()));
    if (!is_weighted_homogeneous(normal_form, wr.type))
        throw Error(ErrorCode::InvalidArgument,
                    "normal form is not weighted homogeneous (internal verification)");
    return {wr.type, h, std::move(normal_form), std::move(wr.euler)};
}

UniquenessDiagnostic semisimple_uniqueness_check(const Superpotential& phi,
                                                 const Derivation& xi,
                                                 const Derivation& eta) {
    std::vector<Rat> wx = xi.diagonal_weights();  // throws NotDiagonal
    std::vector<Rat> wy = eta.diagonal_weights();

    const int n = phi.nvars();
    UniquenessDiagnostic diag;
    diag.dominance_matrix = RatMatrix::Zero(n, n);
    diag.diagonally_dominant = true;

    // Rows of A: for each i a monomial x_i^a (a >= 3) or, as a necklace,
    // x_i^{b+c} x_p with b+c >= 2 and p != i.
    for (int i = 0; i < n; ++i) {
        bool found = false;
        for (const auto& [w, c] : phi.rep().terms()) {
            int count_i = 0, other = -1, count_other = 0;
            for (int letter : w) {
                if (letter == i) ++count_i;
                else { other = letter; ++count_other; }
            }
            if (count_other == 0 && count_i >= 3) {
                diag.dominance_matrix(i, i) = count_i;
                found = true;
                break;
            }
            if (count_other == 1 && count_i >= 2) {
                diag.dominance_matrix(i, i) = count_i;
                diag.dominance_matrix(i, other) += 1;
                found = true;
                break;
            }
        }
        if (!found) diag.diagonally_dominant = false;
    }
    if (diag.diagonally_dominant) {
        for (int i = 0; i < n; ++i) {
            Rat off = 0;
            for (int p = 0; p < n; ++p)
                if (p != i) off += diag.dominance_matrix(i, p);
            if (!(diag.dominance_matrix(i, i) > off)) diag.diagonally_dominant = false;
        }
    }

    diag.equal = (wx == wy);
    if (!diag.equal)
        throw Error(ErrorCode::UniquenessViolated,
                    "two semisimple Euler derivations with different spectra");
    return diag;
}

CommPoly abelianize(const Superpotential& phi) {
    CommPoly out;
    for (const auto& [w, c] : phi.rep().terms()) {
        std::vector<int> exponents(static_cast<std::size_t>(phi.nvars()), 0);
        for (int letter : w) ++exponents[static_cast<std::size_t>(letter)];
        auto [it, inserted] = out.emplace(std::move(exponents), c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) out.erase(it);
        }
    }
    return out;
}

bool is_weighted_homogeneous_comm(const CommPoly& p, const WeightType& r) {
    for (const auto& [exponents, c] : p) {
        Rat sum = 0;
        for (std::size_t i = 0; i < exponents.size(); ++i)
            sum += Rat(exponents[i]) * r.weights[i];
        if (sum != 1) return false;
    }
    return true;
}

}  // namespace ncsaito
