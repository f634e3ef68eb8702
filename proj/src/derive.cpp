#include "ncsaito/derive.hpp"

#include <algorithm>
#include <utility>

#include "ncsaito/packed.hpp"

namespace ncsaito {

Derivation::Derivation(int nvars, int trunc, std::vector<Series> images)
    : nvars_(nvars), trunc_(trunc), images_(std::move(images)) {
    if (static_cast<int>(images_.size()) != nvars)
        throw Error(ErrorCode::InvalidArgument, "derivation needs one image per generator");
    for (const Series& g : images_) {
        if (g.nvars() != nvars || g.trunc() != trunc)
            throw Error(ErrorCode::TruncMismatch, "derivation image has wrong nvars or trunc");
        if (g.coeff({}) != 0)
            throw Error(ErrorCode::InvalidArgument, "derivation image must lie in m");
    }
}

Derivation Derivation::zero(int nvars, int trunc) {
    return Derivation(nvars, trunc,
                      std::vector<Series>(static_cast<std::size_t>(nvars), Series(nvars, trunc)));
}

Derivation Derivation::diagonal(int nvars, int trunc, const std::vector<Rat>& weights) {
    if (static_cast<int>(weights.size()) != nvars)
        throw Error(ErrorCode::InvalidArgument, "diagonal derivation needs one weight per generator");
    std::vector<Series> images;
    images.reserve(static_cast<std::size_t>(nvars));
    for (int i = 0; i < nvars; ++i)
        images.push_back(Series::generator(nvars, trunc, i).scaled(weights[static_cast<std::size_t>(i)]));
    return Derivation(nvars, trunc, std::move(images));
}

RatMatrix Derivation::linear_matrix() const {
    RatMatrix l = RatMatrix::Zero(nvars_, nvars_);
    for (int i = 0; i < nvars_; ++i)
        for (int j = 0; j < nvars_; ++j) l(j, i) = images_[static_cast<std::size_t>(i)].coeff({j});
    return l;
}

bool Derivation::is_principle() const {
    for (const Series& g : images_)
        if (!g.is_zero() && (g.order() != 1 || g.max_degree() != 1)) return false;
    return true;
}

bool Derivation::is_diagonal() const {
    for (int i = 0; i < nvars_; ++i) {
        const Series& g = images_[static_cast<std::size_t>(i)];
        for (const auto& [w, c] : g.terms())
            if (w != Word{i}) return false;
    }
    return true;
}

std::vector<Rat> Derivation::diagonal_weights() const {
    if (!is_diagonal())
        throw Error(ErrorCode::NotDiagonal, "derivation is not diagonal on the generators");
    std::vector<Rat> w;
    w.reserve(static_cast<std::size_t>(nvars_));
    for (int i = 0; i < nvars_; ++i) w.push_back(images_[static_cast<std::size_t>(i)].coeff({i}));
    return w;
}

Derivation Derivation::operator+(const Derivation& other) const {
    std::vector<Series> images;
    images.reserve(images_.size());
    for (int i = 0; i < nvars_; ++i)
        images.push_back(images_[static_cast<std::size_t>(i)] + other.images_[static_cast<std::size_t>(i)]);
    return Derivation(nvars_, trunc_, std::move(images));
}

Derivation Derivation::operator-(const Derivation& other) const {
    std::vector<Series> images;
    images.reserve(images_.size());
    for (int i = 0; i < nvars_; ++i)
        images.push_back(images_[static_cast<std::size_t>(i)] - other.images_[static_cast<std::size_t>(i)]);
    return Derivation(nvars_, trunc_, std::move(images));
}

Derivation Derivation::scaled(const Rat& c) const {
    std::vector<Series> images;
    images.reserve(images_.size());
    for (const Series& g : images_) images.push_back(g.scaled(c));
    return Derivation(nvars_, trunc_, std::move(images));
}

bool Derivation::operator==(const Derivation& other) const {
    return nvars_ == other.nvars_ && trunc_ == other.trunc_ && images_ == other.images_;
}

namespace {

// Leibniz rule over the prefix trie of f: a node's value V satisfies
// V = c + sum_l x_l V_l, hence D(V) = sum_l (xi(x_l) V_l + x_l D(V_l)); the
// products with xi(x_l) are shared across all words below the node.
struct ApplyTrie {
    const std::vector<std::pair<Word, Rat>>& entries;  // sorted lexicographically
    const std::vector<detail::PackedSeries>& img;
    const detail::Packer& p;
    int trunc;

    detail::PackedSeries shift_letter(int letter, const detail::PackedSeries& v,
                                      int budget) const {
        detail::PackedSeries out;
        out.reserve(v.size());
        for (const auto& t : v) {
            if (t.deg + 1 > budget) break;  // sorted by degree
            out.push_back({p.offsets[static_cast<std::size_t>(t.deg) + 1] +
                               letter * p.pow[static_cast<std::size_t>(t.deg)] +
                               (t.idx - p.offsets[static_cast<std::size_t>(t.deg)]),
                           t.deg + 1, t.c});
        }
        return out;
    }

    std::pair<detail::PackedSeries, detail::PackedSeries> run(std::size_t lo, std::size_t hi,
                                                              int depth) const {
        detail::PackedSeries val, der;
        if (lo < hi && entries[lo].first.size() == static_cast<std::size_t>(depth)) {
            val.push_back({0, 0, entries[lo].second});
            ++lo;
        }
        while (lo < hi) {
            const int letter = entries[lo].first[static_cast<std::size_t>(depth)];
            std::size_t mid = lo;
            while (mid < hi &&
                   entries[mid].first[static_cast<std::size_t>(depth)] == letter)
                ++mid;
            auto [cv, cd] = run(lo, mid, depth + 1);
            const int budget = trunc - depth;
            val = detail::add_packed(val, shift_letter(letter, cv, budget));
            der = detail::add_packed(
                der, detail::add_packed(
                         detail::mul_packed(img[static_cast<std::size_t>(letter)], cv, p, budget),
                         shift_letter(letter, cd, budget)));
            lo = mid;
        }
        return {std::move(val), std::move(der)};
    }
};

}  // namespace

Series apply(const Derivation& xi, const Series& f) {
    if (xi.nvars() != f.nvars() || xi.trunc() != f.trunc())
        throw Error(ErrorCode::TruncMismatch, "apply: derivation and series disagree");
    const int trunc = f.trunc();
    Series out(f.nvars(), trunc);
    detail::Packer p(f.nvars(), trunc);
    if (p.ok) {
        std::vector<detail::PackedSeries> img;
        img.reserve(static_cast<std::size_t>(f.nvars()));
        for (int i = 0; i < f.nvars(); ++i)
            img.push_back(detail::pack_series(xi.image(i).terms(), p));
        std::vector<std::pair<Word, Rat>> entries(f.terms().begin(), f.terms().end());
        std::sort(entries.begin(), entries.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        ApplyTrie trie{entries, img, p, trunc};
        for (const auto& t : trie.run(0, entries.size(), 0).second)
            out.add_term(p.unpack(t.idx, t.deg), t.c);
        return out;
    }
    for (const auto& [w, c] : f.terms()) {
        for (std::size_t k = 0; k < w.size(); ++k) {
            // Leibniz term: prefix * xi(x_{w_k}) * suffix.
            const Series& img = xi.image(w[k]);
            for (const auto& [mid, a] : img.terms()) {
                if (static_cast<int>(w.size() - 1 + mid.size()) > trunc) break;
                Word term(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
                term.insert(term.end(), mid.begin(), mid.end());
                term.insert(term.end(), w.begin() + static_cast<std::ptrdiff_t>(k) + 1, w.end());
                out.add_term(term, c * a);
            }
        }
    }
    return out;
}

Derivation bracket(const Derivation& xi, const Derivation& eta) {
    if (xi.nvars() != eta.nvars() || xi.trunc() != eta.trunc())
        throw Error(ErrorCode::TruncMismatch, "bracket: derivations disagree");
    std::vector<Series> images;
    images.reserve(static_cast<std::size_t>(xi.nvars()));
    for (int i = 0; i < xi.nvars(); ++i)
        images.push_back(apply(xi, eta.image(i)) - apply(eta, xi.image(i)));
    return Derivation(xi.nvars(), xi.trunc(), std::move(images));
}

Derivation adjoint(const Endomorphism& h, const Derivation& xi) {
    if (h.nvars() != xi.nvars() || h.trunc() != xi.trunc())
        throw Error(ErrorCode::TruncMismatch, "adjoint: endomorphism and derivation disagree");
    Endomorphism hinv = invert(h);  // throws NotAutomorphism
    std::vector<Series> images;
    images.reserve(static_cast<std::size_t>(xi.nvars()));
    for (int i = 0; i < xi.nvars(); ++i)
        images.push_back(substitute(h, apply(xi, hinv.image(i))));
    return Derivation(xi.nvars(), xi.trunc(), std::move(images));
}

Superpotential apply_derivation(const Derivation& xi, const Superpotential& phi) {
    return canonicalize(apply(xi, phi.rep()));
}

std::map<Rat, Series> eigen_develop(const Series& f, const Derivation& xi) {
    if (xi.nvars() != f.nvars() || xi.trunc() != f.trunc())
        throw Error(ErrorCode::TruncMismatch, "eigen_develop: derivation and series disagree");
    std::vector<Rat> weights = xi.diagonal_weights();  // throws NotDiagonal
    std::map<Rat, Series> components;
    for (const auto& [w, c] : f.terms()) {
        Rat weight = 0;
        for (int letter : w) weight += weights[static_cast<std::size_t>(letter)];
        auto it = components.find(weight);
        if (it == components.end())
            it = components.emplace(weight, Series(f.nvars(), f.trunc())).first;
        it->second.add_term(w, c);
    }
    return components;
}

std::pair<Series, Series> graded_solve(const Derivation& diag, const Derivation& shift,
                                       const Series& f, const Rat& b) {
    if (!diag.is_principle() || !shift.is_principle())
        throw Error(ErrorCode::NotPrinciple, "graded_solve needs principle derivations");
    if (bracket(diag, shift) != Derivation::zero(diag.nvars(), diag.trunc()))
        throw Error(ErrorCode::NotCommuting, "graded_solve: [xi', xi''] != 0");
    if (!f.is_zero() && f.order() != f.max_degree())
        throw Error(ErrorCode::InvalidArgument, "graded_solve needs a homogeneous series");

    Series h(f.nvars(), f.trunc());
    Series residue(f.nvars(), f.trunc());
    // On each weight-c eigenspace, xi - b restricts to (c - b) Id + xi'';
    // invert off resonance by a finite Neumann series in the nilpotent xi''.
    for (auto& [c, fc] : eigen_develop(f, diag)) {
        if (c == b) {
            residue -= fc;
            continue;
        }
        Series cur = fc;
        Rat coef = Rat(1) / (c - b);
        int guard = 0;
        while (!cur.is_zero()) {
            h += cur.scaled(coef);
            cur = apply(shift, cur);
            coef = -coef / (c - b);
            if (++guard > 100000)
                throw Error(ErrorCode::NotPrinciple, "graded_solve: xi'' is not nilpotent");
        }
    }
    return {std::move(h), std::move(residue)};
}

JCDecomposition jordan_chevalley(const Derivation& xi) {
    const int n = xi.nvars();
    const int trunc = xi.trunc();

    JordanData jd = rational_jordan_form(xi.linear_matrix());  // throws NonRationalSpectrum

    auto linear_endo = [&](const RatMatrix& m) {
        std::vector<Series> images;
        for (int i = 0; i < n; ++i) {
            Series g(n, trunc);
            for (int j = 0; j < n; ++j) g.add_term({j}, m(j, i));
            images.push_back(std::move(g));
        }
        return Endomorphism(n, trunc, std::move(images));
    };
    // Conjugation with a known inverse: (Ad_H z)(x_i) = H(z(H^-1(x_i))).
    auto conj_adjoint = [&](const Endomorphism& hmap, const Endomorphism& hinv,
                            const Derivation& z) {
        std::vector<Series> images;
        images.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            images.push_back(substitute(hmap, apply(z, hinv.image(i))));
        return Derivation(n, trunc, std::move(images));
    };

    // Linear conjugation putting the linear part into Jordan form:
    // Ad_H xi has linear part Q L Q^{-1} for H with linear matrix Q.
    Endomorphism conjugator = linear_endo(inverse(jd.transform));
    Endomorphism conj_inv = linear_endo(jd.transform);
    Derivation cur = conj_adjoint(conjugator, conj_inv, xi);

    // Eigenvalues a_i and the block layout: xi_(1)(x_i) = a_i x_i (+ x_{i-1}
    // inside a block).
    std::vector<Rat> eigenvalues;
    std::vector<bool> block_start;
    for (const auto& [ev, size] : jd.blocks) {
        for (int i = 0; i < size; ++i) {
            eigenvalues.push_back(ev);
            block_start.push_back(i == 0);
        }
    }
    Derivation diag = Derivation::diagonal(n, trunc, eigenvalues);
    std::vector<Series> shift_images;
    for (int i = 0; i < n; ++i) {
        Series g(n, trunc);
        if (!block_start[static_cast<std::size_t>(i)]) g.add_term({i - 1}, 1);
        shift_images.push_back(std::move(g));
    }
    Derivation shift(n, trunc, std::move(shift_images));

    // Degree-by-degree recursion: in each degree s kill the non-eigenvector
    // part of cur(x_i) by conjugating with x_i -> x_i + h_i, chaining the
    // correction of the previous generator inside a Jordan block.
    for (int s = 2; s <= trunc; ++s) {
        std::vector<Series> h(static_cast<std::size_t>(n), Series(n, trunc));
        for (int i = 0; i < n; ++i) {
            Series f = cur.image(i).homogeneous_part(s);
            if (!block_start[static_cast<std::size_t>(i)]) f += h[static_cast<std::size_t>(i) - 1];
            auto [hi, residue] = graded_solve(diag, shift, f, eigenvalues[static_cast<std::size_t>(i)]);
            h[static_cast<std::size_t>(i)] = std::move(hi);
        }
        std::vector<Series> hs_images;
        for (int i = 0; i < n; ++i)
            hs_images.push_back(Series::generator(n, trunc, i) + h[static_cast<std::size_t>(i)]);
        Endomorphism hs(n, trunc, std::move(hs_images));
        Endomorphism hs_inv = invert(hs);  // near-identity, converges fast
        cur = conj_adjoint(hs, hs_inv, cur);
        conjugator = compose(hs, conjugator);
        conj_inv = compose(conj_inv, hs_inv);
    }

    Derivation xi_s = conj_adjoint(conj_inv, conjugator, diag);
    Derivation xi_n = xi - xi_s;
    return {std::move(xi_s), std::move(xi_n), std::move(conjugator), std::move(eigenvalues)};
}

namespace {

// Component of f supported on words whose letter-weight tuples sum to the
// target tuple, for a family of diagonal weight vectors.
Series tuple_component(const Series& f, const std::vector<std::vector<Rat>>& weight_rows,
                       const std::vector<Rat>& target) {
    Series out(f.nvars(), f.trunc());
    for (const auto& [w, c] : f.terms()) {
        bool match = true;
        for (std::size_t j = 0; j < weight_rows.size(); ++j) {
            Rat sum = 0;
            for (int letter : w) sum += weight_rows[j][static_cast<std::size_t>(letter)];
            if (sum != target[j]) { match = false; break; }
        }
        if (match) out.add_term(w, c);
    }
    return out;
}

}  // namespace

Endomorphism simultaneous_diagonalize(const std::vector<Derivation>& zetas) {
    if (zetas.empty())
        throw Error(ErrorCode::InvalidArgument, "simultaneous_diagonalize of an empty family");
    const int n = zetas.front().nvars();
    const int trunc = zetas.front().trunc();
    Derivation zero = Derivation::zero(n, trunc);
    for (std::size_t i = 0; i < zetas.size(); ++i)
        for (std::size_t j = i + 1; j < zetas.size(); ++j)
            if (bracket(zetas[i], zetas[j]) != zero)
                throw Error(ErrorCode::NotCommuting, "derivations do not commute");

    Endomorphism h_total = Endomorphism::identity(n, trunc);
    std::vector<std::vector<Rat>> weight_rows;  // weights of the processed derivations

    for (const Derivation& zeta : zetas) {
        Derivation z = adjoint(h_total, zeta);
        if (z.is_diagonal()) {
            weight_rows.push_back(z.diagonal_weights());
            continue;
        }
        JCDecomposition jc = jordan_chevalley(z);
        if (jc.nilpotent != zero)
            throw Error(ErrorCode::NotSemisimple, "derivation has a nonzero nilpotent part");

        // Eigenvectors f_i = G(x_i) of z, with eigenvalue jc.eigenvalues[i].
        Endomorphism g = invert(jc.conjugator);

        if (weight_rows.empty()) {
            h_total = compose(jc.conjugator, h_total);
            weight_rows.push_back(jc.eigenvalues);
            continue;
        }

        // Refine: group generators by their weight tuple under the processed
        // derivations and pick eigenvector components spanning each group.
        std::vector<Series> new_images(static_cast<std::size_t>(n), Series(n, trunc));
        std::vector<Rat> new_weights(static_cast<std::size_t>(n), Rat(0));
        std::map<std::vector<Rat>, std::vector<int>> groups;
        for (int i = 0; i < n; ++i) {
            std::vector<Rat> tuple;
            for (const auto& row : weight_rows) tuple.push_back(row[static_cast<std::size_t>(i)]);
            groups[tuple].push_back(i);
        }
        for (const auto& [tuple, members] : groups) {
            std::vector<Eigen::Index> picked_rows;
            RatMatrix span(n, 0);
            std::size_t filled = 0;
            for (int k = 0; k < n && filled < members.size(); ++k) {
                Series comp = tuple_component(g.image(k), weight_rows, tuple);
                if (comp.is_zero()) continue;
                RatVector lin = RatVector::Zero(n);
                for (int j = 0; j < n; ++j) lin(j) = comp.coeff({j});
                RatMatrix trial(n, span.cols() + 1);
                trial.leftCols(span.cols()) = span;
                trial.col(span.cols()) = lin;
                if (rank(trial) != trial.cols()) continue;
                span = std::move(trial);
                new_images[static_cast<std::size_t>(members[filled])] = comp;
                new_weights[static_cast<std::size_t>(members[filled])] =
                    jc.eigenvalues[static_cast<std::size_t>(k)];
                ++filled;
            }
            if (filled != members.size())
                throw Error(ErrorCode::NotSemisimple,
                            "eigenvector components do not span a weight group");
        }
        Endomorphism t(n, trunc, std::move(new_images));
        h_total = compose(invert(t), h_total);
        weight_rows.push_back(std::move(new_weights));
    }

    // Cross-check: every conjugate must now be diagonal.
    for (const Derivation& zeta : zetas)
        if (!adjoint(h_total, zeta).is_diagonal())
            throw Error(ErrorCode::NotSemisimple, "simultaneous diagonalization failed");
    return h_total;
}

}  // namespace ncsaito
