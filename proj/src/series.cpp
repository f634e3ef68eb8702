#include "ncsaito/series.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_map>

#include "ncsaito/packed.hpp"

namespace ncsaito {

namespace detail {

Packer::Packer(int nvars, int trunc) : n(nvars), trunc(trunc) {
    offsets.assign(static_cast<std::size_t>(trunc) + 2, 0);
    pow.assign(static_cast<std::size_t>(trunc) + 1, 1);
    std::int64_t count = 1;
    const std::int64_t limit = std::int64_t(1) << 62;
    for (int d = 0; d <= trunc; ++d) {
        pow[static_cast<std::size_t>(d)] = count;
        offsets[static_cast<std::size_t>(d) + 1] = offsets[static_cast<std::size_t>(d)] + count;
        if (count > limit / (nvars > 0 ? nvars : 1) ||
            offsets[static_cast<std::size_t>(d) + 1] > limit - count * nvars) {
            ok = false;
            return;
        }
        count *= nvars;
    }
    ok = true;
}

std::int64_t Packer::pack(const Word& w) const {
    std::int64_t r = 0;
    for (int letter : w) r = r * n + letter;
    return offsets[w.size()] + r;
}

Word Packer::unpack(std::int64_t idx, int deg) const {
    std::int64_t r = idx - offsets[static_cast<std::size_t>(deg)];
    Word w(static_cast<std::size_t>(deg));
    for (int k = deg; k-- > 0;) {
        w[static_cast<std::size_t>(k)] = static_cast<int>(r % n);
        r /= n;
    }
    return w;
}

PackedSeries pack_series(const Series::TermMap& terms, const Packer& p) {
    PackedSeries out;
    out.reserve(terms.size());
    for (const auto& [w, c] : terms)
        out.push_back({p.pack(w), static_cast<int>(w.size()), c});
    return out;
}

void unpack_into(const PackedSeries& terms, const Packer& p, Series::TermMap& out) {
    for (const auto& t : terms)
        if (t.c != 0) out.emplace_hint(out.end(), p.unpack(t.idx, t.deg), t.c);
}

// Sorted accumulation of an index -> coefficient table.
PackedSeries finalize(std::unordered_map<std::int64_t, Rat>& acc, const Packer& p) {
    PackedSeries out;
    out.reserve(acc.size());
    for (auto& [idx, c] : acc) {
        if (c == 0) continue;
        auto d = std::upper_bound(p.offsets.begin(), p.offsets.end(), idx) - p.offsets.begin() - 1;
        out.push_back({idx, static_cast<int>(d), std::move(c)});
    }
    std::sort(out.begin(), out.end(),
              [](const PackedTerm& a, const PackedTerm& b) { return a.idx < b.idx; });
    return out;
}

PackedSeries add_packed(const PackedSeries& a, const PackedSeries& b) {
    PackedSeries out;
    out.reserve(a.size() + b.size());
    auto ia = a.begin(), ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (ia->idx < ib->idx) {
            out.push_back(*ia++);
        } else if (ib->idx < ia->idx) {
            out.push_back(*ib++);
        } else {
            Rat c = ia->c + ib->c;
            if (c != 0) out.push_back({ia->idx, ia->deg, std::move(c)});
            ++ia;
            ++ib;
        }
    }
    out.insert(out.end(), ia, a.end());
    out.insert(out.end(), ib, b.end());
    return out;
}

PackedSeries mul_packed(const PackedSeries& a, const PackedSeries& b, const Packer& p,
                        int budget) {
    std::unordered_map<std::int64_t, Rat> acc;
    for (const auto& ta : a) {
        if (ta.deg > budget) continue;
        const std::int64_t ra = ta.idx - p.offsets[static_cast<std::size_t>(ta.deg)];
        const int room = budget - ta.deg;
        for (const auto& tb : b) {
            if (tb.deg > room) break;  // b sorted by idx, hence by degree
            const std::int64_t rb = tb.idx - p.offsets[static_cast<std::size_t>(tb.deg)];
            const int d = ta.deg + tb.deg;
            const std::int64_t idx =
                p.offsets[static_cast<std::size_t>(d)] + ra * p.pow[static_cast<std::size_t>(tb.deg)] + rb;
            auto [slot, inserted] = acc.emplace(idx, Rat(0));
            if (inserted) slot->second = ta.c * tb.c;
            else slot->second += ta.c * tb.c;
        }
    }
    return finalize(acc, p);
}

}  // namespace detail

Series::Series(int nvars, int trunc) : nvars_(nvars), trunc_(trunc) {
    if (nvars < 1 || trunc < 0)
        throw Error(ErrorCode::InvalidArgument, "series needs nvars >= 1 and trunc >= 0");
}

Series Series::unit(int nvars, int trunc) {
    Series s(nvars, trunc);
    s.add_term({}, 1);
    return s;
}

Series Series::generator(int nvars, int trunc, int i) {
    if (i < 0 || i >= nvars)
        throw Error(ErrorCode::InvalidArgument, "generator index out of range");
    Series s(nvars, trunc);
    s.add_term({i}, 1);
    return s;
}

Series Series::monomial(int nvars, int trunc, const Word& w, const Rat& c) {
    Series s(nvars, trunc);
    s.add_term(w, c);
    return s;
}

int Series::order() const {
    if (terms_.empty()) return trunc_ + 1;
    return static_cast<int>(terms_.begin()->first.size());
}

int Series::max_degree() const {
    if (terms_.empty()) return -1;
    return static_cast<int>(terms_.rbegin()->first.size());
}

Rat Series::coeff(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Rat(0) : it->second;
}

void Series::add_term(const Word& w, const Rat& c) {
    if (c == 0 || static_cast<int>(w.size()) > trunc_) return;
    for (int letter : w)
        if (letter < 0 || letter >= nvars_)
            throw Error(ErrorCode::InvalidArgument, "letter index out of range");
    auto [it, inserted] = terms_.emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

void Series::require_compatible(const Series& other) const {
    if (nvars_ != other.nvars_ || trunc_ != other.trunc_)
        throw Error(ErrorCode::TruncMismatch, "operands have different nvars or trunc");
}

Series& Series::operator+=(const Series& other) {
    require_compatible(other);
    for (const auto& [w, c] : other.terms_) add_term(w, c);
    return *this;
}

Series& Series::operator-=(const Series& other) {
    require_compatible(other);
    for (const auto& [w, c] : other.terms_) add_term(w, -c);
    return *this;
}

Series Series::operator+(const Series& other) const {
    Series r = *this;
    r += other;
    return r;
}

Series Series::operator-(const Series& other) const {
    Series r = *this;
    r -= other;
    return r;
}

Series Series::operator-() const { return scaled(Rat(-1)); }

Series Series::scaled(const Rat& c) const {
    Series r(nvars_, trunc_);
    if (c == 0) return r;
    for (const auto& [w, a] : terms_) r.terms_.emplace(w, a * c);
    return r;
}

Series Series::operator*(const Series& other) const {
    require_compatible(other);
    Series r(nvars_, trunc_);
    detail::Packer p(nvars_, trunc_);
    if (p.ok) {
        auto prod = detail::mul_packed(detail::pack_series(terms_, p),
                                       detail::pack_series(other.terms_, p), p, trunc_);
        detail::unpack_into(prod, p, r.terms_);
        return r;
    }
    for (const auto& [wa, ca] : terms_) {
        const int budget = trunc_ - static_cast<int>(wa.size());
        if (budget < 0) continue;
        for (const auto& [wb, cb] : other.terms_) {
            if (static_cast<int>(wb.size()) > budget) break;  // terms sorted by degree
            Word w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            r.add_term(w, ca * cb);
        }
    }
    return r;
}

bool Series::operator==(const Series& other) const {
    return nvars_ == other.nvars_ && trunc_ == other.trunc_ && terms_ == other.terms_;
}

Series Series::homogeneous_part(int r) const {
    Series out(nvars_, trunc_);
    for (const auto& [w, c] : terms_)
        if (static_cast<int>(w.size()) == r) out.terms_.emplace(w, c);
    return out;
}

Series Series::low_part(int r) const {
    Series out(nvars_, trunc_);
    for (const auto& [w, c] : terms_) {
        if (static_cast<int>(w.size()) > r) break;
        out.terms_.emplace(w, c);
    }
    return out;
}

Series Series::truncated(int new_trunc) const {
    Series out(nvars_, new_trunc);
    for (const auto& [w, c] : terms_) {
        if (static_cast<int>(w.size()) > new_trunc) break;
        out.terms_.emplace(w, c);
    }
    return out;
}

Endomorphism::Endomorphism(int nvars, int trunc, std::vector<Series> images)
    : nvars_(nvars), trunc_(trunc), images_(std::move(images)) {
    if (static_cast<int>(images_.size()) != nvars)
        throw Error(ErrorCode::InvalidArgument, "endomorphism needs one image per generator");
    for (const Series& g : images_) {
        if (g.nvars() != nvars || g.trunc() != trunc)
            throw Error(ErrorCode::TruncMismatch, "endomorphism image has wrong nvars or trunc");
        if (g.coeff({}) != 0)
            throw Error(ErrorCode::InvalidArgument, "endomorphism image must lie in m");
    }
}

Endomorphism Endomorphism::identity(int nvars, int trunc) {
    std::vector<Series> images;
    images.reserve(static_cast<std::size_t>(nvars));
    for (int i = 0; i < nvars; ++i) images.push_back(Series::generator(nvars, trunc, i));
    return Endomorphism(nvars, trunc, std::move(images));
}

RatMatrix Endomorphism::linear_matrix() const {
    RatMatrix l = RatMatrix::Zero(nvars_, nvars_);
    for (int i = 0; i < nvars_; ++i)
        for (int j = 0; j < nvars_; ++j) l(j, i) = images_[static_cast<std::size_t>(i)].coeff({j});
    return l;
}

bool Endomorphism::is_automorphism() const {
    return rank(linear_matrix()) == nvars_;
}

namespace {

// Image of a single word under H, with prefix products shared across the
// words of the substituted series.
class WordImageCache {
public:
    explicit WordImageCache(const Endomorphism& h) : h_(h) {}

    const Series& image(const Word& w) {
        auto it = cache_.find(w);
        if (it != cache_.end()) return it->second;
        Series value(h_.nvars(), h_.trunc());
        if (w.empty()) {
            value = Series::unit(h_.nvars(), h_.trunc());
        } else {
            Word prefix(w.begin(), w.end() - 1);
            value = image(prefix) * h_.image(w.back());
        }
        return cache_.emplace(w, std::move(value)).first->second;
    }

private:
    const Endomorphism& h_;
    std::map<Word, Series, WordLess> cache_;
};

}  // namespace

namespace {

// Shares image products across words of f via their common prefixes: the value
// of a trie node is sum of coefficient-weighted images of the word suffixes
// below it, and gets multiplied by one generator image per level on the way up.
struct SubstituteTrie {
    const std::vector<std::pair<Word, Rat>>& entries;  // sorted lexicographically
    const std::vector<detail::PackedSeries>& img;
    const detail::Packer& p;
    int trunc;

    detail::PackedSeries run(std::size_t lo, std::size_t hi, int depth) const {
        detail::PackedSeries acc;
        if (lo < hi && entries[lo].first.size() == static_cast<std::size_t>(depth)) {
            acc.push_back({0, 0, entries[lo].second});
            ++lo;
        }
        while (lo < hi) {
            const int letter = entries[lo].first[static_cast<std::size_t>(depth)];
            std::size_t mid = lo;
            while (mid < hi &&
                   entries[mid].first[static_cast<std::size_t>(depth)] == letter)
                ++mid;
            detail::PackedSeries child = run(lo, mid, depth + 1);
            acc = detail::add_packed(
                acc, detail::mul_packed(img[static_cast<std::size_t>(letter)], child, p,
                                        trunc - depth));
            lo = mid;
        }
        return acc;
    }
};

}  // namespace

Series substitute(const Endomorphism& h, const Series& f) {
    if (h.nvars() != f.nvars() || h.trunc() != f.trunc())
        throw Error(ErrorCode::TruncMismatch, "substitute: endomorphism and series disagree");
    const int n = f.nvars();
    const int trunc = f.trunc();
    Series out(n, trunc);
    detail::Packer p(n, trunc);
    if (p.ok) {
        std::vector<detail::PackedSeries> img;
        img.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) img.push_back(detail::pack_series(h.image(i).terms(), p));
        std::vector<std::pair<Word, Rat>> entries(f.terms().begin(), f.terms().end());
        std::sort(entries.begin(), entries.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        SubstituteTrie trie{entries, img, p, trunc};
        for (const auto& t : trie.run(0, entries.size(), 0))
            out.add_term(p.unpack(t.idx, t.deg), t.c);
        return out;
    }
    WordImageCache cache(h);
    for (const auto& [w, c] : f.terms()) out += cache.image(w).scaled(c);
    return out;
}

Endomorphism compose(const Endomorphism& h, const Endomorphism& g) {
    if (h.nvars() != g.nvars() || h.trunc() != g.trunc())
        throw Error(ErrorCode::TruncMismatch, "compose: endomorphisms disagree");
    std::vector<Series> images;
    images.reserve(static_cast<std::size_t>(h.nvars()));
    for (int i = 0; i < h.nvars(); ++i) images.push_back(substitute(h, g.image(i)));
    return Endomorphism(h.nvars(), h.trunc(), std::move(images));
}

Endomorphism invert(const Endomorphism& h) {
    const int n = h.nvars();
    const int trunc = h.trunc();
    RatMatrix l = h.linear_matrix();
    if (rank(l) != n)
        throw Error(ErrorCode::NotAutomorphism, "linear part is singular");
    RatMatrix linv = inverse(l);

    auto linear_endo = [&](const RatMatrix& m) {
        std::vector<Series> images;
        for (int i = 0; i < n; ++i) {
            Series g(n, trunc);
            for (int j = 0; j < n; ++j) g.add_term({j}, m(j, i));
            images.push_back(std::move(g));
        }
        return Endomorphism(n, trunc, std::move(images));
    };

    Endomorphism linv_endo = linear_endo(linv);

    // Split H = L o U with U = L^-1 o H near the identity, U(x_i) = x_i + e_i
    // and ord(e_i) >= 2.  The fixpoint G(x_i) = x_i - G(e_i) converges to U^-1
    // in at most trunc - 1 rounds; then H^-1 = U^-1 o L^-1.
    std::vector<Series> e;
    e.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Series u = substitute(linv_endo, h.image(i));
        u -= Series::generator(n, trunc, i);
        e.push_back(std::move(u));
    }
    std::vector<Series> g_images;
    g_images.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) g_images.push_back(Series::generator(n, trunc, i));
    for (int round = 0; round < trunc; ++round) {
        Endomorphism g(n, trunc, g_images);
        bool changed = false;
        std::vector<Series> next;
        next.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            Series gi = Series::generator(n, trunc, i) - substitute(g, e[static_cast<std::size_t>(i)]);
            if (!(gi == g_images[static_cast<std::size_t>(i)])) changed = true;
            next.push_back(std::move(gi));
        }
        g_images = std::move(next);
        if (!changed) break;
    }
    return compose(Endomorphism(n, trunc, std::move(g_images)), linv_endo);
}

}  // namespace ncsaito
