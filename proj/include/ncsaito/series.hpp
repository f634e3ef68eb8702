#pragma once

#include <map>
#include <vector>

#include "ncsaito/errors.hpp"
#include "ncsaito/exactlin.hpp"
#include "ncsaito/rational.hpp"

namespace ncsaito {

// A word in the generators x_1,...,x_n, stored as 0-based letter indices.
// The empty word is the algebra unit.
using Word = std::vector<int>;

// Global term order: degree first, then lexicographic with x_1 < x_2 < ...
// Shared by canonicalization, ideal reduction and printing.
struct WordLess {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

// Truncated element of the complete free algebra k<<x_1,...,x_n>>.
// Terms of degree > trunc are dropped on every operation; this realizes
// computation in F/m^{trunc+1}. Stored coefficients are always nonzero.
class Series {
public:
    using TermMap = std::map<Word, Rat, WordLess>;

    Series(int nvars, int trunc);

    static Series zero(int nvars, int trunc) { return Series(nvars, trunc); }
    static Series unit(int nvars, int trunc);
    static Series generator(int nvars, int trunc, int i);  // i is 0-based
    static Series monomial(int nvars, int trunc, const Word& w, const Rat& c);

    int nvars() const { return nvars_; }
    int trunc() const { return trunc_; }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    // Minimal degree of a nonzero term; trunc()+1 for the zero series.
    int order() const;
    int max_degree() const;
    Rat coeff(const Word& w) const;

    // Adds c*w, dropping the term if the degree exceeds trunc or the sum
    // cancels to zero.
    void add_term(const Word& w, const Rat& c);

    Series& operator+=(const Series& other);
    Series& operator-=(const Series& other);
    Series operator+(const Series& other) const;
    Series operator-(const Series& other) const;
    Series operator-() const;
    Series operator*(const Series& other) const;
    Series scaled(const Rat& c) const;

    bool operator==(const Series& other) const;
    bool operator!=(const Series& other) const { return !(*this == other); }

    Series homogeneous_part(int r) const;  // f_(r)
    Series low_part(int r) const;          // f_(<= r)
    Series truncated(int new_trunc) const;

    // Throws Error(TruncMismatch) unless nvars and trunc both agree.
    void require_compatible(const Series& other) const;

private:
    int nvars_;
    int trunc_;
    TermMap terms_;
};

// A continuous algebra endomorphism of F preserving m, given by the images
// of the generators (each with zero constant term).
class Endomorphism {
public:
    Endomorphism(int nvars, int trunc, std::vector<Series> images);

    static Endomorphism identity(int nvars, int trunc);

    int nvars() const { return nvars_; }
    int trunc() const { return trunc_; }
    const Series& image(int i) const { return images_[i]; }
    const std::vector<Series>& images() const { return images_; }

    // Matrix L with H(x_i)_(1) = sum_j L(j,i) x_j.
    RatMatrix linear_matrix() const;
    bool is_automorphism() const;

private:
    int nvars_;
    int trunc_;
    std::vector<Series> images_;
};

// H(f): every x_i replaced by H(x_i), products in word order, truncated.
Series substitute(const Endomorphism& h, const Series& f);

// (H o G)(x_i) = H(G(x_i)).
Endomorphism compose(const Endomorphism& h, const Endomorphism& g);

// Formal inverse function theorem: G with H o G = G o H = id mod m^{trunc+1},
// built degree by degree. Throws Error(NotAutomorphism) when the linear part
// is singular.
Endomorphism invert(const Endomorphism& h);

}  // namespace ncsaito
