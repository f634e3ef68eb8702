#pragma once

#include "ncsaito/series.hpp"

namespace ncsaito {

// The lexicographically greatest cyclic rotation of w.
Word standard_word(const Word& w);

// A superpotential: an element of F modulo the closed span of commutators,
// held as its unique canonical representative supported on standard words.
class Superpotential {
public:
    Superpotential(int nvars, int trunc) : rep_(nvars, trunc) {}

    const Series& rep() const { return rep_; }
    int nvars() const { return rep_.nvars(); }
    int trunc() const { return rep_.trunc(); }
    bool is_zero() const { return rep_.is_zero(); }

    // Minimal degree in the canonical representative.
    // Throws Error(ZeroPotential) on the zero superpotential.
    int order() const;

    bool operator==(const Superpotential& other) const { return rep_ == other.rep_; }
    bool operator!=(const Superpotential& other) const { return rep_ != other.rep_; }

private:
    friend Superpotential canonicalize(const Series& f);
    Series rep_;
};

// pi(f): for each necklace, sum the coefficients of all its words and place
// the total on the standard word. Vanishes exactly on [F,F]^cl + m^{trunc+1}.
Superpotential canonicalize(const Series& f);

// Word-level cyclic derivative: each occurrence w = u x_i v contributes v u.
// i is 0-based.
Series cyclic_derivative(const Superpotential& phi, int i);

}  // namespace ncsaito
