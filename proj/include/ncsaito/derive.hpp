#pragma once

#include <map>
#include <vector>

#include "ncsaito/cyclic.hpp"
#include "ncsaito/series.hpp"

namespace ncsaito {

// A derivation of F sending m to m, determined by the generator images
// (each in m) and extended by the Leibniz rule.
class Derivation {
public:
    Derivation(int nvars, int trunc, std::vector<Series> images);

    static Derivation zero(int nvars, int trunc);
    // xi(x_i) = weights[i] * x_i.
    static Derivation diagonal(int nvars, int trunc, const std::vector<Rat>& weights);

    int nvars() const { return nvars_; }
    int trunc() const { return trunc_; }
    const Series& image(int i) const { return images_[i]; }
    const std::vector<Series>& images() const { return images_; }

    RatMatrix linear_matrix() const;
    bool is_principle() const;  // all generator images homogeneous of degree 1
    bool is_diagonal() const;
    // Diagonal eigenvalues; throws Error(NotDiagonal) otherwise.
    std::vector<Rat> diagonal_weights() const;

    Derivation operator+(const Derivation& other) const;
    Derivation operator-(const Derivation& other) const;
    Derivation scaled(const Rat& c) const;
    bool operator==(const Derivation& other) const;
    bool operator!=(const Derivation& other) const { return !(*this == other); }

private:
    int nvars_;
    int trunc_;
    std::vector<Series> images_;
};

// Leibniz extension of xi to an arbitrary series.
Series apply(const Derivation& xi, const Series& f);

// [xi, eta](x_i) = xi(eta(x_i)) - eta(xi(x_i)).
Derivation bracket(const Derivation& xi, const Derivation& eta);

// Ad_H xi = H o xi o H^{-1}.
Derivation adjoint(const Endomorphism& h, const Derivation& xi);

// Phi_#(xi) = pi(xi(rep)); independent of the chosen representative.
Superpotential apply_derivation(const Derivation& xi, const Superpotential& phi);

// Groups the words of f by weight sum under a diagonal derivation.
// Components are supported on disjoint word sets and sum to f.
std::map<Rat, Series> eigen_develop(const Series& f, const Derivation& xi);

// Graded solve: for principle xi' (diagonal) + xi'' (nilpotent, commuting)
// and homogeneous f, returns (h, residue) with (xi'+xi''-b) h - f = residue,
// residue an eigenvector of xi' with eigenvalue b. The resonant component of
// f comes back as -residue; off-resonance blocks are inverted by a finite
// Neumann series in xi''.
std::pair<Series, Series> graded_solve(const Derivation& diag, const Derivation& shift,
                                       const Series& f, const Rat& b);

struct JCDecomposition {
    Derivation semisimple;     // xi_S
    Derivation nilpotent;      // xi_N
    Endomorphism conjugator;   // H with Ad_H xi_S diagonal on the generators
    std::vector<Rat> eigenvalues;
};

// Constructive Jordan-Chevalley decomposition of xi, degree by degree.
// Throws Error(NonRationalSpectrum) when the linear part has an irrational
// or complex eigenvalue.
JCDecomposition jordan_chevalley(const Derivation& xi);

// H with Ad_H zeta_j diagonal on the generators for every j.
// Throws Error(NotCommuting) / Error(NotSemisimple) on violated hypotheses.
Endomorphism simultaneous_diagonalize(const std::vector<Derivation>& zetas);

}  // namespace ncsaito
