#pragma once

#include <map>
#include <vector>

#include "ncsaito/derive.hpp"
#include "ncsaito/jacobi.hpp"

namespace ncsaito {

struct WeightType {
    std::vector<Rat> weights;  // one per generator, unsorted

    bool operator==(const WeightType& other) const { return weights == other.weights; }
};

// Weights sorted ascending; right-equivalent superpotentials must agree here.
WeightType canonical_type(const WeightType& r);

// True iff every word of the canonical representative has letter-weight sum
// exactly 1 (necklace rotation preserves weight, so this decides the class).
bool is_weighted_homogeneous(const Superpotential& phi, const WeightType& r);

// Finds g_1,...,g_n in m with pi(sum g_i D_i Phi) = Phi mod m^{trunc+1} by
// one exact linear solve in necklace coordinates, and returns xi with
// xi(x_i) = g_i. Post-verified: apply_derivation(xi, Phi) == Phi.
// Throws Error(NotQuasiHomogeneous) / Error(NotCertifiedFinite).
Derivation euler_solve(const Superpotential& phi, const JacobiReport& report,
                       std::int64_t size_guard = kDefaultSizeGuard);

struct WeightsResult {
    WeightType type;
    Derivation euler;          // xi from euler_solve
    JCDecomposition jc;        // decomposition of xi
};

// Saito weights: eigenvalues of the semisimple part of an Euler derivation.
// Asserts 0 < r_i < 1/2; Error(WeightOutOfRange) signals a violated
// hypothesis (order < 3 or non-finite Jacobi algebra).
WeightsResult weights(const Superpotential& phi, const JacobiReport& report,
                      std::int64_t size_guard = kDefaultSizeGuard);

struct NormalizationResult {
    WeightType type;
    Endomorphism transform;     // automorphism H
    Superpotential normal_form; // canonicalize(H(Phi)), weighted homogeneous
    Derivation euler;           // xi with Phi_#(xi) = Phi
};

// Full pipeline: Euler solve, Jordan-Chevalley, conjugate to the weighted-
// homogeneous normal form; every field cross-verified before returning.
NormalizationResult normalize(const Superpotential& phi, const JacobiReport& report,
                              std::int64_t size_guard = kDefaultSizeGuard);

struct UniquenessDiagnostic {
    bool equal = false;
    RatMatrix dominance_matrix;  // the diagonally dominant matrix A
    bool diagonally_dominant = false;
};

// Checks xi = eta for two diagonal semisimple derivations with
// Phi_#(xi) = Phi_#(eta) = Phi, and certifies the diagonal dominance
// argument behind the uniqueness proof.
// Throws Error(UniquenessViolated) when the derivations differ.
UniquenessDiagnostic semisimple_uniqueness_check(const Superpotential& phi,
                                                 const Derivation& xi,
                                                 const Derivation& eta);

// Commutative truncated polynomial: sorted exponent vector -> coefficient.
using CommPoly = std::map<std::vector<int>, Rat>;

// Image of Phi under x_i -> commuting x_i.
CommPoly abelianize(const Superpotential& phi);

bool is_weighted_homogeneous_comm(const CommPoly& p, const WeightType& r);

}  // namespace ncsaito
