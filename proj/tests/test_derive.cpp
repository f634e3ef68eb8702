#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "ncsaito/derive.hpp"
#include "ncsaito/errors.hpp"

using namespace ncsaito;

namespace {

// x = 0, y = 1.
Series mono(int n, int N, const Word& w, const Rat& c = 1) {
    return Series::monomial(n, N, w, c);
}

Series random_series(std::mt19937& rng, int n, int N, int nterms, int maxdeg) {
    std::uniform_int_distribution<int> deg(1, maxdeg);
    std::uniform_int_distribution<int> letter(0, n - 1);
    std::uniform_int_distribution<int> coef(-3, 3);
    Series f(n, N);
    for (int t = 0; t < nterms; ++t) {
        Word w(static_cast<std::size_t>(deg(rng)));
        for (int& l : w) l = letter(rng);
        f.add_term(w, Rat(coef(rng)));
    }
    return f;
}

// Rational spectrum guaranteed by a triangular linear part; a couple of
// sparse higher-order terms on top.
Derivation random_triangular_derivation(std::mt19937& rng, int n, int N) {
    std::uniform_int_distribution<int> diag(-2, 2);
    std::uniform_int_distribution<int> coef(-2, 2);
    std::uniform_int_distribution<int> letter(0, n - 1);
    std::uniform_int_distribution<int> deg(2, 3);
    std::vector<Series> images;
    for (int i = 0; i < n; ++i) {
        Series g(n, N);
        g.add_term({i}, Rat(diag(rng)));
        for (int j = 0; j < i; ++j) g.add_term({j}, Rat(coef(rng)));
        for (int t = 0; t < 2; ++t) {
            Word w(static_cast<std::size_t>(deg(rng)));
            for (int& l : w) l = letter(rng);
            g.add_term(w, Rat(coef(rng)));
        }
        images.push_back(std::move(g));
    }
    return Derivation(n, N, std::move(images));
}

Endomorphism random_automorphism(std::mt19937& rng, int n, int N) {
    std::uniform_int_distribution<int> coef(-2, 2);
    std::uniform_int_distribution<int> letter(0, n - 1);
    for (;;) {
        std::vector<Series> images;
        for (int i = 0; i < n; ++i) {
            Series g(n, N);
            for (int j = 0; j < n; ++j) g.add_term({j}, Rat(coef(rng)));
            g.add_term({letter(rng), letter(rng)}, Rat(coef(rng)));
            images.push_back(std::move(g));
        }
        Endomorphism h(n, N, std::move(images));
        if (h.is_automorphism()) return h;
    }
}

}  // namespace

TEST_CASE("apply satisfies the Leibniz rule") {
    std::mt19937 rng(61);
    const int n = 2, N = 6;
    for (int trial = 0; trial < 8; ++trial) {
        Derivation xi = random_triangular_derivation(rng, n, N);
        Series f = random_series(rng, n, N, 6, 4);
        Series g = random_series(rng, n, N, 6, 4);
        CHECK(apply(xi, f * g) == apply(xi, f) * g + f * apply(xi, g));
        CHECK(apply(xi, f + g) == apply(xi, f) + apply(xi, g));
    }
}

TEST_CASE("Euler derivation scales a monomial by its weight") {
    const int n = 2, N = 6;
    Derivation xi = Derivation::diagonal(n, N, {Rat(1, 3), Rat(1, 4)});
    // xi(x^2 y) = (2/3 + 1/4) x^2 y
    Series f = mono(n, N, {0, 0, 1});
    CHECK(apply(xi, f) == f.scaled(Rat(11, 12)));
    CHECK(apply(xi, Series::unit(n, N)).is_zero());
}

TEST_CASE("diagonal predicates and weights") {
    const int n = 2, N = 5;
    Derivation d = Derivation::diagonal(n, N, {1, 2});
    CHECK(d.is_principle());
    CHECK(d.is_diagonal());
    CHECK(d.diagonal_weights() == std::vector<Rat>{1, 2});

    // x -> x, y -> 2y + x^2 is neither principle nor diagonal.
    std::vector<Series> images{Series::generator(n, N, 0),
                               Series::generator(n, N, 1).scaled(2) + mono(n, N, {0, 0})};
    Derivation xi(n, N, std::move(images));
    CHECK_FALSE(xi.is_principle());
    CHECK_FALSE(xi.is_diagonal());
    CHECK_THROWS_AS(xi.diagonal_weights(), Error);
}

TEST_CASE("bracket is a commutator of derivations") {
    std::mt19937 rng(67);
    const int n = 2, N = 5;
    for (int trial = 0; trial < 6; ++trial) {
        Derivation a = random_triangular_derivation(rng, n, N);
        Derivation b = random_triangular_derivation(rng, n, N);
        Derivation c = bracket(a, b);
        CHECK(bracket(b, a) == Derivation::zero(n, N) - c);
        Series f = random_series(rng, n, N, 5, 3);
        CHECK(apply(c, f) == apply(a, apply(b, f)) - apply(b, apply(a, f)));
    }
}

TEST_CASE("adjoint conjugates an eigenvector to a generator") {
    const int n = 2, N = 6;
    // xi(x) = x, xi(y) = y + x^2; y - x^2 is a fixed vector.
    std::vector<Series> images{Series::generator(n, N, 0),
                               Series::generator(n, N, 1) + mono(n, N, {0, 0})};
    Derivation xi(n, N, std::move(images));
    Series f = Series::generator(n, N, 1) - mono(n, N, {0, 0});
    CHECK(apply(xi, f) == f);

    // H: y -> y + x^2 sends the eigenvector to y, so Ad_H xi is diagonal.
    std::vector<Series> himg{Series::generator(n, N, 0),
                             Series::generator(n, N, 1) + mono(n, N, {0, 0})};
    Endomorphism h(n, N, std::move(himg));
    CHECK(adjoint(h, xi) == Derivation::diagonal(n, N, {1, 1}));
}

TEST_CASE("adjoint respects composition and equivariance") {
    std::mt19937 rng(71);
    const int n = 2, N = 5;
    for (int trial = 0; trial < 5; ++trial) {
        Derivation xi = random_triangular_derivation(rng, n, N);
        Endomorphism h = random_automorphism(rng, n, N);
        Endomorphism g = random_automorphism(rng, n, N);
        CHECK(adjoint(h, adjoint(g, xi)) == adjoint(compose(h, g), xi));
        // Ad_H xi (H f) = H (xi f)
        Series f = random_series(rng, n, N, 4, 3);
        CHECK(apply(adjoint(h, xi), substitute(h, f)) == substitute(h, apply(xi, f)));
    }
}

TEST_CASE("apply_derivation is representative independent") {
    std::mt19937 rng(73);
    const int n = 2, N = 6;
    for (int trial = 0; trial < 6; ++trial) {
        Derivation xi = random_triangular_derivation(rng, n, N);
        Series f = random_series(rng, n, N, 6, 5);
        Series g = random_series(rng, n, N, 4, 3);
        Superpotential a = canonicalize(f);
        Superpotential b = canonicalize(f + (g * f - f * g));
        CHECK(a == b);
        CHECK(apply_derivation(xi, a) == apply_derivation(xi, b));
    }
}

TEST_CASE("eigen_develop splits by weight and sums back") {
    const int n = 2, N = 6;
    Derivation xi = Derivation::diagonal(n, N, {Rat(1, 3), Rat(1, 2)});
    Series f = mono(n, N, {0, 0, 0}) + mono(n, N, {1, 1}, 2) + mono(n, N, {0, 1}, 5);
    auto parts = eigen_develop(f, xi);
    REQUIRE(parts.size() == 2);  // weight 1: x^3, y^2; weight 5/6: xy
    CHECK(parts.at(Rat(1)) == mono(n, N, {0, 0, 0}) + mono(n, N, {1, 1}, 2));
    CHECK(parts.at(Rat(5, 6)) == mono(n, N, {0, 1}, 5));
    Series sum(n, N);
    for (const auto& [w, part] : parts) {
        CHECK(apply(xi, part) == part.scaled(w));
        sum += part;
    }
    CHECK(sum == f);
}

TEST_CASE("graded_solve off resonance with zero shift") {
    const int n = 1, N = 6;
    Derivation diag = Derivation::diagonal(n, N, {1});
    Derivation shift = Derivation::zero(n, N);
    auto [h, residue] = graded_solve(diag, shift, mono(n, N, {0, 0}), 0);
    CHECK(h == mono(n, N, {0, 0}, Rat(1, 2)));
    CHECK(residue.is_zero());
}

TEST_CASE("graded_solve returns the resonant component as residue") {
    const int n = 2, N = 6;
    Derivation diag = Derivation::diagonal(n, N, {1, 2});
    Derivation shift = Derivation::zero(n, N);
    Series f = mono(n, N, {0, 0});  // weight 2 = b
    auto [h, residue] = graded_solve(diag, shift, f, 2);
    CHECK(h.is_zero());
    CHECK(residue == -f);
}

TEST_CASE("graded_solve inverts the shift by a finite Neumann series") {
    const int n = 2, N = 6;
    Derivation diag = Derivation::diagonal(n, N, {1, 1});
    std::vector<Series> simg{Series::zero(n, N), Series::generator(n, N, 0)};
    Derivation shift(n, N, std::move(simg));  // y -> x
    Series f = mono(n, N, {0, 1});
    auto [h, residue] = graded_solve(diag, shift, f, 0);
    CHECK(h == mono(n, N, {0, 1}, Rat(1, 2)) - mono(n, N, {0, 0}, Rat(1, 4)));
    CHECK(residue.is_zero());
    // Defining identity: (diag + shift - b) h - f = residue.
    CHECK(apply(diag + shift, h) - f == residue);
}

TEST_CASE("graded_solve rejects a non-commuting shift") {
    const int n = 2, N = 6;
    Derivation diag = Derivation::diagonal(n, N, {1, 2});
    std::vector<Series> simg{Series::zero(n, N), Series::generator(n, N, 0)};
    Derivation shift(n, N, std::move(simg));
    CHECK_THROWS_AS(graded_solve(diag, shift, mono(n, N, {0, 1}), 0), Error);
}

TEST_CASE("jordan_chevalley of a semisimple derivation") {
    const int n = 2, N = 6;
    // xi(x) = x, xi(y) = y + x^2 is conjugate to diagonal(1, 1).
    std::vector<Series> images{Series::generator(n, N, 0),
                               Series::generator(n, N, 1) + mono(n, N, {0, 0})};
    Derivation xi(n, N, std::move(images));
    JCDecomposition jc = jordan_chevalley(xi);
    CHECK(jc.semisimple == xi);
    CHECK(jc.nilpotent == Derivation::zero(n, N));
    CHECK(adjoint(jc.conjugator, jc.semisimple) == Derivation::diagonal(n, N, jc.eigenvalues));
    CHECK(jc.eigenvalues == std::vector<Rat>{1, 1});
}

TEST_CASE("jordan_chevalley of a resonant derivation") {
    const int n = 2, N = 6;
    // xi(x) = x, xi(y) = 2y + x^2: the quadratic term is resonant.
    std::vector<Series> images{Series::generator(n, N, 0),
                               Series::generator(n, N, 1).scaled(2) + mono(n, N, {0, 0})};
    Derivation xi(n, N, std::move(images));
    JCDecomposition jc = jordan_chevalley(xi);
    CHECK(jc.semisimple == Derivation::diagonal(n, N, {1, 2}));
    CHECK(jc.nilpotent.image(0).is_zero());
    CHECK(jc.nilpotent.image(1) == mono(n, N, {0, 0}));
    CHECK(jc.conjugator.images() == Endomorphism::identity(n, N).images());
    CHECK(jc.eigenvalues == std::vector<Rat>{1, 2});
}

TEST_CASE("jordan_chevalley invariants on random derivations") {
    std::mt19937 rng(79);
    const int n = 2, N = 6;
    for (int trial = 0; trial < 8; ++trial) {
        Derivation xi = random_triangular_derivation(rng, n, N);
        JCDecomposition jc = jordan_chevalley(xi);
        CHECK(jc.semisimple + jc.nilpotent == xi);
        CHECK(bracket(jc.semisimple, jc.nilpotent) == Derivation::zero(n, N));
        // xi_N has nilpotent linear part.
        RatMatrix m = jc.nilpotent.linear_matrix();
        RatMatrix p = m;
        for (int k = 1; k < n; ++k) p = p * m;
        CHECK(p == RatMatrix::Zero(n, n));
        CHECK(adjoint(jc.conjugator, jc.semisimple) ==
              Derivation::diagonal(n, N, jc.eigenvalues));
        // Spectrum matches the linear part (triangular: diagonal entries).
        std::vector<Rat> expect;
        RatMatrix l = xi.linear_matrix();
        for (int i = 0; i < n; ++i) expect.push_back(l(i, i));
        std::vector<Rat> got = jc.eigenvalues;
        std::sort(expect.begin(), expect.end());
        std::sort(got.begin(), got.end());
        CHECK(got == expect);
    }
}

TEST_CASE("jordan_chevalley rejects a non-rational spectrum") {
    const int n = 2, N = 5;
    // xi(x) = y, xi(y) = -x: eigenvalues +-i.
    std::vector<Series> images{Series::generator(n, N, 1),
                               Series::generator(n, N, 0).scaled(-1)};
    Derivation xi(n, N, std::move(images));
    CHECK_THROWS_AS(jordan_chevalley(xi), Error);
    try {
        jordan_chevalley(xi);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NonRationalSpectrum);
    }
}

TEST_CASE("simultaneous_diagonalize on a commuting family") {
    std::mt19937 rng(83);
    const int n = 2, N = 5;
    for (int trial = 0; trial < 4; ++trial) {
        // Conjugate two diagonal derivations by a common automorphism.
        Endomorphism h = random_automorphism(rng, n, N);
        Endomorphism hinv = invert(h);
        Derivation d1 = Derivation::diagonal(n, N, {1, 2});
        Derivation d2 = Derivation::diagonal(n, N, {3, 5});
        std::vector<Derivation> zetas{adjoint(hinv, d1), adjoint(hinv, d2)};
        CHECK(bracket(zetas[0], zetas[1]) == Derivation::zero(n, N));
        Endomorphism t = simultaneous_diagonalize(zetas);
        for (const Derivation& z : zetas) CHECK(adjoint(t, z).is_diagonal());
    }
}
