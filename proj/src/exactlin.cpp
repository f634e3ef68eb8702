#include "ncsaito/exactlin.hpp"

#include <boost/multiprecision/miller_rabin.hpp>
#include <algorithm>
#include <map>

#include "ncsaito/errors.hpp"

namespace ncsaito {

namespace {

// Incremental Gaussian eliminator over dense rational vectors, used for
// deterministic independence selection.
class Eliminator {
public:
    // Returns true when v was independent of the rows seen so far.
    bool add(RatVector v) {
        reduce(v);
        Eigen::Index lead = leading(v);
        if (lead < 0) return false;
        v /= v(lead);
        rows_.emplace(lead, std::move(v));
        return true;
    }

    bool contains(RatVector v) const {
        reduce(v);
        return leading(v) < 0;
    }

    std::size_t rank() const { return rows_.size(); }

private:
    static Eigen::Index leading(const RatVector& v) {
        for (Eigen::Index i = 0; i < v.size(); ++i)
            if (v(i) != 0) return i;
        return -1;
    }

    void reduce(RatVector& v) const {
        for (const auto& [lead, row] : rows_) {
            if (v(lead) != 0) v -= row * v(lead);
        }
    }

    std::map<Eigen::Index, RatVector> rows_;
};

}  // namespace

RrefResult rref(const RatMatrix& m) {
    RatMatrix a = m;
    const Eigen::Index rows = a.rows(), cols = a.cols();
    std::vector<Eigen::Index> pivots;
    Eigen::Index r = 0;
    for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
        Eigen::Index pivot = -1;
        for (Eigen::Index i = r; i < rows; ++i) {
            if (a(i, c) != 0) { pivot = i; break; }
        }
        if (pivot < 0) continue;
        if (pivot != r) a.row(pivot).swap(a.row(r));
        a.row(r) /= a(r, c);
        for (Eigen::Index i = 0; i < rows; ++i) {
            if (i != r && a(i, c) != 0) a.row(i) -= a(i, c) * a.row(r);
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(a), std::move(pivots)};
}

Eigen::Index rank(const RatMatrix& m) {
    return static_cast<Eigen::Index>(rref(m).pivots.size());
}

RatMatrix kernel(const RatMatrix& m) {
    RrefResult r = rref(m);
    const Eigen::Index cols = m.cols();
    std::vector<Eigen::Index> free_cols;
    {
        std::vector<bool> is_pivot(cols, false);
        for (Eigen::Index p : r.pivots) is_pivot[p] = true;
        for (Eigen::Index c = 0; c < cols; ++c)
            if (!is_pivot[c]) free_cols.push_back(c);
    }
    RatMatrix basis = RatMatrix::Zero(cols, static_cast<Eigen::Index>(free_cols.size()));
    for (std::size_t j = 0; j < free_cols.size(); ++j) {
        basis(free_cols[j], static_cast<Eigen::Index>(j)) = 1;
        for (std::size_t i = 0; i < r.pivots.size(); ++i)
            basis(r.pivots[i], static_cast<Eigen::Index>(j)) =
                -r.mat(static_cast<Eigen::Index>(i), free_cols[j]);
    }
    return basis;
}

std::optional<RatVector> try_solve(const RatMatrix& m, const RatVector& b) {
    RatMatrix aug(m.rows(), m.cols() + 1);
    aug.leftCols(m.cols()) = m;
    aug.col(m.cols()) = b;
    RrefResult r = rref(aug);
    for (Eigen::Index p : r.pivots)
        if (p == m.cols()) return std::nullopt;
    RatVector x = RatVector::Zero(m.cols());
    for (std::size_t i = 0; i < r.pivots.size(); ++i)
        x(r.pivots[i]) = r.mat(static_cast<Eigen::Index>(i), m.cols());
    return x;
}

RatVector solve(const RatMatrix& m, const RatVector& b) {
    auto x = try_solve(m, b);
    if (!x) throw Error(ErrorCode::Inconsistent, "right-hand side not in column space");
    return *x;
}

RatMatrix inverse(const RatMatrix& m) {
    if (m.rows() != m.cols())
        throw Error(ErrorCode::InvalidArgument, "inverse of a non-square matrix");
    const Eigen::Index n = m.rows();
    RatMatrix aug(n, 2 * n);
    aug.leftCols(n) = m;
    aug.rightCols(n) = RatMatrix::Identity(n, n);
    RrefResult r = rref(aug);
    if (static_cast<Eigen::Index>(r.pivots.size()) != n || r.pivots.back() != n - 1)
        throw Error(ErrorCode::Inconsistent, "matrix is singular");
    return r.mat.rightCols(n);
}

std::vector<Rat> char_poly(const RatMatrix& m) {
    if (m.rows() != m.cols())
        throw Error(ErrorCode::InvalidArgument, "characteristic polynomial of a non-square matrix");
    const Eigen::Index n = m.rows();
    std::vector<Rat> c(static_cast<std::size_t>(n) + 1);
    c[static_cast<std::size_t>(n)] = 1;
    RatMatrix b = RatMatrix::Identity(n, n);
    for (Eigen::Index k = 1; k <= n; ++k) {
        RatMatrix a = m * b;
        Rat tr = 0;
        for (Eigen::Index i = 0; i < n; ++i) tr += a(i, i);
        Rat ck = -tr / Rat(k);
        c[static_cast<std::size_t>(n - k)] = ck;
        b = a + ck * RatMatrix::Identity(n, n);
    }
    return c;
}

namespace {

void factorize(Int v, std::map<Int, int>& factors) {
    v = abs(v);
    for (Int p = 2; p * p <= v && p < 1000000; p == 2 ? p = 3 : p += 2) {
        while (v % p == 0) { ++factors[p]; v /= p; }
    }
    while (v > 1) {
        if (v < 1000000000000LL || boost::multiprecision::miller_rabin_test(v, 32)) {
            ++factors[v];
            break;
        }
        // Pollard rho for the rare large composite cofactor.
        Int n = v, d = 1;
        for (Int c = 1; d == 1 || d == n; ++c) {
            Int x = 2, y = 2;
            d = 1;
            while (d == 1) {
                x = (x * x + c) % n;
                y = (y * y + c) % n;
                y = (y * y + c) % n;
                d = gcd(abs(x - y), n);
            }
        }
        factorize(d, factors);
        v /= d;
    }
}

std::vector<Int> divisors(const Int& v) {
    std::map<Int, int> factors;
    factorize(v, factors);
    std::vector<Int> divs{1};
    for (const auto& [p, e] : factors) {
        std::size_t base = divs.size();
        Int pw = 1;
        for (int k = 1; k <= e; ++k) {
            pw *= p;
            for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pw);
        }
    }
    return divs;
}

Rat eval_poly(const std::vector<Rat>& coeffs, const Rat& t) {
    Rat acc = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * t + coeffs[i];
    return acc;
}

// Synthetic division by (t - r); assumes r is a root.
std::vector<Rat> deflate(const std::vector<Rat>& coeffs, const Rat& r) {
    std::vector<Rat> q(coeffs.size() - 1);
    Rat carry = coeffs.back();
    for (std::size_t i = coeffs.size() - 1; i-- > 0;) {
        q[i] = carry;
        carry = coeffs[i] + carry * r;
    }
    return q;
}

}  // namespace

std::vector<std::pair<Rat, int>> rational_roots(const std::vector<Rat>& coeffs_in) {
    std::vector<Rat> coeffs = coeffs_in;
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    if (coeffs.size() <= 1)
        throw Error(ErrorCode::InvalidArgument, "roots of a constant polynomial");

    std::map<Rat, int> roots;
    // Zero roots first.
    std::size_t z = 0;
    while (z < coeffs.size() && coeffs[z] == 0) ++z;
    if (z > 0) {
        roots[Rat(0)] = static_cast<int>(z);
        coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(z));
    }

    while (coeffs.size() > 1) {
        // Clear denominators to an integer polynomial.
        Int lcm = 1;
        for (const Rat& c : coeffs) lcm = lcm / gcd(lcm, denominator(c)) * denominator(c);
        std::vector<Int> ic(coeffs.size());
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            ic[i] = numerator(coeffs[i]) * (lcm / denominator(coeffs[i]));

        bool found = false;
        for (const Int& p : divisors(ic.front())) {
            for (const Int& q : divisors(ic.back())) {
                if (gcd(p, q) != 1) continue;
                for (int sign : {1, -1}) {
                    Rat cand(sign * p, q);
                    if (eval_poly(coeffs, cand) == 0) {
                        ++roots[cand];
                        coeffs = deflate(coeffs, cand);
                        found = true;
                        break;
                    }
                }
                if (found) break;
            }
            if (found) break;
        }
        if (!found) break;  // remaining factor has no rational root
    }
    return {roots.begin(), roots.end()};
}

RatMatrix JordanData::jordan_matrix() const {
    Eigen::Index n = 0;
    for (const auto& [ev, size] : blocks) n += size;
    RatMatrix j = RatMatrix::Zero(n, n);
    Eigen::Index at = 0;
    for (const auto& [ev, size] : blocks) {
        for (Eigen::Index i = 0; i < size; ++i) {
            j(at + i, at + i) = ev;
            if (i + 1 < size) j(at + i, at + i + 1) = 1;
        }
        at += size;
    }
    return j;
}

JordanData rational_jordan_form(const RatMatrix& m) {
    if (m.rows() != m.cols())
        throw Error(ErrorCode::InvalidArgument, "Jordan form of a non-square matrix");
    const Eigen::Index n = m.rows();
    if (n == 0) return {RatMatrix(0, 0), {}};

    auto roots = rational_roots(char_poly(m));
    Eigen::Index total_mult = 0;
    for (const auto& [ev, mult] : roots) total_mult += mult;
    if (total_mult != n)
        throw Error(ErrorCode::NonRationalSpectrum,
                    "characteristic polynomial has an irreducible non-linear rational factor");

    JordanData result;
    result.transform = RatMatrix(n, n);
    Eigen::Index col = 0;

    for (const auto& [ev, mult] : roots) {
        RatMatrix nil = m - ev * RatMatrix::Identity(n, n);
        // Kernel filtration K_1 <= K_2 <= ... up to the algebraic multiplicity.
        std::vector<RatMatrix> kernels;  // kernels[k] = basis of ker(nil^{k+1})
        std::vector<Eigen::Index> dims;
        RatMatrix power = nil;
        while (true) {
            RatMatrix k = kernel(power);
            kernels.push_back(k);
            dims.push_back(k.cols());
            if (k.cols() == mult) break;
            power = power * nil;
        }
        const int kmax = static_cast<int>(kernels.size());

        // Chain tops, highest level first; carry holds nil-images of the
        // heads one level up.
        std::vector<std::pair<RatVector, int>> tops;
        std::vector<RatVector> carry;
        for (int k = kmax; k >= 1; --k) {
            Eliminator elim;
            if (k >= 2)
                for (Eigen::Index j = 0; j < kernels[static_cast<std::size_t>(k - 2)].cols(); ++j)
                    elim.add(kernels[static_cast<std::size_t>(k - 2)].col(j));
            std::vector<RatVector> heads = carry;
            for (const RatVector& w : carry) elim.add(w);
            const RatMatrix& kk = kernels[static_cast<std::size_t>(k - 1)];
            for (Eigen::Index j = 0; j < kk.cols(); ++j) {
                RatVector v = kk.col(j);
                if (elim.add(v)) {
                    tops.emplace_back(v, k);
                    heads.push_back(v);
                }
            }
            carry.clear();
            for (const RatVector& h : heads) carry.push_back(nil * h);
        }

        for (const auto& [top, height] : tops) {
            std::vector<RatVector> chain{top};
            for (int i = 1; i < height; ++i) chain.push_back(nil * chain.back());
            for (int i = height; i-- > 0;) result.transform.col(col++) = chain[static_cast<std::size_t>(i)];
            result.blocks.emplace_back(ev, height);
        }
    }

    return result;
}

}  // namespace ncsaito
