#include "ncsaito/cyclic.hpp"

#include <algorithm>

namespace ncsaito {

Word standard_word(const Word& w) {
    if (w.size() <= 1) return w;
    Word best = w;
    Word rot = w;
    for (std::size_t k = 1; k < w.size(); ++k) {
        std::rotate(rot.begin(), rot.begin() + 1, rot.end());
        if (rot > best) best = rot;
    }
    return best;
}

int Superpotential::order() const {
    if (rep_.is_zero())
        throw Error(ErrorCode::ZeroPotential, "order of the zero superpotential");
    return rep_.order();
}

Superpotential canonicalize(const Series& f) {
    Superpotential phi(f.nvars(), f.trunc());
    for (const auto& [w, c] : f.terms()) phi.rep_.add_term(standard_word(w), c);
    return phi;
}

Series cyclic_derivative(const Superpotential& phi, int i) {
    if (i < 0 || i >= phi.nvars())
        throw Error(ErrorCode::InvalidArgument, "generator index out of range");
    Series out(phi.nvars(), phi.trunc());
    for (const auto& [w, c] : phi.rep().terms()) {
        for (std::size_t k = 0; k < w.size(); ++k) {
            if (w[k] != i) continue;
            // w = u x_i v contributes v u.
            Word vu(w.begin() + static_cast<std::ptrdiff_t>(k) + 1, w.end());
            vu.insert(vu.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
            out.add_term(vu, c);
        }
    }
    return out;
}

}  // namespace ncsaito
