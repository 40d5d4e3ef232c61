#pragma once

#include <random>

#include "gpa/multivector.hpp"

namespace testutil {

using namespace gpa;

// Deterministic RNG; seeds are fixed so every run sees identical cases.
inline std::mt19937_64 rng(uint64_t seed) { return std::mt19937_64(seed); }

inline Rat random_rat(std::mt19937_64& g, int lo = -4, int hi = 4) {
    std::uniform_int_distribution<int> num(lo, hi);
    std::uniform_int_distribution<int> den(1, 3);
    return Rat(num(g), den(g));
}

// random polynomial over the listed generators, bounded even-degree and terms
inline GradedPoly random_poly(std::mt19937_64& g, const ContextPtr& ctx,
                              const std::vector<int>& gens, int max_even_degree, int terms) {
    GradedPoly out(ctx);
    std::uniform_int_distribution<int> pick_e(0, max_even_degree);
    std::uniform_int_distribution<int> coin(0, 1);
    for (int t = 0; t < terms; ++t) {
        Monomial m;
        int even_left = max_even_degree;
        for (int gi : gens) {
            if (ctx->gen(gi).odd()) {
                if (coin(g)) m.factors.emplace_back(gi, 1);
            } else {
                std::uniform_int_distribution<int> e(0, even_left);
                int k = e(g);
                if (k > 0) m.factors.emplace_back(gi, k);
                even_left -= k;
            }
        }
        out += GradedPoly::term(ctx, m, random_rat(g));
    }
    return out;
}

// homogeneous variant: resample until the requested Z-degree appears
inline GradedPoly random_homogeneous(std::mt19937_64& g, const ContextPtr& ctx,
                                     const std::vector<int>& gens, int max_even_degree, int terms,
                                     int degree) {
    for (int tries = 0; tries < 64; ++tries) {
        GradedPoly p = random_poly(g, ctx, gens, max_even_degree, terms).homogeneous_part(degree);
        if (!p.is_zero()) return p;
    }
    return GradedPoly::zero(ctx);
}

} // namespace testutil
