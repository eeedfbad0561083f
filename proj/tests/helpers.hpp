#ifndef HOCHKIT_TEST_HELPERS_HPP
#define HOCHKIT_TEST_HELPERS_HPP

#include <random>

#include "hochkit/resolution.hpp"

namespace hochkit::testing {

inline FDModule random_module(const AlgebraPtr& E, std::mt19937& rng, int max_dim = 6) {
    std::uniform_int_distribution<int> rank_d(1, 2);
    std::uniform_int_distribution<u32> coef(0, E->F.p() - 1);
    for (int attempt = 0; attempt < 50; ++attempt) {
        int r = rank_d(rng);
        FDModule F = free_module(E, r);
        std::uniform_int_distribution<int> count_d(0, 2 * r);
        int s = count_d(rng);
        std::vector<Vec> gens;
        for (int t = 0; t < s; ++t) {
            Vec v(F.dim);
            for (auto& x : v) x = coef(rng);
            gens.push_back(std::move(v));
        }
        std::vector<Vec> closed = gens.empty() ? std::vector<Vec>{} : module_closure(F, gens);
        FDModule Q = quotient_module(F, closed).module;
        if (Q.dim >= 1 && Q.dim <= max_dim) return Q;
    }
    return regular_module(E);
}

inline Bimodule random_bimodule(const AlgebraPtr& A, const AlgebraPtr& B, std::mt19937& rng,
                                int max_dim = 6) {
    FDModule m = random_module(bimodule_algebra(A, B), rng, max_dim);
    return Bimodule{A, B, std::move(m)};
}

}  // namespace hochkit::testing

#endif
