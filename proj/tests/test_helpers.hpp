#pragma once

#include <vector>

#include "sepkern/operators.hpp"
#include "sepkern/rng.hpp"

namespace sepkern::testing {

// random atom from {1, t, t^2, t^3, sin(w t), cos(w t)}
inline FunctionExpr random_atom(SplitMix64& rng, double omega) {
    switch (rng.below(6)) {
        case 0: return FunctionExpr::constant(1.0);
        case 1: return FunctionExpr::power(1);
        case 2: return FunctionExpr::power(2);
        case 3: return FunctionExpr::power(3);
        case 4: return FunctionExpr::sin_wave(omega);
        default: return FunctionExpr::cos_wave(omega);
    }
}

inline FunctionExpr random_factor(SplitMix64& rng, double omega, int atoms = 2) {
    FunctionExpr f;
    const int n = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(atoms)));
    for (int i = 0; i < n; ++i) f += random_atom(rng, omega) * rng.uniform(-1.5, 1.5);
    return f;
}

// random separable operator with trig/power atoms on a common random window
inline SeparableOperator random_operator(SplitMix64& rng, int max_rank, double p = 2.0) {
    const double lo = rng.uniform(-2.0, 1.0);
    const double hi = lo + rng.uniform(0.8, 2.5);
    const SupportSet support(lo, hi);
    const SupportSet window(lo - rng.uniform(0.0, 0.5), hi + rng.uniform(0.0, 0.5));
    const double omega = 0.5 + 0.5 * static_cast<double>(rng.below(5));
    std::vector<KernelTerm> terms;
    const int rank = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_rank)));
    for (int i = 0; i < rank; ++i) {
        terms.push_back({random_factor(rng, omega).windowed(window), random_factor(rng, omega)});
    }
    return make_operator(std::move(terms), support, p);
}

// pair of random operators sharing support, window and frequency
inline std::pair<SeparableOperator, SeparableOperator> random_operator_pair(SplitMix64& rng,
                                                                            int max_rank,
                                                                            double p = 2.0) {
    const double lo = rng.uniform(-2.0, 1.0);
    const double hi = lo + rng.uniform(0.8, 2.5);
    const SupportSet support(lo, hi);
    const SupportSet window(lo, hi);
    const double omega = 0.5 + 0.5 * static_cast<double>(rng.below(5));
    auto make = [&]() {
        std::vector<KernelTerm> terms;
        const int rank = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_rank)));
        for (int i = 0; i < rank; ++i) {
            terms.push_back(
                {random_factor(rng, omega).windowed(window), random_factor(rng, omega)});
        }
        return make_operator(std::move(terms), support, p);
    };
    return {make(), make()};
}

} // namespace sepkern::testing
