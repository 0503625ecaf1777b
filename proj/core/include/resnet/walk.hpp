#pragma once

#include <cstdint>

#include "resnet/network.hpp"

namespace resnet {

/// p(x,y) = c_xy / c(x); zero for non-neighbours. Rows sum to 1.
double transition_prob(const Network& net, int x, int y);

struct WalkOptions {
    /// Treat the ground vertex (omega on wired truncations) as an
    /// absorbing failure state. Approximates escape to infinity; biases
    /// the hitting probability downward. Default: ordinary vertex.
    bool absorb_ground = false;
};

/// P[o -> x]: probability that the walk started at o reaches x before
/// returning to o. Exact, through the discrete Dirichlet problem
/// (h harmonic off {o,x}, h(x)=1, h(o)=0; P = sum_y p(o,y) h(y)).
double hitting_probability_exact(const Network& net, int o, int x,
                                 const WalkOptions& opts = {});

struct WalkEstimate {
    double p_hat = 0.0;
    double ci95 = 0.0;          // half-width, normal approximation
    std::int64_t episodes = 0;
    std::int64_t successes = 0;
    std::int64_t failures = 0;
    std::int64_t truncated = 0; // hit the step cap; excluded from p_hat
    std::uint64_t seed = 0;
};

/// Monte Carlo estimate of P[o -> x]. Episodes are keyed by
/// (seed, episode index) through a splittable counter-based generator, so
/// results are bit-identical for a fixed seed at any thread count.
WalkEstimate hitting_probability_mc(const Network& net, int o, int x,
                                    std::int64_t episodes, std::int64_t step_cap,
                                    std::uint64_t seed, const WalkOptions& opts = {});

/// R^F(x,o) = 1 / (c(o) P[o -> x]), via the exact chain solve. Matches
/// free_resistance on every finite network.
double resistance_via_walk(const Network& net, int o, int x);

}  // namespace resnet
