#include "resnet/walk.hpp"

#include <Eigen/SparseCore>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <vector>

#include "resnet/solvers.hpp"
#include "resnet/threads.hpp"

namespace resnet {

double transition_prob(const Network& net, int x, int y) {
    net.check_vertex(x);
    net.check_vertex(y);
    const auto& nbrs = net.neighbors(x);
    if (nbrs.empty()) throw IsolatedVertex("vertex has no neighbours");
    double cx = 0.0, cxy = 0.0;
    for (const auto& [z, c] : nbrs) {
        cx += c;
        if (z == y) cxy = c;
    }
    return cxy / cx;
}

double hitting_probability_exact(const Network& net, int o, int x, const WalkOptions& opts) {
    net.check_vertex(o);
    net.check_vertex(x);
    if (o == x) throw SameVertex("start and target coincide");

    // h(x) = 1, h(o) = 0 (and h(ground) = 0 when absorbing), harmonic for
    // the walk elsewhere; harmonicity for the walk equals Lh = 0 there.
    std::vector<char> fixed(net.size(), 0);
    std::vector<double> value(net.size(), 0.0);
    fixed[x] = 1;
    value[x] = 1.0;
    fixed[o] = 1;
    if (opts.absorb_ground && net.ground() && *net.ground() != o && *net.ground() != x)
        fixed[*net.ground()] = 1;

    std::vector<int> unknown;
    std::vector<int> idx(net.size(), -1);
    for (int v = 0; v < net.size(); ++v)
        if (!fixed[v]) {
            idx[v] = static_cast<int>(unknown.size());
            unknown.push_back(v);
        }

    std::vector<double> h(net.size(), 0.0);
    h[x] = 1.0;
    if (!unknown.empty()) {
        const int m = static_cast<int>(unknown.size());
        std::vector<Eigen::Triplet<double>> trips;
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
        for (const auto& e : net.edges()) {
            const int iu = idx[e.u], iv = idx[e.v];
            if (iu >= 0) trips.emplace_back(iu, iu, e.conductance);
            if (iv >= 0) trips.emplace_back(iv, iv, e.conductance);
            if (iu >= 0 && iv >= 0) {
                trips.emplace_back(iu, iv, -e.conductance);
                trips.emplace_back(iv, iu, -e.conductance);
            } else if (iu >= 0) {
                rhs[iu] += e.conductance * value[e.v];
            } else if (iv >= 0) {
                rhs[iv] += e.conductance * value[e.u];
            }
        }
        Eigen::SparseMatrix<double> A(m, m);
        A.setFromTriplets(trips.begin(), trips.end());
        CgConfig cfg;
        cfg.rel_tol = 1e-13;
        cfg.max_iter = 20 * m;
        const CgResult res = cg_solve(A, rhs, cfg);
        if (!res.ok() && res.rel_residual > 1e-9)
            throw MaxIterExceeded("hitting probability solve did not converge");
        for (int i = 0; i < m; ++i) h[unknown[i]] = res.x[i];
    }

    double p = 0.0, co = 0.0;
    for (const auto& [y, c] : net.neighbors(o)) {
        p += c * h[y];
        co += c;
    }
    return p / co;
}

namespace {

inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Counter-based stream keyed by (seed, episode): episode results do not
/// depend on execution order across threads.
struct EpisodeRng {
    std::uint64_t state;
    EpisodeRng(std::uint64_t seed, std::uint64_t episode)
        : state(splitmix64(seed ^ splitmix64(episode * 0x9e3779b97f4a7c15ull + 1))) {}
    double uniform() {
        state = splitmix64(state);
        return static_cast<double>(state >> 11) * (1.0 / 9007199254740992.0);
    }
};

}  // namespace

WalkEstimate hitting_probability_mc(const Network& net, int o, int x,
                                    std::int64_t episodes, std::int64_t step_cap,
                                    std::uint64_t seed, const WalkOptions& opts) {
    net.check_vertex(o);
    net.check_vertex(x);
    if (o == x) throw SameVertex("start and target coincide");
    if (episodes < 100) throw Error("hitting_probability_mc needs at least 100 episodes");
    if (step_cap < 1) throw Error("step cap must be >= 1");

    // cumulative transition tables
    std::vector<std::vector<double>> cumulative(net.size());
    for (int v = 0; v < net.size(); ++v) {
        double c = 0.0;
        for (const auto& [y, cxy] : net.neighbors(v)) {
            (void)y;
            c += cxy;
            cumulative[v].push_back(c);
        }
        for (double& e : cumulative[v]) e /= c;
    }
    const int absorb = opts.absorb_ground && net.ground() ? *net.ground() : -1;

    std::atomic<std::int64_t> successes{0}, failures{0}, truncated{0};
    detail::parallel_blocks(episodes, 1024, [&](std::int64_t begin, std::int64_t end) {
        std::int64_t s = 0, f = 0, t = 0;
        for (std::int64_t ep = begin; ep < end; ++ep) {
            EpisodeRng rng(seed, static_cast<std::uint64_t>(ep));
            int here = o;
            std::int64_t steps = 0;
            for (;;) {
                if (steps++ >= step_cap) {
                    ++t;
                    break;
                }
                const auto& cum = cumulative[here];
                const double u = rng.uniform();
                size_t k = std::lower_bound(cum.begin(), cum.end(), u) - cum.begin();
                if (k >= cum.size()) k = cum.size() - 1;
                here = net.neighbors(here)[k].first;
                if (here == x) {
                    ++s;
                    break;
                }
                if (here == o || here == absorb) {
                    ++f;
                    break;
                }
            }
        }
        successes += s;
        failures += f;
        truncated += t;
    });

    WalkEstimate out;
    out.episodes = episodes;
    out.successes = successes.load();
    out.failures = failures.load();
    out.truncated = truncated.load();
    out.seed = seed;
    const std::int64_t effective = episodes - out.truncated;
    if (effective > 0) {
        out.p_hat = static_cast<double>(out.successes) / static_cast<double>(effective);
        out.ci95 = 1.96 * std::sqrt(std::max(out.p_hat * (1.0 - out.p_hat), 0.0) /
                                    static_cast<double>(effective));
    }
    return out;
}

double resistance_via_walk(const Network& net, int o, int x) {
    const double p = hitting_probability_exact(net, o, x);
    return 1.0 / (net_conductance(net, o) * p);
}

}  // namespace resnet
