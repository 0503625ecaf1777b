#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "resnet/network.hpp"
#include "resnet/resistance.hpp"
#include "resnet/walk.hpp"

using namespace resnet;

namespace {

/// Independent chain-solve oracle: absorbing states {o (failure), x
/// (success)}, fundamental-matrix route (I - Q) h = r built from the raw
/// transition probabilities with a dense LU.
double naive_hitting(const Network& net, int o, int x) {
    const int n = net.size();
    std::vector<int> idx(n, -1);
    std::vector<int> transient;
    for (int v = 0; v < n; ++v)
        if (v != o && v != x) {
            idx[v] = static_cast<int>(transient.size());
            transient.push_back(v);
        }
    const int m = static_cast<int>(transient.size());
    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(m, m);
    Eigen::VectorXd r = Eigen::VectorXd::Zero(m);
    for (int i = 0; i < m; ++i) {
        const int v = transient[i];
        for (const auto& [y, c] : net.neighbors(v)) {
            (void)c;
            const double p = transition_prob(net, v, y);
            if (y == x)
                r[i] += p;
            else if (y != o)
                A(i, idx[y]) -= p;
        }
    }
    const Eigen::VectorXd h = m > 0 ? A.lu().solve(r).eval() : Eigen::VectorXd();
    double out = 0.0;
    for (const auto& [y, c] : net.neighbors(o)) {
        (void)c;
        if (y == x)
            out += transition_prob(net, o, y);
        else
            out += transition_prob(net, o, y) * h[idx[y]];
    }
    return out;
}

}  // namespace

TEST_CASE("transition probabilities") {
    const Network p3 = path_graph(3);
    CHECK(transition_prob(p3, 1, 0) == doctest::Approx(0.5));
    CHECK(transition_prob(p3, 1, 2) == doctest::Approx(0.5));
    CHECK(transition_prob(p3, 0, 2) == 0.0);  // non-neighbours
    const Network k3 = complete_graph(3);
    CHECK(transition_prob(k3, 0, 1) == doctest::Approx(0.5));
    double row = 0.0;
    for (int y = 0; y < 3; ++y) row += transition_prob(k3, 0, y);
    CHECK(row == doctest::Approx(1.0));
}

TEST_CASE("exact hitting probabilities") {
    const Network edge = path_graph(2);
    CHECK(hitting_probability_exact(edge, 0, 1) == doctest::Approx(1.0));

    const Network p3 = path_graph(3);
    CHECK(hitting_probability_exact(p3, 0, 2) == doctest::Approx(0.5).epsilon(1e-12));

    const Network k3 = complete_graph(3);
    CHECK(hitting_probability_exact(k3, 0, 1) == doctest::Approx(0.75).epsilon(1e-12));

    for (const Network& net :
         {lattice_ball(2, 2), binary_tree(3), complete_graph(5)}) {
        const int o = net.origin(), x = net.size() - 1;
        CHECK(hitting_probability_exact(net, o, x) ==
              doctest::Approx(naive_hitting(net, o, x)).epsilon(1e-10));
    }

    CHECK_THROWS_AS(hitting_probability_exact(p3, 1, 1), SameVertex);
}

TEST_CASE("monte carlo estimates") {
    const Network edge = path_graph(2);
    const WalkEstimate forced = hitting_probability_mc(edge, 0, 1, 1000, 10, 5);
    CHECK(forced.p_hat == 1.0);
    CHECK(forced.successes == 1000);

    const Network p3 = path_graph(3);
    const WalkEstimate est = hitting_probability_mc(p3, 0, 2, 100000, 100000, 7);
    CHECK(std::abs(est.p_hat - 0.5) <= 3.0 * est.ci95);
    CHECK(est.successes + est.failures + est.truncated == est.episodes);

    // reproducible bit for bit
    const WalkEstimate again = hitting_probability_mc(p3, 0, 2, 100000, 100000, 7);
    CHECK(est.p_hat == again.p_hat);
    CHECK(est.successes == again.successes);

    // wired Z1 truncation against the exact solve
    const WiredCollapse wc = ExhaustionSpec::lattice(1).wired_truncation(10);
    const int o = wc.network.vertex_by_label("0");
    const int x = wc.network.vertex_by_label("5");
    const double exact = hitting_probability_exact(wc.network, o, x);
    const WalkEstimate mc = hitting_probability_mc(wc.network, o, x, 100000, 1000000, 11);
    CHECK(std::abs(mc.p_hat - exact) <= 3.0 * mc.ci95);

    CHECK_THROWS_AS(hitting_probability_mc(p3, 0, 2, 50, 100, 1), Error);
}

TEST_CASE("absorbing omega biases the estimate downward consistently") {
    const WiredCollapse wc = ExhaustionSpec::lattice(2).wired_truncation(4);
    const int o = wc.network.vertex_by_label("0,0");
    const int x = wc.network.vertex_by_label("1,0");
    WalkOptions absorb;
    absorb.absorb_ground = true;
    const double exact_plain = hitting_probability_exact(wc.network, o, x);
    const double exact_absorb = hitting_probability_exact(wc.network, o, x, absorb);
    CHECK(exact_absorb < exact_plain);  // losing the returns through omega

    const WalkEstimate mc = hitting_probability_mc(wc.network, o, x, 100000, 100000, 3, absorb);
    CHECK(std::abs(mc.p_hat - exact_absorb) <= 3.0 * mc.ci95);
}

TEST_CASE("walk-resistance identity") {
    CHECK(resistance_via_walk(path_graph(3), 0, 2) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(resistance_via_walk(complete_graph(3), 0, 1) ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(resistance_via_walk(path_graph(2), 0, 1) == doctest::Approx(1.0));

    for (const Network& net : {lattice_ball(2, 2), binary_tree(3)}) {
        const int o = net.origin(), x = net.size() - 1;
        CHECK(resistance_via_walk(net, o, x) ==
              doctest::Approx(free_resistance(net, x, o)).epsilon(1e-9));
    }
}
