#include <doctest.h>

#include <algorithm>
#include <set>

#include "resnet/network.hpp"
#include "resnet/network_io.hpp"

using namespace resnet;

namespace {

/// Independent brute-force expansion constant: enumerate every nonempty
/// proper subset directly from the edge list.
double naive_expansion(const Network& net) {
    const int n = net.size();
    double best = 1e300;
    for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
        int size = 0;
        for (int v = 0; v < n; ++v) size += (mask >> v) & 1;
        double cut = 0;
        for (const auto& e : net.edges())
            if (((mask >> e.u) & 1) != ((mask >> e.v) & 1)) cut += e.conductance;
        best = std::min(best, cut / size);
    }
    return best;
}

}  // namespace

TEST_CASE("build_network validates the construction") {
    const Network p3 = build_network({{0, 1, 1.0}, {1, 2, 1.0}}, 0);
    CHECK(p3.size() == 3);
    CHECK(p3.origin() == 0);
    CHECK(p3.edges().size() == 2);

    CHECK_THROWS_AS(build_network({{0, 1, 1.0}, {1, 2, 1.0}, {3, 4, 1.0}}, 0),
                    DisconnectedGraph);
    CHECK_THROWS_AS(build_network({{0, 0, 1.0}}, 0), SelfLoop);
    CHECK_THROWS_AS(build_network({{0, 1, -2.0}}, 0), NonpositiveConductance);
    CHECK_THROWS_AS(build_network({{0, 1, 0.0}}, 0), NonpositiveConductance);
    CHECK_THROWS_AS(build_network({{0, 1, 1.0}, {1, 0, 2.0}}, 0), DuplicateEdge);
    CHECK_THROWS_AS(build_network({}, 0), InvalidNetwork);
}

TEST_CASE("net_conductance sums incident conductances") {
    const Network p3 = path_graph(3);
    CHECK(net_conductance(p3, 1) == doctest::Approx(2.0));
    CHECK(net_conductance(p3, 0) == doctest::Approx(1.0));
    const Network ball = lattice_ball(2, 2);
    CHECK(net_conductance(ball, ball.vertex_by_label("0,0")) == doctest::Approx(4.0));
    CHECK(net_conductance(ball, ball.vertex_by_label("1,0")) == doctest::Approx(4.0));
    CHECK_THROWS_AS(net_conductance(p3, 7), UnknownVertex);
}

TEST_CASE("lattice_ball shapes") {
    const Network seg = lattice_ball(1, 2);
    CHECK(seg.size() == 5);
    CHECK(seg.edges().size() == 4);

    const Network plus = lattice_ball(2, 1);
    CHECK(plus.size() == 5);
    CHECK(plus.edges().size() == 4);
    CHECK(plus.label(plus.origin()) == "0,0");

    const Network d3 = lattice_ball(3, 1);
    CHECK(d3.size() == 7);
    CHECK(d3.edges().size() == 6);
}

TEST_CASE("binary_tree shapes") {
    CHECK(binary_tree(1).size() == 3);
    CHECK(binary_tree(1).edges().size() == 2);
    CHECK(binary_tree(2).size() == 7);
    CHECK(binary_tree(2).edges().size() == 6);
    CHECK(binary_tree(3).size() == 15);
    CHECK(binary_tree(3).edges().size() == 14);
    CHECK(binary_tree(2).label(0) == "");
    CHECK(binary_tree(2).find_label("01").has_value());
}

TEST_CASE("cartesian products") {
    const Network square = cartesian_product(path_graph(2), path_graph(2));
    CHECK(square.size() == 4);
    CHECK(square.edges().size() == 4);  // 4-cycle
    for (const auto& e : square.edges()) CHECK(e.conductance == 1.0);

    // tree(1) x P2: edges = 2 tree edges per layer x 2 layers + 3 rungs
    const Network prism = cartesian_product(binary_tree(1), path_graph(2));
    CHECK(prism.size() == 6);
    CHECK(prism.edges().size() == 7);

    const Network same = cartesian_product(path_graph(3), path_graph(1));
    CHECK(same.size() == 3);
    CHECK(same.edges().size() == 2);
}

TEST_CASE("wired_collapse merges the outside into omega") {
    const Network ball3 = lattice_ball(1, 3);
    std::vector<int> keep;
    for (const std::string label : {"-1", "0", "1"})
        keep.push_back(ball3.vertex_by_label(label));
    const WiredCollapse wc = wired_collapse(ball3, keep);
    REQUIRE(!wc.empty_boundary);
    const Network& net = wc.network;
    CHECK(net.size() == 4);
    REQUIRE(net.ground().has_value());
    const int omega = *net.ground();
    CHECK(net.label(omega) == "omega");
    CHECK(net.edges().size() == 4);
    // boundary edges (-1,omega) and (1,omega) with unit conductance
    const int left = net.vertex_by_label("-1"), right = net.vertex_by_label("1");
    double c_left = 0, c_right = 0;
    for (const auto& [y, c] : net.neighbors(omega)) {
        if (y == left) c_left = c;
        if (y == right) c_right = c;
    }
    CHECK(c_left == doctest::Approx(1.0));
    CHECK(c_right == doctest::Approx(1.0));
    CHECK(wc.boundary_conductance == doctest::Approx(2.0));
}

TEST_CASE("wired_collapse of a tree truncation doubles at the leaves") {
    const Network t2 = binary_tree(2);
    std::vector<int> keep;
    for (const std::string label : {"", "0", "1"}) keep.push_back(t2.vertex_by_label(label));
    const WiredCollapse wc = wired_collapse(t2, keep);
    const Network& net = wc.network;
    const int omega = *net.ground();
    CHECK(net.neighbors(omega).size() == 2);
    for (const auto& [y, c] : net.neighbors(omega)) {
        (void)y;
        CHECK(c == doctest::Approx(2.0));  // two outside children each
    }
}

TEST_CASE("wired_collapse edge cases") {
    const Network p3 = path_graph(3);
    const WiredCollapse all = wired_collapse(p3, {0, 1, 2});
    CHECK(all.empty_boundary);
    CHECK(all.network.size() == 3);
    CHECK(!all.network.ground().has_value());

    CHECK_THROWS_AS(wired_collapse(p3, {1, 2}), OriginOutsideKeep);
    const Network seg = lattice_ball(1, 2);
    CHECK_THROWS_AS(wired_collapse(seg, {seg.vertex_by_label("-2"), seg.vertex_by_label("0"),
                                         seg.vertex_by_label("2")}),
                    DisconnectedGraph);
}

TEST_CASE("exhaustions nest and align by label") {
    for (const ExhaustionSpec& gen :
         {ExhaustionSpec::lattice(2), ExhaustionSpec::tree(),
          ExhaustionSpec::tree_cross_line()}) {
        const Network inner = gen.truncation(2);
        const Network outer = gen.truncation(3);
        CHECK(inner.size() < outer.size());
        for (int v = 0; v < inner.size(); ++v)
            CHECK(outer.find_label(inner.label(v)).has_value());
    }

    // a finite file-backed family saturates
    const ExhaustionSpec file = ExhaustionSpec::from_network(path_graph(5));
    CHECK(file.truncation(1).size() == 2);
    CHECK(file.truncation(4).size() == 5);
    CHECK(file.truncation(9).size() == 5);
    CHECK(file.wired_truncation(9).empty_boundary);

    // unlabeled bases get id labels so depths still align
    const ExhaustionSpec plain =
        ExhaustionSpec::from_network(build_network({{0, 1, 1.0}, {1, 2, 2.0}}, 0));
    const Network t1 = plain.truncation(1);
    CHECK(t1.size() == 2);
    CHECK(t1.find_label("1").has_value());
    CHECK(!plain.wired_truncation(1).empty_boundary);
    CHECK(plain.wired_truncation(1).network.ground().has_value());
}

TEST_CASE("expansion constant: exact brute force against the naive oracle") {
    CHECK(expansion_constant(complete_graph(3)) == doctest::Approx(1.0));
    CHECK(expansion_constant(path_graph(3)) == doctest::Approx(0.5));
    CHECK(expansion_constant(path_graph(2)) == doctest::Approx(1.0));

    for (const Network& net : {complete_graph(5), path_graph(7), lattice_ball(2, 1),
                               binary_tree(2)}) {
        CHECK(expansion_constant(net) == doctest::Approx(naive_expansion(net)).epsilon(1e-12));
    }

    CHECK_THROWS_AS(expansion_constant(path_graph(21)), TooLargeForExact);

    // the sampled search reports an upper bound for the infimum
    const ExpansionEstimate est = expansion_constant_sampled(binary_tree(3), 500, 42);
    CHECK(est.value >= 0.0);
    const double exact = expansion_constant(binary_tree(2));
    const ExpansionEstimate est_small = expansion_constant_sampled(binary_tree(2), 2000, 7);
    CHECK(est_small.value >= exact - 1e-12);
}

TEST_CASE("network JSON round trip") {
    const Network ball = lattice_ball(2, 2);
    const std::string text = network_to_json(ball);
    const Network back = network_from_json(text);
    CHECK(back.size() == ball.size());
    CHECK(back.origin() == ball.origin());
    CHECK(back.edges().size() == ball.edges().size());
    for (size_t i = 0; i < ball.edges().size(); ++i) {
        CHECK(back.edges()[i].u == ball.edges()[i].u);
        CHECK(back.edges()[i].v == ball.edges()[i].v);
        CHECK(back.edges()[i].conductance == ball.edges()[i].conductance);
    }
    for (int v = 0; v < ball.size(); ++v) CHECK(back.label(v) == ball.label(v));

    const WiredCollapse wc = ExhaustionSpec::lattice(2).wired_truncation(2);
    const Network back2 = network_from_json(network_to_json(wc.network));
    REQUIRE(back2.ground().has_value());
    CHECK(*back2.ground() == *wc.network.ground());

    CHECK_THROWS_AS(network_from_json("{"), InvalidNetwork);
    CHECK_THROWS_AS(network_from_json("{\"vertices\": 2}"), InvalidNetwork);
}

TEST_CASE("JSON round trip is lossless on random networks") {
    std::uint64_t state = 314;
    auto rnd = [&state] {
        state += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        z ^= z >> 31;
        return static_cast<double>(z >> 11) * (1.0 / 9007199254740992.0);
    };
    for (int trial = 0; trial < 6; ++trial) {
        const int n = 3 + static_cast<int>(rnd() * 30);
        std::vector<Edge> edges;
        std::set<std::pair<int, int>> seen;
        for (int v = 1; v < n; ++v)
            edges.push_back({static_cast<int>(rnd() * v), v, 0.1 + 9.9 * rnd()});
        for (const auto& e : edges) seen.insert({e.u, e.v});
        for (int extra = 0; extra < n / 2; ++extra) {
            int u = static_cast<int>(rnd() * n), v = static_cast<int>(rnd() * n);
            if (u == v) continue;
            if (u > v) std::swap(u, v);
            if (!seen.insert({u, v}).second) continue;
            edges.push_back({u, v, 0.1 + 9.9 * rnd()});
        }
        const Network net(n, edges, 0, rnd() < 0.5 ? std::optional<int>(n - 1) : std::nullopt);
        const Network back = network_from_json(network_to_json(net));
        CHECK(back.size() == net.size());
        CHECK(back.ground() == net.ground());
        REQUIRE(back.edges().size() == net.edges().size());
        // conductances survive bit for bit (decimal double serialization)
        for (size_t i = 0; i < net.edges().size(); ++i)
            CHECK(back.edges()[i].conductance == net.edges()[i].conductance);
    }
}

TEST_CASE("labels address vertices, ids as fallback") {
    const Network tree = binary_tree(2);
    CHECK(tree.vertex_by_label("") == tree.origin());
    CHECK_THROWS_AS(tree.vertex_by_label("2"), UnknownLabel);  // words, not ids

    const Network plain = build_network({{0, 1, 1.0}, {1, 2, 0.5}}, 0);
    CHECK(plain.vertex_by_label("2") == 2);  // unlabeled: decimal ids work
}
