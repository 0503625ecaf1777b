#include <doctest.h>

#include <Eigen/Dense>
#include <sstream>

#include "resnet/network.hpp"
#include "resnet/operators.hpp"

using namespace resnet;

namespace {

/// Paper-form double sum 1/2 sum_{x,y} c_xy (u(x)-u(y))(v(x)-v(y));
/// quadratic in the vertex count, kept as the independent oracle.
double naive_energy(const Network& net, const VertexFunction& u, const VertexFunction& v) {
    double acc = 0.0;
    for (int x = 0; x < net.size(); ++x)
        for (const auto& [y, c] : net.neighbors(x))
            acc += c * (u[x] - u[y]) * (v[x] - v[y]);
    return acc / 2.0;
}

VertexFunction delta(const Network& net, int x) {
    VertexFunction d = VertexFunction::Zero(net.size());
    d[x] = 1.0;
    return d;
}

}  // namespace

TEST_CASE("apply_laplacian pointwise formula") {
    const Network p3 = path_graph(3);
    VertexFunction u(3);
    u << 0, 1, 2;
    const VertexFunction lu = apply_laplacian(p3, u);
    CHECK(lu[0] == doctest::Approx(-1.0));
    CHECK(lu[1] == doctest::Approx(0.0));
    CHECK(lu[2] == doctest::Approx(1.0));

    const VertexFunction constant = VertexFunction::Constant(3, 4.2);
    CHECK(apply_laplacian(p3, constant).cwiseAbs().maxCoeff() == doctest::Approx(0.0));

    const Network k3 = complete_graph(3);
    const VertexFunction ld = apply_laplacian(k3, delta(k3, 0));
    CHECK(ld[0] == doctest::Approx(2.0));
    CHECK(ld[1] == doctest::Approx(-1.0));
    CHECK(ld[2] == doctest::Approx(-1.0));

    CHECK_THROWS_AS(apply_laplacian(p3, VertexFunction::Zero(5)), LengthMismatch);
}

TEST_CASE("energy form agrees with the double-sum oracle") {
    const Network p3 = path_graph(3);
    VertexFunction u(3);
    u << 0, 1, 2;
    CHECK(energy(p3, u, u) == doctest::Approx(2.0));
    CHECK(energy(p3, delta(p3, 1), delta(p3, 1)) == doctest::Approx(net_conductance(p3, 1)));
    CHECK(energy(p3, VertexFunction::Constant(3, 3.0), u) == doctest::Approx(0.0));

    const Network net = lattice_ball(2, 2);
    VertexFunction a(net.size()), b(net.size());
    for (int i = 0; i < net.size(); ++i) {
        a[i] = std::sin(0.7 * i + 0.3);
        b[i] = std::cos(1.1 * i);
    }
    CHECK(energy(net, a, b) == doctest::Approx(naive_energy(net, a, b)).epsilon(1e-13));
}

TEST_CASE("summation by parts") {
    const Network p3 = path_graph(3);
    VertexFunction u(3);
    u << 0, 1, 2;
    const auto [e1, l1] = summation_by_parts_check(p3, u, delta(p3, 1));
    CHECK(e1 == doctest::Approx(0.0));
    CHECK(l1 == doctest::Approx(0.0));

    const auto [e2, l2] = summation_by_parts_check(p3, delta(p3, 0), delta(p3, 0));
    CHECK(e2 == doctest::Approx(1.0));
    CHECK(l2 == doctest::Approx(1.0));

    const Network k3 = complete_graph(3);
    VertexFunction a(3), b(3);
    a << 0.3, -1.2, 0.7;
    b << 1.4, 0.2, -0.5;
    const auto [e3, l3] = summation_by_parts_check(k3, a, b);
    CHECK(e3 == doctest::Approx(l3).epsilon(1e-12));
    CHECK(e3 == doctest::Approx(naive_energy(k3, a, b)).epsilon(1e-12));
}

TEST_CASE("laplacian matrix structure") {
    const Network net = lattice_ball(2, 1);
    const SparseMatrix L = laplacian_matrix(net);
    for (int v = 0; v < net.size(); ++v) {
        CHECK(L.coeff(v, v) == doctest::Approx(net_conductance(net, v)));
        CHECK(Eigen::VectorXd(L.row(v)).sum() == doctest::Approx(0.0));
        // nonzeros per row = degree + 1
        int nnz = 0;
        for (SparseMatrix::InnerIterator it(L, v); it; ++it) ++nnz;
        CHECK(nnz == net.degree(v) + 1);
    }
}

TEST_CASE("gram matrix against hand inverses") {
    const Network k3 = complete_graph(3);
    GroundedSystem gs(k3, 2);
    const Eigen::MatrixXd M = gram_matrix(gs);
    CHECK(M(0, 0) == doctest::Approx(2.0 / 3.0));
    CHECK(M(0, 1) == doctest::Approx(1.0 / 3.0));
    CHECK(M(1, 0) == doctest::Approx(1.0 / 3.0));
    CHECK(M(1, 1) == doctest::Approx(2.0 / 3.0));

    const Network p2 = path_graph(2);
    const Eigen::MatrixXd M2 = gram_matrix(GroundedSystem(p2, 1));
    CHECK(M2.rows() == 1);
    CHECK(M2(0, 0) == doctest::Approx(1.0));

    const Network p3 = path_graph(3);
    const Eigen::MatrixXd M3 = gram_matrix(GroundedSystem(p3, 2));
    CHECK(M3(0, 0) == doctest::Approx(2.0));
    CHECK(M3(0, 1) == doctest::Approx(1.0));
    CHECK(M3(1, 1) == doctest::Approx(1.0));
}

TEST_CASE("phi map") {
    const Network k3 = complete_graph(3);
    GroundedSystem gs(k3, 2);
    const VertexFunction w0 = phi_map(gs, delta(k3, 0));
    CHECK(w0[0] == doctest::Approx(2.0 / 3.0));
    CHECK(w0[1] == doctest::Approx(1.0 / 3.0));
    CHECK(w0[2] == doctest::Approx(0.0));

    CHECK(phi_map(gs, VertexFunction::Zero(3)).cwiseAbs().maxCoeff() == 0.0);

    const Network p3 = path_graph(3);
    GroundedSystem gp(p3, 2);
    const VertexFunction v = phi_map(gp, delta(p3, 0) - delta(p3, 1));
    CHECK(v[0] == doctest::Approx(1.0));
    CHECK(v[1] == doctest::Approx(0.0));
    CHECK(v[2] == doctest::Approx(0.0));

    CHECK_THROWS_AS(phi_map(gs, delta(k3, 2)), SupportTouchesGround);
}

TEST_CASE("grounded system bookkeeping") {
    const Network p3 = path_graph(3);
    CHECK_THROWS_AS(GroundedSystem{p3}, SingularMatrix);  // no ground marked

    GroundedSystem gs(p3, 1);
    CHECK(gs.dim() == 2);
    CHECK(gs.to_reduced(0) == 0);
    CHECK(gs.to_reduced(2) == 1);
    CHECK(gs.to_full(1) == 2);
    CHECK_THROWS_AS(gs.to_reduced(1), SupportTouchesGround);

    // monopole normalization: w_x(x) = E(w_x)
    const VertexFunction w = gs.monopole(0);
    CHECK(w[0] == doctest::Approx(energy(p3, w, w)).epsilon(1e-12));
}

TEST_CASE("energy form is bilinear and symmetric") {
    const Network net = lattice_ball(2, 2);
    std::uint64_t state = 99;
    auto rnd = [&state] {
        state += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        z ^= z >> 31;
        return static_cast<double>(z >> 11) * (1.0 / 4503599627370496.0) - 1.0;
    };
    for (int trial = 0; trial < 5; ++trial) {
        VertexFunction u(net.size()), v(net.size()), w(net.size());
        for (int i = 0; i < net.size(); ++i) {
            u[i] = rnd();
            v[i] = rnd();
            w[i] = rnd();
        }
        const double a = rnd(), b = rnd();
        CHECK(energy(net, u, v) == doctest::Approx(energy(net, v, u)).epsilon(1e-12));
        CHECK(energy(net, a * u + b * w, v) ==
              doctest::Approx(a * energy(net, u, v) + b * energy(net, w, v)).epsilon(1e-11));
        CHECK(energy(net, u, u) >= 0.0);
    }
}

TEST_CASE("matrix market export") {
    const SparseMatrix L = laplacian_matrix(path_graph(2));
    std::ostringstream os;
    write_matrix_market(L, os);
    const std::string text = os.str();
    CHECK(text.find("%%MatrixMarket matrix coordinate real general\n") == 0);
    CHECK(text.find("2 2 4") != std::string::npos);
    CHECK(text.find("1 1 1") != std::string::npos);
    CHECK(text.find("2 1 -1") != std::string::npos);
}
