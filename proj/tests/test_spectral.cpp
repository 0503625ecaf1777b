#include <doctest.h>

#include <cmath>

#include "resnet/network.hpp"
#include "resnet/operators.hpp"
#include "resnet/resistance.hpp"
#include "resnet/spectral.hpp"

using namespace resnet;

namespace {

VertexFunction delta(const Network& net, int x) {
    VertexFunction d = VertexFunction::Zero(net.size());
    d[x] = 1.0;
    return d;
}

}  // namespace

TEST_CASE("spectral measure of delta_0 on grounded K3") {
    // grounded matrix [[2,-1],[-1,2]]: eigenpairs (1, (1,1)/sqrt2) and
    // (3, (1,-1)/sqrt2); both masses 1/2
    GroundedSystem gs(complete_graph(3), 2);
    const DiscreteSpectralMeasure mu = spectral_measure(gs, delta(gs.network(), 0));
    REQUIRE(mu.atoms.size() == 2);
    CHECK(mu.atoms[0].lambda == doctest::Approx(1.0));
    CHECK(mu.atoms[0].mass == doctest::Approx(0.5));
    CHECK(mu.atoms[1].lambda == doctest::Approx(3.0));
    CHECK(mu.atoms[1].mass == doctest::Approx(0.5));
    CHECK(mu.total == doctest::Approx(1.0));
}

TEST_CASE("spectral measure degenerate inputs") {
    GroundedSystem gs(complete_graph(3), 2);
    const SpectralDecomposition eig = dense_eig(gs.matrix());
    const VertexFunction phi = gs.extend(eig.eigenvectors.col(0));
    const DiscreteSpectralMeasure single = spectral_measure(gs, phi);
    REQUIRE(single.atoms.size() == 1);
    CHECK(single.atoms[0].mass == doctest::Approx(1.0));

    const DiscreteSpectralMeasure empty =
        spectral_measure(gs, VertexFunction::Zero(3));
    CHECK(empty.atoms.empty());
    CHECK(empty.total == 0.0);
}

TEST_CASE("moment identity") {
    GroundedSystem gs(complete_graph(3), 2);
    const VertexFunction xi = delta(gs.network(), 0);
    const auto rows = moment_identity_check(gs, xi, 6);
    REQUIRE(rows.size() == 7);
    CHECK(rows[0].lhs == doctest::Approx(1.0).epsilon(1e-12));  // |xi|^2
    CHECK(rows[0].rhs == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rows[1].lhs == doctest::Approx(2.0).epsilon(1e-12));  // xi' L xi = c(0)
    for (const auto& r : rows) CHECK(r.rel_dev < 1e-10);

    const auto zero_rows = moment_identity_check(gs, VertexFunction::Zero(3), 3);
    for (const auto& r : zero_rows) {
        CHECK(r.lhs == 0.0);
        CHECK(r.rhs == 0.0);
    }

    CHECK_THROWS_AS(moment_identity_check(gs, xi, 9), Error);
}

TEST_CASE("radon-nikodym derivative is the spectral parameter") {
    GroundedSystem k3(complete_graph(3), 2);
    CHECK(radon_nikodym_check(k3, delta(k3.network(), 0)) < 1e-10);

    const SpectralDecomposition eig = dense_eig(k3.matrix());
    CHECK(radon_nikodym_check(k3, k3.extend(eig.eigenvectors.col(1))) < 1e-10);

    GroundedSystem p10(path_graph(10), 9);
    VertexFunction xi = VertexFunction::Zero(10);
    for (int i = 0; i < 9; ++i) xi[i] = std::sin(1.3 * i + 0.2);
    CHECK(radon_nikodym_check(p10, xi) < 1e-9);
}

TEST_CASE("spectral resistance equals the Green form") {
    GroundedSystem k3(complete_graph(3), 2);
    CHECK(spectral_resistance(k3, 0, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(green_resistance(k3, 0, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(spectral_resistance(k3, 0, 0) == 0.0);

    const WiredCollapse wc = ExhaustionSpec::lattice(2).wired_truncation(8);
    GroundedSystem gs(wc.network);
    const int a = wc.network.vertex_by_label("0,0");
    const int b = wc.network.vertex_by_label("1,0");
    const double s = spectral_resistance(gs, a, b);
    CHECK(std::abs(s - 0.5) < 0.02);
    CHECK(s == doctest::Approx(green_resistance(gs, a, b)).epsilon(1e-9));
}

TEST_CASE("dirichlet gap matches the path closed form") {
    // collapsed Z1 ball k is the Dirichlet path Laplacian on 2k+1 interior
    // vertices: lambda_min = 2(1 - cos(pi/(2k+2)))
    const DirichletGapSequence seq =
        dirichlet_gap(ExhaustionSpec::lattice(1), {4, 8, 16}, 200, 1);
    for (const auto& p : seq.points) {
        const double expected = 2.0 * (1.0 - std::cos(M_PI / (2 * p.depth + 2)));
        CHECK(p.lambda_min == doctest::Approx(expected).epsilon(1e-8));
    }
    CHECK(seq.points[0].lambda_min > seq.points[1].lambda_min);
    CHECK(seq.points[1].lambda_min > seq.points[2].lambda_min);

    // gapless families decay toward zero
    const DirichletGapSequence z2 =
        dirichlet_gap(ExhaustionSpec::lattice(2), {2, 4, 8}, 300, 1);
    CHECK(z2.points[0].lambda_min > z2.points[1].lambda_min);
    CHECK(z2.points[1].lambda_min > z2.points[2].lambda_min);
    CHECK(z2.points[2].lambda_min < 0.5 * z2.points[0].lambda_min);
}

TEST_CASE("gap resistance bound") {
    const double gamma = 3.0 - 2.0 * std::sqrt(2.0);
    CHECK(gap_resistance_bound(gamma) == doctest::Approx(6.0 + 4.0 * std::sqrt(2.0)));
    CHECK(gap_resistance_bound(gamma) == doctest::Approx(11.6568542494924));
    CHECK(gap_resistance_bound(2.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(gap_resistance_bound(0.0), NonpositiveGap);
    CHECK_THROWS_AS(gap_resistance_bound(-1.0), NonpositiveGap);
}

TEST_CASE("inverse sqrt energy") {
    GroundedSystem k3(complete_graph(3), 2);
    const InverseSqrtEnergyReport rep = inverse_sqrt_energy(k3, delta(k3.network(), 0));
    // (1/2)(1/1) + (1/2)(1/3) = 2/3 = M_00 = E(w_0)
    CHECK(rep.spectral_sum == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(rep.energy_norm == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
    CHECK(rep.bochner_max_rel_dev < 1e-6);

    // single mode: 1/lambda of the eigenvalue
    const SpectralDecomposition eig = dense_eig(k3.matrix());
    const InverseSqrtEnergyReport mode =
        inverse_sqrt_energy(k3, k3.extend(eig.eigenvectors.col(1)));
    CHECK(mode.spectral_sum == doctest::Approx(1.0 / eig.eigenvalues[1]).epsilon(1e-12));
}

TEST_CASE("scalar Bochner integral") {
    CHECK(bochner_inverse_sqrt(1.0) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(bochner_inverse_sqrt(4.0) == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(bochner_inverse_sqrt(0.17) ==
          doctest::Approx(1.0 / std::sqrt(0.17)).epsilon(1e-8));
}
