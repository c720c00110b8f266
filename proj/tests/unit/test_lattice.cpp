#include "sysgeo/lattice.hpp"

#include <doctest.h>

#include "oracles.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace sysgeo;

namespace {

Lattice from_matrix(const Eigen::MatrixXd& m) {
    Lattice L;
    L.basis = m;
    return L;
}

} // namespace

TEST_CASE("integer and diagonal lattices") {
    for (int n = 1; n <= 10; ++n) {
        Lattice L = from_matrix(Eigen::MatrixXd::Identity(n, n));
        CHECK(lattice_systole(L) == 1.0);
        CHECK(L.volume() == 1.0);
    }

    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(3, 3);
    d.diagonal() << 0.5, 2.0, 1.25;
    auto sv = shortest_vector(from_matrix(d));
    CHECK(sv.length == 0.5);
    CHECK(sv.coeffs.cwiseAbs().sum() == 1);  // a single axis generator
}

TEST_CASE("hexagonal lattice has systole 1 and covolume sqrt(3)/2") {
    Eigen::MatrixXd h(2, 2);
    h << 1.0, 0.5, 0.0, std::sqrt(3.0) / 2.0;
    Lattice L = from_matrix(h);
    CHECK(lattice_systole(L) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(L.volume() == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-14));
}

TEST_CASE("systole scales linearly with the basis") {
    for (std::uint64_t seed : {3u, 14u, 159u}) {
        Lattice L = random_lattice(3, seed);
        double s = lattice_systole(L);
        Lattice twice = from_matrix((2.0 * L.basis).eval());
        CHECK(lattice_systole(twice) == doctest::Approx(2.0 * s).epsilon(1e-13));
    }
}

TEST_CASE("enumeration agrees with box search on random lattices") {
    int checked = 0;
    for (int n = 2; n <= 4; ++n) {
        for (std::uint64_t seed = 1; seed <= 34; ++seed) {
            Lattice L = random_lattice(n, 1000 * n + seed);
            double fast = lattice_systole(L);
            double slow = oracles::shortest_vector_by_box(L.basis);
            CHECK(fast == doctest::Approx(slow).epsilon(1e-12));
            ++checked;
        }
    }
    CHECK(checked == 102);
}

TEST_CASE("shortest vector reports a witness achieving its length") {
    for (std::uint64_t seed : {2u, 7u, 42u}) {
        Lattice L = random_lattice(4, seed);
        auto sv = shortest_vector(L);
        Eigen::VectorXd v = L.basis * sv.coeffs.cast<double>();
        CHECK(v.norm() == doctest::Approx(sv.length).epsilon(1e-14));
        CHECK(sv.coeffs.cwiseAbs().maxCoeff() > 0);
    }
}

TEST_CASE("random lattices are deterministic, volume-normalized proxies") {
    for (int n : {2, 5, 8}) {
        Lattice a = random_lattice(n, 77);
        Lattice b = random_lattice(n, 77);
        CHECK(a.basis == b.basis);  // bit-identical stream
        Lattice c = random_lattice(n, 78);
        CHECK(a.basis != c.basis);
        CHECK(a.volume() == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(random_lattice(0, 1), std::invalid_argument);
}

TEST_CASE("all three inequalities hold with scale-invariant ratios") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        Lattice L = random_lattice(3, seed);
        for (const char* which : {"guth", "gromov", "wenger"}) {
            auto rec = check_systolic_inequality(L, which);
            CHECK(rec.holds);
            CHECK(rec.ratio > 0.0);
            CHECK(rec.ratio <= 1.0);
            CHECK(rec.systole == doctest::Approx(rec.ratio * rec.constant * rec.vol_root));

            Lattice scaled = from_matrix((3.0 * L.basis).eval());
            auto rec2 = check_systolic_inequality(scaled, which);
            CHECK(rec2.ratio == doctest::Approx(rec.ratio).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(check_systolic_inequality(random_lattice(2, 1), "euler"),
                    std::invalid_argument);
}

TEST_CASE("guth margins dwarf the classical ones") {
    Lattice L = random_lattice(4, 9);
    auto g = check_systolic_inequality(L, "guth");
    auto w = check_systolic_inequality(L, "wenger");
    CHECK(g.constant < w.constant);
    CHECK(g.ratio > w.ratio);
}

TEST_CASE("statistics table carries the fit and its inputs") {
    auto stats = systole_statistics(2, 5, 30, 123);
    REQUIRE(stats.rows.size() == 4);
    CHECK(stats.samples == 30);
    CHECK(stats.seed == 123);
    for (const auto& row : stats.rows) {
        CHECK(row.mean > 0.0);
        CHECK(row.median > 0.0);
        CHECK(row.stddev >= 0.0);
        CHECK(row.sqrt_law == doctest::Approx(stats.sqrt_fit_constant * std::sqrt(row.n)));
    }
    CHECK(stats.fit_constant > 0.0);

    // Same seed, same table; different seed, different numbers.
    auto again = systole_statistics(2, 5, 30, 123);
    CHECK(again.rows[2].mean == stats.rows[2].mean);
    auto other = systole_statistics(2, 5, 30, 124);
    CHECK(other.rows[2].mean != stats.rows[2].mean);

    CHECK_THROWS_AS(systole_statistics(5, 2, 30, 1), std::invalid_argument);
    CHECK_THROWS_AS(systole_statistics(2, 5, 0, 1), std::invalid_argument);
}

TEST_CASE("euclidean ball volumes at the classic dimensions") {
    CHECK(euclidean_ball_volume(1, 1.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(euclidean_ball_volume(2, 1.0) == doctest::Approx(std::numbers::pi).epsilon(1e-14));
    CHECK(euclidean_ball_volume(3, 1.0) ==
          doctest::Approx(4.0 * std::numbers::pi / 3.0).epsilon(1e-14));
    CHECK(euclidean_ball_volume(4, 1.0) ==
          doctest::Approx(std::numbers::pi * std::numbers::pi / 2.0).epsilon(1e-14));
    CHECK(euclidean_ball_volume(2, 0.5) == doctest::Approx(std::numbers::pi / 4.0));
}

TEST_CASE("degenerate bases are rejected") {
    Eigen::MatrixXd singular(2, 2);
    singular << 1.0, 2.0, 2.0, 4.0;
    CHECK_THROWS_AS(lattice_systole(from_matrix(singular)), std::invalid_argument);
    Eigen::MatrixXd rect(2, 3);
    rect.setOnes();
    CHECK_THROWS_AS(lattice_systole(from_matrix(rect)), std::invalid_argument);
}
