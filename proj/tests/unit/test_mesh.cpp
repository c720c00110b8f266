#include "sysgeo/mesh.hpp"

#include <doctest.h>

#include <stdexcept>
#include <vector>

using namespace sysgeo;

TEST_CASE("cell indexing round-trips row-major") {
    auto m = build_conformal_torus({3, 4, 5}, std::vector<double>(60, 1.0));
    CHECK(m.cell_count() == 60);
    CHECK(m.cell_index({0, 0, 0}) == 0);
    CHECK(m.cell_index({0, 0, 1}) == 1);  // last axis fastest
    CHECK(m.cell_index({1, 0, 0}) == 20);
    for (std::size_t i = 0; i < m.cell_count(); ++i)
        CHECK(m.cell_index(m.cell_coords(i)) == i);
}

TEST_CASE("volumes follow phi^n times the cell footprint") {
    auto m = build_conformal_torus({3, 3}, std::vector<double>(9, 2.0), {0.5, 0.25});
    CHECK(m.cell_volume(0) == 4.0 * 0.125);  // powers of two: exact
    CHECK(m.total_volume() == 9 * 0.5);
    CHECK(m.max_spacing() == 0.5);

    // Flat unit torus: volume exactly 1 regardless of resolution.
    auto f = build_flat_torus({1.0, 1.0}, 8);
    CHECK(f.dims == std::vector<int>{8, 8});
    CHECK(f.spacing[0] == 0.125);
    CHECK(f.total_volume() == 1.0);
}

TEST_CASE("flat torus builder rounds sides to whole cells") {
    auto m = build_flat_torus({0.2, 1.0}, 20);
    CHECK(m.dims == std::vector<int>{4, 20});
    CHECK(m.spacing[0] == doctest::Approx(0.05));
    CHECK(m.total_volume() == doctest::Approx(0.2));

    // Negative diagonal entries describe the same torus.
    auto neg = build_flat_torus({-1.0, 1.0}, 4);
    CHECK(neg.dims == std::vector<int>{4, 4});

    CHECK_THROWS_AS(build_flat_torus({0.05, 1.0}, 10), std::invalid_argument);
    CHECK_THROWS_AS(build_flat_torus({0.0, 1.0}, 10), std::invalid_argument);
    CHECK_THROWS_AS(build_flat_torus({}, 10), std::invalid_argument);
    CHECK_THROWS_AS(build_flat_torus({1.0}, 2), std::invalid_argument);
}

TEST_CASE("validate rejects malformed meshes") {
    CHECK_THROWS_AS(build_conformal_torus({2, 3}, std::vector<double>(6, 1.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_conformal_torus({3, 3}, std::vector<double>(8, 1.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_conformal_torus({3, 3}, std::vector<double>(9, -1.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_conformal_torus({3, 3}, std::vector<double>(9, 1.0), {1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_conformal_torus({3, 3}, std::vector<double>(9, 1.0), {1.0, 0.0}),
                    std::invalid_argument);
}
