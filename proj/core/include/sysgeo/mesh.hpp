// Weighted cubical torus: an n-dimensional periodic grid carrying a
// per-cell conformal factor. Cell k-volumes scale with phi^k, so the grid
// models the metric phi^2 * (flat) sampled cellwise.
//
// Conventions:
//   cell volume                 phi(c)^n * prod_i h_i
//   facet area across axis a    ((phi(c)+phi(c'))/2)^(n-1) * prod_{i!=a} h_i
//   dual edge length, axis a    ((phi(c)+phi(c'))/2) * h_a
// Weights are stored flat in row-major order (last axis fastest).
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace sysgeo {

struct CubicalTorus {
    int n = 0;
    std::vector<int> dims;        // cells per axis, each >= 3
    std::vector<double> spacing;  // grid spacing h per axis
    std::vector<double> weights;  // conformal factor per cell, row-major

    std::size_t cell_count() const;
    std::size_t cell_index(const std::vector<int>& coords) const;
    std::vector<int> cell_coords(std::size_t index) const;

    double phi(std::size_t cell) const { return weights[cell]; }
    double cell_volume(std::size_t cell) const;
    double total_volume() const;
    double max_spacing() const;

    // Throws std::invalid_argument when the structure is malformed.
    void validate() const;
};

// Flat torus R^n / (diag * Z^n) sampled at the given resolution (cells per
// unit length). Only diagonal bases describe a product of circles on a grid;
// others are rejected. Each axis gets round(|d_ii| * resolution) cells.
CubicalTorus build_flat_torus(const std::vector<double>& diagonal, int resolution);

// Conformal torus from explicit dims/weights; spacing defaults to 1.
CubicalTorus build_conformal_torus(std::vector<int> dims, std::vector<double> weights,
                                   std::vector<double> spacing = {});

} // namespace sysgeo
