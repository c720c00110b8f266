#include "sysgeo/mesh.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sysgeo {

std::size_t CubicalTorus::cell_count() const {
    std::size_t c = 1;
    for (int d : dims) c *= static_cast<std::size_t>(d);
    return c;
}

std::size_t CubicalTorus::cell_index(const std::vector<int>& coords) const {
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i) {
        int x = coords[i] % dims[i];
        if (x < 0) x += dims[i];
        idx = idx * static_cast<std::size_t>(dims[i]) + static_cast<std::size_t>(x);
    }
    return idx;
}

std::vector<int> CubicalTorus::cell_coords(std::size_t index) const {
    std::vector<int> c(n);
    for (int i = n - 1; i >= 0; --i) {
        c[i] = static_cast<int>(index % static_cast<std::size_t>(dims[i]));
        index /= static_cast<std::size_t>(dims[i]);
    }
    return c;
}

double CubicalTorus::cell_volume(std::size_t cell) const {
    double v = std::pow(weights[cell], n);
    for (double h : spacing) v *= h;
    return v;
}

double CubicalTorus::total_volume() const {
    double hs = 1.0;
    for (double h : spacing) hs *= h;
    double s = 0.0;
    for (double w : weights) s += std::pow(w, n);
    return s * hs;
}

double CubicalTorus::max_spacing() const {
    double m = 0.0;
    for (double h : spacing) m = std::max(m, h);
    return m;
}

void CubicalTorus::validate() const {
    if (n < 1) throw std::invalid_argument("mesh: dimension must be >= 1");
    if (static_cast<int>(dims.size()) != n || static_cast<int>(spacing.size()) != n)
        throw std::invalid_argument("mesh: dims/spacing size mismatch");
    for (int d : dims)
        if (d < 3) throw std::invalid_argument("mesh: every axis needs at least 3 cells");
    for (double h : spacing)
        if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("mesh: spacing must be positive");
    if (weights.size() != cell_count()) throw std::invalid_argument("mesh: weight count != cell count");
    for (double w : weights)
        if (!(w > 0.0) || !std::isfinite(w)) throw std::invalid_argument("mesh: weights must be positive");
}

CubicalTorus build_flat_torus(const std::vector<double>& diagonal, int resolution) {
    if (diagonal.empty()) throw std::invalid_argument("flat torus: empty basis diagonal");
    if (resolution < 3) throw std::invalid_argument("flat torus: resolution must be >= 3");
    CubicalTorus m;
    m.n = static_cast<int>(diagonal.size());
    for (double s : diagonal) {
        if (!(std::fabs(s) > 0.0) || !std::isfinite(s))
            throw std::invalid_argument("flat torus: basis is singular");
        double side = std::fabs(s);
        int cells = static_cast<int>(std::lround(side * resolution));
        if (cells < 3)
            throw std::invalid_argument("flat torus: resolution too coarse for side length " +
                                        std::to_string(side));
        m.dims.push_back(cells);
        m.spacing.push_back(side / cells);
    }
    m.weights.assign(m.cell_count(), 1.0);
    m.validate();
    return m;
}

CubicalTorus build_conformal_torus(std::vector<int> dims, std::vector<double> weights,
                                   std::vector<double> spacing) {
    CubicalTorus m;
    m.n = static_cast<int>(dims.size());
    m.dims = std::move(dims);
    m.spacing = spacing.empty() ? std::vector<double>(m.n, 1.0) : std::move(spacing);
    m.weights = std::move(weights);
    m.validate();
    return m;
}

} // namespace sysgeo
