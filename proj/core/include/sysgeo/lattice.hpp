// Flat tori as lattices: exact shortest-vector systole by enumeration,
// the three systolic constants, and the random-lattice experiment.
#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace sysgeo {

struct Lattice {
    Eigen::MatrixXd basis;  // columns are the generators

    int n() const { return static_cast<int>(basis.cols()); }
    Eigen::MatrixXd gram() const { return basis.transpose() * basis; }
    double volume() const { return std::abs(basis.determinant()); }
    void validate() const;  // square, nonempty, nonsingular
};

struct ShortestVector {
    Eigen::VectorXi coeffs;  // integer coordinates in the basis
    double length = 0.0;
};

// Exact shortest nonzero vector: LLL-reduce, then complete Fincke-Pohst
// enumeration under the best known length (with a relative guard so
// rounding can never exclude the minimizer). n <= 12.
ShortestVector shortest_vector(const Lattice& L);
double lattice_systole(const Lattice& L);

struct MarginRecord {
    int n = 0;
    std::string which;       // "guth", "gromov", or "wenger"
    double systole = 0.0;
    double vol_root = 0.0;   // volume^{1/n}
    double constant = 0.0;
    double ratio = 0.0;      // systole / (constant * vol_root)
    bool holds = false;      // systole <= constant * vol_root
};

MarginRecord check_systolic_inequality(const Lattice& L, const std::string& which);

// Basis with independent standard normal entries (explicit Box-Muller over
// mt19937_64, so the stream is identical across platforms), rescaled to
// volume 1. A proxy ensemble, not Haar measure on unimodular lattices.
Lattice random_lattice(int n, std::uint64_t seed);

struct StatsRow {
    int n = 0;
    double mean = 0.0;
    double median = 0.0;
    double stddev = 0.0;
    double sqrt_law = 0.0;  // fitted C * sqrt(n), the n^(1/2) comparison column
};

struct StatsTable {
    std::vector<StatsRow> rows;
    int samples = 0;
    std::uint64_t seed = 0;
    double fit_exponent = 0.0;   // least-squares slope of log(mean) vs log(n)
    double fit_constant = 0.0;   // exp(intercept) of the same fit
    double sqrt_fit_constant = 0.0;  // best C for mean ~ C * sqrt(n)
};

StatsTable systole_statistics(int n_min, int n_max, int samples, std::uint64_t seed);

// omega_n R^n with omega_n = pi^(n/2) / Gamma(n/2 + 1).
double euclidean_ball_volume(int n, double R);

} // namespace sysgeo
