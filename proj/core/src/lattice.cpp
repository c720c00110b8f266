#include "sysgeo/lattice.hpp"
#include "sysgeo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace sysgeo {

void Lattice::validate() const {
    if (basis.rows() == 0 || basis.rows() != basis.cols())
        throw std::invalid_argument("lattice basis must be square and nonempty");
    if (!basis.allFinite())
        throw std::invalid_argument("lattice basis has non-finite entries");
    if (std::abs(basis.determinant()) < 1e-12 * std::pow(basis.norm(), basis.cols()))
        throw std::invalid_argument("lattice basis is singular");
}

namespace {

constexpr int kMaxDim = 12;  // enumeration budget

// Textbook LLL (delta = 0.99) on columns; floating arithmetic is fine here
// because reduction only preconditions the exact enumeration.
void lll_reduce(Eigen::MatrixXd& b) {
    const int n = static_cast<int>(b.cols());
    const double delta = 0.99;
    Eigen::MatrixXd star = b;            // Gram-Schmidt vectors
    Eigen::MatrixXd mu = Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd norms(n);

    auto recompute = [&]() {
        for (int i = 0; i < n; ++i) {
            star.col(i) = b.col(i);
            for (int j = 0; j < i; ++j) {
                mu(i, j) = b.col(i).dot(star.col(j)) / norms[j];
                star.col(i) -= mu(i, j) * star.col(j);
            }
            norms[i] = star.col(i).squaredNorm();
        }
    };
    recompute();

    int k = 1;
    int guard = 0;
    while (k < n && ++guard < 100000) {
        for (int j = k - 1; j >= 0; --j) {
            double r = std::round(mu(k, j));
            if (r != 0.0) {
                b.col(k) -= r * b.col(j);
                recompute();
            }
        }
        if (norms[k] >= (delta - mu(k, k - 1) * mu(k, k - 1)) * norms[k - 1]) {
            ++k;
        } else {
            b.col(k).swap(b.col(k - 1));
            recompute();
            k = std::max(k - 1, 1);
        }
    }
}

struct Enumerator {
    const Eigen::MatrixXd& r;  // upper-triangular Cholesky factor of the Gram
    int n;
    double best;
    Eigen::VectorXi x, best_x;

    // Depth-first over x_i from the last coordinate; partial is the cost of
    // the settled tail. Interval ends carry a relative guard so the true
    // minimizer is never rounded out.
    void descend(int i, double partial) {
        if (i < 0) {
            if (partial > 1e-18 && partial < best) {
                best = partial;
                best_x = x;
            }
            return;
        }
        double center = 0.0;
        for (int j = i + 1; j < n; ++j)
            center += r(i, j) * x[j];
        double budget = best * (1.0 + 1e-9) - partial;
        if (budget < 0.0)
            return;
        double radius = std::sqrt(budget) / r(i, i);
        int lo = static_cast<int>(std::ceil(-radius - center / r(i, i) - 1e-9));
        int hi = static_cast<int>(std::floor(radius - center / r(i, i) + 1e-9));
        for (int v = lo; v <= hi; ++v) {
            x[i] = v;
            double term = r(i, i) * v + center;
            descend(i - 1, partial + term * term);
        }
        x[i] = 0;
    }
};

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace

ShortestVector shortest_vector(const Lattice& lat) {
    lat.validate();
    const int n = lat.n();
    if (n > kMaxDim)
        throw std::invalid_argument("shortest_vector: dimension beyond enumeration budget");

    Eigen::MatrixXd reduced = lat.basis;
    if (n >= 2)
        lll_reduce(reduced);

    Eigen::LLT<Eigen::MatrixXd> llt(reduced.transpose() * reduced);
    if (llt.info() != Eigen::Success)
        throw std::invalid_argument("shortest_vector: Gram matrix is not positive definite");
    Eigen::MatrixXd chol = llt.matrixU();

    Enumerator en{chol, n, std::numeric_limits<double>::infinity(),
                  Eigen::VectorXi::Zero(n), Eigen::VectorXi::Zero(n)};
    for (int i = 0; i < n; ++i) {
        double len2 = reduced.col(i).squaredNorm();
        if (len2 < en.best) {
            en.best = len2;
            en.best_x = Eigen::VectorXi::Unit(n, i);
        }
    }
    en.descend(n - 1, 0.0);

    // Map coefficients back through the column operations by solving in the
    // original basis: reduced * x = original * coeffs.
    Eigen::VectorXd target = reduced * en.best_x.cast<double>();
    Eigen::VectorXd raw = lat.basis.colPivHouseholderQr().solve(target);
    ShortestVector out;
    out.coeffs = raw.array().round().cast<int>().matrix();
    out.length = std::sqrt(en.best);
    return out;
}

double lattice_systole(const Lattice& lat) {
    return shortest_vector(lat).length;
}

MarginRecord check_systolic_inequality(const Lattice& lat, const std::string& which) {
    lat.validate();
    const int n = lat.n();
    MarginRecord rec;
    rec.n = n;
    rec.which = which;
    rec.systole = lattice_systole(lat);
    rec.vol_root = std::pow(lat.volume(), 1.0 / n);
    if (which == "guth") {
        rec.constant = 8.0 * n;
    } else if (which == "gromov") {
        rec.constant = 6.0 * (n + 1) * std::pow(double(n), n) * std::sqrt(std::tgamma(n + 2.0));
    } else if (which == "wenger") {
        rec.constant = 6.0 * std::pow(27.0, n) * std::tgamma(n + 2.0);
    } else {
        throw std::invalid_argument("check_systolic_inequality: which must be guth|gromov|wenger");
    }
    rec.ratio = rec.systole / (rec.constant * rec.vol_root);
    rec.holds = rec.systole <= rec.constant * rec.vol_root;
    return rec;
}

Lattice random_lattice(int n, std::uint64_t seed) {
    if (n < 2)
        throw std::invalid_argument("random_lattice: n must be >= 2");
    std::mt19937_64 rng(seed);
    auto uniform01 = [&]() {  // (0, 1], 53-bit
        return (double((rng() >> 11)) + 1.0) * 0x1.0p-53;
    };
    auto gaussian = [&]() {  // explicit Box-Muller keeps the stream portable
        double u1 = uniform01();
        double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    };

    Lattice lat;
    lat.basis.resize(n, n);
    do {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                lat.basis(i, j) = gaussian();
    } while (std::abs(lat.basis.determinant()) < 1e-12);
    lat.basis *= std::pow(1.0 / std::abs(lat.basis.determinant()), 1.0 / n);
    return lat;
}

StatsTable systole_statistics(int n_min, int n_max, int samples, std::uint64_t seed) {
    if (n_min < 2 || n_max < n_min || n_max > kMaxDim)
        throw std::invalid_argument("systole_statistics: dimension range out of budget");
    if (samples < 1)
        throw std::invalid_argument("systole_statistics: need at least one sample");

    StatsTable table;
    table.samples = samples;
    table.seed = seed;
    for (int n = n_min; n <= n_max; ++n) {
        std::vector<double> sys(samples);
        for (int s = 0; s < samples; ++s) {
            std::uint64_t sub = splitmix64(splitmix64(seed ^ std::uint64_t(n)) ^ std::uint64_t(s));
            sys[s] = lattice_systole(random_lattice(n, sub));
        }
        std::sort(sys.begin(), sys.end());
        StatsRow row;
        row.n = n;
        for (double v : sys)
            row.mean += v;
        row.mean /= samples;
        row.median = samples % 2 ? sys[samples / 2]
                                 : 0.5 * (sys[samples / 2 - 1] + sys[samples / 2]);
        if (samples > 1) {
            double acc = 0.0;
            for (double v : sys)
                acc += (v - row.mean) * (v - row.mean);
            row.stddev = std::sqrt(acc / (samples - 1));
        }
        table.rows.push_back(row);
    }

    // log-log least squares for the growth exponent, plus the best constant
    // for the fixed square-root law.
    double sx = 0, sy = 0, sxx = 0, sxy = 0, shalf = 0;
    const int m = static_cast<int>(table.rows.size());
    for (const StatsRow& row : table.rows) {
        double lx = std::log(double(row.n)), ly = std::log(row.mean);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        shalf += ly - 0.5 * lx;
    }
    double denom = m * sxx - sx * sx;
    table.fit_exponent = m > 1 ? (m * sxy - sx * sy) / denom : 0.0;
    table.fit_constant = std::exp((sy - table.fit_exponent * sx) / m);
    table.sqrt_fit_constant = std::exp(shalf / m);
    for (StatsRow& row : table.rows)
        row.sqrt_law = table.sqrt_fit_constant * std::sqrt(double(row.n));
    return table;
}

double euclidean_ball_volume(int n, double R) {
    if (n < 1 || R < 0.0)
        throw std::invalid_argument("euclidean_ball_volume: need n >= 1 and R >= 0");
    double omega = std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0 + 1.0);
    return omega * std::pow(R, n);
}

} // namespace sysgeo
