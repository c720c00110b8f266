// Ball-volume certificates by induction on dimension, plus the exact
// constants engine (epsilon recurrence, beta schedule, the 8n systolic
// constant, and comparisons against the Gromov and Wenger constants).
#pragma once

#include "sysgeo/mesh.hpp"
#include "sysgeo/minsurf.hpp"
#include "sysgeo/rational.hpp"

#include <string>
#include <vector>

namespace sysgeo {

enum class BetaRule { Optimal, Half };

// Schedule for the cut at dimension k: (k-1)/k or the flat 1/2.
Rational beta_for(int k, BetaRule rule);

struct ConstantsRow {
    int n = 0;
    Rational beta;            // beta_n under the rule
    Rational epsilon;         // eps_n, exact
    Rational four_n_bound;    // (4n)^{-n}
    Rational step_factor;     // (1-beta)*beta^{n-1}
    Rational step_floor;      // 1/(4n)
    bool step_ok = false;     // step_factor >= step_floor, exact
    bool epsilon_ok = false;  // epsilon >= four_n_bound, exact
    Rational guth_constant;   // 8n
    BigInt wenger_constant;   // 6 * 27^n * (n+1)!
    BigInt gromov_coeff;      // 6(n+1)n^n; full constant is coeff*sqrt(radicand)
    BigInt gromov_radicand;   // (n+1)!
    double omega_n = 0.0;     // Euclidean unit-ball volume
    bool guth_below_wenger = false;  // 8n < Wenger, exact
    bool guth_below_gromov = false;  // 8n < Gromov, exact (squared comparison)
};

struct ConstantsTable {
    BetaRule rule = BetaRule::Optimal;
    std::vector<ConstantsRow> rows;  // n = 1 .. n_max
};

ConstantsTable epsilon_table(int n_max, BetaRule rule);

// Normalize systole to 2: admissible R up to 1, so volume >= (4n)^{-n};
// rescaling gives Sys <= 2 * ((4n)^{-n})^{-1/n} * Vol^{1/n} = 8n * Vol^{1/n}.
// The n-th root is exact because the bound is a perfect n-th power.
struct SystolicConstantRecord {
    int n = 0;
    Rational sys_normalized;  // 2
    Rational volume_lower;    // (4n)^{-n}
    Rational volume_root;     // 1/(4n), the exact n-th root of volume_lower
    Rational constant;        // sys_normalized / volume_root = 8n
    bool derivation_ok = false;
};

SystolicConstantRecord systolic_constant(int n);

// One level of the induction at dimension k. For k >= 2 the record carries
// the minimized cut, the stability quantities at the lifted point, and the
// link to the next level's measured ball; the base level keeps only the
// carried class, its length, and the measured 1-ball.
struct LevelRecord {
    int k = 0;
    double r = 0.0;   // radius in force at this level
    Rational beta;    // beta_k (meaningful for k >= 2)
    Rational epsilon; // eps_k under the rule

    std::vector<ClassMask> classes;  // classes carried at this level, ambient axis bits
    std::vector<double> class_lengths;

    ClassMask pivot = 0;  // class minimized at this level (k >= 2)
    std::string method;   // how the cut was certified
    double z_area = 0.0;
    int z_edge_count = 0;

    StabilityRecord stability;     // at `point`, radius r (k >= 2)
    double sub_ball_volume = 0.0;  // next level's measured ball (k >= 2)

    int point = -1;           // center node id in this level's graph
    double ball_volume = 0.0; // |B(point, r)| in this level's graph
};

struct Certificate {
    int n = 0;
    int p = -1;  // cell id in the top-level mesh
    double R = 0.0;
    double ball_volume = 0.0;
    Rational epsilon_used;  // eps_n; the certified claim is ball_volume >= eps_n R^n
    BetaRule rule = BetaRule::Optimal;
    std::vector<LevelRecord> levels;  // dimensions n, n-1, ..., 1
};

// The floor the certificate promises: eps * R^n, evaluated with the exact
// multiply sequence every checker reuses.
double certified_floor(const Rational& eps, double R, int n);

// Runs the induction: cut a minimal hypersurface dual to a pivot axis
// class, recurse into its facet-adjacency graph at radius beta*r with the
// remaining classes, lift the returned point, and bound the ball through
// the stability record. Throws HypothesisError when the classes are
// degenerate or some top-level length is <= 2R, VerificationError when a
// level's discrete geometry refuses to certify.
Certificate guth_certificate(const CubicalTorus& mesh, const std::vector<ClassMask>& classes,
                             double R, BetaRule rule = BetaRule::Optimal);

struct VerifyReport {
    bool ok = false;
    std::vector<std::string> failures;  // one line per violated check, level-tagged
};

// Pure arithmetic over the certificate's own fields; no geometry is
// recomputed. Everything guth_certificate guarantees is re-derived here.
VerifyReport verify_certificate(const Certificate& cert);

} // namespace sysgeo
