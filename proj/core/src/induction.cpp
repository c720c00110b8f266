#include "sysgeo/induction.hpp"
#include "sysgeo/errors.hpp"
#include "sysgeo/lattice.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace sysgeo {

Rational beta_for(int k, BetaRule rule) {
    if (k < 1)
        throw std::invalid_argument("beta_for: dimension must be positive");
    if (rule == BetaRule::Half)
        return Rational(1, 2);
    return Rational(k - 1, k);
}

ConstantsTable epsilon_table(int n_max, BetaRule rule) {
    if (n_max < 1)
        throw std::invalid_argument("epsilon_table: n_max must be >= 1");
    ConstantsTable table;
    table.rule = rule;
    Rational eps = 1;
    for (int n = 1; n <= n_max; ++n) {
        ConstantsRow row;
        row.n = n;
        row.beta = beta_for(n, rule);
        if (n == 1) {
            row.step_factor = 1;  // empty recurrence step; eps_1 is the anchor
        } else {
            row.step_factor = (Rational(1) - row.beta) * rational_pow(row.beta, n - 1);
            eps *= row.step_factor;
        }
        row.epsilon = eps;
        row.four_n_bound = Rational(1, big_pow(4 * n, n));
        row.step_floor = Rational(1, 4 * n);
        row.step_ok = row.step_factor >= row.step_floor;
        row.epsilon_ok = row.epsilon >= row.four_n_bound;
        row.guth_constant = Rational(8 * n);
        row.wenger_constant = 6 * big_pow(27, n) * factorial(n + 1);
        row.gromov_coeff = 6 * (n + 1) * big_pow(n, n);
        row.gromov_radicand = factorial(n + 1);
        row.omega_n = euclidean_ball_volume(n, 1.0);
        row.guth_below_wenger = row.guth_constant < Rational(row.wenger_constant);
        row.guth_below_gromov =
            compare_against_sqrt(row.guth_constant, Rational(row.gromov_coeff),
                                 row.gromov_radicand) < 0;
        table.rows.push_back(std::move(row));
    }
    return table;
}

SystolicConstantRecord systolic_constant(int n) {
    if (n < 1)
        throw std::invalid_argument("systolic_constant: n must be >= 1");
    SystolicConstantRecord rec;
    rec.n = n;
    rec.sys_normalized = 2;
    rec.volume_lower = Rational(1, big_pow(4 * n, n));
    rec.volume_root = Rational(1, 4 * n);
    rec.constant = rec.sys_normalized / rec.volume_root;
    rec.derivation_ok = rational_pow(rec.volume_root, n) == rec.volume_lower &&
                        rec.constant * rec.volume_root == rec.sys_normalized &&
                        rec.constant == Rational(8 * n);
    return rec;
}

double certified_floor(const Rational& eps, double R, int n) {
    double pow_r = 1.0;
    for (int i = 0; i < n; ++i)
        pow_r *= R;
    return to_double(eps) * pow_r;
}

namespace {

// Writes target as a XOR of the given rows; the returned bitmask indexes the
// rows used. Empty optional when target is outside the span.
std::optional<std::uint32_t> solve_in_span(const std::vector<ClassMask>& rows, ClassMask target) {
    ClassMask vec[32] = {};
    std::uint32_t tag[32] = {};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        ClassMask v = rows[i];
        std::uint32_t t = std::uint32_t(1) << i;
        while (v != 0) {
            int b = 31 - std::countl_zero(v);
            if (vec[b] == 0) {
                vec[b] = v;
                tag[b] = t;
                break;
            }
            v ^= vec[b];
            t ^= tag[b];
        }
    }
    ClassMask v = target;
    std::uint32_t t = 0;
    while (v != 0) {
        int b = 31 - std::countl_zero(v);
        if (vec[b] == 0)
            return std::nullopt;
        v ^= vec[b];
        t ^= tag[b];
    }
    return t;
}

std::string level_tag(int k) {
    std::ostringstream os;
    os << "dimension " << k << ": ";
    return os.str();
}

// Nodes whose component carries an alpha-odd cycle; only there can a 1-ball
// certify length against the class.
std::vector<int> odd_component_nodes(const CellGraph& g, ClassMask alpha) {
    std::vector<signed char> color(g.nodes.size(), -1);
    std::vector<int> result;
    std::vector<int> stack, members;
    for (int root = 0; root < static_cast<int>(g.nodes.size()); ++root) {
        if (color[root] >= 0)
            continue;
        bool odd = false;
        color[root] = 0;
        stack.push_back(root);
        members.assign(1, root);
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (auto [v, e] : g.adj[u]) {
                signed char want = color[u] ^ (edge_pairs_odd(g.edges[e], alpha) ? 1 : 0);
                if (color[v] < 0) {
                    color[v] = want;
                    stack.push_back(v);
                    members.push_back(v);
                } else if (color[v] != want) {
                    odd = true;
                }
            }
        }
        if (odd)
            result.insert(result.end(), members.begin(), members.end());
    }
    std::sort(result.begin(), result.end());
    return result;
}

struct LevelOutcome {
    int point = -1;
    double ball_volume = 0.0;
    Rational epsilon;
};

LevelOutcome certify_level(const CellGraph& g, const std::vector<ClassMask>& classes,
                           double r, BetaRule rule, bool top, std::vector<LevelRecord>& out) {
    const int k = static_cast<int>(classes.size());
    if (static_cast<int>(g.dim) != k)
        throw std::logic_error("certify_level: class count does not match graph dimension");

    LevelRecord rec;
    rec.k = k;
    rec.r = r;
    rec.beta = beta_for(k, rule);
    rec.classes = classes;
    for (ClassMask c : classes) {
        double len = class_length(g, c);
        if (!(len < std::numeric_limits<double>::infinity())) {
            if (top)
                throw HypothesisError("class carries no cycle on this mesh");
            throw VerificationError(level_tag(k) + "a carried class restricts to zero on the cut");
        }
        if (!(len > 2.0 * r)) {
            if (top)
                throw HypothesisError("class length is not greater than 2R");
            throw VerificationError(level_tag(k) +
                                    "restricted class length dropped to at most twice the radius");
        }
        rec.class_lengths.push_back(len);
    }

    if (k == 1) {
        rec.epsilon = 1;
        double best = -1.0;
        int best_node = -1;
        for (int node : odd_component_nodes(g, classes[0])) {
            DistanceField df = distance_field(g, node);
            double vol = 0.0;
            for (std::size_t i = 0; i < g.nodes.size(); ++i)
                if (df.dist[i] <= r)
                    vol += g.nodes[i].volume;
            if (vol > best) {
                best = vol;
                best_node = node;
            }
        }
        if (best_node < 0 || !(best >= certified_floor(rec.epsilon, r, 1)))
            throw VerificationError(level_tag(1) + "no 1-ball reaches the base volume floor");
        rec.point = best_node;
        rec.ball_volume = best;
        out.push_back(std::move(rec));
        return {best_node, best, Rational(1)};
    }

    // Pivot: the first axis class expressible in the carried span; swap it
    // in for one spanning contributor so the remaining classes stay
    // independent. Any pivot-odd loop is odd for some contributor, so the
    // pivot inherits the carried length floor.
    ClassMask pivot = 0;
    int drop = -1;
    for (int a = 0; a < g.n && drop < 0; ++a) {
        if (auto tag = solve_in_span(classes, ClassMask(1) << a)) {
            pivot = ClassMask(1) << a;
            drop = 31 - std::countl_zero(*tag);
        }
    }
    if (drop < 0) {
        // No axis class in the span: minimize the last class as-is and let
        // the oracle path handle (or refuse) it.
        pivot = classes.back();
        drop = k - 1;
    }
    rec.pivot = pivot;

    double pivot_len = class_length(g, pivot);
    if (!(pivot_len < std::numeric_limits<double>::infinity()) || !(pivot_len > 2.0 * r))
        throw VerificationError(level_tag(k) + "pivot class length fell to at most twice the radius");

    MinSurfaceResult cut = min_hypersurface(g, pivot);
    if (cut.surface.edges.empty())
        throw VerificationError(level_tag(k) + "minimizer came back empty for a nonzero class");
    rec.method = cut.method;
    rec.z_area = cut.surface.area;
    rec.z_edge_count = static_cast<int>(cut.surface.edges.size());

    std::vector<ClassMask> remaining;
    for (int i = 0; i < k; ++i)
        if (i != drop)
            remaining.push_back(classes[i]);

    CellGraph intrinsic = intrinsic_graph(g, cut.surface.edges);
    double r_next = to_double(rec.beta) * r;
    std::vector<LevelRecord> sub_out;
    LevelOutcome sub = certify_level(intrinsic, remaining, r_next, rule, false, sub_out);

    // Lift the sub-level point: its node is a facet of this level's cut;
    // center on the smallest incident cut cell.
    std::uint64_t facet_key = intrinsic.nodes[sub.point].key;
    int host_point = -1;
    for (int e : cut.surface.edges) {
        if (g.edges[e].via != facet_key)
            continue;
        int cand = std::min(g.edges[e].u, g.edges[e].v);
        if (host_point < 0 || cand < host_point)
            host_point = cand;
    }
    if (host_point < 0)
        throw std::logic_error("certify_level: sub-level point has no incident cut edge");
    rec.point = host_point;

    StabilityRecord stab = stability_check(g, cut.surface, host_point, r,
                                           to_double(rec.beta), pivot_len);
    rec.stability = stab;
    if (!stab.consistent)
        throw VerificationError(level_tag(k) +
                                "a ball loop crosses the cut oddly (mesh too coarse at this radius)");
    if (!stab.swap_not_better || !stab.minimality_ok)
        throw VerificationError(level_tag(k) + "stability swap found a smaller representative");
    if (!stab.composite_ok)
        throw VerificationError(level_tag(k) + "coarea composite bound failed");
    if (!(stab.z_in_small >= sub.ball_volume))
        throw VerificationError(level_tag(k) +
                                "cut mass near the lifted point is below the sub-level ball");

    rec.sub_ball_volume = sub.ball_volume;
    rec.ball_volume = stab.ball_volume;
    rec.epsilon = (Rational(1) - rec.beta) * rational_pow(rec.beta, k - 1) * sub.epsilon;

    LevelOutcome result{host_point, stab.ball_volume, rec.epsilon};
    out.push_back(std::move(rec));
    out.insert(out.end(), std::make_move_iterator(sub_out.begin()),
               std::make_move_iterator(sub_out.end()));
    return result;
}

} // namespace

Certificate guth_certificate(const CubicalTorus& mesh, const std::vector<ClassMask>& classes,
                             double R, BetaRule rule) {
    mesh.validate();
    if (static_cast<int>(classes.size()) != mesh.n)
        throw std::invalid_argument("guth_certificate: need exactly n classes");
    if (!(R > 0.0) || !std::isfinite(R))
        throw std::invalid_argument("guth_certificate: radius must be positive and finite");
    if (!cup_product_nonzero(classes, mesh.n))
        throw HypothesisError("cup product of the classes vanishes");

    CellGraph g = ambient_graph(mesh);
    Certificate cert;
    cert.n = mesh.n;
    cert.R = R;
    cert.rule = rule;
    LevelOutcome top = certify_level(g, classes, R, rule, true, cert.levels);
    cert.p = top.point;
    cert.ball_volume = top.ball_volume;
    cert.epsilon_used = top.epsilon;
    if (!(cert.ball_volume >= certified_floor(cert.epsilon_used, R, cert.n)))
        throw VerificationError("certified ball volume fell below eps_n R^n");
    return cert;
}

VerifyReport verify_certificate(const Certificate& cert) {
    VerifyReport report;
    auto fail = [&](const std::string& msg) { report.failures.push_back(msg); };

    if (cert.n < 1 || static_cast<int>(cert.levels.size()) != cert.n) {
        fail("level list does not cover dimensions n..1");
        return report;
    }
    for (int i = 0; i < cert.n; ++i)
        if (cert.levels[i].k != cert.n - i)
            fail(level_tag(cert.n - i) + "level record has the wrong dimension");
    if (!report.failures.empty())
        return report;

    if (cert.levels[0].r != cert.R)
        fail("top-level radius differs from R");
    if (cert.p != cert.levels[0].point)
        fail("certificate point differs from the top-level center");
    if (cert.ball_volume != cert.levels[0].ball_volume)
        fail("certificate ball volume differs from the top-level record");
    if (cert.epsilon_used != cert.levels[0].epsilon)
        fail("epsilon_used differs from the top-level record");

    for (int i = 0; i < cert.n; ++i) {
        const LevelRecord& lv = cert.levels[i];
        const int k = lv.k;
        const std::string tag = level_tag(k);

        if (static_cast<int>(lv.classes.size()) != k ||
            lv.classes.size() != lv.class_lengths.size())
            fail(tag + "carried class list has the wrong size");
        for (double len : lv.class_lengths)
            if (!(len > 2.0 * lv.r))
                fail(tag + "a carried class length is not greater than twice the radius");
        if (lv.beta != beta_for(k, cert.rule))
            fail(tag + "beta does not follow the rule");

        if (k == 1) {
            if (lv.epsilon != Rational(1))
                fail(tag + "base epsilon is not 1");
            if (!(lv.ball_volume >= certified_floor(lv.epsilon, lv.r, 1)))
                fail(tag + "base ball volume is below epsilon_1 * r");
            continue;
        }

        const LevelRecord& sub = cert.levels[i + 1];
        if (sub.r != to_double(lv.beta) * lv.r)
            fail(tag + "next radius is not beta * r");
        if (lv.epsilon != (Rational(1) - lv.beta) * rational_pow(lv.beta, k - 1) * sub.epsilon)
            fail(tag + "epsilon recurrence step does not hold");

        const StabilityRecord& st = lv.stability;
        if (st.R != lv.r || st.beta != to_double(lv.beta))
            fail(tag + "stability record radius or beta mismatch");
        if (!st.hypothesis_ok || !(st.class_len > 2.0 * lv.r))
            fail(tag + "stability hypothesis L > 2r not recorded as holding");
        if (!st.consistent)
            fail(tag + "stability record admits an odd ball loop");
        if (!(st.swap_area_after >= st.swap_area_before))
            fail(tag + "swap competitor beat the minimizer");
        if (!(st.z_in_small <= st.sphere_area))
            fail(tag + "cut mass in the small ball exceeds the selected sphere");
        if (!(st.z_in_small * (1.0 - st.beta) * st.R <= st.ball_volume))
            fail(tag + "composite stability inequality fails");
        if (lv.ball_volume != st.ball_volume)
            fail(tag + "level ball volume differs from the stability record");
        if (lv.sub_ball_volume != sub.ball_volume)
            fail(tag + "sub-ball link does not match the next level");
        if (!(st.z_in_small >= lv.sub_ball_volume))
            fail(tag + "cut mass is below the sub-level ball volume");
    }

    if (!(cert.ball_volume >= certified_floor(cert.epsilon_used, cert.R, cert.n)))
        fail("ball volume is below eps_n R^n");

    report.ok = report.failures.empty();
    return report;
}

} // namespace sysgeo
