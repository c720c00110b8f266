// Command line front end. Exit codes: 0 success, 2 hypothesis violation,
// 3 verification/numerical failure, 4 I/O, 5 bad arguments.
#include "CLI11.hpp"

#include "sysgeo/errors.hpp"
#include "sysgeo/induction.hpp"
#include "sysgeo/lattice.hpp"
#include "sysgeo/serialize.hpp"

#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace sysgeo;

constexpr int kOk = 0;
constexpr int kHypothesis = 2;
constexpr int kVerification = 3;
constexpr int kIo = 4;
constexpr int kArgs = 5;

// One record per invocation; every run is a pure function of these fields.
struct RunConfig {
    std::string command;
    std::string mesh_path;
    std::string lattice_path;
    std::string walk_path;
    std::string cert_path;
    double R = -1.0;  // negative = default (0.49 * systole)
    std::string beta_rule = "optimal";
    std::vector<std::string> class_bits;
    std::uint64_t seed = 7;
    int samples = 100;
    std::string n_range;
    int n_max = 12;
    int center = -1;
    double t = -1.0;
    double eps = -1.0;
    std::string out_path;
    std::string format = "json";
};

BetaRule parse_rule(const std::string& s) {
    if (s == "optimal")
        return BetaRule::Optimal;
    if (s == "half")
        return BetaRule::Half;
    throw std::invalid_argument("beta rule must be 'optimal' or 'half'");
}

std::pair<int, int> parse_range(const std::string& s) {
    auto dots = s.find("..");
    try {
        if (dots == std::string::npos) {
            int v = std::stoi(s);
            return {v, v};
        }
        return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
    } catch (const std::exception&) {
        throw std::invalid_argument("range must look like '2..8' or '5': " + s);
    }
}

// --out is optional; stdout otherwise. SYSGEO_OUT_DIR prefixes relative paths.
void emit(const RunConfig& cfg, const std::string& payload) {
    if (cfg.out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::string path = cfg.out_path;
    if (const char* dir = std::getenv("SYSGEO_OUT_DIR"); dir && *dir && path.front() != '/')
        path = std::string(dir) + "/" + path;
    write_text_file(path, payload);
    std::cout << "wrote " << path << "\n";
}

std::vector<ClassMask> classes_from_config(const RunConfig& cfg, int n) {
    std::vector<ClassMask> classes;
    if (cfg.class_bits.empty()) {
        for (int a = 0; a < n; ++a)
            classes.push_back(ClassMask(1) << a);
        return classes;
    }
    for (const std::string& bits : cfg.class_bits)
        classes.push_back(parse_class_mask(bits, n));
    return classes;
}

int cmd_certify(const RunConfig& cfg) {
    CubicalTorus mesh = load_mesh(cfg.mesh_path);
    CellGraph g = ambient_graph(mesh);
    std::vector<ClassMask> classes = classes_from_config(cfg, mesh.n);
    double R = cfg.R;
    if (R <= 0.0) {
        SystoleResult sys = graph_systole(g);
        if (!sys.exists)
            throw HypothesisError("mesh has no noncontractible cycle");
        R = 0.49 * sys.length;
    }
    Certificate cert = guth_certificate(mesh, classes, R, parse_rule(cfg.beta_rule));
    VerifyReport rep = verify_certificate(cert);
    std::string path = cfg.out_path.empty() ? std::string("certificate.json") : cfg.out_path;
    if (const char* dir = std::getenv("SYSGEO_OUT_DIR"); dir && *dir && path.front() != '/')
        path = std::string(dir) + "/" + path;
    save_certificate(cert, path);
    std::cout << "certificate: p=" << cert.p << " R=" << cert.R
              << " ball_volume=" << cert.ball_volume
              << " floor=" << certified_floor(cert.epsilon_used, cert.R, cert.n) << " -> " << path
              << "\n";
    if (!rep.ok) {
        for (const std::string& f : rep.failures)
            std::cerr << "verify: " << f << "\n";
        return kVerification;
    }
    return kOk;
}

int cmd_verify(const RunConfig& cfg) {
    Certificate cert = load_certificate(cfg.cert_path);
    VerifyReport rep = verify_certificate(cert);
    if (!rep.ok) {
        for (const std::string& f : rep.failures)
            std::cerr << "verify: " << f << "\n";
        return kVerification;
    }
    std::cout << "certificate ok: ball_volume=" << cert.ball_volume << " >= "
              << certified_floor(cert.epsilon_used, cert.R, cert.n) << "\n";
    return kOk;
}

int cmd_constants(const RunConfig& cfg) {
    ConstantsTable table = epsilon_table(cfg.n_max, parse_rule(cfg.beta_rule));
    emit(cfg, cfg.format == "csv" ? constants_to_csv(table) : constants_to_json(table));
    return kOk;
}

int cmd_systole(const RunConfig& cfg) {
    if (cfg.mesh_path.empty() == cfg.lattice_path.empty())
        throw std::invalid_argument("systole needs exactly one of --mesh or --lattice");
    if (!cfg.mesh_path.empty()) {
        CubicalTorus mesh = load_mesh(cfg.mesh_path);
        CellGraph g = ambient_graph(mesh);
        SystoleResult sys = graph_systole(g);
        if (!sys.exists)
            throw HypothesisError("mesh has no noncontractible cycle");
        if (cfg.format == "csv") {
            emit(cfg, "systole\n" + std::to_string(sys.length) + "\n");
        } else {
            emit(cfg, cycles_to_json({sys.loop}));
        }
        std::cout << "systole " << sys.length << "\n";
        return kOk;
    }
    Lattice lat = load_lattice(cfg.lattice_path);
    std::vector<MarginRecord> margins;
    for (const char* which : {"guth", "gromov", "wenger"})
        margins.push_back(check_systolic_inequality(lat, which));
    emit(cfg, cfg.format == "csv" ? margins_to_csv(margins) : margins_to_json(margins));
    std::cout << "systole " << margins.front().systole << "\n";
    return kOk;
}

int cmd_minsurf(const RunConfig& cfg) {
    CubicalTorus mesh = load_mesh(cfg.mesh_path);
    if (cfg.class_bits.size() != 1)
        throw std::invalid_argument("minsurf needs exactly one --classes bitstring");
    ClassMask alpha = parse_class_mask(cfg.class_bits.front(), mesh.n);
    CellGraph g = ambient_graph(mesh);
    MinSurfaceResult cut = min_hypersurface(g, alpha);
    std::ostringstream os;
    os << "{\n  \"class\": \"" << format_class_mask(alpha, mesh.n) << "\",\n  \"area\": "
       << cut.surface.area << ",\n  \"lower_bound\": " << cut.lower_bound
       << ",\n  \"method\": \"" << cut.method << "\",\n  \"edge_count\": "
       << cut.surface.edges.size() << "\n}\n";
    emit(cfg, os.str());
    return kOk;
}

int cmd_random_tori(const RunConfig& cfg) {
    auto [lo, hi] = parse_range(cfg.n_range.empty() ? "2..8" : cfg.n_range);
    StatsTable table = systole_statistics(lo, hi, cfg.samples, cfg.seed);
    emit(cfg, cfg.format == "csv" ? stats_to_csv(table) : stats_to_json(table));
    return kOk;
}

int cmd_factor_curve(const RunConfig& cfg) {
    CubicalTorus mesh = load_mesh(cfg.mesh_path);
    CellGraph g = ambient_graph(mesh);
    auto [start, edges] = walk_from_json(read_text_file(cfg.walk_path));
    Cycle1 gamma;
    try {
        gamma = cycle_from_edges(g, start, edges);
    } catch (const std::invalid_argument& e) {
        throw IoError(std::string("cycle file: ") + e.what());
    }
    if (cfg.center < 0 || cfg.t <= 0.0)
        throw std::invalid_argument("factor-curve needs --p and --t");
    double eps = cfg.eps > 0.0 ? cfg.eps : 2.0 * g.max_edge_length();
    DistanceField df = distance_field(g, cfg.center);
    std::vector<Cycle1> factors;
    try {
        factors = curve_factor(g, df, gamma, cfg.t, eps);
    } catch (const std::invalid_argument& e) {
        throw HypothesisError(e.what());
    }
    emit(cfg, cycles_to_json(factors));
    std::map<int, int> parity;
    for (int e : gamma.edges)
        parity[e] ^= 1;
    for (const Cycle1& c : factors)
        for (int e : c.edges)
            parity[e] ^= 1;
    bool exact = true;
    for (auto [e, p] : parity)
        exact = exact && p == 0;
    double longest = 0.0;
    for (const Cycle1& c : factors)
        longest = std::max(longest, c.length);
    std::cout << "factors=" << factors.size() << " longest=" << longest
              << " bound=" << 2.0 * cfg.t + eps << " chain_sum_exact=" << (exact ? "true" : "false")
              << "\n";
    return exact ? kOk : kVerification;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"systolic geometry toolkit: certificates, cuts, systoles, lattices"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", cfg.out_path, "output file (stdout if omitted)");
        sub->add_option("--format", cfg.format, "json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
    };

    CLI::App* certify = app.add_subcommand("certify", "produce a ball-volume certificate");
    certify->add_option("--mesh", cfg.mesh_path, "mesh JSON file")->required();
    certify->add_option("--R", cfg.R, "radius (default 0.49 * systole)");
    certify->add_option("--beta", cfg.beta_rule, "beta rule: optimal or half")
        ->check(CLI::IsMember({"optimal", "half"}));
    certify->add_option("--classes", cfg.class_bits,
                        "class bitstrings (default: the n axis classes)");
    certify->add_option("--out", cfg.out_path, "certificate file (default: certificate.json)");
    certify->add_option("--format", cfg.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    CLI::App* verify = app.add_subcommand("verify", "re-check a certificate file");
    verify->add_option("certificate", cfg.cert_path, "certificate JSON file")->required();

    CLI::App* constants = app.add_subcommand("constants", "exact constants table");
    constants->add_option("n_max", cfg.n_max, "largest dimension (default 12)");
    constants->add_option("--beta", cfg.beta_rule, "beta rule: optimal or half")
        ->check(CLI::IsMember({"optimal", "half"}));
    add_common(constants);

    CLI::App* systole = app.add_subcommand("systole", "systole of a mesh or lattice");
    systole->add_option("--mesh", cfg.mesh_path, "mesh JSON file");
    systole->add_option("--lattice", cfg.lattice_path, "lattice text file");
    add_common(systole);

    CLI::App* minsurf = app.add_subcommand("minsurf", "minimum cut in a class");
    minsurf->add_option("--mesh", cfg.mesh_path, "mesh JSON file")->required();
    minsurf->add_option("--classes", cfg.class_bits, "one class bitstring")->required();
    add_common(minsurf);

    CLI::App* random_tori = app.add_subcommand("random-tori", "random lattice systole statistics");
    random_tori->add_option("range", cfg.n_range, "dimension range, e.g. 2..8");
    random_tori->add_option("--samples", cfg.samples, "samples per dimension");
    random_tori->add_option("--seed", cfg.seed, "master seed");
    add_common(random_tori);

    CLI::App* factor = app.add_subcommand("factor-curve", "factor a ball cycle into short loops");
    factor->add_option("--mesh", cfg.mesh_path, "mesh JSON file")->required();
    factor->add_option("cycle", cfg.walk_path, "walk JSON file {start, edges}")->required();
    factor->add_option("--p", cfg.center, "basepoint cell id")->required();
    factor->add_option("--t", cfg.t, "ball radius containing the cycle")->required();
    factor->add_option("--eps", cfg.eps, "segment budget (default: twice the longest edge)");
    add_common(factor);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "{\"error\": \"arguments\", \"message\": \"" << e.what() << "\"}\n";
        return kArgs;
    }

    try {
        if (certify->parsed()) {
            cfg.command = "certify";
            return cmd_certify(cfg);
        }
        if (verify->parsed()) {
            cfg.command = "verify";
            return cmd_verify(cfg);
        }
        if (constants->parsed()) {
            cfg.command = "constants";
            return cmd_constants(cfg);
        }
        if (systole->parsed()) {
            cfg.command = "systole";
            return cmd_systole(cfg);
        }
        if (minsurf->parsed()) {
            cfg.command = "minsurf";
            return cmd_minsurf(cfg);
        }
        if (random_tori->parsed()) {
            cfg.command = "random-tori";
            return cmd_random_tori(cfg);
        }
        if (factor->parsed()) {
            cfg.command = "factor-curve";
            return cmd_factor_curve(cfg);
        }
    } catch (const HypothesisError& e) {
        std::cerr << "{\"error\": \"hypothesis\", \"message\": \"" << e.what() << "\"}\n";
        return kHypothesis;
    } catch (const IoError& e) {
        std::cerr << "{\"error\": \"io\", \"message\": \"" << e.what() << "\"}\n";
        return kIo;
    } catch (const VerificationError& e) {
        std::cerr << "{\"error\": \"verification\", \"message\": \"" << e.what() << "\"}\n";
        return kVerification;
    } catch (const std::invalid_argument& e) {
        std::cerr << "{\"error\": \"arguments\", \"message\": \"" << e.what() << "\"}\n";
        return kArgs;
    } catch (const std::exception& e) {
        std::cerr << "{\"error\": \"internal\", \"message\": \"" << e.what() << "\"}\n";
        return kVerification;
    }
    return kArgs;
}
