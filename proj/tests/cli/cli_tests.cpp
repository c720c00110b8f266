// End-to-end exercises of the command-line tool: every subcommand, every
// exit code, through real files in a scratch directory. argv[1] is the path
// to the built binary.
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

int g_failures = 0;

#define REQUIRE(cond, msg)                                                          \
    do {                                                                            \
        if (!(cond)) {                                                              \
            std::cerr << "[FAIL] " << __FILE__ << ":" << __LINE__ << " " << (msg)   \
                      << "\n";                                                      \
            ++g_failures;                                                           \
        }                                                                           \
    } while (0)

std::string g_cli;
std::filesystem::path g_dir;

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    static int counter = 0;
    auto capture = g_dir / ("out" + std::to_string(counter++) + ".txt");
    std::string cmd = g_cli + " " + args + " > " + capture.string() + " 2>&1";
    int raw = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    std::ifstream in(capture);
    std::stringstream ss;
    ss << in.rdbuf();
    r.out = ss.str();
    return r;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string flat_mesh_json(int side, int n) {
    std::ostringstream os;
    os << "{\"dims\": [";
    for (int i = 0; i < n; ++i) os << (i ? ", " : "") << side;
    os << "], \"spacing\": [";
    for (int i = 0; i < n; ++i) os << (i ? ", " : "") << 1.0 / side;
    os << "], \"weights\": [";
    long long cells = 1;
    for (int i = 0; i < n; ++i) cells *= side;
    for (long long i = 0; i < cells; ++i) os << (i ? ", " : "") << 1;
    os << "]}";
    return os.str();
}

void test_constants() {
    auto r = run("constants 6 --format json");
    REQUIRE(r.code == 0, "constants exits 0");
    auto j = nlohmann::json::parse(r.out, nullptr, false);
    REQUIRE(!j.is_discarded(), "constants emits JSON");
    REQUIRE(j["rows"].size() == 6, "six rows for n_max 6");
    REQUIRE(j["rows"][1]["epsilon"] == "1/4", "eps_2 = 1/4");
    REQUIRE(j["rows"][5]["epsilon"] == "1/46656", "eps_6 = 6^-6");
    REQUIRE(j["rows"][5]["guth_below_wenger"] == true, "ordering flag present");

    auto csv = run("constants 4 --format csv --out table.csv");
    REQUIRE(csv.code == 0, "constants --out exits 0");
    auto text = read_file(g_dir / "table.csv");
    REQUIRE(text.find("epsilon") != std::string::npos, "csv has a header");
    REQUIRE(text.find("1/256") != std::string::npos, "csv keeps rationals exact");

    REQUIRE(run("constants 0").code == 5, "n_max 0 is an argument error");
    REQUIRE(run("constants 6 --beta sometimes").code == 5, "unknown rule rejected");
}

void test_systole() {
    write_file(g_dir / "z3.txt", "1 0 0\n0 1 0\n0 0 1\n");
    auto r = run("systole --lattice " + (g_dir / "z3.txt").string() + " --format json");
    REQUIRE(r.code == 0, "lattice systole exits 0");
    REQUIRE(r.out.find("systole 1") != std::string::npos, "Z3 systole is 1");
    auto j = nlohmann::json::parse(r.out.substr(0, r.out.rfind("systole")), nullptr, false);
    REQUIRE(!j.is_discarded(), "margins emitted as JSON");
    REQUIRE(j.size() == 3, "one margin per constant");
    for (const auto& row : j) REQUIRE(row["holds"] == true, "inequality holds on Z3");

    write_file(g_dir / "flat8.json", flat_mesh_json(8, 2));
    auto m = run("systole --mesh " + (g_dir / "flat8.json").string());
    REQUIRE(m.code == 0, "mesh systole exits 0");
    REQUIRE(m.out.find("systole 1") != std::string::npos, "flat unit torus systole is 1");

    REQUIRE(run("systole").code == 5, "one of --mesh/--lattice is required");
    write_file(g_dir / "bad.txt", "1 0\n0\n");
    REQUIRE(run("systole --lattice " + (g_dir / "bad.txt").string()).code == 4,
            "ragged lattice file is an io error");
}

void test_minsurf() {
    auto r = run("minsurf --mesh " + (g_dir / "flat8.json").string() + " --classes 10");
    REQUIRE(r.code == 0, "minsurf exits 0");
    auto j = nlohmann::json::parse(r.out, nullptr, false);
    REQUIRE(!j.is_discarded(), "minsurf emits JSON");
    REQUIRE(j["area"] == 1.0, "flat wall area 1");
    REQUIRE(j["lower_bound"] == 1.0, "packing bound tight on flat");
    REQUIRE(j["method"] == "flow", "flow method");
    REQUIRE(j["edge_count"] == 8, "eight facets");

    REQUIRE(run("minsurf --mesh " + (g_dir / "flat8.json").string() + " --classes 101").code == 5,
            "bitstring length must match the dimension");
}

void test_certify_verify() {
    std::string mesh = (g_dir / "flat8.json").string();
    std::string cert = (g_dir / "cert8.json").string();
    auto r = run("certify --mesh " + mesh + " --classes 10 --classes 01 --R 0.4 --out " + cert);
    REQUIRE(r.code == 0, "certify exits 0");
    REQUIRE(r.out.find("ball_volume=") != std::string::npos, "certify reports the ball");
    REQUIRE(std::filesystem::exists(cert), "certificate written");

    auto v = run("verify " + cert);
    REQUIRE(v.code == 0, "verify exits 0");
    REQUIRE(v.out.find("certificate ok") != std::string::npos, "verify confirms");

    // Tamper with the claimed volume: verification must exit 3.
    auto j = nlohmann::json::parse(read_file(cert));
    j["ball_volume"] = 0.0;
    j["levels"][0]["ball_volume"] = 0.0;
    write_file(g_dir / "tampered.json", j.dump());
    auto bad = run("verify " + (g_dir / "tampered.json").string());
    REQUIRE(bad.code == 3, "tampered certificate exits 3");
    REQUIRE(bad.out.find("verify:") != std::string::npos, "failures are listed");

    // Default radius (0.49 * systole) also certifies.
    auto dflt = run("certify --mesh " + mesh + " --out " + (g_dir / "cert-default.json").string());
    REQUIRE(dflt.code == 0, "default-radius certify exits 0");

    // Half schedule is accepted.
    auto half = run("certify --mesh " + mesh + " --beta half --R 0.4 --out " +
                    (g_dir / "cert-half.json").string());
    REQUIRE(half.code == 0, "half schedule certifies at this radius");

    write_file(g_dir / "garbage.json", "{\"dims\": [8, 8]");
    REQUIRE(run("certify --mesh " + (g_dir / "garbage.json").string()).code == 4,
            "corrupt mesh is an io error");
    REQUIRE(run("verify " + (g_dir / "nothere.json").string()).code == 4,
            "missing certificate is an io error");
}

void test_hypothesis_exit() {
    // diag(0.2, 1.0) at resolution 20: systole 0.2, R = 0.3 breaks L > 2R.
    std::ostringstream os;
    os << "{\"dims\": [4, 20], \"spacing\": [0.05, 0.05], \"weights\": [";
    for (int i = 0; i < 80; ++i) os << (i ? ", " : "") << 1;
    os << "]}";
    write_file(g_dir / "thin.json", os.str());
    auto r = run("certify --mesh " + (g_dir / "thin.json").string() + " --R 0.3");
    REQUIRE(r.code == 2, "thin torus violates the radius hypothesis");
    auto again = run("certify --mesh " + (g_dir / "thin.json").string() + " --R 0.3");
    REQUIRE(again.code == 2, "gating is deterministic");
    REQUIRE(again.out == r.out, "identical report on identical input");
}

void test_random_tori() {
    auto r = run("random-tori 2..4 --samples 5 --seed 11 --format json");
    REQUIRE(r.code == 0, "random-tori exits 0");
    auto j = nlohmann::json::parse(r.out, nullptr, false);
    REQUIRE(!j.is_discarded(), "stats emitted as JSON");
    REQUIRE(j["rows"].size() == 3, "rows for n = 2, 3, 4");
    REQUIRE(j["samples"] == 5, "sample count echoed");
    REQUIRE(j.contains("fit_exponent"), "fit is reported");
    REQUIRE(j.contains("ensemble"), "ensemble is named");

    auto again = run("random-tori 2..4 --samples 5 --seed 11 --format json");
    REQUIRE(again.out == r.out, "same seed, same table");

    REQUIRE(run("random-tori 4..2").code == 5, "inverted range rejected");
    REQUIRE(run("random-tori 2..4 --samples 0").code == 5, "zero samples rejected");
}

void test_factor_curve() {
    // Out-and-back along edge 0 is a closed walk with a zero chain: the
    // factors must reproduce that cancellation exactly.
    write_file(g_dir / "walk.json", "{\"start\": 0, \"edges\": [0, 0]}");
    auto r = run("factor-curve --mesh " + (g_dir / "flat8.json").string() + " " +
                 (g_dir / "walk.json").string() + " --p 0 --t 0.4");
    REQUIRE(r.code == 0, "factor-curve exits 0");
    REQUIRE(r.out.find("chain_sum_exact=true") != std::string::npos, "chain sum is exact");

    write_file(g_dir / "open.json", "{\"start\": 0, \"edges\": [0]}");
    REQUIRE(run("factor-curve --mesh " + (g_dir / "flat8.json").string() + " " +
                (g_dir / "open.json").string() + " --p 0 --t 0.4")
                    .code == 4,
            "an open walk is rejected as input");
}

void test_argument_errors() {
    REQUIRE(run("").code == 5, "a subcommand is required");
    REQUIRE(run("frobnicate").code == 5, "unknown subcommand");
    REQUIRE(run("certify").code == 5, "certify requires --mesh");
    REQUIRE(run("minsurf --mesh x.json").code == 5, "minsurf requires --classes");
    auto err = run("frobnicate");
    REQUIRE(err.out.find("\"error\"") != std::string::npos, "errors are reported as JSON");
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: cli_tests <path-to-cli>\n";
        return 2;
    }
    g_cli = argv[1];
    g_dir = std::filesystem::temp_directory_path() / "sysgeo-cli-tests";
    std::filesystem::remove_all(g_dir);
    std::filesystem::create_directories(g_dir);
    // Relative --out paths land in the scratch dir; std::system passes this through.
    setenv("SYSGEO_OUT_DIR", g_dir.c_str(), 1);

    test_constants();
    test_systole();
    test_minsurf();
    test_certify_verify();
    test_hypothesis_exit();
    test_random_tori();
    test_factor_curve();
    test_argument_errors();

    if (g_failures == 0)
        std::cout << "cli_tests: all checks passed\n";
    else
        std::cout << "cli_tests: " << g_failures << " failures\n";
    return g_failures == 0 ? 0 : 1;
}
