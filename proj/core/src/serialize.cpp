#include "sysgeo/serialize.hpp"
#include "sysgeo/errors.hpp"

#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace sysgeo {

namespace {

using nlohmann::json;

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

Rational rational_from_string(const std::string& s) {
    try {
        return Rational(s);
    } catch (const std::exception&) {
        throw IoError("malformed rational: " + s);
    }
}

json stability_to_json(const StabilityRecord& st) {
    json j;
    j["R"] = st.R;
    j["beta"] = st.beta;
    j["class_len"] = st.class_len;
    j["hypothesis_ok"] = st.hypothesis_ok;
    j["t"] = st.t;
    j["sphere_area"] = st.sphere_area;
    j["levels_considered"] = st.levels_considered;
    j["z_in_small"] = st.z_in_small;
    j["ball_volume"] = st.ball_volume;
    j["consistent"] = st.consistent;
    j["swap_area_before"] = st.swap_area_before;
    j["swap_area_after"] = st.swap_area_after;
    j["swap_not_better"] = st.swap_not_better;
    j["minimality_ok"] = st.minimality_ok;
    j["coarea_within"] = st.coarea_within;
    j["composite_ok"] = st.composite_ok;
    if (!st.consistent && !st.witness.edges.empty()) {
        j["witness"] = {{"nodes", st.witness.nodes},
                        {"edges", st.witness.edges},
                        {"length", st.witness.length},
                        {"winding", st.witness.winding}};
    }
    return j;
}

StabilityRecord stability_from_json(const json& j) {
    StabilityRecord st;
    st.R = j.at("R").get<double>();
    st.beta = j.at("beta").get<double>();
    st.class_len = j.at("class_len").get<double>();
    st.hypothesis_ok = j.at("hypothesis_ok").get<bool>();
    st.t = j.at("t").get<double>();
    st.sphere_area = j.at("sphere_area").get<double>();
    st.levels_considered = j.at("levels_considered").get<int>();
    st.z_in_small = j.at("z_in_small").get<double>();
    st.ball_volume = j.at("ball_volume").get<double>();
    st.consistent = j.at("consistent").get<bool>();
    st.swap_area_before = j.at("swap_area_before").get<double>();
    st.swap_area_after = j.at("swap_area_after").get<double>();
    st.swap_not_better = j.at("swap_not_better").get<bool>();
    st.minimality_ok = j.at("minimality_ok").get<bool>();
    st.coarea_within = j.at("coarea_within").get<bool>();
    st.composite_ok = j.at("composite_ok").get<bool>();
    if (j.contains("witness")) {
        const json& w = j.at("witness");
        st.witness.nodes = w.at("nodes").get<std::vector<int>>();
        st.witness.edges = w.at("edges").get<std::vector<int>>();
        st.witness.length = w.at("length").get<double>();
        st.witness.winding = w.at("winding").get<std::uint32_t>();
    }
    return st;
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw IoError(std::string("JSON parse failure: ") + e.what());
    }
}

} // namespace

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open for reading: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad())
        throw IoError("read failure: " + path);
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open for writing: " + path);
    out << text;
    if (!out)
        throw IoError("write failure: " + path);
}

std::string mesh_to_json(const CubicalTorus& mesh) {
    json j;
    j["dims"] = mesh.dims;
    j["spacing"] = mesh.spacing;
    j["weights"] = mesh.weights;
    return j.dump(2) + "\n";
}

CubicalTorus mesh_from_json(const std::string& text) {
    json j = parse_json(text);
    CubicalTorus mesh;
    try {
        mesh.dims = j.at("dims").get<std::vector<int>>();
        mesh.spacing = j.at("spacing").get<std::vector<double>>();
        mesh.weights = j.at("weights").get<std::vector<double>>();
    } catch (const json::exception& e) {
        throw IoError(std::string("mesh JSON: ") + e.what());
    }
    mesh.n = static_cast<int>(mesh.dims.size());
    try {
        mesh.validate();
    } catch (const std::exception& e) {
        throw IoError(std::string("mesh rejected: ") + e.what());
    }
    return mesh;
}

void save_mesh(const CubicalTorus& mesh, const std::string& path) {
    write_text_file(path, mesh_to_json(mesh));
}

CubicalTorus load_mesh(const std::string& path) {
    return mesh_from_json(read_text_file(path));
}

Lattice lattice_from_text(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#')
            continue;
        std::istringstream toks(line);
        std::vector<double> row;
        double v;
        while (toks >> v)
            row.push_back(v);
        if (!toks.eof())
            throw IoError("lattice file: non-numeric entry in row " +
                          std::to_string(rows.size() + 1));
        rows.push_back(std::move(row));
    }
    if (rows.empty())
        throw IoError("lattice file: no rows");
    Lattice lat;
    lat.basis.resize(static_cast<int>(rows.size()), static_cast<int>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size())
            throw IoError("lattice file: row " + std::to_string(i + 1) + " has " +
                          std::to_string(rows[i].size()) + " entries, expected " +
                          std::to_string(rows.size()));
        for (std::size_t j = 0; j < rows.size(); ++j)
            lat.basis(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
    }
    try {
        lat.validate();
    } catch (const std::exception& e) {
        throw IoError(std::string("lattice rejected: ") + e.what());
    }
    return lat;
}

Lattice load_lattice(const std::string& path) {
    return lattice_from_text(read_text_file(path));
}

std::string lattice_to_text(const Lattice& lat) {
    std::ostringstream out;
    for (int i = 0; i < lat.basis.rows(); ++i) {
        for (int j = 0; j < lat.basis.cols(); ++j)
            out << (j ? " " : "") << fmt_double(lat.basis(i, j));
        out << "\n";
    }
    return out.str();
}

std::string lattice_to_json(const Lattice& lat) {
    json rows = json::array();
    for (int i = 0; i < lat.basis.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < lat.basis.cols(); ++j)
            row.push_back(lat.basis(i, j));
        rows.push_back(std::move(row));
    }
    json j;
    j["n"] = lat.n();
    j["basis"] = std::move(rows);
    j["volume"] = lat.volume();
    return j.dump(2) + "\n";
}

ClassMask parse_class_mask(const std::string& bits, int n) {
    if (static_cast<int>(bits.size()) != n)
        throw std::invalid_argument("class bitstring must have exactly " + std::to_string(n) +
                                    " characters: " + bits);
    ClassMask mask = 0;
    for (int j = 0; j < n; ++j) {
        if (bits[j] == '1')
            mask |= ClassMask(1) << j;
        else if (bits[j] != '0')
            throw std::invalid_argument("class bitstring may contain only 0 and 1: " + bits);
    }
    return mask;
}

std::string format_class_mask(ClassMask mask, int n) {
    std::string bits(n, '0');
    for (int j = 0; j < n; ++j)
        if ((mask >> j) & 1)
            bits[j] = '1';
    return bits;
}

std::string certificate_to_json(const Certificate& cert) {
    json j;
    j["schema_version"] = 1;
    j["n"] = cert.n;
    j["p"] = cert.p;
    j["R"] = cert.R;
    j["ball_volume"] = cert.ball_volume;
    j["epsilon_used"] = to_string(cert.epsilon_used);
    j["rule"] = cert.rule == BetaRule::Optimal ? "optimal" : "half";
    json levels = json::array();
    for (const LevelRecord& lv : cert.levels) {
        json l;
        l["k"] = lv.k;
        l["r"] = lv.r;
        l["beta"] = to_string(lv.beta);
        l["epsilon"] = to_string(lv.epsilon);
        json cls = json::array();
        for (ClassMask c : lv.classes)
            cls.push_back(format_class_mask(c, cert.n));
        l["classes"] = std::move(cls);
        l["class_lengths"] = lv.class_lengths;
        l["pivot"] = format_class_mask(lv.pivot, cert.n);
        l["method"] = lv.method;
        l["z_area"] = lv.z_area;
        l["z_edge_count"] = lv.z_edge_count;
        l["stability"] = stability_to_json(lv.stability);
        l["sub_ball_volume"] = lv.sub_ball_volume;
        l["point"] = lv.point;
        l["ball_volume"] = lv.ball_volume;
        levels.push_back(std::move(l));
    }
    j["levels"] = std::move(levels);
    return j.dump(2) + "\n";
}

Certificate certificate_from_json(const std::string& text) {
    json j = parse_json(text);
    Certificate cert;
    try {
        if (j.at("schema_version").get<int>() != 1)
            throw IoError("unsupported certificate schema version");
        cert.n = j.at("n").get<int>();
        cert.p = j.at("p").get<int>();
        cert.R = j.at("R").get<double>();
        cert.ball_volume = j.at("ball_volume").get<double>();
        cert.epsilon_used = rational_from_string(j.at("epsilon_used").get<std::string>());
        std::string rule = j.at("rule").get<std::string>();
        if (rule == "optimal")
            cert.rule = BetaRule::Optimal;
        else if (rule == "half")
            cert.rule = BetaRule::Half;
        else
            throw IoError("unknown beta rule: " + rule);
        for (const json& l : j.at("levels")) {
            LevelRecord lv;
            lv.k = l.at("k").get<int>();
            lv.r = l.at("r").get<double>();
            lv.beta = rational_from_string(l.at("beta").get<std::string>());
            lv.epsilon = rational_from_string(l.at("epsilon").get<std::string>());
            for (const json& c : l.at("classes"))
                lv.classes.push_back(parse_class_mask(c.get<std::string>(), cert.n));
            lv.class_lengths = l.at("class_lengths").get<std::vector<double>>();
            lv.pivot = parse_class_mask(l.at("pivot").get<std::string>(), cert.n);
            lv.method = l.at("method").get<std::string>();
            lv.z_area = l.at("z_area").get<double>();
            lv.z_edge_count = l.at("z_edge_count").get<int>();
            lv.stability = stability_from_json(l.at("stability"));
            lv.sub_ball_volume = l.at("sub_ball_volume").get<double>();
            lv.point = l.at("point").get<int>();
            lv.ball_volume = l.at("ball_volume").get<double>();
            cert.levels.push_back(std::move(lv));
        }
    } catch (const json::exception& e) {
        throw IoError(std::string("certificate JSON: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw IoError(std::string("certificate JSON: ") + e.what());
    }
    return cert;
}

void save_certificate(const Certificate& cert, const std::string& path) {
    write_text_file(path, certificate_to_json(cert));
}

Certificate load_certificate(const std::string& path) {
    return certificate_from_json(read_text_file(path));
}

std::string constants_to_json(const ConstantsTable& table) {
    json rows = json::array();
    for (const ConstantsRow& r : table.rows) {
        json row;
        row["n"] = r.n;
        row["beta"] = to_string(r.beta);
        row["epsilon"] = to_string(r.epsilon);
        row["four_n_bound"] = to_string(r.four_n_bound);
        row["step_factor"] = to_string(r.step_factor);
        row["step_floor"] = to_string(r.step_floor);
        row["step_ok"] = r.step_ok;
        row["epsilon_ok"] = r.epsilon_ok;
        row["guth_constant"] = to_string(r.guth_constant);
        row["wenger_constant"] = r.wenger_constant.str();
        row["gromov_coeff"] = r.gromov_coeff.str();
        row["gromov_radicand"] = r.gromov_radicand.str();
        row["omega_n"] = r.omega_n;
        row["guth_below_wenger"] = r.guth_below_wenger;
        row["guth_below_gromov"] = r.guth_below_gromov;
        rows.push_back(std::move(row));
    }
    json j;
    j["rule"] = table.rule == BetaRule::Optimal ? "optimal" : "half";
    j["rows"] = std::move(rows);
    return j.dump(2) + "\n";
}

std::string constants_to_csv(const ConstantsTable& table) {
    std::ostringstream out;
    out << "n,beta,epsilon,four_n_bound,step_factor,step_floor,step_ok,epsilon_ok,"
           "guth,wenger,gromov_coeff,gromov_radicand,omega_n,guth_below_wenger,"
           "guth_below_gromov\n";
    for (const ConstantsRow& r : table.rows) {
        out << r.n << ',' << to_string(r.beta) << ',' << to_string(r.epsilon) << ','
            << to_string(r.four_n_bound) << ',' << to_string(r.step_factor) << ','
            << to_string(r.step_floor) << ',' << (r.step_ok ? "true" : "false") << ','
            << (r.epsilon_ok ? "true" : "false") << ',' << to_string(r.guth_constant) << ','
            << r.wenger_constant.str() << ',' << r.gromov_coeff.str() << ','
            << r.gromov_radicand.str() << ',' << fmt_double(r.omega_n) << ','
            << (r.guth_below_wenger ? "true" : "false") << ','
            << (r.guth_below_gromov ? "true" : "false") << '\n';
    }
    return out.str();
}

std::string stats_to_json(const StatsTable& table) {
    json rows = json::array();
    for (const StatsRow& r : table.rows) {
        json row;
        row["n"] = r.n;
        row["mean"] = r.mean;
        row["median"] = r.median;
        row["stddev"] = r.stddev;
        row["sqrt_law"] = r.sqrt_law;
        rows.push_back(std::move(row));
    }
    json j;
    j["samples"] = table.samples;
    j["seed"] = table.seed;
    j["fit_exponent"] = table.fit_exponent;
    j["fit_constant"] = table.fit_constant;
    j["sqrt_fit_constant"] = table.sqrt_fit_constant;
    j["ensemble"] = "normalized-gaussian-basis";
    j["rows"] = std::move(rows);
    return j.dump(2) + "\n";
}

std::string stats_to_csv(const StatsTable& table) {
    std::ostringstream out;
    out << "n,mean,median,stddev,sqrt_law\n";
    for (const StatsRow& r : table.rows)
        out << r.n << ',' << fmt_double(r.mean) << ',' << fmt_double(r.median) << ','
            << fmt_double(r.stddev) << ',' << fmt_double(r.sqrt_law) << '\n';
    return out.str();
}

std::string margins_to_json(const std::vector<MarginRecord>& records) {
    json rows = json::array();
    for (const MarginRecord& r : records) {
        json row;
        row["n"] = r.n;
        row["which"] = r.which;
        row["systole"] = r.systole;
        row["vol_root"] = r.vol_root;
        row["constant"] = r.constant;
        row["ratio"] = r.ratio;
        row["holds"] = r.holds;
        rows.push_back(std::move(row));
    }
    return rows.dump(2) + "\n";
}

std::string margins_to_csv(const std::vector<MarginRecord>& records) {
    std::ostringstream out;
    out << "n,which,systole,vol_root,constant,ratio,holds\n";
    for (const MarginRecord& r : records)
        out << r.n << ',' << r.which << ',' << fmt_double(r.systole) << ','
            << fmt_double(r.vol_root) << ',' << fmt_double(r.constant) << ','
            << fmt_double(r.ratio) << ',' << (r.holds ? "true" : "false") << '\n';
    return out.str();
}

std::string cycles_to_json(const std::vector<Cycle1>& loops) {
    json rows = json::array();
    for (const Cycle1& c : loops) {
        json row;
        row["nodes"] = c.nodes;
        row["edges"] = c.edges;
        row["length"] = c.length;
        row["winding"] = c.winding;
        rows.push_back(std::move(row));
    }
    return rows.dump(2) + "\n";
}

std::pair<int, std::vector<int>> walk_from_json(const std::string& text) {
    json j = parse_json(text);
    try {
        return {j.at("start").get<int>(), j.at("edges").get<std::vector<int>>()};
    } catch (const json::exception& e) {
        throw IoError(std::string("walk JSON: ") + e.what());
    }
}

std::string walk_to_json(int start, const std::vector<int>& edges) {
    json j;
    j["start"] = start;
    j["edges"] = edges;
    return j.dump(2) + "\n";
}

} // namespace sysgeo
