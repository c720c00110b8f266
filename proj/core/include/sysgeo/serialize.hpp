// File formats: mesh and certificate JSON (schema_version 1, doubles
// round-trip bit-exactly, rationals as "num/den" strings), plain-text
// lattice matrices, class bitstrings, and CSV report emitters. All file
// and parse failures surface as IoError.
#pragma once

#include "sysgeo/homology.hpp"
#include "sysgeo/induction.hpp"
#include "sysgeo/lattice.hpp"
#include "sysgeo/mesh.hpp"

#include <string>
#include <utility>
#include <vector>

namespace sysgeo {

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// Mesh: {"dims": [...], "spacing": [...], "weights": [...]}.
std::string mesh_to_json(const CubicalTorus& mesh);
CubicalTorus mesh_from_json(const std::string& text);
void save_mesh(const CubicalTorus& mesh, const std::string& path);
CubicalTorus load_mesh(const std::string& path);

// Lattice: plain text, one row per line, whitespace-separated entries.
Lattice lattice_from_text(const std::string& text);
Lattice load_lattice(const std::string& path);
std::string lattice_to_text(const Lattice& lat);
std::string lattice_to_json(const Lattice& lat);

// Class bitstring: character j (from the left) is axis j, e.g. "10" = e1*.
ClassMask parse_class_mask(const std::string& bits, int n);
std::string format_class_mask(ClassMask mask, int n);

std::string certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const std::string& text);
void save_certificate(const Certificate& cert, const std::string& path);
Certificate load_certificate(const std::string& path);

std::string constants_to_json(const ConstantsTable& table);
std::string constants_to_csv(const ConstantsTable& table);
std::string stats_to_json(const StatsTable& table);
std::string stats_to_csv(const StatsTable& table);
std::string margins_to_json(const std::vector<MarginRecord>& records);
std::string margins_to_csv(const std::vector<MarginRecord>& records);

std::string cycles_to_json(const std::vector<Cycle1>& loops);
// Walk input for curve factoring: {"start": node, "edges": [...]}.
std::pair<int, std::vector<int>> walk_from_json(const std::string& text);
std::string walk_to_json(int start, const std::vector<int>& edges);

} // namespace sysgeo
