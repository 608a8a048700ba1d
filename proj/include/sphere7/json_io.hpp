#pragma once

#include <string>

#include <json.hpp>

#include "sphere7/coloring.hpp"
#include "sphere7/curvature.hpp"
#include "sphere7/geometry.hpp"
#include "sphere7/mesh.hpp"
#include "sphere7/tiling.hpp"

namespace sphere7 {

using Json = nlohmann::ordered_json;

/// Mesh document: { "vertices": N, "rotation": [[nbr,...],...],
///                  "embedding": { "radius": r, "positions": [[x,y,z],...] }? }
Json mesh_to_json(const TriMesh& m);
Json embedded_mesh_to_json(const EmbeddedMesh& em);
TriMesh mesh_from_json(const Json& j);
/// Loads the embedding when present; positions are re-normalized onto the sphere.
EmbeddedMesh embedded_mesh_from_json(const Json& j);

/// Coloring document: { "k": int, "colors": [int|null, ...] } (1-based colors).
Json coloring_to_json(const std::vector<int>& colors, int k);
std::pair<std::vector<int>, int> coloring_from_json(const Json& j);

Json tiling_to_json(const TilingDoc& doc);
TilingDoc tiling_from_json(const Json& j);

Json search_outcome_to_json(const SearchOutcome& o, bool include_witness = true);
Json tiling_report_to_json(const TilingReport& r);
Json premise_report_to_json(const PremiseReport& r);
Json sweep_trace_to_json(const SweepTrace& t);
Json contraction_trace_to_json(const ContractionTrace& t);

/// Writes text to a file atomically (temp file + rename).
void write_file_atomic(const std::string& path, const std::string& text);
Json read_json_file(const std::string& path);

/// FNV-1a digest of a canonical serialization, for report provenance.
std::string digest(const std::string& text);

}  // namespace sphere7
