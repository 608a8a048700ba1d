#include "sphere7/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace sphere7 {

Json mesh_to_json(const TriMesh& m) {
    Json j;
    j["vertices"] = m.vertex_count();
    j["rotation"] = m.rotation();
    return j;
}

Json embedded_mesh_to_json(const EmbeddedMesh& em) {
    Json j = mesh_to_json(em.mesh);
    Json emb;
    emb["radius"] = em.radius();
    Json pos = Json::array();
    for (const auto& p : em.pos) pos.push_back({p.u.x, p.u.y, p.u.z});
    emb["positions"] = pos;
    j["embedding"] = emb;
    return j;
}

TriMesh mesh_from_json(const Json& j) {
    std::vector<std::vector<int>> rot = j.at("rotation").get<std::vector<std::vector<int>>>();
    if (j.contains("vertices") && j.at("vertices").get<int>() != static_cast<int>(rot.size()))
        throw MeshError("vertex count does not match rotation length");
    return TriMesh::from_rotation(std::move(rot));
}

EmbeddedMesh embedded_mesh_from_json(const Json& j) {
    EmbeddedMesh em;
    em.mesh = mesh_from_json(j);
    if (!j.contains("embedding")) throw MeshError("mesh document has no embedding");
    const Json& emb = j.at("embedding");
    double r = emb.at("radius").get<double>();
    for (const auto& p : emb.at("positions")) {
        Vec3 v{p.at(0).get<double>(), p.at(1).get<double>(), p.at(2).get<double>()};
        em.pos.push_back(make_sphere_point(v, r));
    }
    if (static_cast<int>(em.pos.size()) != em.mesh.vertex_count())
        throw MeshError("embedding position count mismatch");
    return em;
}

Json coloring_to_json(const std::vector<int>& colors, int k) {
    Json j;
    j["k"] = k;
    Json arr = Json::array();
    for (int c : colors) {
        if (c <= 0) arr.push_back(nullptr);
        else arr.push_back(c);
    }
    j["colors"] = arr;
    return j;
}

std::pair<std::vector<int>, int> coloring_from_json(const Json& j) {
    int k = j.at("k").get<int>();
    std::vector<int> colors;
    for (const auto& c : j.at("colors")) colors.push_back(c.is_null() ? 0 : c.get<int>());
    return {colors, k};
}

namespace {

const char* kind_name(TileKind k) {
    switch (k) {
        case TileKind::Polygon: return "polygon";
        case TileKind::Cap: return "cap";
        case TileKind::Segment: return "segment";
    }
    return "polygon";
}

TileKind kind_from_name(const std::string& s) {
    if (s == "polygon") return TileKind::Polygon;
    if (s == "cap") return TileKind::Cap;
    if (s == "segment") return TileKind::Segment;
    throw std::runtime_error("unknown tile kind: " + s);
}

}  // namespace

Json tiling_to_json(const TilingDoc& doc) {
    Json j;
    Json dom;
    switch (doc.domain.kind) {
        case DomainKind::Plane: dom["kind"] = "plane"; break;
        case DomainKind::Cylinder:
            dom["kind"] = "cylinder";
            dom["radius"] = doc.domain.radius;
            dom["height"] = doc.domain.height;
            break;
        case DomainKind::FlatTorus:
            dom["kind"] = "flat_torus";
            dom["periods"] = {{doc.domain.periods[0].x, doc.domain.periods[0].y},
                              {doc.domain.periods[1].x, doc.domain.periods[1].y}};
            break;
    }
    j["domain"] = dom;
    j["k"] = doc.k;
    Json tiles = Json::array();
    for (const auto& t : doc.tiles) {
        Json tj;
        tj["color"] = t.color;
        Json poly = Json::array();
        for (const auto& p : t.polygon) poly.push_back({p.x, p.y});
        tj["polygon"] = poly;
        tj["kind"] = kind_name(t.kind);
        tiles.push_back(tj);
    }
    j["tiles"] = tiles;
    return j;
}

TilingDoc tiling_from_json(const Json& j) {
    TilingDoc doc;
    const Json& dom = j.at("domain");
    std::string kind = dom.at("kind").get<std::string>();
    if (kind == "plane") {
        doc.domain = plane_domain();
    } else if (kind == "cylinder") {
        doc.domain = cylinder_domain(dom.at("radius").get<double>(), dom.at("height").get<double>());
    } else if (kind == "flat_torus") {
        const Json& p = dom.at("periods");
        doc.domain = torus_domain({p.at(0).at(0), p.at(0).at(1)}, {p.at(1).at(0), p.at(1).at(1)});
    } else {
        throw std::runtime_error("unknown domain kind: " + kind);
    }
    doc.k = j.at("k").get<int>();
    for (const auto& tj : j.at("tiles")) {
        Tile t;
        t.color = tj.at("color").get<int>();
        for (const auto& p : tj.at("polygon")) t.polygon.push_back({p.at(0), p.at(1)});
        if (tj.contains("kind")) t.kind = kind_from_name(tj.at("kind").get<std::string>());
        doc.tiles.push_back(std::move(t));
    }
    return doc;
}

Json search_outcome_to_json(const SearchOutcome& o, bool include_witness) {
    Json j;
    j["status"] = to_string(o.status);
    j["count"] = o.count;
    j["nodes_expanded"] = o.stats.nodes_expanded;
    j["max_depth"] = o.stats.max_depth;
    if (include_witness && o.coloring) j["witness"] = *o.coloring;
    return j;
}

Json tiling_report_to_json(const TilingReport& r) {
    Json j;
    j["pass"] = r.pass;
    j["max_diameter"] = r.max_diameter;
    j["max_diameter_tile"] = r.max_diameter_tile;
    j["min_same_color_distance"] = r.min_same_color;
    j["witness_pair"] = {r.witness_a, r.witness_b};
    j["diameter_margin"] = r.diameter_margin;
    j["same_color_margin"] = r.same_color_margin;
    j["sampling_gap"] = r.sampling_gap;
    j["overlap_ok"] = r.overlap_ok;
    j["cover_ok"] = r.cover_ok;
    if (!r.notes.empty()) j["notes"] = r.notes;
    return j;
}

Json premise_report_to_json(const PremiseReport& r) {
    Json j;
    j["max_edge_arc"] = r.max_edge_arc;
    j["max_triangle_circumradius"] = r.max_circumradius;
    j["edge_within_d1"] = r.edge_within_d1;
    j["covering_certified"] = r.covering_certified;
    j["d2_satisfied"] = r.d2_satisfied;
    j["radius"] = r.radius;
    j["threshold_radius"] = r.threshold;
    j["nominal_threshold_46_5_over_pi"] = r.nominal_threshold;
    j["alternate_constant"] = r.alt_constant;
    j["radius_at_or_above_threshold"] = r.radius_at_or_above_threshold;
    return j;
}

Json sweep_trace_to_json(const SweepTrace& t) {
    Json j;
    j["terminated"] = t.terminated;
    j["cycles"] = t.cycles;
    j["step_kinds"] = t.step_kinds;
    j["side1_steps"] = t.side1_steps;
    j["max_length"] = t.max_length;
    if (!t.diagnostic.empty()) j["diagnostic"] = t.diagnostic;
    return j;
}

Json contraction_trace_to_json(const ContractionTrace& t) {
    Json j;
    j["initial_cycle"] = t.initial.verts;
    j["initial_curvature"] = t.initial_curvature;
    Json steps = Json::array();
    for (const auto& s : t.steps) {
        Json sj;
        sj["kind"] = s.kind == ContractStepKind::Type1 ? 1 : 2;
        sj["pivot"] = s.pivot;
        sj["cycle"] = s.cycle.verts;
        sj["curvature_after"] = s.curvature_after;
        steps.push_back(sj);
    }
    j["steps"] = steps;
    return j;
}

void write_file_atomic(const std::string& path, const std::string& text) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
        out << text;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot rename " + tmp + " to " + path);
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

std::string digest(const std::string& text) {
    unsigned long long h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

}  // namespace sphere7
