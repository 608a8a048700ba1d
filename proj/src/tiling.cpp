#include "sphere7/tiling.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sphere7 {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double MetricDomain::circumference() const { return 2.0 * kPi * radius; }

MetricDomain plane_domain() { return {DomainKind::Plane, 0, 0, {}}; }

MetricDomain cylinder_domain(double radius, double height) {
    if (radius <= 0 || height <= 0) throw std::runtime_error("bad cylinder parameters");
    return {DomainKind::Cylinder, radius, height, {}};
}

MetricDomain torus_domain(Vec2 p1, Vec2 p2) {
    if (std::abs(cross(p1, p2)) < 1e-12) throw std::runtime_error("degenerate torus periods");
    MetricDomain d;
    d.kind = DomainKind::FlatTorus;
    d.periods = {p1, p2};
    return d;
}

Vec2 MetricDomain::reduce(Vec2 p) const {
    switch (kind) {
        case DomainKind::Plane: return p;
        case DomainKind::Cylinder: {
            double c = circumference();
            double t = std::fmod(p.x, c);
            if (t < 0) t += c;
            return {t, p.y};
        }
        case DomainKind::FlatTorus: {
            double det = cross(periods[0], periods[1]);
            double u = cross(p, periods[1]) / det;
            double v = cross(periods[0], p) / det;
            u -= std::floor(u);
            v -= std::floor(v);
            return u * periods[0] + v * periods[1];
        }
    }
    return p;
}

double MetricDomain::distance(Vec2 p, Vec2 q) const {
    switch (kind) {
        case DomainKind::Plane: return norm(p - q);
        case DomainKind::Cylinder: {
            double dtheta = (p.x - q.x) / radius;
            double chord = 2.0 * radius * std::abs(std::sin(0.5 * dtheta));
            double dx = p.y - q.y;
            return std::sqrt(dx * dx + chord * chord);
        }
        case DomainKind::FlatTorus: {
            Vec2 d = reduce(p) - reduce(q);
            double best = std::numeric_limits<double>::infinity();
            for (int i = -2; i <= 2; ++i)
                for (int j = -2; j <= 2; ++j)
                    best = std::min(best, norm(d + double(i) * periods[0] + double(j) * periods[1]));
            return best;
        }
    }
    return 0;
}

namespace {

// ---- exact plane primitives ----

double seg_point_dist(Vec2 a, Vec2 b, Vec2 p) {
    Vec2 ab = b - a;
    double len2 = dot(ab, ab);
    double t = len2 > 0 ? std::clamp(dot(p - a, ab) / len2, 0.0, 1.0) : 0.0;
    return norm(p - (a + t * ab));
}

bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    auto orient = [](Vec2 p, Vec2 q, Vec2 r) { return cross(q - p, r - p); };
    double o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
    return ((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0));
}

double seg_seg_dist(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    if (segments_intersect(a, b, c, d)) return 0.0;
    return std::min(std::min(seg_point_dist(a, b, c), seg_point_dist(a, b, d)),
                    std::min(seg_point_dist(c, d, a), seg_point_dist(c, d, b)));
}

// Exact distance between polygon/segment boundaries in the flat chart.
double flat_boundary_dist(const std::vector<Vec2>& pa, const std::vector<Vec2>& pb) {
    auto edges = [](const std::vector<Vec2>& poly) {
        std::vector<std::pair<Vec2, Vec2>> e;
        int n = static_cast<int>(poly.size());
        if (n == 1) {
            e.push_back({poly[0], poly[0]});
            return e;
        }
        if (n == 2) {
            e.push_back({poly[0], poly[1]});
            return e;
        }
        for (int i = 0; i < n; ++i) e.push_back({poly[i], poly[(i + 1) % n]});
        return e;
    };
    double best = std::numeric_limits<double>::infinity();
    for (auto& [a, b] : edges(pa))
        for (auto& [c, d] : edges(pb)) best = std::min(best, seg_seg_dist(a, b, c, d));
    return best;
}

bool polygon_convex(const std::vector<Vec2>& poly) {
    int n = static_cast<int>(poly.size());
    if (n < 4) return true;
    int sign = 0;
    for (int i = 0; i < n; ++i) {
        double c = cross(poly[(i + 1) % n] - poly[i], poly[(i + 2) % n] - poly[(i + 1) % n]);
        if (std::abs(c) < 1e-14) continue;
        int s = c > 0 ? 1 : -1;
        if (sign == 0) sign = s;
        else if (s != sign) return false;
    }
    return true;
}

bool point_in_polygon(const std::vector<Vec2>& poly, Vec2 p) {
    bool in = false;
    int n = static_cast<int>(poly.size());
    for (int i = 0, j = n - 1; i < n; j = i++) {
        if ((poly[i].y > p.y) != (poly[j].y > p.y)) {
            double xint = poly[j].x + (p.y - poly[j].y) / (poly[i].y - poly[j].y) *
                                          (poly[i].x - poly[j].x);
            if (p.x < xint) in = !in;
        }
    }
    return in;
}

// ---- cylinder embedding ----

Vec3 cylinder_embed(const MetricDomain& d, Vec2 p) {
    double theta = p.x / d.radius;
    return {p.y, d.radius * std::cos(theta), d.radius * std::sin(theta)};
}

// Sample points on a tile boundary in 3-space (cylinder domains).
std::vector<Vec3> cylinder_tile_samples(const MetricDomain& d, const Tile& t, int samples,
                                        double* step_out) {
    std::vector<Vec3> out;
    double step = 0;
    if (t.kind == TileKind::Cap) {
        double x_end = t.polygon[0].y;
        int n = std::max(samples, 16);
        for (int i = 0; i < n; ++i) {
            double theta = 2 * kPi * i / n;
            out.push_back({x_end, d.radius * std::cos(theta), d.radius * std::sin(theta)});
        }
        step = d.circumference() / n;
    } else {
        double perim = 0;
        int n = static_cast<int>(t.polygon.size());
        for (int i = 0; i < n; ++i) perim += norm(t.polygon[(i + 1) % n] - t.polygon[i]);
        for (int i = 0; i < n; ++i) {
            Vec2 a = t.polygon[i], b = t.polygon[(i + 1) % n];
            double len = norm(b - a);
            int k = std::max(1, static_cast<int>(std::ceil(len / perim * samples)));
            step = std::max(step, len / k);
            for (int s = 0; s < k; ++s)
                out.push_back(cylinder_embed(d, a + (double(s) / k) * (b - a)));
        }
    }
    if (step_out) *step_out = step;
    return out;
}

double vec3_dist(Vec3 a, Vec3 b) { return norm(a - b); }

// Distance between two tiles of a cylinder doc; exact for cap-cap pairs,
// otherwise sampled (3-space chords shrink under the chart, so the sampled
// value overestimates by at most the larger sampling step).
double cylinder_tile_dist(const MetricDomain& d, const Tile& a, const Tile& b, int samples,
                          double* gap) {
    if (a.kind == TileKind::Cap && b.kind == TileKind::Cap) {
        if (gap) *gap = 0;
        return std::abs(a.polygon[0].y - b.polygon[0].y);
    }
    double sa = 0, sb = 0;
    auto pa = cylinder_tile_samples(d, a, samples, &sa);
    auto pb = cylinder_tile_samples(d, b, samples, &sb);
    // Caps are closed disks: the nearest point to any lateral point lies on
    // the rim, so rim samples suffice.
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : pa)
        for (const auto& q : pb) best = std::min(best, vec3_dist(p, q));
    if (gap) *gap = sa + sb;
    return best;
}

double tile_diameter(const TilingDoc& doc, const Tile& t, double* gap) {
    const MetricDomain& d = doc.domain;
    if (gap) *gap = 0;
    if (t.kind == TileKind::Cap) return 2.0 * d.radius;
    if (t.kind == TileKind::Segment) return d.distance(t.polygon[0], t.polygon[1]);
    if (d.kind == DomainKind::Cylinder) {
        // Flat chart diameter upper-bounds the chordal diameter; exact enough
        // for the < 1 check and attained at vertices for convex tiles.
        double best = 0;
        for (std::size_t i = 0; i < t.polygon.size(); ++i)
            for (std::size_t j = i + 1; j < t.polygon.size(); ++j)
                best = std::max(best, norm(t.polygon[i] - t.polygon[j]));
        return best;
    }
    if (!polygon_convex(t.polygon)) {
        // Dense boundary sampling for non-convex tiles.
        double best = 0, step = 0;
        std::vector<Vec2> pts;
        int n = static_cast<int>(t.polygon.size());
        double perim = 0;
        for (int i = 0; i < n; ++i) perim += norm(t.polygon[(i + 1) % n] - t.polygon[i]);
        for (int i = 0; i < n; ++i) {
            Vec2 a = t.polygon[i], b = t.polygon[(i + 1) % n];
            int k = std::max(1, static_cast<int>(std::ceil(norm(b - a) / perim * 1000)));
            step = std::max(step, norm(b - a) / k);
            for (int s = 0; s < k; ++s) pts.push_back(a + (double(s) / k) * (b - a));
        }
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j)
                best = std::max(best, d.distance(pts[i], pts[j]));
        if (gap) *gap = step;
        return best;
    }
    double best = 0;
    for (std::size_t i = 0; i < t.polygon.size(); ++i)
        for (std::size_t j = i + 1; j < t.polygon.size(); ++j)
            best = std::max(best, d.distance(t.polygon[i], t.polygon[j]));
    return best;
}

// Same-color distance between two tiles; exact in flat charts, sampled with a
// gap bound on cylinders.
double tile_distance(const TilingDoc& doc, const Tile& a, const Tile& b, int samples,
                     double* gap) {
    const MetricDomain& d = doc.domain;
    if (gap) *gap = 0;
    if (d.kind == DomainKind::Plane) return flat_boundary_dist(a.polygon, b.polygon);
    if (d.kind == DomainKind::FlatTorus) {
        double best = std::numeric_limits<double>::infinity();
        // Reduce tile b rigidly against a over the lattice shifts.
        Vec2 ca{0, 0}, cb{0, 0};
        for (auto& p : a.polygon) ca = ca + p;
        for (auto& p : b.polygon) cb = cb + p;
        ca = (1.0 / a.polygon.size()) * ca;
        cb = (1.0 / b.polygon.size()) * cb;
        for (int i = -2; i <= 2; ++i)
            for (int j = -2; j <= 2; ++j) {
                Vec2 shift = double(i) * d.periods[0] + double(j) * d.periods[1] +
                             (d.reduce(cb) - cb) - (d.reduce(ca) - ca);
                std::vector<Vec2> moved = b.polygon;
                for (auto& p : moved) p = p + shift;
                best = std::min(best, flat_boundary_dist(a.polygon, moved));
            }
        return best;
    }
    return cylinder_tile_dist(d, a, b, samples, gap);
}

}  // namespace

TilingReport verify_nice_tiling(const TilingDoc& doc, const VerifyOptions& opts) {
    TilingReport rep;
    if (doc.tiles.empty()) throw std::runtime_error("empty tiling document");
    std::ostringstream notes;

    double diam_gap = 0;
    for (std::size_t i = 0; i < doc.tiles.size(); ++i) {
        double g = 0;
        double diam = tile_diameter(doc, doc.tiles[i], &g);
        diam_gap = std::max(diam_gap, g);
        if (diam > rep.max_diameter) {
            rep.max_diameter = diam;
            rep.max_diameter_tile = static_cast<int>(i);
        }
    }

    // Same-color pair scan (data parallel; deterministic reduction afterwards).
    std::vector<std::pair<int, int>> pairs;
    for (std::size_t i = 0; i < doc.tiles.size(); ++i)
        for (std::size_t j = i + 1; j < doc.tiles.size(); ++j)
            if (doc.tiles[i].color == doc.tiles[j].color)
                pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
    std::vector<double> dist(pairs.size()), gaps(pairs.size(), 0.0);
    long np = static_cast<long>(pairs.size());
#ifdef _OPENMP
    bool par = (opts.mode == ExecMode::Parallel);
#pragma omp parallel for schedule(dynamic) if (par)
#endif
    for (long p = 0; p < np; ++p) {
        dist[p] = tile_distance(doc, doc.tiles[pairs[p].first], doc.tiles[pairs[p].second],
                                opts.boundary_samples_per_tile, &gaps[p]);
    }
    rep.min_same_color = std::numeric_limits<double>::infinity();
    double pair_gap = 0;
    for (long p = 0; p < np; ++p) {
        if (dist[p] < rep.min_same_color) {
            rep.min_same_color = dist[p];
            rep.witness_a = pairs[p].first;
            rep.witness_b = pairs[p].second;
            pair_gap = gaps[p];
        }
    }
    if (pairs.empty()) {
        rep.min_same_color = std::numeric_limits<double>::infinity();
        notes << "no same-color pair; ";
    }
    rep.sampling_gap = std::max(diam_gap, pair_gap);
    rep.diameter_margin = 1.0 - (rep.max_diameter + diam_gap);
    rep.same_color_margin = (rep.min_same_color - pair_gap) - 1.0;

    // Sampled cover / overlap certificate on closed flat domains.
    bool has_segments = std::any_of(doc.tiles.begin(), doc.tiles.end(),
                                    [](const Tile& t) { return t.kind == TileKind::Segment; });
    if (opts.check_cover && !has_segments &&
        (doc.domain.kind == DomainKind::FlatTorus || doc.domain.kind == DomainKind::Cylinder)) {
        std::mt19937 rng(opts.seed);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        int bad_cover = 0, bad_overlap = 0;
        for (int s = 0; s < opts.cover_samples; ++s) {
            Vec2 p;
            if (doc.domain.kind == DomainKind::FlatTorus) {
                p = uni(rng) * doc.domain.periods[0] + uni(rng) * doc.domain.periods[1];
            } else {
                p = {uni(rng) * doc.domain.circumference(), uni(rng) * doc.domain.height};
            }
            int hits = 0;
            bool near_boundary = false;
            for (const auto& t : doc.tiles) {
                if (t.kind == TileKind::Cap) continue;  // lateral sampling only
                // Try the lattice / wrap representatives.
                std::vector<Vec2> shifts{{0, 0}};
                if (doc.domain.kind == DomainKind::FlatTorus) {
                    shifts.clear();
                    for (int i = -1; i <= 1; ++i)
                        for (int j = -1; j <= 1; ++j)
                            shifts.push_back(double(i) * doc.domain.periods[0] +
                                             double(j) * doc.domain.periods[1]);
                } else {
                    double c = doc.domain.circumference();
                    shifts = {{-c, 0}, {0, 0}, {c, 0}};
                }
                for (Vec2 sh : shifts) {
                    std::vector<Vec2> poly = t.polygon;
                    for (auto& q : poly) q = q + sh;
                    double bd = std::numeric_limits<double>::infinity();
                    for (std::size_t e = 0; e < poly.size(); ++e)
                        bd = std::min(bd, seg_point_dist(poly[e], poly[(e + 1) % poly.size()], p));
                    if (bd < 1e-7) near_boundary = true;
                    else if (point_in_polygon(poly, p)) ++hits;
                }
            }
            if (near_boundary) continue;
            if (hits == 0) ++bad_cover;
            if (hits > 1) ++bad_overlap;
        }
        rep.cover_ok = bad_cover == 0;
        rep.overlap_ok = bad_overlap == 0;
        if (!rep.cover_ok) notes << bad_cover << " uncovered sample points; ";
        if (!rep.overlap_ok) notes << bad_overlap << " overlapped sample points; ";
    } else if (has_segments) {
        notes << "segment complex: cover check skipped; ";
    } else if (doc.domain.kind == DomainKind::Plane) {
        notes << "open plane patch: cover check skipped; ";
    }

    rep.pass = rep.diameter_margin > opts.tol && rep.same_color_margin > opts.tol &&
               rep.overlap_ok && rep.cover_ok;
    rep.notes = notes.str();
    return rep;
}

// ---- adjacency extraction -------------------------------------------------

namespace {

struct CornerRegistry {
    double eps;
    std::map<std::pair<long, long>, int> buckets;
    std::vector<Vec2> coords;

    explicit CornerRegistry(double e) : eps(e) {}

    int find_or_add(Vec2 p) {
        long bx = std::lround(p.x / eps), by = std::lround(p.y / eps);
        for (long dx = -1; dx <= 1; ++dx)
            for (long dy = -1; dy <= 1; ++dy) {
                auto it = buckets.find({bx + dx, by + dy});
                if (it != buckets.end() && norm(coords[it->second] - p) < 4 * eps)
                    return it->second;
            }
        int id = static_cast<int>(coords.size());
        coords.push_back(p);
        buckets[{bx, by}] = id;
        return id;
    }
};

}  // namespace

AdjacencyResult adjacency_graph(const TilingDoc& doc, bool point_contact, double snap_tol) {
    AdjacencyResult res;
    int nt = static_cast<int>(doc.tiles.size());
    res.colors.resize(nt);
    for (int i = 0; i < nt; ++i) res.colors[i] = doc.tiles[i].color;

    const MetricDomain& dom = doc.domain;
    bool is_cyl = dom.kind == DomainKind::Cylinder;
    double C = is_cyl ? dom.circumference() : 0;

    CornerRegistry reg(snap_tol);
    // corner id -> list of (tile, local polygon vertex index)
    std::map<int, std::vector<std::array<int, 2>>> at_corner;
    std::vector<std::vector<Vec2>> norm_poly(nt);
    std::vector<int> cap_tiles;

    // Canonical representative of a point under the domain wrap: reduce, then
    // fold a seam-adjacent value onto the low side so both sides unify.
    auto canonical = [&](Vec2 p) -> Vec2 {
        if (is_cyl) {
            double t = std::fmod(p.x, C);
            if (t < 0) t += C;
            if (t > C - 8 * snap_tol) t -= C;
            return {t, p.y};
        }
        if (dom.kind == DomainKind::FlatTorus) {
            double det = cross(dom.periods[0], dom.periods[1]);
            double u = cross(p, dom.periods[1]) / det;
            double v = cross(dom.periods[0], p) / det;
            u -= std::floor(u);
            v -= std::floor(v);
            double fold = 8 * snap_tol / std::max(norm(dom.periods[0]), norm(dom.periods[1]));
            if (u > 1 - fold) u -= 1;
            if (v > 1 - fold) v -= 1;
            return u * dom.periods[0] + v * dom.periods[1];
        }
        return p;
    };

    for (int i = 0; i < nt; ++i) {
        const Tile& t = doc.tiles[i];
        if (t.kind == TileKind::Cap) {
            cap_tiles.push_back(i);
            continue;
        }
        if (t.kind == TileKind::Segment)
            throw std::runtime_error("adjacency_graph does not apply to segment complexes");
        norm_poly[i] = t.polygon;
        for (std::size_t v = 0; v < norm_poly[i].size(); ++v) {
            int cid = reg.find_or_add(canonical(norm_poly[i][v]));
            at_corner[cid].push_back({i, static_cast<int>(v)});
        }
    }

    // Adjacency from shared edges: same canonical corner pair.
    std::set<std::pair<int, int>> adjacency;
    std::map<std::pair<int, int>, std::vector<int>> edge_tiles;
    for (int i = 0; i < nt; ++i) {
        if (doc.tiles[i].kind != TileKind::Polygon) continue;
        int nv = static_cast<int>(norm_poly[i].size());
        for (int v = 0; v < nv; ++v) {
            int c1 = reg.find_or_add(canonical(norm_poly[i][v]));
            int c2 = reg.find_or_add(canonical(norm_poly[i][(v + 1) % nv]));
            auto key = std::minmax(c1, c2);
            edge_tiles[{key.first, key.second}].push_back(i);
        }
    }
    for (auto& [edge, tiles] : edge_tiles) {
        (void)edge;
        std::set<int> distinct(tiles.begin(), tiles.end());
        if (distinct.size() > 2) throw std::runtime_error("ambiguous boundary sharing");
        if (distinct.size() == 2) {
            auto it = distinct.begin();
            int a = *it++, b = *it;
            adjacency.emplace(std::min(a, b), std::max(a, b));
        }
    }

    // Cap adjacency: every tile with an edge on the end line.
    std::map<int, double> cap_x;
    for (int c : cap_tiles) cap_x[c] = doc.tiles[c].polygon[0].y;
    for (int c : cap_tiles) {
        for (int i = 0; i < nt; ++i) {
            if (doc.tiles[i].kind != TileKind::Polygon) continue;
            int nv = static_cast<int>(norm_poly[i].size());
            for (int v = 0; v < nv; ++v) {
                Vec2 a = norm_poly[i][v], b = norm_poly[i][(v + 1) % nv];
                if (std::abs(a.y - cap_x[c]) < snap_tol && std::abs(b.y - cap_x[c]) < snap_tol) {
                    adjacency.emplace(std::min(c, i), std::max(c, i));
                    break;
                }
            }
        }
    }

    // Point contacts behind the flag: corners shared without a shared edge.
    if (point_contact) {
        for (auto& [cid, list] : at_corner) {
            (void)cid;
            for (std::size_t x = 0; x < list.size(); ++x)
                for (std::size_t y = x + 1; y < list.size(); ++y) {
                    int a = list[x][0], b = list[y][0];
                    if (a != b) adjacency.emplace(std::min(a, b), std::max(a, b));
                }
        }
    }

    std::vector<std::pair<int, int>> edge_list(adjacency.begin(), adjacency.end());
    res.graph = Graph::from_edges(nt, edge_list);

    // Dual faces: tiles around every corner in counterclockwise order; the
    // tiling is fully triangulated when every corner is closed by 3 tiles.
    std::vector<std::array<int, 3>> faces;
    bool triangulated = true;
    std::ostringstream notes;
    for (auto& [cid, list_raw] : at_corner) {
        // Unique tiles with their wedge bisector angle at this corner; angles
        // come from the tile's own chart, so wrap shifts do not matter.
        std::map<int, double> ang;
        double covered = 0;
        for (auto [tile, vidx] : list_raw) {
            const auto& poly = norm_poly[tile];
            int nv = static_cast<int>(poly.size());
            Vec2 p = poly[vidx];
            Vec2 to_next = poly[(vidx + 1) % nv] - p;
            Vec2 to_prev = poly[(vidx + nv - 1) % nv] - p;
            Vec2 bis = (1.0 / norm(to_next)) * to_next + (1.0 / norm(to_prev)) * to_prev;
            double wedge = std::acos(std::clamp(
                dot(to_next, to_prev) / (norm(to_next) * norm(to_prev)), -1.0, 1.0));
            covered += wedge;
            if (ang.count(tile)) continue;
            ang[tile] = std::atan2(bis.y, bis.x);
        }
        if (ang.empty()) continue;
        // Rim corner: tiles on an end line leave the outward gap for the cap.
        for (int c : cap_tiles) {
            if (std::abs(reg.coords[cid].y - cap_x[c]) < snap_tol) {
                ang[c] = (cap_x[c] < dom.height / 2) ? -kPi / 2 : kPi / 2;
                covered += kPi;  // the cap closes the corner
            }
        }
        if (covered < 2 * kPi - 0.2) {
            triangulated = false;  // open corner (patch boundary)
            continue;
        }
        std::vector<std::pair<double, int>> order;
        for (auto& [tile, a] : ang) order.emplace_back(a, tile);
        std::sort(order.begin(), order.end());
        if (order.size() != 3) {
            triangulated = false;
            notes << "closed corner with " << order.size() << " tiles; ";
            continue;
        }
        faces.push_back({order[0].second, order[1].second, order[2].second});
    }

    res.fully_triangulated = triangulated && !faces.empty();
    if (res.fully_triangulated) {
        try {
            res.mesh = TriMesh::from_faces(nt, faces);
        } catch (const MeshError& e) {
            res.fully_triangulated = false;
            notes << "dual mesh rejected: " << e.what() << "; ";
        }
    }
    res.notes = notes.str();
    return res;
}

// ---- constructions ---------------------------------------------------------

namespace {

// Hexagon lattice in a chart: basis vectors at 60 degrees, rotated by alpha.
struct HexLattice {
    double a;
    Vec2 e1, e2;
    Vec2 origin;

    HexLattice(double pitch, double alpha, Vec2 org) : a(pitch), origin(org) {
        e1 = {a * std::cos(alpha), a * std::sin(alpha)};
        e2 = {a * std::cos(alpha + kPi / 3), a * std::sin(alpha + kPi / 3)};
    }
    Vec2 center(int i, int j) const { return origin + double(i) * e1 + double(j) * e2; }
    // Voronoi hexagon corners: circumradius a/sqrt(3) at the wedge bisectors.
    std::vector<Vec2> hexagon(int i, int j) const {
        std::vector<Vec2> out;
        double alpha = std::atan2(e1.y, e1.x);
        double r = a / std::sqrt(3.0);
        for (int k = 0; k < 6; ++k) {
            double ang = alpha + kPi / 6 + k * kPi / 3;
            out.push_back(center(i, j) + Vec2{r * std::cos(ang), r * std::sin(ang)});
        }
        return out;
    }
    static int color(int i, int j) { return 1 + (((i + 3 * j) % 7) + 7) % 7; }
};

std::vector<Vec2> clip_halfplane(const std::vector<Vec2>& poly, Vec2 n, double off) {
    // Keep dot(p, n) >= off.
    std::vector<Vec2> out;
    int nv = static_cast<int>(poly.size());
    for (int i = 0; i < nv; ++i) {
        Vec2 cur = poly[i], nxt = poly[(i + 1) % nv];
        double dc = dot(cur, n) - off, dn = dot(nxt, n) - off;
        if (dc >= 0) out.push_back(cur);
        if ((dc > 0 && dn < 0) || (dc < 0 && dn > 0)) {
            double t = dc / (dc - dn);
            out.push_back(cur + t * (nxt - cur));
        }
    }
    return out;
}

double polygon_area(const std::vector<Vec2>& poly) {
    double s = 0;
    int n = static_cast<int>(poly.size());
    for (int i = 0; i < n; ++i) s += cross(poly[i], poly[(i + 1) % n]);
    return 0.5 * s;
}

}  // namespace

TilingDoc cylinder7_construction(double pitch, int axial_periods) {
    if (pitch < 0.7 || pitch > 0.87)
        throw std::runtime_error("cylinder pitch outside the documented range (0.7, 0.87)");
    if (axial_periods < 2) throw std::runtime_error("need at least two axial periods");
    double a = pitch;
    double C = a * std::sqrt(7.0);           // wrap = minimal same-color lattice vector
    double rho = C / (2 * kPi);
    // Axial spacing between consecutive same-color hexagon rows.
    double color_period = a * std::sqrt(21.0) / 2.0;
    double L = axial_periods * color_period;

    // Rotate the lattice so e1 + 2 e2 points along the circumference (chart x).
    double alpha = -std::atan2(std::sqrt(3.0), 2.0);
    HexLattice lat(a, alpha, {0.1731 * a, 0.2149 * a});

    TilingDoc doc;
    doc.domain = cylinder_domain(rho, L);
    doc.k = 7;

    // One wrap strip: centers with chart x in [0, C), chart y in [-a, L+a].
    int range = static_cast<int>(std::ceil(4.0 * (L + C) / a)) + 8;
    std::set<std::pair<int, int>> emitted;
    for (int i = -range; i <= range; ++i) {
        for (int j = -range; j <= range; ++j) {
            Vec2 c = lat.center(i, j);
            if (c.x < -1e-9 || c.x >= C - 1e-9) continue;
            if (c.y < -a || c.y > L + a) continue;
            if (!emitted.insert({i, j}).second) continue;
            auto hex = lat.hexagon(i, j);
            auto clipped = clip_halfplane(hex, {0, 1}, 0.0);        // x_axial >= 0
            clipped = clip_halfplane(clipped, {0, -1}, -L);         // x_axial <= L
            if (clipped.size() < 3 || std::abs(polygon_area(clipped)) < 1e-9) continue;
            Tile t;
            t.color = HexLattice::color(i, j);
            t.polygon = clipped;
            doc.tiles.push_back(std::move(t));
        }
    }

    // Cap colors: the color whose lateral tiles stay farthest from each end.
    auto cap_color = [&](bool bottom) {
        std::array<double, 8> best;
        best.fill(std::numeric_limits<double>::infinity());
        for (const auto& t : doc.tiles) {
            double extreme = bottom ? std::numeric_limits<double>::infinity()
                                    : -std::numeric_limits<double>::infinity();
            for (const auto& p : t.polygon)
                extreme = bottom ? std::min(extreme, p.y) : std::max(extreme, p.y);
            double d = bottom ? extreme : L - extreme;
            best[t.color] = std::min(best[t.color], d);
        }
        int arg = 1;
        for (int c = 2; c <= 7; ++c)
            if (best[c] > best[arg]) arg = c;
        if (best[arg] <= 1.0)
            throw std::runtime_error("no admissible cap color (end phase too tight)");
        return arg;
    };
    Tile bottom, top;
    bottom.kind = top.kind = TileKind::Cap;
    bottom.polygon = {{0.0, 0.0}};
    top.polygon = {{0.0, L}};
    bottom.color = cap_color(true);
    top.color = cap_color(false);
    doc.tiles.push_back(bottom);
    doc.tiles.push_back(top);
    return doc;
}

TilingDoc plane_isbell_patch(int rows, int cols, double pitch) {
    TilingDoc doc;
    doc.domain = plane_domain();
    doc.k = 7;
    HexLattice lat(pitch, 0.0, {0, 0});
    for (int i = 0; i < cols; ++i)
        for (int j = 0; j < rows; ++j) {
            Tile t;
            t.color = HexLattice::color(i, j);
            t.polygon = lat.hexagon(i, j);
            doc.tiles.push_back(std::move(t));
        }
    return doc;
}

TilingDoc torus_isbell_construction(int scale, double pitch) {
    if (scale < 2) throw std::runtime_error("torus scale must be >= 2");
    HexLattice lat(pitch, 0.0, {0.0173 * pitch, 0.0241 * pitch});
    // Same-color sublattice basis (1,2) and (-2,3) (both residue 0 mod 7).
    Vec2 w1 = 1.0 * lat.e1 + 2.0 * lat.e2;
    Vec2 w2 = -2.0 * lat.e1 + 3.0 * lat.e2;
    Vec2 P1 = double(scale) * w1, P2 = double(scale) * w2;

    TilingDoc doc;
    doc.domain = torus_domain(P1, P2);
    doc.k = 7;
    double det = cross(P1, P2);
    int range = 8 * scale;
    for (int i = -range; i <= range; ++i)
        for (int j = -range; j <= range; ++j) {
            Vec2 c = lat.center(i, j);
            double u = cross(c, P2) / det, v = cross(P1, c) / det;
            if (u < 0 || u >= 1 - 1e-12 || v < 0 || v >= 1 - 1e-12) continue;
            Tile t;
            t.color = HexLattice::color(i, j);
            t.polygon = lat.hexagon(i, j);
            doc.tiles.push_back(std::move(t));
        }
    std::size_t expect = 7u * scale * scale;
    if (doc.tiles.size() != expect)
        throw std::runtime_error("torus fundamental domain tile count mismatch");
    return doc;
}

TilingDoc genus_construction(int genus, double rail_distance, double segment_length,
                             double period_offset) {
    if (genus < 0) throw std::runtime_error("genus must be non-negative");
    TilingDoc doc;
    doc.domain = plane_domain();
    doc.k = 4;
    double bar_gap = 3.0 * segment_length;  // crossbars one color period apart
    double width = (genus + 1) * bar_gap + segment_length;

    auto add_rail = [&](double y, double phase) {
        int i0 = static_cast<int>(std::floor((0.0 - phase) / segment_length)) - 1;
        int i1 = static_cast<int>(std::ceil((width - phase) / segment_length)) + 1;
        for (int i = i0; i < i1; ++i) {
            Tile t;
            t.kind = TileKind::Segment;
            t.color = 1 + ((i % 3) + 3) % 3;
            t.polygon = {{phase + i * segment_length, y}, {phase + (i + 1) * segment_length, y}};
            doc.tiles.push_back(std::move(t));
        }
    };
    add_rail(0.0, 0.0);
    add_rail(rail_distance, period_offset);
    for (int b = 0; b <= genus; ++b) {
        Tile t;
        t.kind = TileKind::Segment;
        t.color = 4;
        double x = 0.5 * segment_length + b * bar_gap;
        t.polygon = {{x, 0.0}, {x, rail_distance}};
        doc.tiles.push_back(std::move(t));
    }
    return doc;
}

std::vector<Vec2> moser_spindle_points() {
    double s3 = std::sqrt(3.0);
    Vec2 u{0, 0}, a1{1, 0}, a2{0.5, s3 / 2}, apex{1.5, s3 / 2};
    double theta = 2.0 * std::asin(0.5 / s3);
    auto rot = [&](Vec2 p) {
        return Vec2{p.x * std::cos(theta) - p.y * std::sin(theta),
                    p.x * std::sin(theta) + p.y * std::cos(theta)};
    };
    return {u, a1, a2, apex, rot(a1), rot(a2), rot(apex)};
}

Graph unit_distance_graph(const std::vector<Vec2>& pts, double tol) {
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (std::abs(norm(pts[i] - pts[j]) - 1.0) <= tol)
                edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
    return Graph::from_edges(static_cast<int>(pts.size()), edges);
}

EulerReport euler_obstruction(const TriMesh& m) {
    EulerReport rep;
    rep.chi = m.euler_characteristic();
    rep.vertices = m.vertex_count();
    rep.edges = m.edge_count();
    rep.average_degree = 2.0 * double(m.edge_count()) / double(m.vertex_count());
    for (int v = 0; v < m.vertex_count(); ++v) rep.max_degree = std::max(rep.max_degree, m.degree(v));
    rep.obstructed = rep.chi < 0;
    return rep;
}

}  // namespace sphere7
