#include "sphere7/geometry.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sphere7 {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kOnCurveBand = 1e-10;
}  // namespace

Vec3 normalized(Vec3 a) {
    double n = norm(a);
    if (n == 0) throw std::runtime_error("cannot normalize zero vector");
    return {a.x / n, a.y / n, a.z / n};
}

SpherePoint make_sphere_point(Vec3 direction, double radius) {
    if (radius <= 0) throw std::runtime_error("sphere radius must be positive");
    return {normalized(direction), radius};
}

static void check_same_radius(const SpherePoint& p, const SpherePoint& q) {
    if (std::abs(p.r - q.r) > 1e-9 * std::max(1.0, p.r))
        throw std::runtime_error("sphere radius mismatch");
}

double angle_between(const SpherePoint& p, const SpherePoint& q) {
    // atan2 form is stable for both tiny and near-pi angles.
    return std::atan2(norm(cross(p.u, q.u)), dot(p.u, q.u));
}

double sphere_distance(const SpherePoint& p, const SpherePoint& q) {
    check_same_radius(p, q);
    return p.r * angle_between(p, q);
}

double chord_distance(const SpherePoint& p, const SpherePoint& q) {
    check_same_radius(p, q);
    return 2.0 * p.r * std::sin(0.5 * angle_between(p, q));
}

SpherePoint antipode(const SpherePoint& p) { return {{-p.u.x, -p.u.y, -p.u.z}, p.r}; }

namespace {

struct NearestFeature {
    double dist = std::numeric_limits<double>::infinity();  // arc length
    int arc = -1;      // arc index when the nearest point is interior to it
    int vertex = -1;   // vertex index otherwise
};

// Tangent-plane direction at v toward q.
Vec3 tangent_toward(const Vec3& v, const Vec3& q) {
    Vec3 t = q - dot(q, v) * v;
    return normalized(t);
}

double cross2_at(const Vec3& v, const Vec3& a, const Vec3& b) { return dot(cross(a, b), v); }

}  // namespace

double signed_cycle_distance(const SpherePoint& p, const SphericalCycle& c) {
    int n = c.length();
    if (n < 3) throw std::runtime_error("spherical cycle too short");
    double r = c.pts[0].r;
    check_same_radius(p, c.pts[0]);

    NearestFeature best;
    std::vector<Vec3> normals(n);
    for (int i = 0; i < n; ++i) {
        const Vec3& a = c.pts[i].u;
        const Vec3& b = c.pts[(i + 1) % n].u;
        Vec3 nrm = cross(a, b);
        double nn = norm(nrm);
        if (nn < 1e-15) throw std::runtime_error("degenerate arc in spherical cycle");
        nrm = {nrm.x / nn, nrm.y / nn, nrm.z / nn};
        normals[i] = nrm;

        double da = std::atan2(norm(cross(p.u, a)), dot(p.u, a));
        if (da < best.dist) best = {da, -1, i};
        Vec3 proj = p.u - dot(p.u, nrm) * nrm;
        if (norm(proj) > 1e-14) {
            Vec3 q = normalized(proj);
            bool inside_arc = cross2_at(nrm, a, q) >= -1e-14 && cross2_at(nrm, q, b) >= -1e-14;
            if (inside_arc) {
                double d = std::atan2(norm(cross(p.u, q)), dot(p.u, q));
                if (d < best.dist) best = {d, i, -1};
            }
        }
    }

    double dist = r * best.dist;
    if (dist <= kOnCurveBand * r) return 0.0;

    bool left;
    if (best.arc >= 0) {
        left = dot(p.u, normals[best.arc]) > 0;
    } else {
        int k = best.vertex;
        const Vec3& v = c.pts[k].u;
        const Vec3& prev = c.pts[(k + n - 1) % n].u;
        const Vec3& next = c.pts[(k + 1) % n].u;
        Vec3 d_in = -1.0 * tangent_toward(v, prev);  // travel direction arriving at v
        Vec3 d_out = tangent_toward(v, next);
        Vec3 d_p = tangent_toward(v, p.u);
        bool convex = cross2_at(v, d_in, d_out) >= 0;
        bool left_in = cross2_at(v, d_in, d_p) > 0;
        bool left_out = cross2_at(v, d_out, d_p) > 0;
        left = convex ? (left_in && left_out) : (left_in || left_out);
    }
    return left ? dist : -dist;
}

double antipodal_gap(const SphericalCycle& c, const std::vector<SpherePoint>& verts) {
    if (verts.empty()) throw std::runtime_error("antipodal gap of empty vertex set");
    bool any_pos = false, any_neg = false;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& v : verts) {
        double d = signed_cycle_distance(antipode(v), c);
        if (d == 0.0) return 0.0;
        (d > 0 ? any_pos : any_neg) = true;
        best = std::min(best, std::abs(d));
    }
    if (any_pos && any_neg) return 0.0;
    return any_pos ? best : -best;
}

double broken_line_length(const std::vector<SpherePoint>& path) {
    double total = 0;
    for (size_t i = 0; i + 1 < path.size(); ++i) {
        if (angle_between(path[i], path[i + 1]) < 1e-15)
            throw std::runtime_error("repeated consecutive point in broken line");
        total += sphere_distance(path[i], path[i + 1]);
    }
    return total;
}

BrokenLineBound broken_line_bound(const std::vector<SpherePoint>& path, double d1) {
    BrokenLineBound b;
    b.length = broken_line_length(path);
    b.bound = d1 * static_cast<double>(path.size() - 1);
    b.holds = b.length < b.bound;
    return b;
}

namespace {

const double kPhi = (1.0 + std::sqrt(5.0)) / 2.0;

std::vector<Vec3> icosa_vertices() {
    return {{-1, kPhi, 0}, {1, kPhi, 0},  {-1, -kPhi, 0}, {1, -kPhi, 0},
            {0, -1, kPhi}, {0, 1, kPhi},  {0, -1, -kPhi}, {0, 1, -kPhi},
            {kPhi, 0, -1}, {kPhi, 0, 1},  {-kPhi, 0, -1}, {-kPhi, 0, 1}};
}

std::vector<std::array<int, 3>> icosa_faces(const std::vector<Vec3>& v) {
    std::vector<std::array<int, 3>> f = {
        {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
        {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
        {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
        {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
    for (auto& t : f) {
        Vec3 c = v[t[0]] + v[t[1]] + v[t[2]];
        if (dot(cross(v[t[1]] - v[t[0]], v[t[2]] - v[t[0]]), c) < 0) std::swap(t[1], t[2]);
    }
    return f;
}

}  // namespace

EmbeddedMesh geodesic_sphere(int frequency, double radius) {
    if (frequency < 1) throw std::runtime_error("geodesic frequency must be >= 1");
    if (radius <= 0) throw std::runtime_error("geodesic radius must be positive");
    const int f = frequency;
    auto base = icosa_vertices();
    auto base_faces = icosa_faces(base);

    // Welding keys: tag 0 = base vertex, 1 = edge point, 2 = face interior.
    std::map<std::array<long, 4>, int> ids;
    std::vector<Vec3> pos;
    auto get_id = [&](std::array<long, 4> key, const Vec3& p) {
        auto it = ids.find(key);
        if (it != ids.end()) return it->second;
        int id = static_cast<int>(pos.size());
        ids.emplace(key, id);
        pos.push_back(normalized(p));
        return id;
    };
    auto edge_key = [&](int a, int b, int step) -> std::array<long, 4> {
        if (a < b) return {1, a, b, step};
        return {1, b, a, f - step};
    };

    std::vector<std::array<int, 3>> faces;
    for (size_t fi = 0; fi < base_faces.size(); ++fi) {
        auto [A, B, C] = base_faces[fi];
        std::vector<std::vector<int>> grid(f + 1);
        for (int i = 0; i <= f; ++i) grid[i].assign(f + 1 - i, -1);
        for (int i = 0; i <= f; ++i) {
            for (int j = 0; j + i <= f; ++j) {
                Vec3 p = (double)(f - i - j) * base[A] + (double)i * base[B] + (double)j * base[C];
                std::array<long, 4> key;
                if (i == 0 && j == 0) key = {0, A, 0, 0};
                else if (i == f && j == 0) key = {0, B, 0, 0};
                else if (i == 0 && j == f) key = {0, C, 0, 0};
                else if (j == 0) key = edge_key(A, B, i);
                else if (i + j == f) key = edge_key(B, C, j);
                else if (i == 0) key = edge_key(A, C, j);
                else key = {2, static_cast<long>(fi), i, j};
                grid[i][j] = get_id(key, p);
            }
        }
        for (int i = 0; i < f; ++i) {
            for (int j = 0; j + i < f; ++j) {
                faces.push_back({grid[i][j], grid[i + 1][j], grid[i][j + 1]});
                if (i + j < f - 1)
                    faces.push_back({grid[i + 1][j], grid[i + 1][j + 1], grid[i][j + 1]});
            }
        }
    }

    EmbeddedMesh em;
    em.mesh = TriMesh::from_faces(static_cast<int>(pos.size()), faces);
    em.pos.reserve(pos.size());
    for (const auto& p : pos) em.pos.push_back({p, radius});
    return em;
}

SphericalCycle embedded_cycle(const EmbeddedMesh& em, const DirectedCycle& c) {
    SphericalCycle sc;
    sc.pts.reserve(c.verts.size());
    for (int v : c.verts) sc.pts.push_back(em.pos[v]);
    return sc;
}

double threshold_radius(double d1, double d2) { return (23.0 * d1 + 0.5 * d2) / kPi; }

double triangle_circumradius(const SpherePoint& a, const SpherePoint& b, const SpherePoint& c) {
    Vec3 n = cross(b.u - a.u, c.u - a.u);
    if (norm(n) < 1e-15) throw std::runtime_error("degenerate triangle");
    Vec3 center = normalized(n);
    double d1 = std::atan2(norm(cross(center, a.u)), dot(center, a.u));
    return a.r * std::min(d1, kPi - d1);
}

PremiseReport verify_graph_premises(const EmbeddedMesh& em, ExecMode mode) {
    PremiseReport rep;
    rep.radius = em.radius();
    rep.threshold = threshold_radius(em.d1, em.d2);
    rep.nominal_threshold = 46.5 / kPi;

    const TriMesh& m = em.mesh;
    int n = m.vertex_count();
    double max_edge = 0;
#ifdef _OPENMP
    bool par = (mode == ExecMode::Parallel);
#pragma omp parallel for schedule(static) reduction(max : max_edge) if (par)
#else
    (void)mode;
#endif
    for (int v = 0; v < n; ++v) {
        double local = 0;
        for (int u : m.neighbors(v))
            if (u > v) local = std::max(local, sphere_distance(em.pos[v], em.pos[u]));
        max_edge = std::max(max_edge, local);
    }
    rep.max_edge_arc = max_edge;

    int fc = m.face_count();
    double max_cr = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(max : max_cr) if (par)
#endif
    for (int t = 0; t < fc; ++t) {
        const auto& tri = m.faces()[t];
        max_cr = std::max(max_cr,
                          triangle_circumradius(em.pos[tri[0]], em.pos[tri[1]], em.pos[tri[2]]));
    }
    rep.max_circumradius = max_cr;
    rep.max_edge_for_d2 = max_edge;

    rep.edge_within_d1 = rep.max_edge_arc < em.d1;
    rep.covering_certified = rep.max_circumradius < 1.0;
    rep.d2_satisfied = rep.max_edge_for_d2 < 2.0 * em.d2;
    rep.radius_at_or_above_threshold = rep.radius >= rep.threshold;
    return rep;
}

}  // namespace sphere7
