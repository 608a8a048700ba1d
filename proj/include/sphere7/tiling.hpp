#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "sphere7/coloring.hpp"
#include "sphere7/geometry.hpp"
#include "sphere7/mesh.hpp"

namespace sphere7 {

struct Vec2 {
    double x = 0, y = 0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::sqrt(dot(a, a)); }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

enum class DomainKind { Plane, Cylinder, FlatTorus };

/// Metric domains for tilings. Plane points are (x, y). Cylinder points are
/// (t, x): t arc position around the circumference (wraps mod 2 pi rho), x
/// the axial coordinate in [0, height]; the metric is the ambient 3-space
/// chord, sqrt(dx^2 + (2 rho sin(dtheta/2))^2) on the lateral surface. Flat
/// torus points are any plane lift; the metric is the quotient metric.
struct MetricDomain {
    DomainKind kind = DomainKind::Plane;
    double radius = 0, height = 0;       // cylinder
    std::array<Vec2, 2> periods{};       // flat torus

    double circumference() const;
    double distance(Vec2 p, Vec2 q) const;
    /// Reduce a point into the fundamental domain (torus / cylinder wrap).
    Vec2 reduce(Vec2 p) const;
};

MetricDomain plane_domain();
MetricDomain cylinder_domain(double radius, double height);
MetricDomain torus_domain(Vec2 period1, Vec2 period2);

enum class TileKind { Polygon, Cap, Segment };

/// Cap tiles are the full end disks of a cylinder; their polygon holds the
/// single point (t = 0, x = end position). Segment tiles are 1-complex edges
/// given by their two endpoints.
struct Tile {
    int color = 0;
    std::vector<Vec2> polygon;
    TileKind kind = TileKind::Polygon;
};

struct TilingDoc {
    MetricDomain domain;
    int k = 7;
    std::vector<Tile> tiles;
};

struct VerifyOptions {
    int boundary_samples_per_tile = 1000;
    bool check_cover = true;     // sampled cover/overlap certificate (closed domains)
    int cover_samples = 4000;
    unsigned seed = 20240817;
    double tol = 1e-9;
    ExecMode mode = ExecMode::Parallel;
};

struct TilingReport {
    bool pass = false;
    double max_diameter = 0;
    int max_diameter_tile = -1;
    double min_same_color = 0;
    int witness_a = -1, witness_b = -1;
    double diameter_margin = 0;    // 1 - (max_diameter + sampling_gap)
    double same_color_margin = 0;  // (min_same_color - sampling_gap) - 1
    double sampling_gap = 0;       // error bar from boundary sampling
    bool overlap_ok = true;
    bool cover_ok = true;
    std::string notes;
};

/// Per-tile diameters and minimum same-color distance under the domain
/// metric; pass iff all diameters < 1 and all same-color distances > 1 with
/// the sampling gap charged against the margins.
TilingReport verify_nice_tiling(const TilingDoc& doc, const VerifyOptions& opts = {});

struct AdjacencyResult {
    Graph graph;
    bool fully_triangulated = false;
    std::optional<TriMesh> mesh;  // present when fully triangulated and closed
    std::vector<int> colors;      // tile colors aligned with graph vertices
    std::string notes;
};

/// Tile adjacency from exactly shared boundaries. Point contacts count as
/// adjacent only behind the flag. When every dual face is a triangle the
/// result carries the TriMesh.
AdjacencyResult adjacency_graph(const TilingDoc& doc, bool point_contact = false,
                                double snap_tol = 1e-6);

/// The banded 7-coloring of a thin cylinder: hexagonal Isbell tiles wrapped
/// by the minimal same-color lattice vector, single-disk caps at both ends.
/// pitch is the hexagon lattice spacing (valid range about (0.78, 0.86)).
TilingDoc cylinder7_construction(double pitch = 0.82, int axial_periods = 4);

/// Finite patch of the planar Isbell hexagon tiling.
TilingDoc plane_isbell_patch(int rows = 8, int cols = 8, double pitch = 0.82);

/// The Isbell tiling wrapped over a flat torus whose periods are same-color
/// lattice vectors (scale multiplies the index-7 sublattice basis).
TilingDoc torus_isbell_construction(int scale = 2, double pitch = 0.82);

/// Two rails of colored segments (period offset between the rails) plus
/// genus+1 black crossbars; the 1-complex skeleton of the genus-k surface.
TilingDoc genus_construction(int genus, double rail_distance = 0.9,
                             double segment_length = 0.9, double period_offset = 1.35);

/// The seven points of the Moser spindle (11 unit distances).
std::vector<Vec2> moser_spindle_points();

/// Graph on points with edges where the distance is 1 within tol.
Graph unit_distance_graph(const std::vector<Vec2>& pts, double tol = 1e-9);

struct EulerReport {
    int chi = 0;
    int vertices = 0;
    long edges = 0;
    double average_degree = 0;
    int max_degree = 0;
    bool obstructed = false;  // chi < 0 forces a vertex of degree >= 7
};

EulerReport euler_obstruction(const TriMesh& m);

}  // namespace sphere7
