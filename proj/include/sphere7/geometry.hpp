#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "sphere7/mesh.hpp"

namespace sphere7 {

struct Vec3 {
    double x = 0, y = 0, z = 0;
};

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }
Vec3 normalized(Vec3 a);

/// Point on a sphere of radius r, stored as a unit direction.
struct SpherePoint {
    Vec3 u;          // |u| = 1 within 1e-12
    double r = 1.0;  // length units
};

SpherePoint make_sphere_point(Vec3 direction, double radius);

double angle_between(const SpherePoint& p, const SpherePoint& q);
/// Great-circle (arc) distance r * angle; throws on radius mismatch.
double sphere_distance(const SpherePoint& p, const SpherePoint& q);
/// Straight-line chord 2 r sin(angle/2).
double chord_distance(const SpherePoint& p, const SpherePoint& q);
SpherePoint antipode(const SpherePoint& p);

/// Closed sequence of points joined by minor-arc geodesics; interior is the
/// side to the left of the traversal.
struct SphericalCycle {
    std::vector<SpherePoint> pts;
    int length() const { return static_cast<int>(pts.size()); }
};

/// Distance from p to the broken line of c, signed positive when p lies in
/// the interior (left side), negative in the exterior, zero on the curve.
double signed_cycle_distance(const SpherePoint& p, const SphericalCycle& c);

/// Signed distance from the antipode set of the given vertices to the cycle
/// (minimum-magnitude signed distance over the set).
double antipodal_gap(const SphericalCycle& c, const std::vector<SpherePoint>& verts);

/// Sum of arc lengths of a broken line (open path).
double broken_line_length(const std::vector<SpherePoint>& path);
/// Lemma bound L(p) < d1 * l(p); returns the two sides for reporting.
struct BrokenLineBound {
    double length = 0;
    double bound = 0;
    bool holds = false;
};
BrokenLineBound broken_line_bound(const std::vector<SpherePoint>& path, double d1);

/// TriMesh with vertex positions on a common sphere plus the premise
/// parameters d1 (max vertex spacing) and d2 (edge-to-endpoint slack).
struct EmbeddedMesh {
    TriMesh mesh;
    std::vector<SpherePoint> pos;
    double d1 = 2.0;
    double d2 = 1.0;
    double radius() const { return pos.empty() ? 0.0 : pos[0].r; }
};

/// Icosahedral geodesic sphere, frequency f (class I subdivision):
/// V = 10 f^2 + 2, twelve vertices of degree 5, the rest degree 6.
EmbeddedMesh geodesic_sphere(int frequency, double radius);

/// Broken line of a mesh cycle under the embedding.
SphericalCycle embedded_cycle(const EmbeddedMesh& em, const DirectedCycle& c);

double threshold_radius(double d1, double d2);

struct PremiseReport {
    double max_edge_arc = 0;        // premise (a): < d1
    double max_circumradius = 0;    // premise (b): < 1 certifies the unit-disk condition
    double max_edge_for_d2 = 0;     // premise (c): geodesic edges need max edge < 2 d2
    bool edge_within_d1 = false;
    bool covering_certified = false;
    bool d2_satisfied = false;
    double radius = 0;
    double threshold = 0;           // (23 d1 + 0.5 d2) / pi
    double nominal_threshold = 0;   // 46.5 / pi at d1=2, d2=1
    double alt_constant = 17.9;     // second constant quoted alongside; surfaced, not reconciled
    bool radius_at_or_above_threshold = false;
};

/// Checks the geometric premises of the graph theorem on an embedded mesh.
/// Failures are report entries, never exceptions.
PremiseReport verify_graph_premises(const EmbeddedMesh& em, ExecMode mode = ExecMode::Parallel);

/// Spherical circumradius (arc units times r) of the triangle through three points.
double triangle_circumradius(const SpherePoint& a, const SpherePoint& b, const SpherePoint& c);

}  // namespace sphere7
