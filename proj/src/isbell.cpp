#include "sphere7/isbell.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace sphere7 {

const std::array<LatticePoint, 6> kLatticeDirections = {
    LatticePoint{1, 0}, LatticePoint{0, 1},  LatticePoint{-1, 1},
    LatticePoint{-1, 0}, LatticePoint{0, -1}, LatticePoint{1, -1}};

bool lattice_adjacent(LatticePoint p, LatticePoint q) {
    LatticePoint d = q - p;
    for (const auto& u : kLatticeDirections)
        if (d == u) return true;
    return false;
}

int direction_index(LatticePoint p, LatticePoint q) {
    LatticePoint d = q - p;
    for (int i = 0; i < 6; ++i)
        if (d == kLatticeDirections[i]) return i;
    throw std::runtime_error("lattice points are not adjacent");
}

int LatticeFragment::index_of(LatticePoint p) const {
    for (std::size_t i = 0; i < points.size(); ++i)
        if (points[i] == p) return static_cast<int>(i);
    return -1;
}

LatticeFragment fragment_from_points(std::vector<LatticePoint> pts) {
    LatticeFragment f;
    f.points = std::move(pts);
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < f.points.size(); ++i)
        for (std::size_t j = i + 1; j < f.points.size(); ++j)
            if (lattice_adjacent(f.points[i], f.points[j]))
                edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
    f.graph = Graph::from_edges(static_cast<int>(f.points.size()), edges);
    f.labels.assign(f.points.size(), "");
    return f;
}

LatticeFragment fragment(FragmentKind kind) {
    std::vector<LatticePoint> pts{{0, 0}};
    std::vector<std::string> labels{"u"};
    for (int j = 0; j < 6; ++j) {
        pts.push_back(kLatticeDirections[j]);
        labels.push_back("u_" + std::to_string(j + 1));
    }
    if (kind == FragmentKind::GhPlus) {
        pts.push_back({2, 0});
        labels.push_back("u_{1,1}");
    }
    if (kind == FragmentKind::GH || kind == FragmentKind::GHMinus) {
        // Outer ring: u_{j,j} at twice direction j, u_{j,j+1} at the sum of
        // directions j and j+1, counterclockwise.
        std::vector<LatticePoint> outer;
        std::vector<std::string> outer_labels;
        for (int j = 0; j < 6; ++j) {
            LatticePoint dj = kLatticeDirections[j];
            LatticePoint dn = kLatticeDirections[(j + 1) % 6];
            outer.push_back({2 * dj.a, 2 * dj.b});
            outer_labels.push_back("u_{" + std::to_string(j + 1) + "," + std::to_string(j + 1) + "}");
            outer.push_back(dj + dn);
            outer_labels.push_back("u_{" + std::to_string(j + 1) + "," +
                                   std::to_string((j + 1) % 6 + 1) + "}");
        }
        if (kind == FragmentKind::GH) {
            for (std::size_t i = 0; i < outer.size(); ++i) {
                pts.push_back(outer[i]);
                labels.push_back(outer_labels[i]);
            }
        } else {
            // GH minus: the seven outer vertices from u_{2,3} counterclockwise
            // through u_{5,6} (figure layout).
            const std::set<std::string> keep = {"u_{2,3}", "u_{3,3}", "u_{3,4}", "u_{4,4}",
                                                "u_{4,5}", "u_{5,5}", "u_{5,6}"};
            for (std::size_t i = 0; i < outer.size(); ++i)
                if (keep.count(outer_labels[i])) {
                    pts.push_back(outer[i]);
                    labels.push_back(outer_labels[i]);
                }
        }
    }
    LatticeFragment f = fragment_from_points(std::move(pts));
    f.kind = kind;
    f.labels = std::move(labels);
    f.center = 0;
    return f;
}

int chirality_multiplier(Chirality c) { return c == Chirality::A ? 3 : 5; }

int isbell_residue(const IsbellParams& p, LatticePoint q) {
    int m = chirality_multiplier(p.chirality);
    long v = static_cast<long>(q.a - p.base.a) + static_cast<long>(m) * (q.b - p.base.b);
    return static_cast<int>(((v % 7) + 7) % 7);
}

int isbell_color(const IsbellParams& p, LatticePoint q) { return p.perm[isbell_residue(p, q)]; }

bool isbell_period_member(const IsbellParams& p, LatticePoint q) {
    return isbell_residue(p, q) == isbell_residue(p, p.base);
}

std::vector<IsbellParams> all_isbell_colorings() {
    std::vector<IsbellParams> out;
    std::array<int, 7> perm = {1, 2, 3, 4, 5, 6, 7};
    std::sort(perm.begin(), perm.end());
    do {
        for (Chirality c : {Chirality::A, Chirality::B}) out.push_back({c, perm, {0, 0}});
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

int DirectionTable::lookup(int ci, int cj) const {
    if (ci < 1 || ci > 7 || cj < 1 || cj > 7 || dir[ci][cj] < 0)
        throw std::runtime_error("color pair not realizable on a lattice edge");
    return dir[ci][cj];
}

DirectionTable direction_table(const IsbellParams& p) {
    DirectionTable t;
    for (auto& row : t.dir) row.fill(-1);
    for (int res = 0; res < 7; ++res) {
        // Any representative q with this residue; take q = (res, 0).
        LatticePoint q{res, 0};
        for (int d = 0; d < 6; ++d) {
            int ci = isbell_color(p, q);
            int cj = isbell_color(p, q + kLatticeDirections[d]);
            int& slot = t.dir[ci][cj];
            if (slot >= 0 && slot != d)
                throw std::runtime_error("direction table is not a function of the color pair");
            slot = d;
        }
    }
    return t;
}

std::array<int, 7> canonical_center_coloring() { return {1, 4, 5, 6, 7, 2, 3}; }

namespace {

// Fixed assignment vector for a fragment from an Isbell coloring.
std::vector<int> restrict_coloring(const IsbellParams& p, const LatticeFragment& f) {
    std::vector<int> colors(f.points.size());
    for (std::size_t i = 0; i < f.points.size(); ++i)
        colors[i] = isbell_color(p, f.points[i]);
    return colors;
}

}  // namespace

UniquenessReport verify_isbell_uniqueness() {
    UniquenessReport rep;
    LatticeFragment gh = fragment(FragmentKind::GH);

    // Pin the central hexagon: u = 1, u_1..u_6 = 4,5,6,7,2,3.
    auto central = canonical_center_coloring();
    SearchOptions opts;
    opts.k = 7;
    opts.mode = SearchMode::Enumerate;
    opts.collect_solutions = true;
    opts.max_collected = 64;
    opts.fixed.assign(gh.points.size(), 0);
    for (int i = 0; i < 7; ++i) opts.fixed[i] = central[i];
    SearchOutcome fixed = search_nice_coloring(gh.graph, opts);
    rep.fixed_center_count = fixed.count;

    auto isbell_set = all_isbell_colorings();
    std::set<std::vector<int>> isbell_restrictions;
    for (const auto& p : isbell_set) isbell_restrictions.insert(restrict_coloring(p, gh));

    rep.completions_are_isbell = true;
    for (const auto& sol : fixed.solutions)
        if (!isbell_restrictions.count(sol)) rep.completions_are_isbell = false;

    SearchOptions all;
    all.k = 7;
    all.mode = SearchMode::Enumerate;
    all.collect_solutions = true;
    all.max_collected = 20000;
    SearchOutcome unrestricted = search_nice_coloring(gh.graph, all);
    rep.unrestricted_count = unrestricted.count;

    rep.all_colorings_are_isbell =
        unrestricted.count == isbell_restrictions.size() &&
        unrestricted.solutions.size() == unrestricted.count;
    if (rep.all_colorings_are_isbell)
        for (const auto& sol : unrestricted.solutions)
            if (!isbell_restrictions.count(sol)) rep.all_colorings_are_isbell = false;

    rep.pass = rep.fixed_center_count == 2 && rep.unrestricted_count == 10080 &&
               rep.completions_are_isbell && rep.all_colorings_are_isbell;
    return rep;
}

ExtensionReport verify_isbell_extension() {
    ExtensionReport rep;
    LatticeFragment gh = fragment(FragmentKind::Gh);
    LatticeFragment ghp = fragment(FragmentKind::GhPlus);
    auto isbell_set = all_isbell_colorings();

    std::map<std::vector<int>, int> gh_classes, ghp_classes;
    for (const auto& p : isbell_set) {
        ++gh_classes[restrict_coloring(p, gh)];
        ++ghp_classes[restrict_coloring(p, ghp)];
    }
    rep.gh_classes = static_cast<int>(gh_classes.size());
    rep.ghplus_classes = static_cast<int>(ghp_classes.size());
    rep.gh_always_two =
        std::all_of(gh_classes.begin(), gh_classes.end(), [](auto& kv) { return kv.second == 2; });
    rep.ghplus_at_most_one = std::all_of(ghp_classes.begin(), ghp_classes.end(),
                                         [](auto& kv) { return kv.second == 1; });
    rep.pass = rep.gh_always_two && rep.ghplus_at_most_one &&
               rep.gh_classes == 5040 && rep.ghplus_classes == 10080;
    return rep;
}

int walk_direction_sum_mod6(const IsbellParams& p, const std::vector<LatticePoint>& walk) {
    if (walk.size() < 3 || !(walk.front() == walk.back()))
        throw std::runtime_error("expected a closed lattice walk");
    DirectionTable t = direction_table(p);
    int n = static_cast<int>(walk.size()) - 1;  // walk[n] == walk[0]
    long total = 0;
    for (int i = 0; i < n; ++i) {
        LatticePoint prev = walk[(i + n - 1) % n];
        LatticePoint cur = walk[i];
        LatticePoint next = walk[i + 1];
        int g_out = t.lookup(isbell_color(p, cur), isbell_color(p, next));
        int g_in = t.lookup(isbell_color(p, prev), isbell_color(p, cur));
        total += g_out - g_in;
    }
    return static_cast<int>(((total % 6) + 6) % 6);
}

}  // namespace sphere7
