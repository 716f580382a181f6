#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "copos/copositivity.hpp"
#include "copos/error.hpp"
#include "copos/linalg.hpp"
#include "copos/perfection.hpp"
#include "copos/polyhedra.hpp"
#include "copos/symmat.hpp"

namespace copos {

struct WalkStep {
    enum class Kind {
        Neighbor,      // P + lambda R is a contiguous perfect copositive matrix
        PolyhedronRay, // R is copositive: minC(P + mu R) = 1 for all mu >= 0
        Undecided,     // copositivity could not be decided along the ray
    };
    Kind kind = Kind::Undecided;
    SymMat direction;         // R
    SymMat matrix;            // Neighbor: P + lambda R, minC 1
    Rat lambda;               // Neighbor
    std::vector<VecZ> new_vectors; // Neighbor: MinC(Q) \ MinC(P)
    std::optional<PerfectCertificate> certificate; // Neighbor
    std::string diagnostic;   // Undecided
};

inline std::string to_string(WalkStep::Kind k) {
    switch (k) {
    case WalkStep::Kind::Neighbor:
        return "neighbor";
    case WalkStep::Kind::PolyhedronRay:
        return "ray";
    case WalkStep::Kind::Undecided:
        return "undecided";
    }
    return "?";
}

struct WalkOptions {
    int depth_limit = default_depth_limit();
    int max_halvings = 64;
    int max_doublings = 256;
    int max_iterations = 1024;
};

namespace detail {

// Largest 1-norm radius whose enumeration stays around a few million nodes.
inline Int walk_radius(std::size_t n) {
    switch (n) {
    case 1:
    case 2:
        return 4000;
    case 3:
        return 300;
    case 4:
        return 90;
    case 5:
        return 48;
    default:
        return 32;
    }
}

} // namespace detail

// Next vertex of the copositive Ryshkov polyhedron from the vertex P (minC 1)
// along the dual-Voronoi direction R. lambda starts at 1 and doubles while
// P + lambda R keeps minimum 1 without new minimal vectors; once some vector
// drops below 1, lambda is pulled back exactly to the smallest crossing point
// (1 - P[v]) / R[v] among the current minimal vectors, which decreases
// monotonically to the first crossing. Leaving the interior of COP^n, or an
// undecided copositivity test, halves lambda towards the last good value.
inline WalkStep contiguous_perfect(const PerfectCertificate &p, const SymMat &r,
                                   const WalkOptions &opt = {}) {
    if (p.min_value != 1)
        throw PreconditionError("contiguous_perfect: P must have copositive minimum 1");
    p.matrix.check_same(r);
    if (r.is_zero())
        throw PreconditionError("contiguous_perfect: direction is zero");
    std::set<VecZ> old_min(p.min_vectors.begin(), p.min_vectors.end());
    for (const auto &v : p.min_vectors)
        if (quad_form(r, v) < 0)
            throw PreconditionError("contiguous_perfect: direction is not in the dual Voronoi cone");

    WalkStep step;
    step.direction = r;
    CopVerdict rv = test_copositivity(r, opt.depth_limit);
    if (rv.kind == CopVerdict::Kind::Undecided)
        throw UndecidedError("walk undecided: copositivity of the direction undecided");
    if (rv.copositive()) {
        step.kind = WalkStep::Kind::PolyhedronRay;
        return step;
    }

    const Int radius = detail::walk_radius(p.matrix.dim());
    Rat lo = 0;
    std::optional<Rat> hi;
    Rat lambda = 1;
    int halvings = 0, doublings = 0;
    std::optional<Rat> last_undecided;
    auto shrink_towards_lo = [&] {
        hi = lambda;
        if (++halvings > opt.max_halvings)
            throw UndecidedError("walk undecided: no strictly copositive point found below lambda=" +
                                 to_string(lambda) +
                                 (last_undecided ? ", copositivity undecided at lambda=" +
                                                       to_string(*last_undecided)
                                                 : std::string()));
        lambda = (lo + *hi) / 2;
    };
    for (int iter = 0; iter < opt.max_iterations; ++iter) {
        SymMat q = p.matrix + r * lambda;
        CopVerdict qv = test_copositivity(q, opt.depth_limit);
        if (!qv.strictly_copositive()) {
            // outside, on, or too close to the boundary of COP^n: the
            // neighbor (strictly copositive) lies at a smaller lambda
            if (qv.kind == CopVerdict::Kind::Undecided)
                last_undecided = lambda;
            shrink_towards_lo();
            continue;
        }
        MinResult m;
        try {
            m = copositive_min(q, qv, radius);
        } catch (const SearchRadiusError &) {
            // too close to the boundary of COP^n for a cheap enumeration
            shrink_towards_lo();
            continue;
        }
        if (m.min_value < 1) {
            std::optional<Rat> pull;
            for (const auto &v : m.vectors) {
                Rat rv_v = quad_form(r, v);
                if (rv_v >= 0)
                    throw InternalError("vector below minimum 1 with R[v] >= 0");
                Rat cross = (1 - quad_form(p.matrix, v)) / rv_v;
                if (!pull || cross < *pull)
                    pull = cross;
            }
            if (*pull <= lo || *pull >= lambda)
                throw InternalError("pullback left the search bracket");
            lambda = *pull;
            continue;
        }
        std::vector<VecZ> fresh;
        if (m.min_value == 1)
            for (const auto &v : m.vectors)
                if (!old_min.count(v))
                    fresh.push_back(v);
        if (fresh.empty()) {
            lo = lambda;
            if (hi) {
                if (++halvings > opt.max_halvings)
                    throw UndecidedError("walk undecided: bracket did not close near lambda=" +
                                         to_string(lambda));
                lambda = (lo + *hi) / 2;
            } else {
                if (++doublings > opt.max_doublings)
                    throw UndecidedError("walk undecided: lambda grew past " + to_string(lambda));
                lambda *= 2;
            }
            continue;
        }
        const std::size_t rk = span_rank(m.vectors);
        if (rk != sym_dim(q.dim()))
            throw PreconditionError("contiguous_perfect: reached a face of dimension > 0; direction is "
                                    "not an extreme ray of the dual Voronoi cone");
        step.kind = WalkStep::Kind::Neighbor;
        step.matrix = q;
        step.lambda = lambda;
        step.new_vectors = std::move(fresh);
        step.certificate = PerfectCertificate{q, m.min_value, m.vectors, rk};
        return step;
    }
    throw UndecidedError("walk undecided: iteration limit reached at lambda=" + to_string(lambda));
}

// Contiguous steps along every extreme ray of the dual Voronoi cone of P, in
// the canonical ray order. Undecided rays are reported, not thrown.
inline std::vector<WalkStep> neighbors_all(const PerfectCertificate &p, const WalkOptions &opt = {}) {
    ConeVRep dual = extreme_rays(ConeHRep::from_vectors(p.min_vectors), p.matrix.dim());
    if (!dual.lineality.empty())
        throw PreconditionError("neighbors_all: minimal vectors do not span S^n");
    std::vector<WalkStep> out;
    out.reserve(dual.rays.size());
    for (const auto &r : dual.rays) {
        try {
            out.push_back(contiguous_perfect(p, r, opt));
        } catch (const UndecidedError &e) {
            WalkStep s;
            s.kind = WalkStep::Kind::Undecided;
            s.direction = r;
            s.diagnostic = e.what();
            out.push_back(std::move(s));
        }
    }
    return out;
}

// Lexicographically smallest Pi^T Q Pi over all permutation matrices, with
// the permutation that produces it (perm[i] = source index of row i).
inline std::pair<SymMat, std::vector<std::size_t>> perm_canonical_with_perm(const SymMat &q) {
    std::vector<std::size_t> perm(q.dim());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    SymMat best = q;
    std::vector<std::size_t> best_perm = perm;
    while (std::next_permutation(perm.begin(), perm.end())) {
        SymMat c = permute(q, perm);
        if (c.upper() < best.upper()) {
            best = std::move(c);
            best_perm = perm;
        }
    }
    return {std::move(best), std::move(best_perm)};
}

inline SymMat perm_canonical(const SymMat &q) { return perm_canonical_with_perm(q).first; }

struct GraphEdge {
    std::string kind;   // "neighbor", "ray", "frontier-undecided"
    std::string target; // canonical key; own key for ray/undecided self-loops
    SymMat direction;

    friend bool operator<(const GraphEdge &a, const GraphEdge &b) {
        if (a.kind != b.kind)
            return a.kind < b.kind;
        if (a.target != b.target)
            return a.target < b.target;
        return a.direction < b.direction;
    }
};

struct GraphNode {
    SymMat canonical;
    std::string key;
    std::size_t representatives = 0; // distinct matrices found in this class
    Inertia inertia;
    std::vector<GraphEdge> edges; // one per dual-Voronoi extreme ray, sorted
};

struct NeighborGraph {
    std::vector<GraphNode> nodes; // expansion order
    std::set<std::string> frontier; // discovered but not expanded

    const GraphNode *find(const std::string &key) const {
        for (const auto &n : nodes)
            if (n.key == key)
                return &n;
        return nullptr;
    }
};

// Breadth-first traversal of the neighborhood graph modulo coordinate
// permutations. Each level is expanded in canonical-key order and nodes are
// always expanded from their canonical matrix, so the result depends only on
// the class of the start matrix.
inline NeighborGraph traverse(const SymMat &start, std::size_t node_budget,
                              const WalkOptions &opt = {}) {
    NeighborGraph g;
    if (node_budget == 0)
        return g;
    PerfectCertificate cert = require_perfect(start, opt.depth_limit);
    if (cert.min_value != 1)
        throw PreconditionError("traverse: start matrix must have copositive minimum 1");

    std::map<std::string, std::set<std::string>> raw_members;
    std::set<std::string> seen;
    SymMat c0 = perm_canonical(start);
    seen.insert(c0.key());
    raw_members[c0.key()].insert(start.key());
    std::map<std::string, SymMat> level{{c0.key(), c0}};

    while (!level.empty() && g.nodes.size() < node_budget) {
        std::map<std::string, SymMat> next;
        for (auto &[key, mat] : level) {
            if (g.nodes.size() >= node_budget) {
                g.frontier.insert(key);
                continue;
            }
            GraphNode node;
            node.canonical = mat;
            node.key = key;
            node.inertia = inertia(mat);
            PerfectCertificate pc = require_perfect(mat, opt.depth_limit);
            for (auto &s : neighbors_all(pc, opt)) {
                GraphEdge e;
                e.direction = s.direction;
                if (s.kind == WalkStep::Kind::Neighbor) {
                    SymMat c = perm_canonical(s.matrix);
                    e.kind = "neighbor";
                    e.target = c.key();
                    raw_members[e.target].insert(s.matrix.key());
                    if (seen.insert(e.target).second)
                        next.emplace(e.target, std::move(c));
                } else if (s.kind == WalkStep::Kind::PolyhedronRay) {
                    e.kind = "ray";
                    e.target = key;
                } else {
                    e.kind = "frontier-undecided";
                    e.target = key;
                }
                node.edges.push_back(std::move(e));
            }
            std::sort(node.edges.begin(), node.edges.end());
            g.nodes.push_back(std::move(node));
        }
        level = std::move(next);
    }
    for (auto &[key, mat] : level)
        g.frontier.insert(key);
    for (auto &n : g.nodes) {
        n.representatives = raw_members[n.key].size();
        g.frontier.erase(n.key);
    }
    return g;
}

// 64-bit FNV-1a; stable across platforms, used for DOT node names.
inline std::uint64_t stable_hash(const std::string &s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string hash_label(const std::string &key) {
    static const char *hex = "0123456789abcdef";
    std::uint64_t h = stable_hash(key);
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i, h >>= 4)
        s[static_cast<std::size_t>(i)] = hex[h & 0xf];
    return s;
}

inline std::string to_dot(const NeighborGraph &g) {
    auto name = [](const std::string &key) { return "\"m" + hash_label(key) + "\""; };
    std::string s = "graph neighbors {\n";
    for (const auto &n : g.nodes)
        s += "  " + name(n.key) + " [label=\"" + hash_label(n.key) + "\\n" +
             to_string(n.inertia) + "\"];\n";
    for (const auto &k : g.frontier)
        s += "  " + name(k) + " [label=\"" + hash_label(k) + "\", style=dashed];\n";
    for (const auto &n : g.nodes)
        for (const auto &e : n.edges) {
            s += "  " + name(n.key) + " -- " + name(e.target);
            if (e.kind != "neighbor")
                s += " [label=\"" + e.kind + "\"]";
            s += ";\n";
        }
    return s + "}\n";
}

} // namespace copos
