#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "copos/error.hpp"
#include "copos/linalg.hpp"
#include "copos/rational.hpp"
#include "copos/symmat.hpp"

namespace copos {

inline constexpr int kDefaultDepthLimit = 64;

// Depth limit used when the caller does not pass one: COPOS_DEPTH_LIMIT if
// set to a nonnegative integer, else 64.
inline int default_depth_limit() {
    if (const char *env = std::getenv("COPOS_DEPTH_LIMIT")) {
        char *end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 0 && v < 100000)
            return static_cast<int>(v);
    }
    return kDefaultDepthLimit;
}

struct CopVerdict {
    enum class Kind {
        StrictlyCopositive, // every cell certified with a positive bound
        Copositive,         // certified B[x] >= 0, strictness not shown
        NotCopositive,      // witness x >= 0 with B[x] < 0
        Undecided,          // depth limit reached on an uncertified cell
    };

    Kind kind = Kind::Undecided;
    Rat mu_lb;     // StrictlyCopositive: B[x] >= mu_lb on the standard simplex
    Rat upper_bound; // StrictlyCopositive: value of B at some simplex point
    Rat best_value;  // StrictlyCopositive: smallest B[w] over integer cell vertices w
    VecZ witness;  // NotCopositive
    int depth = 0; // deepest subdivision level reached
    std::size_t cells = 0;

    bool strictly_copositive() const { return kind == Kind::StrictlyCopositive; }
    bool copositive() const {
        return kind == Kind::StrictlyCopositive || kind == Kind::Copositive;
    }
};

inline std::string to_string(CopVerdict::Kind k) {
    switch (k) {
    case CopVerdict::Kind::StrictlyCopositive:
        return "strictly-copositive";
    case CopVerdict::Kind::Copositive:
        return "copositive";
    case CopVerdict::Kind::NotCopositive:
        return "not-copositive";
    case CopVerdict::Kind::Undecided:
        return "undecided";
    }
    return "?";
}

// The enumeration radius sqrt(c / mu_lb) exceeds the caller's limit.
struct SearchRadiusError : PreconditionError {
    using PreconditionError::PreconditionError;
};

// Raised by operations that need B in the interior of COP^n.
struct NotStrictlyCopositiveError : PreconditionError {
    CopVerdict verdict;
    NotStrictlyCopositiveError(const std::string &what, CopVerdict v)
        : PreconditionError(what), verdict(std::move(v)) {}
};

struct MinResult {
    Rat min_value;
    std::vector<VecZ> vectors; // sorted lexicographically
};

namespace detail {

inline std::vector<Int> integer_entries(const SymMat &b, const Int &den) {
    std::vector<Int> out(b.dim() * b.dim());
    for (std::size_t i = 0; i < b.dim(); ++i)
        for (std::size_t j = 0; j < b.dim(); ++j) {
            Rat x = b(i, j) * den;
            out[i * b.dim() + j] = x.get_num();
        }
    return out;
}

// A simplex cell of the standard simplex. Vertices are stored as primitive
// nonnegative integer vectors w_i (the simplex point is w_i / s_i with
// s_i = |w_i|_1); gram(i, j) = w_i^T B w_j for the integer-scaled B.
struct SimplexCell {
    std::size_t n = 0;
    std::vector<VecZ> w;
    std::vector<Int> s;
    std::vector<Int> gram;
    int depth = 0;

    Int &g(std::size_t i, std::size_t j) { return gram[i * n + j]; }
    const Int &g(std::size_t i, std::size_t j) const { return gram[i * n + j]; }
};

// Squared Euclidean length of the edge (a, b) between normalized vertices.
inline Rat edge_length2(const SimplexCell &c, std::size_t a, std::size_t b) {
    Int num = 0;
    for (std::size_t k = 0; k < c.n; ++k) {
        Int d = c.s[b] * c.w[a][k] - c.s[a] * c.w[b][k];
        num += d * d;
    }
    Int den = c.s[a] * c.s[b];
    return make_rat(num, den * den);
}

inline std::pair<SimplexCell, SimplexCell> bisect_longest_edge(const SimplexCell &c) {
    std::size_t ea = 0, eb = 1;
    Rat best = -1;
    for (std::size_t a = 0; a < c.n; ++a)
        for (std::size_t b = a + 1; b < c.n; ++b) {
            Rat len = edge_length2(c, a, b);
            if (len > best) {
                best = len;
                ea = a;
                eb = b;
            }
        }
    const Int &sa = c.s[ea];
    const Int &sb = c.s[eb];
    VecZ m(c.n);
    for (std::size_t k = 0; k < c.n; ++k)
        m[k] = sb * c.w[ea][k] + sa * c.w[eb][k];
    Int g = 0;
    for (const Int &x : m)
        g = gcd(g, x);
    for (Int &x : m)
        x /= g;
    Int sm = 0;
    for (const Int &x : m)
        sm += x;

    std::vector<Int> gm(c.n);
    for (std::size_t k = 0; k < c.n; ++k)
        gm[k] = (sb * c.g(ea, k) + sa * c.g(eb, k)) / g;
    Int gmm = (sb * sb * c.g(ea, ea) + 2 * sa * sb * c.g(ea, eb) + sa * sa * c.g(eb, eb)) / (g * g);

    auto child = [&](std::size_t replaced) {
        SimplexCell d = c;
        d.depth = c.depth + 1;
        d.w[replaced] = m;
        d.s[replaced] = sm;
        for (std::size_t k = 0; k < c.n; ++k) {
            d.g(replaced, k) = gm[k];
            d.g(k, replaced) = gm[k];
        }
        d.g(replaced, replaced) = gmm;
        return d;
    };
    return {child(eb), child(ea)};
}

} // namespace detail

namespace detail {

// First pair i < j of identical coordinates: rows i and j of B coincide
// (so b_ii = b_ij = b_jj).
inline std::optional<std::pair<std::size_t, std::size_t>> duplicate_coordinates(const SymMat &b) {
    const std::size_t n = b.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            bool same = true;
            for (std::size_t k = 0; k < n && same; ++k)
                same = b(i, k) == b(j, k);
            if (same)
                return std::pair{i, j};
        }
    return std::nullopt;
}

inline SymMat drop_coordinate(const SymMat &b, std::size_t j) {
    SymMat out(b.dim() - 1);
    auto src = [j](std::size_t i) { return i < j ? i : i + 1; };
    for (std::size_t r = 0; r < out.dim(); ++r)
        for (std::size_t c = r; c < out.dim(); ++c)
            out.set(r, c, b(src(r), src(c)));
    return out;
}

} // namespace detail

// Simplex-partition branch and bound over the standard simplex. A cell with
// vertices v_i satisfies B[x] >= min_{i<=j} v_i^T B v_j, which certifies it
// when positive (strict) or nonnegative (copositive only).
//
// Identical coordinates i, j are merged first: B[x] = B'[x'] with
// x'_i = x_i + x_j maps the simplex onto the simplex, so bounds and
// witnesses carry over unchanged.
inline CopVerdict test_copositivity(const SymMat &b, int depth_limit = default_depth_limit(),
                                    std::size_t cell_budget = 4'000'000, int tighten_ratio = 4) {
    if (depth_limit < 0)
        throw PreconditionError("depth_limit must be >= 0");
    if (auto dup = detail::duplicate_coordinates(b)) {
        CopVerdict v = test_copositivity(detail::drop_coordinate(b, dup->second), depth_limit,
                                         cell_budget, tighten_ratio);
        if (v.kind == CopVerdict::Kind::NotCopositive)
            v.witness.insert(v.witness.begin() + static_cast<std::ptrdiff_t>(dup->second), Int(0));
        return v;
    }
    const std::size_t n = b.dim();
    const Int den = common_denominator(b);
    const auto bi = detail::integer_entries(b, den);

    detail::SimplexCell root;
    root.n = n;
    root.w.assign(n, VecZ(n));
    root.s.assign(n, 1);
    root.gram = bi;
    for (std::size_t i = 0; i < n; ++i)
        root.w[i][i] = 1;

    CopVerdict out;
    bool nonstrict = false;
    bool undecided = false;
    std::vector<std::pair<Rat, detail::SimplexCell>> certified;
    // smallest value of B seen at a simplex vertex: an upper bound on the
    // simplex minimum
    std::optional<Rat> upper;
    std::optional<Rat> best;
    auto note_vertices = [&](const detail::SimplexCell &cell) {
        for (std::size_t i = 0; i < n; ++i) {
            Rat v = make_rat(cell.g(i, i), cell.s[i] * cell.s[i] * den);
            if (!upper || v < *upper)
                upper = v;
            Rat w = make_rat(cell.g(i, i), den);
            if (!best || w < *best)
                best = w;
        }
    };
    auto cell_bound = [&](const detail::SimplexCell &cell) {
        Rat lb;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                Rat v = make_rat(cell.g(i, j), cell.s[i] * cell.s[j] * den);
                if ((i == 0 && j == 0) || v < lb)
                    lb = v;
            }
        return lb;
    };

    std::vector<detail::SimplexCell> stack{std::move(root)};
    while (!stack.empty()) {
        detail::SimplexCell cell = std::move(stack.back());
        stack.pop_back();
        ++out.cells;
        out.depth = std::max(out.depth, cell.depth);

        bool any_neg = false, zero_vertex = false, all_pos = true;
        for (std::size_t i = 0; i < n; ++i) {
            const int sd = sgn(cell.g(i, i));
            if (sd < 0) {
                out.kind = CopVerdict::Kind::NotCopositive;
                out.witness = cell.w[i];
                make_primitive(out.witness);
                if (quad_form(b, out.witness) >= 0)
                    throw InternalError("copositivity witness failed exact check");
                return out;
            }
            if (sd == 0)
                zero_vertex = true;
            for (std::size_t j = i; j < n; ++j) {
                const int sg = sgn(cell.g(i, j));
                any_neg |= sg < 0;
                all_pos &= sg > 0;
            }
        }
        if (all_pos) {
            note_vertices(cell);
            Rat lb = cell_bound(cell);
            certified.emplace_back(std::move(lb), std::move(cell));
            continue;
        }
        if (!any_neg && zero_vertex) {
            // B vanishes at a vertex; the cell can never be certified strict.
            nonstrict = true;
            continue;
        }
        if (cell.depth >= depth_limit || n == 1 || out.cells >= cell_budget) {
            if (any_neg)
                undecided = true;
            else
                nonstrict = true;
            continue;
        }
        auto [left, right] = detail::bisect_longest_edge(cell);
        stack.push_back(std::move(right));
        stack.push_back(std::move(left));
    }
    if (undecided) {
        out.kind = CopVerdict::Kind::Undecided;
        return out;
    }
    if (nonstrict) {
        out.kind = CopVerdict::Kind::Copositive;
        return out;
    }

    // Tightening: subcells of a certified cell stay certified, and their
    // bounds approach the true minimum. Refine cells whose bound is far below
    // the best vertex value so that enumeration radii stay small.
    const std::size_t tighten_budget = out.cells + 200'000;
    bool changed = true;
    while (changed && out.cells < tighten_budget) {
        changed = false;
        const Rat target = *upper / tighten_ratio;
        std::vector<std::pair<Rat, detail::SimplexCell>> next;
        next.reserve(certified.size());
        for (auto &[lb, cell] : certified) {
            if (lb >= target || n == 1 || out.cells >= tighten_budget) {
                next.emplace_back(std::move(lb), std::move(cell));
                continue;
            }
            auto [left, right] = detail::bisect_longest_edge(cell);
            for (auto *child : {&left, &right}) {
                ++out.cells;
                out.depth = std::max(out.depth, child->depth);
                note_vertices(*child);
                Rat clb = cell_bound(*child);
                next.emplace_back(std::move(clb), std::move(*child));
            }
            changed = true;
        }
        certified = std::move(next);
    }

    out.kind = CopVerdict::Kind::StrictlyCopositive;
    out.mu_lb = certified.front().first;
    for (const auto &[lb, cell] : certified)
        if (lb < out.mu_lb)
            out.mu_lb = lb;
    out.upper_bound = *upper;
    out.best_value = *best;
    return out;
}

namespace detail {

// Depth-first enumeration of nonzero v in Z^n_{>=0} with |v|_1 <= norm_bound
// and B[v] <= threshold (both in the integer-scaled form). The last
// coordinate varies innermost. With shrink, the threshold follows the best
// value seen and the 1-norm bound is tightened accordingly.
struct Enumerator {
    std::size_t n;
    std::vector<Int> bi; // row-major integer-scaled entries
    Int den;
    Rat mu_lb;
    Int threshold; // scaled
    Int norm_bound;
    bool shrink = false;

    std::vector<long> x;
    std::vector<std::pair<Int, VecZ>> found;

    void refresh_bound() {
        Rat limit = make_rat(threshold, den) / mu_lb;
        norm_bound = floor_sqrt(limit);
    }

    void record(const Int &val) {
        if (shrink && val < threshold) {
            threshold = val;
            found.clear();
            refresh_bound();
        }
        VecZ v(n);
        for (std::size_t i = 0; i < n; ++i)
            v[i] = x[i];
        found.emplace_back(val, std::move(v));
    }

    // lin[j] = 2 * sum_{i<k} bi(i,j) x_i for j >= k
    void dfs(std::size_t k, long used, const Int &val, std::vector<Int> &lin, bool nonzero) {
        if (k == n) {
            if (nonzero && val <= threshold)
                record(val);
            return;
        }
        const Int &diag = bi[k * n + k];
        for (long t = 0;; ++t) {
            if (Int(used + t) > norm_bound)
                break;
            x[k] = t;
            Int v = val + t * lin[k] + t * t * diag;
            if (k + 1 == n) {
                if ((nonzero || t > 0) && v <= threshold)
                    record(v);
                continue;
            }
            std::vector<Int> next = lin;
            if (t != 0)
                for (std::size_t j = k + 1; j < n; ++j)
                    next[j] += 2 * t * bi[k * n + j];
            dfs(k + 1, used + t, v, next, nonzero || t > 0);
        }
        x[k] = 0;
    }

    void run() {
        x.assign(n, 0);
        std::vector<Int> lin(n);
        dfs(0, 0, Int(0), lin, false);
    }
};

inline Enumerator make_enumerator(const SymMat &b, const Rat &c, const Rat &mu_lb,
                                  const Int &max_radius = Int(1) << 20) {
    if (mu_lb <= 0)
        throw PreconditionError("enumerate_below: mu_lb must be positive");
    if (c <= 0)
        throw PreconditionError("enumerate_below: bound c must be positive");
    Enumerator e;
    e.n = b.dim();
    e.den = common_denominator(b);
    e.bi = integer_entries(b, e.den);
    e.mu_lb = mu_lb;
    Rat scaled = c * e.den;
    // B[v] <= c  <=>  den*B[v] <= floor(den*c) since den*B[v] is an integer
    e.threshold = scaled.get_num() / scaled.get_den();
    if (scaled < 0)
        throw PreconditionError("enumerate_below: bound c must be positive");
    e.refresh_bound();
    if (e.norm_bound > max_radius)
        throw SearchRadiusError("search radius " + e.norm_bound.get_str() +
                                " exceeds limit " + max_radius.get_str());
    return e;
}

} // namespace detail

// All v in Z^n_{>=0} \ {0} with B[v] <= c, given a valid simplex lower bound
// mu_lb > 0 (B[v] >= mu_lb |v|_1^2). Sorted lexicographically.
inline std::vector<VecZ> enumerate_below(const SymMat &b, const Rat &c, const Rat &mu_lb) {
    auto e = detail::make_enumerator(b, c, mu_lb);
    e.run();
    std::vector<VecZ> out;
    out.reserve(e.found.size());
    for (auto &f : e.found)
        out.push_back(std::move(f.second));
    std::sort(out.begin(), out.end());
    return out;
}

// Copositive minimum and minimal vectors of a strictly copositive matrix.
inline MinResult copositive_min(const SymMat &b, const CopVerdict &verdict,
                                const Int &max_radius = Int(1) << 20) {
    if (verdict.kind == CopVerdict::Kind::Undecided)
        throw UndecidedError("copositivity undecided at depth " + std::to_string(verdict.depth));
    if (verdict.kind != CopVerdict::Kind::StrictlyCopositive)
        throw NotStrictlyCopositiveError("matrix is not strictly copositive (" +
                                             to_string(verdict.kind) + ")",
                                         verdict);
    // any B[w] at a nonzero integer vector bounds minC from above
    Rat c0 = b(0, 0);
    for (std::size_t i = 1; i < b.dim(); ++i)
        c0 = std::min(c0, b(i, i));
    if (verdict.best_value > 0)
        c0 = std::min(c0, verdict.best_value);
    auto e = detail::make_enumerator(b, c0, verdict.mu_lb, max_radius);
    e.shrink = true;
    e.run();
    MinResult out;
    if (e.found.empty())
        throw InternalError("copositive_min: no vector attains the diagonal bound");
    out.min_value = make_rat(e.threshold, e.den);
    for (auto &f : e.found)
        if (f.first == e.threshold)
            out.vectors.push_back(std::move(f.second));
    std::sort(out.vectors.begin(), out.vectors.end());
    return out;
}

inline MinResult copositive_min(const SymMat &b, int depth_limit = default_depth_limit()) {
    return copositive_min(b, test_copositivity(b, depth_limit));
}

struct ClassicalMin {
    Rat min_value;
    std::vector<VecZ> vectors; // one per +-pair, first nonzero entry positive
};

// Arithmetical minimum over Z^n \ {0} of a positive definite matrix, as the
// union over sign patterns D (d_1 = +1) of D * MinC(DQD).
inline ClassicalMin classical_min(const SymMat &q, int depth_limit = default_depth_limit()) {
    if (!inertia(q).positive_definite())
        throw PreconditionError("classical_min: matrix is not positive definite");
    const std::size_t n = q.dim();
    std::optional<Rat> best;
    std::set<VecZ> vecs;
    for (std::size_t mask = 0; mask < (std::size_t{1} << (n - 1)); ++mask) {
        std::vector<int> d(n, 1);
        for (std::size_t i = 1; i < n; ++i)
            if (mask >> (i - 1) & 1)
                d[i] = -1;
        SymMat dqd(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j)
                dqd.set(i, j, q(i, j) * (d[i] * d[j]));
        MinResult r = copositive_min(dqd, depth_limit);
        if (best && r.min_value > *best)
            continue;
        if (!best || r.min_value < *best) {
            best = r.min_value;
            vecs.clear();
        }
        for (VecZ v : r.vectors) {
            for (std::size_t i = 0; i < n; ++i)
                v[i] *= d[i];
            auto first = std::find_if(v.begin(), v.end(), [](const Int &x) { return x != 0; });
            if (*first < 0)
                for (Int &x : v)
                    x = -x;
            vecs.insert(std::move(v));
        }
    }
    return {*best, std::vector<VecZ>(vecs.begin(), vecs.end())};
}

} // namespace copos
