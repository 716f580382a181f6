#pragma once

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "copos/error.hpp"
#include "copos/linalg.hpp"
#include "copos/rational.hpp"
#include "copos/symmat.hpp"

namespace copos {

// { B in S^n : <A_i, B> >= 0 for all i }
struct ConeHRep {
    std::vector<SymMat> normals;

    ConeHRep() = default;
    explicit ConeHRep(std::vector<SymMat> ns) {
        for (auto &a : ns) {
            if (!normals.empty())
                normals.front().check_same(a);
            if (!a.is_zero())
                normals.push_back(std::move(a));
        }
    }

    // Dual of the Voronoi cone: normals x x^T.
    static ConeHRep from_vectors(const std::vector<VecZ> &vectors) {
        std::vector<SymMat> ns;
        ns.reserve(vectors.size());
        for (const auto &v : vectors)
            ns.push_back(SymMat::outer(v));
        return ConeHRep(std::move(ns));
    }
};

// cone(rays) + span(lineality). Rays have integer entries with content 1.
struct ConeVRep {
    std::vector<SymMat> rays;
    std::vector<SymMat> lineality;
};

namespace detail {

inline Int dot(const VecZ &a, const VecZ &b) {
    Int acc = 0;
    for (std::size_t k = 0; k < a.size(); ++k)
        if (a[k] != 0 && b[k] != 0)
            acc += a[k] * b[k];
    return acc;
}

inline VecZ integer_scaled(const std::vector<Rat> &v) {
    Int d = 1;
    for (const Rat &x : v)
        d = lcm(d, x.get_den());
    VecZ out(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) {
        Rat s = v[k] * d;
        out[k] = s.get_num();
    }
    make_primitive(out);
    return out;
}

// a*x - b*y, made primitive
inline VecZ combine(const Int &a, const VecZ &x, const Int &b, const VecZ &y) {
    VecZ out(x.size());
    for (std::size_t k = 0; k < x.size(); ++k)
        out[k] = a * x[k] - b * y[k];
    make_primitive(out);
    return out;
}

inline std::size_t rank_of_rows(const std::vector<const VecZ *> &rows) {
    std::vector<std::vector<Rat>> m;
    m.reserve(rows.size());
    for (const VecZ *r : rows)
        m.emplace_back(r->begin(), r->end());
    return rank(std::move(m));
}

struct DdRay {
    VecZ v;
    std::vector<std::size_t> tight; // sorted indices of inserted constraints with a.v == 0
};

inline std::vector<std::size_t> intersect(const std::vector<std::size_t> &a,
                                          const std::vector<std::size_t> &b) {
    std::vector<std::size_t> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

} // namespace detail

// Extreme rays (and a lineality basis) of an H-described cone by incremental
// double description in the binom(n+1,2)-dimensional coordinate space.
// Adjacency of two rays is decided by the exact rank of their common tight
// constraints.
inline ConeVRep extreme_rays(const ConeHRep &cone, std::size_t n) {
    const std::size_t dim = sym_dim(n);
    for (const auto &a : cone.normals)
        if (a.dim() != n)
            throw PreconditionError("extreme_rays: normal has wrong dimension");

    struct Row {
        VecZ f;
        std::size_t zeros;
    };
    std::vector<Row> rows;
    for (const auto &a : cone.normals) {
        VecZ f = detail::integer_scaled(pairing_functional(a));
        std::size_t z = std::count(f.begin(), f.end(), Int(0));
        rows.push_back({std::move(f), z});
    }
    std::stable_sort(rows.begin(), rows.end(), [](const Row &x, const Row &y) {
        if (x.zeros != y.zeros)
            return x.zeros < y.zeros;
        return x.f < y.f;
    });

    std::vector<VecZ> lineality;
    for (std::size_t k = 0; k < dim; ++k) {
        VecZ e(dim);
        e[k] = 1;
        lineality.push_back(std::move(e));
    }
    std::vector<detail::DdRay> rays;

    for (std::size_t t = 0; t < rows.size(); ++t) {
        const VecZ &a = rows[t].f;
        auto pivot = std::find_if(lineality.begin(), lineality.end(),
                                  [&](const VecZ &l) { return detail::dot(a, l) != 0; });
        if (pivot != lineality.end()) {
            VecZ l = *pivot;
            lineality.erase(pivot);
            Int al = detail::dot(a, l);
            if (al < 0) {
                for (Int &x : l)
                    x = -x;
                al = -al;
            }
            for (VecZ &m : lineality)
                m = detail::combine(al, m, detail::dot(a, m), l);
            for (auto &r : rays) {
                r.v = detail::combine(al, r.v, detail::dot(a, r.v), l);
                r.tight.push_back(t);
            }
            std::vector<std::size_t> prior(t);
            for (std::size_t i = 0; i < t; ++i)
                prior[i] = i;
            rays.push_back({std::move(l), std::move(prior)});
            continue;
        }

        std::vector<std::size_t> pos, neg;
        std::vector<detail::DdRay> next;
        std::vector<Int> val(rays.size());
        for (std::size_t i = 0; i < rays.size(); ++i) {
            val[i] = detail::dot(a, rays[i].v);
            if (val[i] > 0)
                pos.push_back(i);
            else if (val[i] < 0)
                neg.push_back(i);
        }
        const std::size_t pointed_dim = dim - lineality.size();
        for (std::size_t p : pos)
            for (std::size_t q : neg) {
                auto common = detail::intersect(rays[p].tight, rays[q].tight);
                if (pointed_dim < 2 || common.size() + 2 < pointed_dim)
                    continue;
                std::vector<const VecZ *> tight_rows;
                tight_rows.reserve(common.size());
                for (std::size_t i : common)
                    tight_rows.push_back(&rows[i].f);
                if (detail::rank_of_rows(tight_rows) != pointed_dim - 2)
                    continue;
                VecZ v = detail::combine(val[p], rays[q].v, val[q], rays[p].v);
                common.push_back(t);
                next.push_back({std::move(v), std::move(common)});
            }
        for (std::size_t i = 0; i < rays.size(); ++i) {
            if (val[i] < 0)
                continue;
            if (val[i] == 0)
                rays[i].tight.push_back(t);
            next.push_back(std::move(rays[i]));
        }
        rays = std::move(next);
    }

    ConeVRep out;
    for (const auto &r : rays) {
        std::vector<Rat> c(r.v.begin(), r.v.end());
        out.rays.push_back(SymMat::from_coords(n, c));
    }
    for (VecZ l : lineality) {
        auto first = std::find_if(l.begin(), l.end(), [](const Int &x) { return x != 0; });
        if (first != l.end() && *first < 0)
            for (Int &x : l)
                x = -x;
        std::vector<Rat> c(l.begin(), l.end());
        out.lineality.push_back(SymMat::from_coords(n, c));
    }
    std::sort(out.rays.begin(), out.rays.end());
    out.rays.erase(std::unique(out.rays.begin(), out.rays.end()), out.rays.end());
    return out;
}

inline ConeVRep extreme_rays(const ConeHRep &cone) {
    if (cone.normals.empty())
        throw PreconditionError("extreme_rays: dimension unknown for an empty normal list");
    return extreme_rays(cone, cone.normals.front().dim());
}

// Either coefficients alpha >= 0 with sum alpha_i G_i = target, or a
// separating W with <W, G_i> >= 0 for all i and <W, target> < 0.
struct LpOutcome {
    bool feasible = false;
    std::vector<Rat> alpha;
    std::optional<SymMat> farkas;
};

// Phase-one simplex on  sum alpha_i coords(G_i) = coords(target),
// alpha >= 0, with Bland's rule. The Farkas functional is read off the
// reduced costs of the artificial columns.
inline LpOutcome lp_nonneg_solve(const std::vector<SymMat> &generators, const SymMat &target) {
    const std::size_t n = target.dim();
    for (const auto &g : generators)
        target.check_same(g);
    const std::size_t rows = sym_dim(n);
    const std::size_t m = generators.size();
    const std::size_t cols = m + rows; // generators then artificials

    std::vector<std::vector<Rat>> gc;
    gc.reserve(m);
    for (const auto &g : generators)
        gc.push_back(g.coords());
    std::vector<Rat> rhs = target.coords();
    std::vector<int> flip(rows, 1);

    std::vector<std::vector<Rat>> tab(rows, std::vector<Rat>(cols + 1));
    for (std::size_t r = 0; r < rows; ++r) {
        if (rhs[r] < 0)
            flip[r] = -1;
        for (std::size_t j = 0; j < m; ++j)
            tab[r][j] = gc[j][r] * flip[r];
        tab[r][m + r] = 1;
        tab[r][cols] = rhs[r] * flip[r];
    }
    std::vector<std::size_t> basis(rows);
    for (std::size_t r = 0; r < rows; ++r)
        basis[r] = m + r;
    std::vector<Rat> cost(cols, 0);
    for (std::size_t j = m; j < cols; ++j)
        cost[j] = 1;

    auto reduced = [&](std::size_t j) {
        Rat d = cost[j];
        for (std::size_t r = 0; r < rows; ++r)
            if (tab[r][j] != 0)
                d -= cost[basis[r]] * tab[r][j];
        return d;
    };

    for (;;) {
        std::size_t enter = cols;
        for (std::size_t j = 0; j < cols; ++j)
            if (reduced(j) < 0) {
                enter = j;
                break;
            }
        if (enter == cols)
            break;
        std::size_t leave = rows;
        Rat best;
        for (std::size_t r = 0; r < rows; ++r) {
            if (tab[r][enter] <= 0)
                continue;
            Rat ratio = tab[r][cols] / tab[r][enter];
            if (leave == rows || ratio < best || (ratio == best && basis[r] < basis[leave])) {
                leave = r;
                best = ratio;
            }
        }
        if (leave == rows)
            throw InternalError("phase-one LP is unbounded");
        const Rat piv = tab[leave][enter];
        for (auto &x : tab[leave])
            x /= piv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == leave || tab[r][enter] == 0)
                continue;
            const Rat f = tab[r][enter];
            for (std::size_t j = 0; j <= cols; ++j)
                if (tab[leave][j] != 0)
                    tab[r][j] -= f * tab[leave][j];
        }
        basis[leave] = enter;
    }

    Rat infeas = 0;
    for (std::size_t r = 0; r < rows; ++r)
        infeas += cost[basis[r]] * tab[r][cols];

    LpOutcome out;
    if (infeas == 0) {
        out.feasible = true;
        out.alpha.assign(m, 0);
        for (std::size_t r = 0; r < rows; ++r)
            if (basis[r] < m)
                out.alpha[basis[r]] = tab[r][cols];
        SymMat check(n);
        for (std::size_t j = 0; j < m; ++j)
            if (out.alpha[j] != 0)
                check += generators[j] * out.alpha[j];
        if (!(check == target))
            throw InternalError("LP solution failed exact substitution");
        return out;
    }

    // y_r = 1 - reduced cost of artificial r; f = -(flip o y) separates.
    std::vector<Rat> f(rows);
    for (std::size_t r = 0; r < rows; ++r)
        f[r] = -(1 - reduced(m + r)) * flip[r];
    SymMat w(n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i)
        w.set(i, i, f[k++]);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            w.set(i, j, f[k++] / 2);
    for (const auto &g : generators)
        if (inner(w, g) < 0)
            throw InternalError("Farkas certificate violates a generator");
    if (inner(w, target) >= 0)
        throw InternalError("Farkas certificate does not separate the target");
    out.farkas = std::move(w);
    return out;
}

} // namespace copos
