#include <gtest/gtest.h>

#include "copos/constructions.hpp"
#include "copos/polyhedra.hpp"
#include "oracles.hpp"

using namespace copos;

namespace {

bool proportional(const SymMat &a, const SymMat &b) {
    std::vector<Rat> x = a.coords(), y = b.coords();
    std::optional<Rat> t;
    for (std::size_t k = 0; k < x.size(); ++k) {
        if ((x[k] == 0) != (y[k] == 0))
            return false;
        if (x[k] == 0)
            continue;
        Rat r = y[k] / x[k];
        if (t && *t != r)
            return false;
        t = r;
    }
    return t && *t > 0;
}

// Extremality: rays satisfy every inequality and have D-1 independent tight ones.
void check_rays(const ConeHRep &h, const ConeVRep &v) {
    for (const auto &r : v.rays) {
        std::vector<std::vector<Rat>> tight;
        for (const auto &a : h.normals) {
            Rat s = inner(a, r);
            EXPECT_GE(s, 0);
            if (s == 0)
                tight.push_back(pairing_functional(a));
        }
        EXPECT_EQ(oracle::rank(tight), sym_dim(r.dim()) - 1) << to_string(r);
        Int g = 0;
        for (const Rat &x : r.upper()) {
            EXPECT_EQ(x.get_den(), 1);
            g = gcd(g, x.get_num());
        }
        EXPECT_EQ(g, 1);
    }
}

} // namespace

TEST(ExtremeRays, DualVoronoiOfHalfQA2) {
    ConeHRep h = ConeHRep::from_vectors({vecz({1, 0}), vecz({0, 1}), vecz({1, 1})});
    ConeVRep v = extreme_rays(h);
    EXPECT_TRUE(v.lineality.empty());
    ASSERT_EQ(v.rays.size(), 3u);
    check_rays(h, v);
    int e12 = 0;
    for (const auto &r : v.rays)
        e12 += proportional(SymMat::unit_pair(2, 0, 1), r);
    EXPECT_EQ(e12, 1);
}

TEST(ExtremeRays, DiagonalOctant) {
    for (std::size_t n = 1; n <= 3; ++n) {
        std::vector<VecZ> units;
        for (std::size_t i = 0; i < n; ++i) {
            VecZ e(n);
            e[i] = 1;
            units.push_back(e);
        }
        ConeVRep v = extreme_rays(ConeHRep::from_vectors(units), n);
        EXPECT_EQ(v.rays.size(), n);
        EXPECT_EQ(v.lineality.size(), sym_dim(n) - n);
        for (const auto &r : v.rays) {
            int found = 0;
            for (const auto &e : units)
                found += (r == SymMat::outer(e));
            EXPECT_EQ(found, 1);
        }
    }
}

TEST(ExtremeRays, DualVoronoiOfPkContainsRtilde) {
    for (long k = 1; k <= 4; ++k) {
        MinResult m = copositive_min(p_k(k));
        ConeHRep h = ConeHRep::from_vectors(m.vectors);
        ConeVRep v = extreme_rays(h);
        check_rays(h, v);
        int hits = 0;
        for (const auto &r : v.rays)
            hits += proportional(p_k_step(k), r);
        EXPECT_EQ(hits, 1) << k;
    }
}

TEST(ExtremeRays, EmptyAndZeroNormals) {
    ConeVRep v = extreme_rays(ConeHRep(std::vector<SymMat>{SymMat(2)}), 2);
    EXPECT_TRUE(v.rays.empty());
    EXPECT_EQ(v.lineality.size(), 3u);
    EXPECT_THROW(extreme_rays(ConeHRep{}), PreconditionError);
}

TEST(ExtremeRays, DualityRoundTrip) {
    oracle::Random rng(31);
    int checked = 0;
    for (int t = 0; t < 60; ++t) {
        std::size_t n = static_cast<std::size_t>(rng.integer(2, 3));
        std::vector<SymMat> gens;
        for (long k = rng.integer(sym_dim(n), sym_dim(n) + 4); k > 0; --k) {
            SymMat g(n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i; j < n; ++j)
                    g.set(i, j, rng.integer(-3, 3));
            gens.push_back(g);
        }
        if (span_rank(gens) != sym_dim(n))
            continue;
        // C = cone(gens); C* has normals gens. Rays of C* as normals give C back.
        ConeVRep dual = extreme_rays(ConeHRep(gens), n);
        if (!dual.lineality.empty() || dual.rays.empty())
            continue;
        ConeVRep back = extreme_rays(ConeHRep(dual.rays), n);
        if (!back.lineality.empty())
            continue;
        // every extreme ray of C is proportional to a generator, and every
        // generator is a nonnegative combination of them (checked by LP)
        for (const auto &r : back.rays) {
            bool match = false;
            for (const auto &g : gens)
                match = match || proportional(r, g);
            EXPECT_TRUE(match);
        }
        for (const auto &g : gens)
            EXPECT_TRUE(lp_nonneg_solve(back.rays, g).feasible);
        ++checked;
    }
    EXPECT_GE(checked, 10);
}

TEST(ExtremeRays, FacetsOfSmallCpApproximationAreEij) {
    // cone{vv^T : v in {0,1,2}^2 \ 0}: the facet through e_1e_1^T and
    // e_2e_2^T has normal E_12
    std::vector<VecZ> vs;
    oracle::box(2, 0, 2, [&](const VecZ &v) {
        if (!is_zero(v))
            vs.push_back(v);
    });
    std::vector<SymMat> gens;
    for (const auto &v : vs)
        gens.push_back(SymMat::outer(v));
    ConeVRep facets = extreme_rays(ConeHRep(gens), 2);
    int e12 = 0;
    for (const auto &f : facets.rays)
        e12 += proportional(SymMat::unit_pair(2, 0, 1), f);
    EXPECT_EQ(e12, 1);
}

TEST(Lp, Examples) {
    std::vector<SymMat> g{SymMat::outer(vecz({1, 0})), SymMat::outer(vecz({0, 1})),
                          SymMat::outer(vecz({1, 1}))};
    LpOutcome a = lp_nonneg_solve(g, SymMat::from_ints({{2, 1}, {1, 2}}));
    ASSERT_TRUE(a.feasible);
    EXPECT_EQ(a.alpha, (std::vector<Rat>{1, 1, 1}));

    LpOutcome b = lp_nonneg_solve({SymMat::outer(vecz({1, 0}))}, SymMat::unit_pair(2, 0, 1));
    ASSERT_FALSE(b.feasible);
    ASSERT_TRUE(b.farkas.has_value());
    EXPECT_GE(inner(*b.farkas, SymMat::outer(vecz({1, 0}))), 0);
    EXPECT_LT(inner(*b.farkas, SymMat::unit_pair(2, 0, 1)), 0);

    LpOutcome c = lp_nonneg_solve(g, SymMat::identity(2));
    ASSERT_TRUE(c.feasible);
    SymMat s(2);
    for (std::size_t i = 0; i < g.size(); ++i)
        s += g[i] * c.alpha[i];
    EXPECT_EQ(s, SymMat::identity(2));
}

TEST(Lp, SubstitutionOnRandomInstances) {
    oracle::Random rng(32);
    int feasible = 0, infeasible = 0;
    for (int t = 0; t < 80; ++t) {
        std::size_t n = static_cast<std::size_t>(rng.integer(2, 3));
        std::vector<SymMat> gens;
        for (long k = rng.integer(2, 8); k > 0; --k)
            gens.push_back(SymMat::outer(rng.vector(n, 0, 3)));
        SymMat target = rng.symmetric(n, 5);
        if (t % 2 == 0) {
            target = SymMat(n);
            for (const auto &g : gens)
                target += g * rng.positive(5);
        }
        LpOutcome o = lp_nonneg_solve(gens, target);
        if (o.feasible) {
            ++feasible;
            SymMat s(n);
            for (std::size_t i = 0; i < gens.size(); ++i) {
                EXPECT_GE(o.alpha[i], 0);
                s += gens[i] * o.alpha[i];
            }
            EXPECT_EQ(s, target);
        } else {
            ++infeasible;
            ASSERT_TRUE(o.farkas.has_value());
            for (const auto &g : gens)
                EXPECT_GE(inner(*o.farkas, g), 0);
            EXPECT_LT(inner(*o.farkas, target), 0);
        }
    }
    EXPECT_GE(feasible, 40);
    EXPECT_GE(infeasible, 10);
}
