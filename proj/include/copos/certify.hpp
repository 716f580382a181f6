#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "copos/constructions.hpp"
#include "copos/error.hpp"
#include "copos/linalg.hpp"
#include "copos/perfection.hpp"
#include "copos/polyhedra.hpp"
#include "copos/walk.hpp"

namespace copos {

struct CpVerdict {
    enum class Kind { Factorization, NotCp, Inconclusive };
    Kind kind = Kind::Inconclusive;
    std::vector<std::pair<Rat, VecZ>> factorization; // Q = sum alpha x x^T
    std::optional<PerfectCertificate> certificate;   // NotCp
    Rat value;                                       // NotCp: <P, Q> < 0
    std::size_t steps = 0;                           // pivots taken
    std::vector<std::string> diagnostics;
};

inline std::string to_string(CpVerdict::Kind k) {
    switch (k) {
    case CpVerdict::Kind::Factorization:
        return "cp";
    case CpVerdict::Kind::NotCp:
        return "not-cp";
    case CpVerdict::Kind::Inconclusive:
        return "inconclusive";
    }
    return "?";
}

inline SymMat reconstruct(const std::vector<std::pair<Rat, VecZ>> &factorization, std::size_t n) {
    SymMat s(n);
    for (const auto &[alpha, x] : factorization)
        s += SymMat::outer(x) * alpha;
    return s;
}

// Simplex-type walk over perfect copositive matrices with minimum 1,
// starting at Q_{A_n}/2. At each vertex P either <P,Q> < 0 (Q is not
// completely positive), or Q lies in the Voronoi cone of P (which gives a
// rational CP factorization), or some extreme ray R of the dual cone has
// <R,Q> < 0 and the walk moves to the contiguous vertex along the most
// negative such R. <P,Q> strictly decreases along the way.
inline CpVerdict cp_certify(const SymMat &q, std::size_t step_budget, const WalkOptions &opt = {}) {
    if (!q.is_nonnegative())
        throw PreconditionError("cp_certify: matrix is not entrywise nonnegative");
    const std::size_t n = q.dim();
    CpVerdict out;
    PerfectCertificate p = normalized(require_perfect(q_an(n), opt.depth_limit));
    std::set<SymMat> visited{p.matrix};

    for (;;) {
        const Rat pq = inner(p.matrix, q);
        if (pq < 0) {
            out.kind = CpVerdict::Kind::NotCp;
            out.value = pq;
            out.certificate = std::move(p);
            return out;
        }
        std::vector<SymMat> gens;
        gens.reserve(p.min_vectors.size());
        for (const auto &v : p.min_vectors)
            gens.push_back(SymMat::outer(v));
        LpOutcome lp = lp_nonneg_solve(gens, q);
        if (lp.feasible) {
            for (std::size_t i = 0; i < gens.size(); ++i)
                if (lp.alpha[i] != 0)
                    out.factorization.emplace_back(lp.alpha[i], p.min_vectors[i]);
            if (!(reconstruct(out.factorization, n) == q))
                throw InternalError("factorization does not reconstruct the input");
            out.kind = CpVerdict::Kind::Factorization;
            return out;
        }
        if (out.steps >= step_budget) {
            out.diagnostics.push_back("step budget " + std::to_string(step_budget) + " exhausted");
            return out;
        }

        ConeVRep dual = extreme_rays(ConeHRep::from_vectors(p.min_vectors), n);
        std::vector<std::pair<Rat, SymMat>> descent;
        for (auto &r : dual.rays) {
            Rat v = inner(r, q);
            if (v < 0)
                descent.emplace_back(v, std::move(r));
        }
        std::sort(descent.begin(), descent.end());

        std::optional<PerfectCertificate> next;
        for (const auto &[value, r] : descent) {
            WalkStep s;
            try {
                s = contiguous_perfect(p, r, opt);
            } catch (const UndecidedError &e) {
                out.diagnostics.push_back(std::string("step ") + std::to_string(out.steps) + ": " + e.what());
                continue;
            }
            if (s.kind == WalkStep::Kind::PolyhedronRay) {
                // a copositive R with <R,Q> < 0 already excludes Q from CP,
                // but R is not a perfect certificate
                out.diagnostics.push_back("step " + std::to_string(out.steps) +
                                          ": copositive descent direction " + to_string(r) + " skipped");
                continue;
            }
            if (!visited.insert(s.matrix).second) {
                out.diagnostics.push_back("step " + std::to_string(out.steps) + ": revisited vertex");
                continue;
            }
            next = std::move(*s.certificate);
            break;
        }
        if (!next) {
            out.diagnostics.push_back("step " + std::to_string(out.steps) + ": no usable descent direction");
            return out;
        }
        p = std::move(*next);
        ++out.steps;
    }
}

} // namespace copos
