#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "copos/copositivity.hpp"
#include "copos/error.hpp"
#include "copos/linalg.hpp"
#include "copos/polyhedra.hpp"
#include "copos/symmat.hpp"

namespace copos {

// A strictly copositive matrix together with its minimal vectors, whose
// rank-1 matrices span S^n.
struct PerfectCertificate {
    SymMat matrix;
    Rat min_value;
    std::vector<VecZ> min_vectors;
    std::size_t span_rank = 0;
};

// Why a matrix is not perfect copositive.
struct PerfectRefusal {
    enum class Reason { NotStrictlyCopositive, RankDeficient };
    Reason reason;
    CopVerdict verdict;
    std::optional<MinResult> minimum; // RankDeficient only
    std::size_t span_rank = 0;
};

using PerfectOutcome = std::variant<PerfectCertificate, PerfectRefusal>;

inline PerfectOutcome is_perfect_copositive(const SymMat &q, int depth_limit = default_depth_limit()) {
    CopVerdict verdict = test_copositivity(q, depth_limit);
    if (verdict.kind == CopVerdict::Kind::Undecided)
        throw UndecidedError("copositivity undecided at depth " + std::to_string(verdict.depth));
    if (!verdict.strictly_copositive())
        return PerfectRefusal{PerfectRefusal::Reason::NotStrictlyCopositive, verdict, {}, 0};
    MinResult min = copositive_min(q, verdict);
    const std::size_t r = span_rank(min.vectors);
    if (r != sym_dim(q.dim()))
        return PerfectRefusal{PerfectRefusal::Reason::RankDeficient, verdict, std::move(min), r};
    return PerfectCertificate{q, min.min_value, std::move(min.vectors), r};
}

inline bool is_perfect(const PerfectOutcome &o) {
    return std::holds_alternative<PerfectCertificate>(o);
}

// Certificate or PreconditionError with the refusal reason.
inline PerfectCertificate require_perfect(const SymMat &q, int depth_limit = default_depth_limit()) {
    auto outcome = is_perfect_copositive(q, depth_limit);
    if (auto *cert = std::get_if<PerfectCertificate>(&outcome))
        return std::move(*cert);
    const auto &ref = std::get<PerfectRefusal>(outcome);
    if (ref.reason == PerfectRefusal::Reason::NotStrictlyCopositive)
        throw NotStrictlyCopositiveError("matrix is not strictly copositive", ref.verdict);
    throw PreconditionError("matrix is not perfect: minimal vectors span dimension " +
                            std::to_string(ref.span_rank) + " of " +
                            std::to_string(sym_dim(q.dim())));
}

// Rescale to copositive minimum 1 (vertex of the copositive Ryshkov polyhedron).
inline PerfectCertificate normalized(PerfectCertificate cert) {
    cert.matrix *= 1 / cert.min_value;
    cert.min_value = 1;
    return cert;
}

struct Underdetermined {
    std::size_t solution_dim = 0;
};

// Solve Q[v] = value for v in vectors, Q in S^n.
inline std::variant<SymMat, Underdetermined> recover_from_minvecs(const std::vector<VecZ> &vectors,
                                                                  const Rat &value) {
    if (vectors.empty())
        throw PreconditionError("recover_from_minvecs: empty vector set");
    const std::size_t n = vectors.front().size();
    std::vector<std::vector<Rat>> a;
    a.reserve(vectors.size());
    for (const auto &v : vectors) {
        if (v.size() != n)
            throw PreconditionError("recover_from_minvecs: vectors differ in dimension");
        a.push_back(pairing_functional(SymMat::outer(v)));
    }
    auto sol = solve_linear(a, std::vector<Rat>(vectors.size(), value));
    if (!sol)
        throw PreconditionError("recover_from_minvecs: inconsistent system");
    if (sol->null_dim != 0)
        return Underdetermined{sol->null_dim};
    return SymMat::from_coords(n, sol->particular);
}

// Generators x x^T of the copositive Voronoi cone, in minimal-vector order.
inline ConeVRep voronoi_cone(const PerfectCertificate &p) {
    ConeVRep out;
    for (const auto &v : p.min_vectors)
        out.rays.push_back(SymMat::outer(v));
    return out;
}

struct ComponentLabel {
    enum class Definiteness { PositiveDefinite, PsdRank, Indefinite };
    Definiteness definiteness = Definiteness::Indefinite;
    std::size_t rank = 0;
    Inertia inertia;
    bool nonnegative = false;
    std::optional<SymMat> exceptional_certified;
    std::string witness_rejection; // set when a witness was given but rejected

    std::string definiteness_label() const {
        switch (definiteness) {
        case Definiteness::PositiveDefinite:
            return "positive-definite";
        case Definiteness::PsdRank:
            return "psd-rank-" + std::to_string(rank);
        case Definiteness::Indefinite:
            return "indefinite";
        }
        return "?";
    }
};

// Doubly nonnegative: positive semidefinite and entrywise nonnegative.
inline bool is_doubly_nonnegative(const SymMat &w) {
    return w.is_nonnegative() && inertia(w).positive_semidefinite();
}

// Definiteness and nonnegativity; with a doubly nonnegative witness W with
// <Q, W> < 0 this also certifies Q is not in S^n_{>=0} + N^n, because that
// cone is the dual of the doubly nonnegative cone.
inline ComponentLabel classify_component(const SymMat &q,
                                         const std::optional<SymMat> &witness = std::nullopt) {
    ComponentLabel label;
    label.inertia = inertia(q);
    label.rank = label.inertia.rank();
    if (label.inertia.positive_definite())
        label.definiteness = ComponentLabel::Definiteness::PositiveDefinite;
    else if (label.inertia.positive_semidefinite())
        label.definiteness = ComponentLabel::Definiteness::PsdRank;
    else
        label.definiteness = ComponentLabel::Definiteness::Indefinite;
    label.nonnegative = q.is_nonnegative();
    if (witness) {
        if (witness->dim() != q.dim())
            label.witness_rejection = "witness dimension mismatch";
        else if (!witness->is_nonnegative())
            label.witness_rejection = "witness is not entrywise nonnegative";
        else if (!inertia(*witness).positive_semidefinite())
            label.witness_rejection = "witness is not positive semidefinite";
        else if (inner(q, *witness) >= 0)
            label.witness_rejection = "inner product with witness is nonnegative";
        else
            label.exceptional_certified = *witness;
    }
    return label;
}

} // namespace copos
