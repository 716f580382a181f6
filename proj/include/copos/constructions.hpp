#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "copos/copositivity.hpp"
#include "copos/error.hpp"
#include "copos/linalg.hpp"
#include "copos/perfection.hpp"
#include "copos/symmat.hpp"

namespace copos {

// Gram matrix of the root lattice A_n: 2 on the diagonal, -1 next to it.
inline SymMat q_an(std::size_t n) {
    if (n < 1)
        throw PreconditionError("q_an: n must be >= 1");
    SymMat q(n);
    for (std::size_t i = 0; i < n; ++i) {
        q.set(i, i, 2);
        if (i + 1 < n)
            q.set(i, i + 1, -1);
    }
    return q;
}

// [[2, -b, 2], [-b, 2a, -b], [2, -b, 2]] with a = k^2 + k + 1, b = 2k + 1.
inline SymMat p_k(long k) {
    if (k < 1)
        throw PreconditionError("p_k: k must be >= 1");
    const Int alpha = Int(k) * k + k + 1;
    const Int beta = 2 * Int(k) + 1;
    SymMat p(3);
    p.set(0, 0, 2);
    p.set(0, 1, Rat(-beta));
    p.set(0, 2, 2);
    p.set(1, 1, Rat(2 * alpha));
    p.set(1, 2, Rat(-beta));
    p.set(2, 2, 2);
    return p;
}

// Extreme ray of the dual Voronoi cone of P_k with P_{k+1} = P_k + R.
inline SymMat p_k_step(long k) {
    SymMat r(3);
    r.set(0, 1, -2);
    r.set(1, 1, Rat(4 * Int(k) + 4));
    r.set(1, 2, -2);
    return r;
}

// Proof object for the lifting construction: a minimal vector of the base
// whose last entry is at least 2.
struct LiftWitness {
    SymMat base;
    VecZ witness_vector;
};

// Duplicate the last row and column without any checks:
// [[M, m], [m^T, mu]] -> [[M, m, m], [m^T, mu, mu], [m^T, mu, mu]].
inline SymMat duplicate_last(const SymMat &q) {
    const std::size_t n = q.dim();
    SymMat out(n + 1);
    auto src = [n](std::size_t i) { return i == n ? n - 1 : i; };
    for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t j = i; j <= n; ++j)
            out.set(i, j, q(src(i), src(j)));
    return out;
}

// Place W in the top-left block of an (n+1) x (n+1) zero matrix.
inline SymMat zero_pad(const SymMat &w) {
    SymMat out(w.dim() + 1);
    for (std::size_t i = 0; i < w.dim(); ++i)
        for (std::size_t j = i; j < w.dim(); ++j)
            out.set(i, j, w(i, j));
    return out;
}

// {(x_1..x_{n-1}, a, b) : x in MinC(Q), a + b = x_n}
inline std::vector<VecZ> lifted_min_vectors(const std::vector<VecZ> &min_vectors) {
    std::vector<VecZ> out;
    for (const auto &x : min_vectors) {
        const Int last = x.back();
        for (Int a = 0; a <= last; ++a) {
            VecZ y(x.begin(), x.end() - 1);
            y.push_back(a);
            y.push_back(last - a);
            out.push_back(std::move(y));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline LiftWitness make_lift_witness(const SymMat &q, VecZ x, int depth_limit = default_depth_limit()) {
    if (x.size() != q.dim())
        throw PreconditionError("lift witness has wrong dimension");
    if (x.back() < 2)
        throw PreconditionError("lift witness must have last entry >= 2");
    MinResult m = copositive_min(q, depth_limit);
    if (!std::binary_search(m.vectors.begin(), m.vectors.end(), x))
        throw PreconditionError("lift witness " + to_string(x) + " is not a minimal vector");
    return LiftWitness{q, std::move(x)};
}

// Lifting of a perfect copositive matrix with a minimal vector whose last
// entry is >= 2; the result is perfect copositive in dimension n + 1 with
// the same copositive minimum.
inline SymMat lift(const SymMat &q, const LiftWitness &proof, int depth_limit = default_depth_limit()) {
    if (!(proof.base == q))
        throw PreconditionError("lift witness was issued for a different matrix");
    require_perfect(q, depth_limit);
    return duplicate_last(q);
}

inline SymMat lift(const SymMat &q, const VecZ &witness, int depth_limit = default_depth_limit()) {
    return lift(q, make_lift_witness(q, witness, depth_limit), depth_limit);
}

// Checks Q[v] >= q_ii for all integer v with gcd(v_i..v_n) = 1 and
// Q[v] <= max_i q_ii; larger values satisfy every inequality.
inline bool minkowski_reduced_check(const SymMat &q, int depth_limit = default_depth_limit()) {
    if (!inertia(q).positive_definite())
        throw PreconditionError("minkowski_reduced_check: matrix is not positive definite");
    const std::size_t n = q.dim();
    Rat cap = q(0, 0);
    for (std::size_t i = 1; i < n; ++i)
        cap = std::max(cap, q(i, i));
    // all v (one per +-pair) with Q[v] <= cap, from each sign orthant
    std::vector<VecZ> candidates;
    for (std::size_t mask = 0; mask < (std::size_t{1} << (n - 1)); ++mask) {
        std::vector<int> d(n, 1);
        for (std::size_t i = 1; i < n; ++i)
            if (mask >> (i - 1) & 1)
                d[i] = -1;
        SymMat dqd(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j)
                dqd.set(i, j, q(i, j) * (d[i] * d[j]));
        CopVerdict v = test_copositivity(dqd, depth_limit);
        if (!v.strictly_copositive())
            throw InternalError("positive definite matrix not certified strictly copositive");
        for (VecZ w : enumerate_below(dqd, cap, v.mu_lb)) {
            for (std::size_t i = 0; i < n; ++i)
                w[i] *= d[i];
            candidates.push_back(std::move(w));
        }
    }
    for (const auto &v : candidates) {
        const Rat val = quad_form(q, v);
        Int g = 0;
        for (std::size_t i = n; i-- > 0;) {
            g = gcd(g, v[i]);
            if (g == 1 && val < q(i, i))
                return false;
        }
    }
    return true;
}

struct EmbeddingResult {
    IntMatrix u;
    IntMatrix u_inverse;
    Int q = 0; // cube bound: |x_j| < q for all x in Min Q
    SymMat transformed; // U^T Q U
    bool minkowski_reduced = false;
    PerfectCertificate certificate; // of the transformed matrix
};

inline bool classically_perfect(const SymMat &q, int depth_limit = default_depth_limit()) {
    ClassicalMin m = classical_min(q, depth_limit);
    return span_rank(m.vectors) == sym_dim(q.dim());
}

// Arithmetically equivalent perfect copositive form of a classically perfect
// positive definite matrix. U^{-1} is lower triangular with entries q^{i-j},
// which maps every minimal vector into +-Z^n_{>=0} once |x_j| < q.
inline EmbeddingResult embed_classical(const SymMat &q, int depth_limit = default_depth_limit()) {
    if (!inertia(q).positive_definite())
        throw PreconditionError("embed_classical: matrix is not positive definite");
    const std::size_t n = q.dim();
    ClassicalMin cm = classical_min(q, depth_limit);
    if (span_rank(cm.vectors) != sym_dim(n))
        throw PreconditionError("embed_classical: matrix is not classically perfect");

    EmbeddingResult out;
    out.minkowski_reduced = minkowski_reduced_check(q, depth_limit);
    Int bound = 0;
    for (const auto &x : cm.vectors)
        for (const auto &xj : x)
            bound = std::max(bound, Int(abs(xj)));
    out.q = bound + 1;

    out.u_inverse = IntMatrix(n);
    for (std::size_t i = 0; i < n; ++i) {
        Int pw = 1;
        for (std::size_t j = i + 1; j-- > 0;) {
            out.u_inverse(i, j) = pw;
            pw *= out.q;
        }
    }
    out.u = unimodular_inverse(out.u_inverse);
    out.transformed = congruence(q, out.u);

    for (const auto &x : cm.vectors) {
        VecZ y = out.u_inverse.apply(x);
        bool nonneg = std::all_of(y.begin(), y.end(), [](const Int &t) { return t >= 0; });
        bool nonpos = std::all_of(y.begin(), y.end(), [](const Int &t) { return t <= 0; });
        if (!nonneg && !nonpos)
            throw InternalError("embedding left a minimal vector outside +-Z^n_{>=0}");
    }
    auto outcome = is_perfect_copositive(out.transformed, depth_limit);
    if (!is_perfect(outcome))
        throw InternalError("embedded matrix is not perfect copositive");
    out.certificate = std::get<PerfectCertificate>(std::move(outcome));
    return out;
}

// Matrices displayed for n = 3 and n = 5, with their listed minimal vectors.
struct Fixtures {
    SymMat I;     // indefinite perfect copositive, minC 2
    SymMat E;     // exceptional perfect copositive certificate
    SymMat Q_dnn; // doubly nonnegative, not completely positive
    std::vector<VecZ> min_I;
    std::vector<VecZ> min_E;
};

inline Fixtures fixtures() {
    Fixtures f;
    f.I = SymMat::from_ints({{2, -5, 4}, {-5, 14, -9}, {4, -9, 6}});
    f.E = SymMat::from_ints({{366, -300, 197, 147, -81},
                             {-300, 246, -161, 123, 69},
                             {197, -161, 106, -82, 39},
                             {147, 123, -82, 66, -33},
                             {-81, 69, 39, -33, 18}}) *
          Rat(1, 3);
    f.Q_dnn = SymMat::from_ints({{1, 1, 0, 0, 1},
                                 {1, 2, 1, 0, 0},
                                 {0, 1, 2, 1, 0},
                                 {0, 0, 1, 2, 1},
                                 {1, 0, 0, 1, 6}});
    f.min_I = {vecz({0, 1, 1}), vecz({0, 1, 2}), vecz({0, 2, 3}), vecz({1, 0, 0}),
               vecz({2, 1, 0}), vecz({3, 1, 0}), vecz({1, 1, 1})};
    f.min_E = {vecz({1, 0, 0, 0, 4}), vecz({2, 0, 0, 0, 9}), vecz({1, 0, 0, 0, 5}),
               vecz({1, 0, 0, 1, 6}), vecz({1, 2, 1, 0, 0}), vecz({0, 0, 1, 2, 2}),
               vecz({0, 0, 2, 4, 3}), vecz({0, 0, 1, 2, 1}), vecz({0, 2, 4, 1, 0}),
               vecz({0, 0, 0, 1, 2}), vecz({5, 6, 0, 0, 0}), vecz({0, 1, 3, 2, 0}),
               vecz({2, 0, 0, 1, 11}), vecz({2, 3, 1, 0, 0}), vecz({0, 3, 6, 2, 0}),
               vecz({0, 2, 3, 0, 0}), vecz({1, 1, 0, 0, 1}), vecz({4, 5, 0, 0, 0})};
    return f;
}

// Names accepted: I, E, Qdnn, QA:n, P:k.
inline SymMat fixture_by_name(const std::string &name) {
    auto number_after = [&](std::size_t pos) {
        std::string tail = name.substr(pos);
        if (tail.empty() || tail.size() > 6 ||
            !std::all_of(tail.begin(), tail.end(), [](char c) { return c >= '0' && c <= '9'; }))
            throw PreconditionError("bad fixture parameter in '" + name + "'");
        return std::stol(tail);
    };
    if (name == "I")
        return fixtures().I;
    if (name == "E")
        return fixtures().E;
    if (name == "Qdnn")
        return fixtures().Q_dnn;
    if (name.rfind("QA:", 0) == 0)
        return q_an(static_cast<std::size_t>(std::max(0L, number_after(3))));
    if (name.rfind("P:", 0) == 0)
        return p_k(number_after(2));
    throw PreconditionError("unknown fixture '" + name + "'");
}

} // namespace copos
