#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "copos/error.hpp"
#include "copos/rational.hpp"
#include "copos/symmat.hpp"

namespace copos {

// Q[v] = v^T Q v
template <class Vec> Rat quad_form(const SymMat &q, const Vec &v) {
    if (q.dim() != v.size())
        throw PreconditionError("quad_form: dimension mismatch");
    const std::size_t n = q.dim();
    Rat acc = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (v[i] == 0)
            continue;
        Rat row = q(i, i) * v[i];
        for (std::size_t j = i + 1; j < n; ++j)
            if (v[j] != 0)
                row += 2 * q(i, j) * v[j];
        acc += row * v[i];
    }
    return acc;
}

// <A,B> = Trace(AB) = sum_ij A_ij B_ij
inline Rat inner(const SymMat &a, const SymMat &b) {
    a.check_same(b);
    const std::size_t n = a.dim();
    Rat acc = 0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += a(i, i) * b(i, i);
        for (std::size_t j = i + 1; j < n; ++j)
            acc += 2 * a(i, j) * b(i, j);
    }
    return acc;
}

// Linear functional on coords() representing X -> <A, X>.
inline std::vector<Rat> pairing_functional(const SymMat &a) {
    std::vector<Rat> c = a.coords();
    for (std::size_t k = a.dim(); k < c.size(); ++k)
        c[k] *= 2;
    return c;
}

struct Inertia {
    std::size_t n_pos = 0;
    std::size_t n_zero = 0;
    std::size_t n_neg = 0;

    std::size_t rank() const { return n_pos + n_neg; }
    bool positive_definite() const { return n_zero == 0 && n_neg == 0; }
    bool positive_semidefinite() const { return n_neg == 0; }
    friend bool operator==(const Inertia &, const Inertia &) = default;
};

inline std::string to_string(const Inertia &in) {
    return "(" + std::to_string(in.n_pos) + "," + std::to_string(in.n_zero) + "," +
           std::to_string(in.n_neg) + ")";
}

// Signature by exact symmetric elimination. A zero diagonal with a nonzero
// off-diagonal a_ij is repaired by the congruence row_i += row_j, which makes
// the new a_ii = 2 a_ij nonzero whenever a_ii = a_jj = 0.
inline Inertia inertia(const SymMat &q) {
    const std::size_t n = q.dim();
    auto a = q.rows();
    Inertia out;
    std::size_t k = 0;
    while (k < n) {
        std::size_t piv = n;
        for (std::size_t i = k; i < n; ++i)
            if (a[i][i] != 0) {
                piv = i;
                break;
            }
        if (piv == n) {
            std::optional<std::pair<std::size_t, std::size_t>> off;
            for (std::size_t i = k; i < n && !off; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    if (a[i][j] != 0) {
                        off = {i, j};
                        break;
                    }
            if (!off) {
                out.n_zero += n - k;
                break;
            }
            auto [i, j] = *off;
            for (std::size_t c = 0; c < n; ++c)
                a[i][c] += a[j][c];
            for (std::size_t r = 0; r < n; ++r)
                a[r][i] += a[r][j];
            piv = i;
        }
        if (piv != k) {
            std::swap(a[piv], a[k]);
            for (auto &row : a)
                std::swap(row[piv], row[k]);
        }
        const Rat d = a[k][k];
        (d > 0 ? out.n_pos : out.n_neg)++;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a[i][k] == 0)
                continue;
            const Rat f = a[i][k] / d;
            for (std::size_t c = k; c < n; ++c)
                a[i][c] -= f * a[k][c];
        }
        for (std::size_t i = k + 1; i < n; ++i)
            a[k][i] = a[i][k] = 0;
        ++k;
    }
    return out;
}

// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> row_reduce(std::vector<std::vector<Rat>> &m) {
    std::vector<std::size_t> pivots;
    if (m.empty())
        return pivots;
    const std::size_t cols = m.front().size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t p = r;
        while (p < m.size() && m[p][c] == 0)
            ++p;
        if (p == m.size())
            continue;
        std::swap(m[p], m[r]);
        const Rat inv = 1 / m[r][c];
        for (auto &x : m[r])
            x *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c] == 0)
                continue;
            const Rat f = m[i][c];
            for (std::size_t k = c; k < cols; ++k)
                m[i][k] -= f * m[r][k];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline std::size_t rank(std::vector<std::vector<Rat>> rows) { return row_reduce(rows).size(); }

// Dimension of the linear span of the given matrices inside S^n.
inline std::size_t span_rank(const std::vector<SymMat> &mats) {
    if (mats.empty())
        return 0;
    std::vector<std::vector<Rat>> rows;
    rows.reserve(mats.size());
    for (const auto &m : mats) {
        mats.front().check_same(m);
        rows.push_back(m.coords());
    }
    return rank(std::move(rows));
}

inline std::size_t span_rank(const std::vector<VecZ> &vectors) {
    std::vector<SymMat> outers;
    outers.reserve(vectors.size());
    for (const auto &v : vectors)
        outers.push_back(SymMat::outer(v));
    return span_rank(outers);
}

struct LinearSolution {
    std::vector<Rat> particular;
    std::size_t null_dim = 0;
};

// Solves A x = b exactly. nullopt when inconsistent.
inline std::optional<LinearSolution> solve_linear(const std::vector<std::vector<Rat>> &a,
                                                  const std::vector<Rat> &b) {
    if (a.size() != b.size())
        throw PreconditionError("solve_linear: row count mismatch");
    const std::size_t cols = a.empty() ? 0 : a.front().size();
    std::vector<std::vector<Rat>> aug = a;
    for (std::size_t i = 0; i < aug.size(); ++i)
        aug[i].push_back(b[i]);
    auto pivots = row_reduce(aug);
    if (!pivots.empty() && pivots.back() == cols)
        return std::nullopt;
    LinearSolution sol;
    sol.particular.assign(cols, 0);
    for (std::size_t r = 0; r < pivots.size(); ++r)
        sol.particular[pivots[r]] = aug[r][cols];
    sol.null_dim = cols - pivots.size();
    return sol;
}

// Dense square matrix over Z; used for unimodular transforms.
struct IntMatrix {
    std::size_t n = 0;
    std::vector<Int> a;

    IntMatrix() = default;
    explicit IntMatrix(std::size_t dim) : n(dim), a(dim * dim) {}

    static IntMatrix identity(std::size_t dim) {
        IntMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i)
            m(i, i) = 1;
        return m;
    }
    static IntMatrix permutation(const std::vector<std::size_t> &perm) {
        // column j is e_{perm[j]}, so (Pi^T Q Pi)_{ij} = Q_{perm[i], perm[j]}
        IntMatrix m(perm.size());
        for (std::size_t j = 0; j < perm.size(); ++j)
            m(perm[j], j) = 1;
        return m;
    }

    Int &operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
    const Int &operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }

    friend IntMatrix operator*(const IntMatrix &x, const IntMatrix &y) {
        IntMatrix z(x.n);
        for (std::size_t i = 0; i < x.n; ++i)
            for (std::size_t k = 0; k < x.n; ++k) {
                if (x(i, k) == 0)
                    continue;
                for (std::size_t j = 0; j < x.n; ++j)
                    z(i, j) += x(i, k) * y(k, j);
            }
        return z;
    }
    friend bool operator==(const IntMatrix &, const IntMatrix &) = default;

    VecZ apply(const VecZ &v) const {
        VecZ out(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                out[i] += (*this)(i, j) * v[j];
        return out;
    }
};

inline Rat determinant(const IntMatrix &m) {
    std::vector<std::vector<Rat>> a(m.n, std::vector<Rat>(m.n));
    for (std::size_t i = 0; i < m.n; ++i)
        for (std::size_t j = 0; j < m.n; ++j)
            a[i][j] = m(i, j);
    Rat det = 1;
    for (std::size_t c = 0; c < m.n; ++c) {
        std::size_t p = c;
        while (p < m.n && a[p][c] == 0)
            ++p;
        if (p == m.n)
            return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t i = c + 1; i < m.n; ++i) {
            if (a[i][c] == 0)
                continue;
            const Rat f = a[i][c] / a[c][c];
            for (std::size_t k = c; k < m.n; ++k)
                a[i][k] -= f * a[c][k];
        }
    }
    return det;
}

// Inverse of a unimodular matrix (exact; throws if det != +-1).
inline IntMatrix unimodular_inverse(const IntMatrix &m) {
    const std::size_t n = m.n;
    std::vector<std::vector<Rat>> aug(n, std::vector<Rat>(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug[i][j] = m(i, j);
        aug[i][n + i] = 1;
    }
    auto piv = row_reduce(aug);
    if (piv.size() < n || piv[n - 1] != n - 1)
        throw PreconditionError("matrix is singular");
    IntMatrix inv(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Rat &x = aug[i][n + j];
            if (x.get_den() != 1)
                throw PreconditionError("matrix is not unimodular");
            inv(i, j) = x.get_num();
        }
    return inv;
}

// U^T Q U
inline SymMat congruence(const SymMat &q, const IntMatrix &u) {
    if (q.dim() != u.n)
        throw PreconditionError("congruence: dimension mismatch");
    const std::size_t n = q.dim();
    std::vector<std::vector<Rat>> qu(n, std::vector<Rat>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (u(k, j) != 0)
                    qu[i][j] += q(i, k) * u(k, j);
    SymMat out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            Rat acc = 0;
            for (std::size_t k = 0; k < n; ++k)
                if (u(k, i) != 0)
                    acc += u(k, i) * qu[k][j];
            out.set(i, j, acc);
        }
    return out;
}

// Pi^T Q Pi with (Pi^T Q Pi)_{ij} = Q_{perm[i], perm[j]}.
inline SymMat permute(const SymMat &q, const std::vector<std::size_t> &perm) {
    if (perm.size() != q.dim())
        throw PreconditionError("permute: dimension mismatch");
    SymMat out(q.dim());
    for (std::size_t i = 0; i < q.dim(); ++i)
        for (std::size_t j = i; j < q.dim(); ++j)
            out.set(i, j, q(perm[i], perm[j]));
    return out;
}

// w with w_i = v_{perm[i]}, so that permute(Q, perm)[w] = Q[v].
inline VecZ permute_vector(const VecZ &v, const std::vector<std::size_t> &perm) {
    VecZ out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = v[perm[i]];
    return out;
}

// Smallest common denominator d with d*Q integral.
inline Int common_denominator(const SymMat &q) {
    Int d = 1;
    for (const Rat &x : q.upper())
        d = lcm(d, x.get_den());
    return d;
}

} // namespace copos
