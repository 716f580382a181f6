#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "copos/error.hpp"
#include "copos/rational.hpp"

namespace copos {

inline std::size_t sym_dim(std::size_t n) { return n * (n + 1) / 2; }

// Symmetric n x n rational matrix. Only the upper triangle is stored
// (row-major, i <= j), so symmetry is structural.
class SymMat {
  public:
    SymMat() = default;
    explicit SymMat(std::size_t n) : n_(n), upper_(sym_dim(n)) {
        if (n == 0)
            throw PreconditionError("SymMat dimension must be >= 1");
    }

    static SymMat identity(std::size_t n) {
        SymMat m(n);
        for (std::size_t i = 0; i < n; ++i)
            m.set(i, i, 1);
        return m;
    }

    // Full grid; symmetry checked exactly.
    static SymMat from_rows(const std::vector<std::vector<Rat>> &rows) {
        const std::size_t n = rows.size();
        if (n == 0)
            throw FormatError("empty matrix");
        for (const auto &r : rows)
            if (r.size() != n)
                throw FormatError("matrix is not square");
        SymMat m(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                if (rows[i][j] != rows[j][i])
                    throw FormatError("matrix is not symmetric at (" + std::to_string(i) +
                                      "," + std::to_string(j) + ")");
                m.set(i, j, rows[i][j]);
            }
        return m;
    }

    static SymMat from_ints(std::initializer_list<std::initializer_list<long>> rows) {
        std::vector<std::vector<Rat>> grid;
        for (const auto &r : rows) {
            grid.emplace_back();
            for (long x : r)
                grid.back().emplace_back(x);
        }
        return from_rows(grid);
    }

    // v v^T
    template <class Vec> static SymMat outer(const Vec &v) {
        SymMat m(v.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            for (std::size_t j = i; j < v.size(); ++j)
                m.set(i, j, Rat(v[i] * v[j]));
        return m;
    }

    // E_ij = e_i e_j^T + e_j e_i^T
    static SymMat unit_pair(std::size_t n, std::size_t i, std::size_t j) {
        SymMat m(n);
        m.set(i, j, i == j ? 2 : 1);
        return m;
    }

    std::size_t dim() const { return n_; }

    const Rat &operator()(std::size_t i, std::size_t j) const { return upper_[index(i, j)]; }
    void set(std::size_t i, std::size_t j, const Rat &value) { upper_[index(i, j)] = value; }

    // Row-major upper triangle; this is the order used for lexicographic
    // comparison and for canonical keys.
    const std::vector<Rat> &upper() const { return upper_; }

    // Coordinates in S^n: diagonal first, then the strict upper triangle
    // row-major. Not an isometry; pairings go through inner().
    std::vector<Rat> coords() const {
        std::vector<Rat> c;
        c.reserve(upper_.size());
        for (std::size_t i = 0; i < n_; ++i)
            c.push_back((*this)(i, i));
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i + 1; j < n_; ++j)
                c.push_back((*this)(i, j));
        return c;
    }

    static SymMat from_coords(std::size_t n, const std::vector<Rat> &c) {
        if (c.size() != sym_dim(n))
            throw PreconditionError("coordinate vector has wrong length");
        SymMat m(n);
        std::size_t k = 0;
        for (std::size_t i = 0; i < n; ++i)
            m.set(i, i, c[k++]);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                m.set(i, j, c[k++]);
        return m;
    }

    std::vector<std::vector<Rat>> rows() const {
        std::vector<std::vector<Rat>> g(n_, std::vector<Rat>(n_));
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                g[i][j] = (*this)(i, j);
        return g;
    }

    bool is_zero() const {
        return std::all_of(upper_.begin(), upper_.end(), [](const Rat &x) { return x == 0; });
    }

    bool is_nonnegative() const {
        return std::all_of(upper_.begin(), upper_.end(), [](const Rat &x) { return x >= 0; });
    }

    // Stable byte string used as a graph key.
    std::string key() const {
        std::string s = std::to_string(n_) + ":";
        for (std::size_t k = 0; k < upper_.size(); ++k) {
            if (k)
                s += ",";
            s += upper_[k].get_str();
        }
        return s;
    }

    SymMat &operator+=(const SymMat &o) {
        check_same(o);
        for (std::size_t k = 0; k < upper_.size(); ++k)
            upper_[k] += o.upper_[k];
        return *this;
    }
    SymMat &operator-=(const SymMat &o) {
        check_same(o);
        for (std::size_t k = 0; k < upper_.size(); ++k)
            upper_[k] -= o.upper_[k];
        return *this;
    }
    SymMat &operator*=(const Rat &t) {
        for (auto &x : upper_)
            x *= t;
        return *this;
    }

    friend SymMat operator+(SymMat a, const SymMat &b) { return a += b; }
    friend SymMat operator-(SymMat a, const SymMat &b) { return a -= b; }
    friend SymMat operator*(SymMat a, const Rat &t) { return a *= t; }
    friend SymMat operator*(const Rat &t, SymMat a) { return a *= t; }
    friend SymMat operator-(SymMat a) { return a *= Rat(-1); }

    friend bool operator==(const SymMat &a, const SymMat &b) {
        return a.n_ == b.n_ && a.upper_ == b.upper_;
    }
    // Dimension first, then lexicographic on the flattened upper triangle.
    friend bool operator<(const SymMat &a, const SymMat &b) {
        if (a.n_ != b.n_)
            return a.n_ < b.n_;
        return a.upper_ < b.upper_;
    }

    void check_same(const SymMat &o) const {
        if (o.n_ != n_)
            throw PreconditionError("dimension mismatch: " + std::to_string(n_) + " vs " +
                                    std::to_string(o.n_));
    }

  private:
    std::size_t index(std::size_t i, std::size_t j) const {
        if (i > j)
            std::swap(i, j);
        // rows 0..i-1 hold n, n-1, ..., n-i+1 entries
        return i * n_ - i * (i - 1) / 2 + (j - i);
    }

    std::size_t n_ = 0;
    std::vector<Rat> upper_;
};

inline std::string to_string(const SymMat &m) {
    std::string s = "[";
    for (std::size_t i = 0; i < m.dim(); ++i) {
        s += i ? ",[" : "[";
        for (std::size_t j = 0; j < m.dim(); ++j) {
            if (j)
                s += ",";
            s += m(i, j).get_str();
        }
        s += "]";
    }
    return s + "]";
}

} // namespace copos
