#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "copos/error.hpp"

namespace copos {

// Exact rational scalar. GMP keeps mpq values canonical (reduced, positive
// denominator) after every arithmetic operation.
using Rat = mpq_class;
using Int = mpz_class;

// Nonnegativity is not part of the type; operations that need Z^n_{>=0}
// check it.
using VecZ = std::vector<Int>;
using VecQ = std::vector<Rat>;

inline Rat make_rat(const Int &num, const Int &den) {
    if (den == 0)
        throw PreconditionError("zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Accepts "p", "-p", "p/q" with optional sign on p only.
inline Rat parse_rat(std::string_view text) {
    auto digits = [](std::string_view s) {
        if (s.empty())
            return false;
        for (char c : s)
            if (c < '0' || c > '9')
                return false;
        return true;
    };
    std::string_view body = text;
    if (!body.empty() && (body.front() == '-' || body.front() == '+'))
        body.remove_prefix(1);
    auto slash = body.find('/');
    std::string_view num = body.substr(0, slash);
    std::string_view den =
        slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
    if (!digits(num) || !digits(den))
        throw FormatError("not a rational: '" + std::string(text) + "'");
    Int n{std::string(num)};
    Int d{std::string(den)};
    if (d == 0)
        throw FormatError("zero denominator: '" + std::string(text) + "'");
    if (!text.empty() && text.front() == '-')
        n = -n;
    return make_rat(n, d);
}

// "p/q", or "p" when the value is an integer.
inline std::string to_string(const Rat &r) { return r.get_str(); }
inline std::string to_string(const Int &z) { return z.get_str(); }

inline int sign(const Rat &r) { return sgn(r); }

inline Int lcm(const Int &a, const Int &b) {
    Int out;
    mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return out;
}

inline Int gcd(const Int &a, const Int &b) {
    Int out;
    mpz_gcd(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return out;
}

// floor(sqrt(r)) for r >= 0.
inline Int floor_sqrt(const Rat &r) {
    if (r < 0)
        throw PreconditionError("floor_sqrt of a negative value");
    Int q = r.get_num() / r.get_den();
    Int s = sqrt(q);
    // floor(sqrt(p/q)) == floor(sqrt(floor(p/q))).
    return s;
}

// Divide by the gcd of the entries (no-op for the zero vector).
inline void make_primitive(VecZ &v) {
    Int g = 0;
    for (const Int &x : v)
        g = gcd(g, x);
    if (g > 1)
        for (Int &x : v)
            x /= g;
}

inline VecZ vecz(std::initializer_list<long> xs) {
    VecZ v;
    v.reserve(xs.size());
    for (long x : xs)
        v.emplace_back(x);
    return v;
}

inline bool is_nonnegative(const VecZ &v) {
    for (const Int &x : v)
        if (x < 0)
            return false;
    return true;
}

inline bool is_zero(const VecZ &v) {
    for (const Int &x : v)
        if (x != 0)
            return false;
    return true;
}

inline std::string to_string(const VecZ &v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += ",";
        s += v[i].get_str();
    }
    return s + ")";
}

} // namespace copos
