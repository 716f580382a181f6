#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "copos/certify.hpp"
#include "copos/copositivity.hpp"
#include "copos/error.hpp"
#include "copos/linalg.hpp"
#include "copos/perfection.hpp"
#include "copos/polyhedra.hpp"
#include "copos/rational.hpp"
#include "copos/symmat.hpp"
#include "copos/walk.hpp"

namespace copos::io {

using json = nlohmann::ordered_json;

// Scalars are written as "p/q" strings; readers also take JSON integers.
inline json rat_json(const Rat &x) { return to_string(x); }

inline Rat read_rat(const json &j) {
    if (j.is_string())
        return parse_rat(j.get<std::string>());
    if (j.is_number_integer())
        return Rat(Int(j.dump()));
    throw FormatError("expected a rational string or an integer, got " + j.dump());
}

inline Int read_int(const json &j) {
    Rat r = read_rat(j);
    if (r.get_den() != 1)
        throw FormatError("expected an integer, got " + j.dump());
    return r.get_num();
}

inline json vec_json(const VecZ &v) {
    json a = json::array();
    for (const auto &x : v) {
        if (x.fits_slong_p())
            a.push_back(x.get_si());
        else
            a.push_back(x.get_str());
    }
    return a;
}

inline VecZ read_vec(const json &j) {
    if (!j.is_array() || j.empty())
        throw FormatError("expected a nonempty integer array");
    VecZ v;
    for (const auto &x : j)
        v.push_back(read_int(x));
    return v;
}

inline json vectors_json(const std::vector<VecZ> &vs) {
    json a = json::array();
    for (const auto &v : vs)
        a.push_back(vec_json(v));
    return a;
}

inline json matrix_json(const SymMat &q) {
    json rows = json::array();
    for (std::size_t i = 0; i < q.dim(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < q.dim(); ++j)
            row.push_back(rat_json(q(i, j)));
        rows.push_back(std::move(row));
    }
    return json{{"n", q.dim()}, {"entries", std::move(rows)}};
}

inline SymMat read_matrix(const json &j) {
    if (!j.is_object() || !j.contains("entries"))
        throw FormatError("matrix object needs an \"entries\" field");
    const json &e = j.at("entries");
    if (!e.is_array() || e.empty())
        throw FormatError("\"entries\" must be a nonempty array of rows");
    const std::size_t n = e.size();
    if (j.contains("n") && (!j.at("n").is_number_unsigned() || j.at("n").get<std::size_t>() != n))
        throw FormatError("\"n\" does not match the number of rows");
    std::vector<std::vector<Rat>> rows;
    for (const auto &row : e) {
        if (!row.is_array() || row.size() != n)
            throw FormatError("matrix is not square");
        std::vector<Rat> r;
        for (const auto &x : row)
            r.push_back(read_rat(x));
        rows.push_back(std::move(r));
    }
    return SymMat::from_rows(rows);
}

inline SymMat parse_matrix(const std::string &text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw FormatError(std::string("invalid JSON: ") + e.what());
    }
    return read_matrix(j);
}

inline json min_json(const MinResult &m) {
    return json{{"min", rat_json(m.min_value)}, {"vectors", vectors_json(m.vectors)}};
}

inline MinResult read_min(const json &j) {
    MinResult m;
    m.min_value = read_rat(j.at("min"));
    for (const auto &v : j.at("vectors"))
        m.vectors.push_back(read_vec(v));
    return m;
}

inline json certificate_json(const PerfectCertificate &c) {
    return json{{"matrix", matrix_json(c.matrix)},
                {"min", rat_json(c.min_value)},
                {"vectors", vectors_json(c.min_vectors)},
                {"span_rank", c.span_rank}};
}

inline PerfectCertificate read_certificate(const json &j) {
    PerfectCertificate c;
    c.matrix = read_matrix(j.at("matrix"));
    c.min_value = read_rat(j.at("min"));
    for (const auto &v : j.at("vectors"))
        c.min_vectors.push_back(read_vec(v));
    c.span_rank = j.at("span_rank").get<std::size_t>();
    return c;
}

inline json verdict_json(const CopVerdict &v) {
    json j{{"kind", to_string(v.kind)}, {"depth", v.depth}, {"cells", v.cells}};
    if (v.strictly_copositive())
        j["mu_lb"] = rat_json(v.mu_lb);
    if (v.kind == CopVerdict::Kind::NotCopositive)
        j["witness"] = vec_json(v.witness);
    return j;
}

inline json refusal_json(const PerfectRefusal &r) {
    json j{{"perfect", false}};
    if (r.reason == PerfectRefusal::Reason::NotStrictlyCopositive) {
        j["reason"] = "not-strictly-copositive";
        j["verdict"] = verdict_json(r.verdict);
    } else {
        j["reason"] = "rank-deficient";
        j["span_rank"] = r.span_rank;
        if (r.minimum)
            j["minimum"] = min_json(*r.minimum);
    }
    return j;
}

// Integer matrices; rays are already scaled to content 1.
inline json cone_json(const ConeVRep &c) {
    json rays = json::array();
    for (const auto &r : c.rays)
        rays.push_back(matrix_json(r));
    json j{{"rays", std::move(rays)}};
    if (!c.lineality.empty()) {
        json lin = json::array();
        for (const auto &l : c.lineality)
            lin.push_back(matrix_json(l));
        j["lineality"] = std::move(lin);
    }
    return j;
}

inline json step_json(const WalkStep &s) {
    json j{{"kind", to_string(s.kind)}, {"direction", matrix_json(s.direction)}};
    if (s.kind == WalkStep::Kind::Neighbor) {
        j["matrix"] = matrix_json(s.matrix);
        j["lambda"] = rat_json(s.lambda);
        j["new_vectors"] = vectors_json(s.new_vectors);
    } else if (s.kind == WalkStep::Kind::Undecided) {
        j["diagnostic"] = s.diagnostic;
    }
    return j;
}

inline json graph_json(const NeighborGraph &g) {
    json nodes = json::array();
    for (const auto &n : g.nodes) {
        json edges = json::array();
        for (const auto &e : n.edges)
            edges.push_back(json{{"kind", e.kind},
                                 {"target", hash_label(e.target)},
                                 {"direction", matrix_json(e.direction)}});
        nodes.push_back(json{{"id", hash_label(n.key)},
                             {"matrix", matrix_json(n.canonical)},
                             {"inertia", to_string(n.inertia)},
                             {"representatives", n.representatives},
                             {"edges", std::move(edges)}});
    }
    json frontier = json::array();
    for (const auto &k : g.frontier)
        frontier.push_back(hash_label(k));
    return json{{"nodes", std::move(nodes)}, {"frontier", std::move(frontier)}};
}

inline json factorization_json(const std::vector<std::pair<Rat, VecZ>> &f) {
    json a = json::array();
    for (const auto &[alpha, x] : f)
        a.push_back(json{{"alpha", rat_json(alpha)}, {"x", vec_json(x)}});
    return a;
}

inline std::vector<std::pair<Rat, VecZ>> read_factorization(const json &j) {
    std::vector<std::pair<Rat, VecZ>> out;
    for (const auto &t : j)
        out.emplace_back(read_rat(t.at("alpha")), read_vec(t.at("x")));
    return out;
}

inline json cp_verdict_json(const CpVerdict &v) {
    json j{{"verdict", to_string(v.kind)}};
    if (v.kind == CpVerdict::Kind::Factorization)
        j["factorization"] = factorization_json(v.factorization);
    if (v.kind == CpVerdict::Kind::NotCp) {
        j["certificate"] = certificate_json(*v.certificate);
        j["value"] = rat_json(v.value);
    }
    j["steps"] = v.steps;
    if (!v.diagnostics.empty())
        j["diagnostics"] = v.diagnostics;
    return j;
}

inline json label_json(const ComponentLabel &l) {
    json j{{"definiteness", l.definiteness_label()},
           {"inertia", to_string(l.inertia)},
           {"nonnegative", l.nonnegative}};
    if (l.exceptional_certified)
        j["exceptional_certified"] = matrix_json(*l.exceptional_certified);
    if (!l.witness_rejection.empty())
        j["witness_rejected"] = l.witness_rejection;
    return j;
}

} // namespace copos::io
