#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "copos/copos.hpp"
#include "copos/io.hpp"

namespace {

using copos::io::json;

enum Exit { kOk = 0, kMalformed = 1, kPrecondition = 2, kNotCp = 3, kUndecided = 4, kInternal = 5 };

std::string slurp(const std::string &path) {
    if (path == "-")
        return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    std::ifstream in(path);
    if (!in)
        throw copos::FormatError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

copos::SymMat load(const std::string &path) { return copos::io::parse_matrix(slurp(path)); }

void emit(const json &j) { std::cout << j.dump(2) << '\n'; }

int fail(const char *kind, const std::string &reason, int code) {
    emit(json{{"error", kind}, {"reason", reason}});
    return code;
}

copos::VecZ parse_witness(const std::string &s) {
    copos::VecZ v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        copos::Rat r = copos::parse_rat(tok);
        if (r.get_den() != 1)
            throw copos::FormatError("witness entries must be integers");
        v.push_back(r.get_num());
    }
    if (v.empty())
        throw copos::FormatError("empty witness");
    return v;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Exact computations with perfect copositive matrices"};
    app.require_subcommand(1);

    std::string input = "-";
    std::string dot_path, witness, witness_path, name;
    std::size_t budget = 0;
    std::size_t certify_budget = 10000;

    auto *copmin = app.add_subcommand("copmin", "copositive minimum and minimal vectors");
    copmin->add_option("matrix", input, "matrix JSON, - for stdin");
    auto *perfect = app.add_subcommand("perfect", "perfect copositive certificate or refusal");
    perfect->add_option("matrix", input, "matrix JSON, - for stdin");
    auto *neighbors = app.add_subcommand("neighbors", "contiguous perfect matrices along all dual rays");
    neighbors->add_option("matrix", input, "matrix JSON, - for stdin");
    auto *walk = app.add_subcommand("walk", "breadth-first neighborhood graph");
    walk->add_option("matrix", input, "matrix JSON, - for stdin");
    walk->add_option("--budget", budget, "number of nodes to expand")->required();
    walk->add_option("--dot", dot_path, "also write the graph in DOT format");
    auto *lift = app.add_subcommand("lift", "duplicate the last row and column");
    lift->add_option("matrix", input, "matrix JSON, - for stdin");
    lift->add_option("--witness", witness, "minimal vector with last entry >= 2, e.g. \"0,1,2\"")->required();
    auto *embed = app.add_subcommand("embed", "copositive form of a classical perfect form");
    embed->add_option("matrix", input, "matrix JSON, - for stdin");
    auto *certify = app.add_subcommand("certify", "CP factorization or perfect separating certificate");
    certify->add_option("matrix", input, "matrix JSON, - for stdin");
    certify->add_option("--budget", certify_budget, "maximum number of pivots");
    auto *classify = app.add_subcommand("classify", "definiteness, nonnegativity, exceptionality");
    classify->add_option("matrix", input, "matrix JSON, - for stdin");
    classify->add_option("--witness", witness_path, "doubly nonnegative witness matrix JSON");
    auto *fixtures = app.add_subcommand("fixtures", "named matrices: I, E, Qdnn, QA:n, P:k");
    fixtures->add_option("--name", name, "fixture name")->required();
    auto *canon = app.add_subcommand("canon", "canonical form under simultaneous permutations");
    canon->add_option("matrix", input, "matrix JSON, - for stdin");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kMalformed;
    }

    using namespace copos;
    try {
        if (*copmin) {
            emit(io::min_json(copositive_min(load(input))));
        } else if (*perfect) {
            auto outcome = is_perfect_copositive(load(input));
            if (auto *c = std::get_if<PerfectCertificate>(&outcome)) {
                json j{{"perfect", true}};
                j.update(io::certificate_json(*c));
                emit(j);
            } else {
                emit(io::refusal_json(std::get<PerfectRefusal>(outcome)));
            }
        } else if (*neighbors) {
            PerfectCertificate p = normalized(require_perfect(load(input)));
            json steps = json::array();
            for (const auto &s : neighbors_all(p))
                steps.push_back(io::step_json(s));
            emit(json{{"matrix", io::matrix_json(p.matrix)}, {"steps", std::move(steps)}});
        } else if (*walk) {
            PerfectCertificate p = normalized(require_perfect(load(input)));
            NeighborGraph g = traverse(p.matrix, budget);
            if (!dot_path.empty()) {
                std::ofstream out(dot_path);
                if (!out)
                    return fail("malformed", "cannot write " + dot_path, kMalformed);
                out << to_dot(g);
            }
            emit(io::graph_json(g));
        } else if (*lift) {
            emit(io::matrix_json(copos::lift(load(input), parse_witness(witness))));
        } else if (*embed) {
            EmbeddingResult e = embed_classical(load(input));
            auto int_rows = [](const IntMatrix &m) {
                json rows = json::array();
                for (std::size_t i = 0; i < m.n; ++i) {
                    VecZ r;
                    for (std::size_t j = 0; j < m.n; ++j)
                        r.push_back(m(i, j));
                    rows.push_back(io::vec_json(r));
                }
                return rows;
            };
            emit(json{{"q", e.q.get_str()},
                      {"U", int_rows(e.u)},
                      {"U_inverse", int_rows(e.u_inverse)},
                      {"transformed", io::matrix_json(e.transformed)},
                      {"minkowski_reduced", e.minkowski_reduced},
                      {"certificate", io::certificate_json(e.certificate)}});
        } else if (*certify) {
            CpVerdict v = cp_certify(load(input), certify_budget);
            emit(io::cp_verdict_json(v));
            if (v.kind == CpVerdict::Kind::NotCp)
                return kNotCp;
            if (v.kind == CpVerdict::Kind::Inconclusive)
                return kUndecided;
        } else if (*classify) {
            std::optional<SymMat> w;
            if (!witness_path.empty())
                w = load(witness_path);
            emit(io::label_json(classify_component(load(input), w)));
        } else if (*fixtures) {
            emit(io::matrix_json(fixture_by_name(name)));
        } else if (*canon) {
            auto [c, perm] = perm_canonical_with_perm(load(input));
            json p = json::array();
            for (auto i : perm)
                p.push_back(i);
            emit(json{{"canonical", io::matrix_json(c)}, {"permutation", std::move(p)}});
        }
    } catch (const FormatError &e) {
        return fail("malformed", e.what(), kMalformed);
    } catch (const UndecidedError &e) {
        return fail("undecided", e.what(), kUndecided);
    } catch (const PreconditionError &e) {
        return fail("precondition", e.what(), kPrecondition);
    } catch (const InternalError &e) {
        return fail("internal", e.what(), kInternal);
    }
    return kOk;
}
