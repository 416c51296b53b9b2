// Command-line front end: matrix diagnostics, generalized inverses, core-EP
// style decompositions, partial-order checks, residual audits, and generation
// of structured test matrices. Exit codes: 0 success (order: relation holds),
// 1 order does not hold, 2 any error.
#include "coreep/coreep.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace {

using coreep::Complex;
using coreep::ComplexMatrix;
using coreep::Index;
using nlohmann::json;

struct Options {
    bool json_output = false;
    double rtol = 1e-10;
    double atol = 0.0;

    coreep::ToleranceContext tol() const { return coreep::ToleranceContext(atol, rtol); }
};

std::string fmt_residual(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6e", v);
    return buf;
}

json matrix_to_json(const ComplexMatrix& m) {
    json entries = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Index j = 0; j < m.cols(); ++j) row.push_back(coreep::format_complex(m(i, j)));
        entries.push_back(row);
    }
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

json residuals_to_json(const std::map<std::string, double>& residuals) {
    json out = json::object();
    for (const auto& [name, value] : residuals) out[name] = value;
    return out;
}

void emit(const json& doc) { std::cout << doc.dump(2) << "\n"; }

void print_matrix_block(const std::string& label, const ComplexMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) {
        std::cout << "# " << label << ": (empty)\n";
        return;
    }
    std::cout << "# " << label << "\n" << coreep::format_matrix(m);
}

void print_residuals_text(const std::map<std::string, double>& residuals) {
    for (const auto& [name, value] : residuals)
        std::cout << "# residual " << name << ": " << fmt_residual(value) << "\n";
}

coreep::Relation relation_from_name(const std::string& name) {
    for (coreep::Relation rel :
         {coreep::Relation::minus, coreep::Relation::sharp, coreep::Relation::core,
          coreep::Relation::drazin, coreep::Relation::core_ep, coreep::Relation::cn,
          coreep::Relation::core_minus}) {
        if (name == coreep::relation_name(rel)) return rel;
    }
    throw coreep::Error("unknown relation: " + name);
}

coreep::OrderVerdict dispatch_order(coreep::Relation rel, const ComplexMatrix& a,
                                    const ComplexMatrix& b, const coreep::ToleranceContext& tol) {
    switch (rel) {
        case coreep::Relation::minus: return coreep::le_minus(a, b, tol);
        case coreep::Relation::sharp: return coreep::le_sharp(a, b, tol);
        case coreep::Relation::core: return coreep::le_core(a, b, tol);
        case coreep::Relation::drazin: return coreep::le_drazin(a, b, tol);
        case coreep::Relation::core_ep: return coreep::le_core_ep(a, b, tol);
        case coreep::Relation::cn: return coreep::le_cn(a, b, tol);
        case coreep::Relation::core_minus: return coreep::le_core_minus(a, b, tol);
    }
    throw coreep::Error("unknown relation");
}

coreep::InverseResult dispatch_inverse(const std::string& kind, const ComplexMatrix& m,
                                       const coreep::ToleranceContext& tol) {
    if (kind == "mp") return coreep::moore_penrose(m, tol);
    if (kind == "drazin") return coreep::drazin(m, tol);
    if (kind == "group") return coreep::group_inverse(m, tol);
    if (kind == "core") return coreep::core_inverse(m, tol);
    if (kind == "coreep") return coreep::core_ep_inverse(m, tol);
    throw coreep::Error("unknown inverse kind: " + kind);
}

int run_info(const Options& opt, const std::string& file) {
    const ComplexMatrix m = coreep::read_matrix_file(file);
    const auto tol = opt.tol();
    const Index rank = coreep::rank(m, tol);
    std::optional<coreep::IndexReport> report;
    if (m.rows() == m.cols()) report = coreep::index_report(m, tol);

    if (opt.json_output) {
        json doc{{"schema", 1}, {"op", "info"},          {"rows", m.rows()},
                 {"cols", m.cols()}, {"rank", rank}};
        if (report) {
            doc["index"] = report->index;
            doc["stabilized"] = report->stabilized;
            doc["rank_chain"] = report->rank_chain;
            doc["core_rank"] = report->index == 0
                                   ? m.rows()
                                   : report->rank_chain[static_cast<std::size_t>(report->index) - 1];
        }
        emit(doc);
    } else {
        std::cout << "rows: " << m.rows() << "\n";
        std::cout << "cols: " << m.cols() << "\n";
        std::cout << "rank: " << rank << "\n";
        if (report) {
            std::cout << "index: " << report->index << "\n";
            const Index core_rank =
                report->index == 0
                    ? m.rows()
                    : report->rank_chain[static_cast<std::size_t>(report->index) - 1];
            std::cout << "core rank: " << core_rank << "\n";
            std::cout << "stabilized: " << (report->stabilized ? "true" : "false") << "\n";
            std::cout << "rank chain:";
            for (Index r : report->rank_chain) std::cout << " " << r;
            std::cout << "\n";
        }
    }
    return 0;
}

int run_inv(const Options& opt, const std::string& kind, const std::string& file) {
    const ComplexMatrix m = coreep::read_matrix_file(file);
    const coreep::InverseResult result = dispatch_inverse(kind, m, opt.tol());

    if (opt.json_output) {
        emit(json{{"schema", 1},
                  {"op", "inv"},
                  {"kind", kind},
                  {"route", coreep::route_name(result.route)},
                  {"residuals", residuals_to_json(result.residuals)},
                  {"warnings", result.warnings},
                  {"value", matrix_to_json(result.value)}});
    } else {
        std::cout << "# inverse: " << kind << "\n";
        std::cout << "# route: " << coreep::route_name(result.route) << "\n";
        print_residuals_text(result.residuals);
        for (const auto& w : result.warnings) std::cout << "# warning: " << w << "\n";
        std::cout << coreep::format_matrix(result.value);
    }
    return 0;
}

int run_decomp(const Options& opt, const std::string& kind, const std::string& file) {
    const ComplexMatrix m = coreep::read_matrix_file(file);
    const auto tol = opt.tol();

    if (kind == "coreep") {
        const coreep::CoreEPParts parts = coreep::core_ep_decompose(m, tol);
        if (opt.json_output) {
            emit(json{{"schema", 1},
                      {"op", "decomp"},
                      {"kind", kind},
                      {"index", parts.idx},
                      {"a1", matrix_to_json(parts.a1)},
                      {"a2", matrix_to_json(parts.a2)}});
        } else {
            std::cout << "# index: " << parts.idx << "\n";
            print_matrix_block("a1", parts.a1);
            print_matrix_block("a2", parts.a2);
        }
        return 0;
    }
    if (kind == "cn") {
        const coreep::CoreNilpotentParts parts = coreep::core_nilpotent_decompose(m, tol);
        if (opt.json_output) {
            emit(json{{"schema", 1},
                      {"op", "decomp"},
                      {"kind", kind},
                      {"index", parts.idx},
                      {"core", matrix_to_json(parts.core)},
                      {"nil", matrix_to_json(parts.nil)}});
        } else {
            std::cout << "# index: " << parts.idx << "\n";
            print_matrix_block("core", parts.core);
            print_matrix_block("nil", parts.nil);
        }
        return 0;
    }
    if (kind == "canonical" || kind == "coreform") {
        const coreep::CanonicalForm form =
            kind == "canonical" ? coreep::canonical_form(m, tol) : coreep::core_form(m, tol);
        if (opt.json_output) {
            emit(json{{"schema", 1},
                      {"op", "decomp"},
                      {"kind", kind},
                      {"core_rank", form.core_rank},
                      {"index", form.idx},
                      {"u", matrix_to_json(form.u)},
                      {"t", matrix_to_json(form.t)},
                      {"s", matrix_to_json(form.s)},
                      {"n", matrix_to_json(form.n)}});
        } else {
            std::cout << "# core rank: " << form.core_rank << "\n";
            std::cout << "# index: " << form.idx << "\n";
            print_matrix_block("u", form.u);
            print_matrix_block("t", form.t);
            print_matrix_block("s", form.s);
            print_matrix_block("n", form.n);
        }
        return 0;
    }
    throw coreep::Error("unknown decomposition kind: " + kind);
}

int run_order(const Options& opt, const std::string& relation, const std::string& file_a,
              const std::string& file_b) {
    const ComplexMatrix a = coreep::read_matrix_file(file_a);
    const ComplexMatrix b = coreep::read_matrix_file(file_b);
    const coreep::Relation rel = relation_from_name(relation);
    const coreep::OrderVerdict verdict = dispatch_order(rel, a, b, opt.tol());

    if (opt.json_output) {
        json doc{{"schema", 1},
                 {"op", "order"},
                 {"relation", relation},
                 {"holds", verdict.holds},
                 {"residuals", residuals_to_json(verdict.residuals)}};
        if (verdict.rank_witness) {
            doc["rank_witness"] = json{{"rank_a", verdict.rank_witness->rank_a},
                                       {"rank_b", verdict.rank_witness->rank_b},
                                       {"rank_diff", verdict.rank_witness->rank_diff}};
        }
        emit(doc);
    } else {
        std::cout << "relation: " << relation << "\n";
        std::cout << "holds: " << (verdict.holds ? "true" : "false") << "\n";
        for (const auto& [name, value] : verdict.residuals)
            std::cout << "residual " << name << ": " << fmt_residual(value) << "\n";
        if (verdict.rank_witness) {
            std::cout << "rank a: " << verdict.rank_witness->rank_a << "\n";
            std::cout << "rank b: " << verdict.rank_witness->rank_b << "\n";
            std::cout << "rank b-a: " << verdict.rank_witness->rank_diff << "\n";
        }
    }
    return verdict.holds ? 0 : 1;
}

int run_verify(const Options& opt, const std::string& file) {
    const ComplexMatrix m = coreep::read_matrix_file(file);
    const auto tol = opt.tol();
    const bool square = m.rows() == m.cols();

    struct Entry {
        std::string kind;
        std::string status;  // ok | skipped | failed
        std::string reason;
        double max_residual = 0.0;
        std::map<std::string, double> residuals;
    };
    std::vector<Entry> entries;
    bool any_failed = false;

    for (const std::string kind : {"mp", "drazin", "group", "core", "coreep"}) {
        Entry e;
        e.kind = kind;
        if (!square && kind != "mp") {
            e.status = "skipped";
            e.reason = "matrix is not square";
            entries.push_back(e);
            continue;
        }
        try {
            const coreep::InverseResult r = dispatch_inverse(kind, m, tol);
            e.status = "ok";
            e.residuals = r.residuals;
            for (const auto& [name, value] : r.residuals)
                e.max_residual = std::max(e.max_residual, value);
        } catch (const coreep::IndexTooLarge& ex) {
            e.status = "skipped";
            e.reason = ex.what();
        } catch (const coreep::ResidualTooLarge& ex) {
            e.status = "failed";
            e.reason = ex.what();
            any_failed = true;
        } catch (const coreep::RouteDisagreement& ex) {
            e.status = "failed";
            e.reason = ex.what();
            any_failed = true;
        }
        entries.push_back(e);
    }

    if (opt.json_output) {
        json results = json::array();
        for (const auto& e : entries) {
            json r{{"kind", e.kind}, {"status", e.status}};
            if (e.status == "ok") {
                r["max_residual"] = e.max_residual;
                r["residuals"] = residuals_to_json(e.residuals);
            } else {
                r["reason"] = e.reason;
            }
            results.push_back(r);
        }
        emit(json{{"schema", 1},
                  {"op", "verify"},
                  {"overall", any_failed ? "failed" : "ok"},
                  {"results", results}});
    } else {
        for (const auto& e : entries) {
            if (e.status == "ok")
                std::cout << e.kind << ": ok (max residual " << fmt_residual(e.max_residual)
                          << ")\n";
            else
                std::cout << e.kind << ": " << e.status << " (" << e.reason << ")\n";
        }
        std::cout << "overall: " << (any_failed ? "failed" : "ok") << "\n";
    }
    return any_failed ? 2 : 0;
}

struct GenArgs {
    Index n = 4;
    Index rank = -1;  // -1: derived from n and index
    Index index = 1;
    std::uint64_t seed = 0;
    double cond = 10.0;
    std::string relation;
    bool negate = false;
    std::string out;
};

int run_gen(const Options& opt, const GenArgs& args) {
    coreep::GenSpec spec;
    spec.n = args.n;
    spec.nilpotency_index = args.index;
    spec.core_rank = args.rank >= 0 ? args.rank : (args.index == 0 ? args.n : args.n - args.index);
    spec.seed = args.seed;
    spec.conditioning = args.cond;

    if (args.relation.empty()) {
        const coreep::StructuredMatrix sm = coreep::matrix_with_structure(spec);
        if (!args.out.empty()) coreep::write_matrix_file(args.out, sm.matrix);
        if (opt.json_output) {
            json doc{{"schema", 1}, {"op", "gen"}, {"matrix", matrix_to_json(sm.matrix)}};
            if (!args.out.empty()) doc["written"] = json::array({args.out});
            emit(doc);
        } else if (args.out.empty()) {
            std::cout << coreep::format_matrix(sm.matrix);
        } else {
            std::cout << "wrote " << args.out << "\n";
        }
        return 0;
    }

    const coreep::Relation rel = relation_from_name(args.relation);
    const coreep::PairKind kind =
        args.negate ? coreep::PairKind::violates : coreep::PairKind::satisfies;
    const coreep::OrderPair pair = coreep::order_pair(spec, rel, kind);

    std::vector<std::string> written;
    if (!args.out.empty()) {
        written.push_back(args.out + ".A.mat");
        written.push_back(args.out + ".B.mat");
        coreep::write_matrix_file(written[0], pair.a);
        coreep::write_matrix_file(written[1], pair.b);
    }
    if (opt.json_output) {
        json doc{{"schema", 1},
                 {"op", "gen"},
                 {"relation", args.relation},
                 {"kind", args.negate ? "violates" : "satisfies"},
                 {"a", matrix_to_json(pair.a)},
                 {"b", matrix_to_json(pair.b)}};
        if (!written.empty()) doc["written"] = written;
        emit(doc);
    } else {
        if (written.empty())
            throw coreep::Error("gen: pair output in text mode requires --out PREFIX");
        for (const auto& path : written) std::cout << "wrote " << path << "\n";
    }
    return 0;
}

std::string error_type(const std::exception& e) {
    if (dynamic_cast<const coreep::ParseError*>(&e)) return "parse";
    if (dynamic_cast<const coreep::RaggedRows*>(&e)) return "ragged_rows";
    if (dynamic_cast<const coreep::ShapeMismatch*>(&e)) return "shape";
    if (dynamic_cast<const coreep::NonOrthonormalInput*>(&e)) return "non_orthonormal";
    if (dynamic_cast<const coreep::IndexTooLarge*>(&e)) return "index_too_large";
    if (dynamic_cast<const coreep::RouteDisagreement*>(&e)) return "route_disagreement";
    if (dynamic_cast<const coreep::CharacterizationDisagreement*>(&e))
        return "characterization_disagreement";
    if (dynamic_cast<const coreep::ResidualTooLarge*>(&e)) return "residual_too_large";
    if (dynamic_cast<const coreep::InfeasibleSpec*>(&e)) return "infeasible_spec";
    if (dynamic_cast<const coreep::Error*>(&e)) return "error";
    return "internal";
}

int report_error(const Options& opt, const std::exception& e) {
    if (opt.json_output) {
        json err{{"type", error_type(e)}, {"message", e.what()}};
        if (const auto* pe = dynamic_cast<const coreep::ParseError*>(&e)) {
            err["line"] = pe->line;
            err["column"] = pe->column;
        } else if (const auto* rr = dynamic_cast<const coreep::RaggedRows*>(&e)) {
            err["line"] = rr->line;
        }
        emit(json{{"schema", 1}, {"error", err}});
    } else {
        std::cerr << "error: " << e.what() << "\n";
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"core-EP decompositions, generalized inverses, and matrix partial orders"};
    app.require_subcommand(1);

    std::string format = "text";
    Options opt;
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    app.add_option("--tol", opt.rtol, "relative tolerance")->capture_default_str();
    app.add_option("--atol", opt.atol, "absolute tolerance")->capture_default_str();

    auto* info = app.add_subcommand("info", "rank, index, and rank-chain diagnostics");
    std::string info_file;
    info->add_option("file", info_file, "matrix file")->required();

    auto* inv = app.add_subcommand("inv", "generalized inverses with residual checks");
    std::string inv_kind, inv_file;
    inv->add_option("kind", inv_kind, "mp | drazin | group | core | coreep")
        ->required()
        ->check(CLI::IsMember({"mp", "drazin", "group", "core", "coreep"}));
    inv->add_option("file", inv_file, "matrix file")->required();

    auto* decomp = app.add_subcommand("decomp", "matrix decompositions");
    std::string decomp_kind, decomp_file;
    decomp->add_option("kind", decomp_kind, "coreep | cn | canonical | coreform")
        ->required()
        ->check(CLI::IsMember({"coreep", "cn", "canonical", "coreform"}));
    decomp->add_option("file", decomp_file, "matrix file")->required();

    auto* order = app.add_subcommand("order", "partial-order checks (exit 0 holds, 1 not)");
    std::string order_relation, order_file_a, order_file_b;
    order
        ->add_option("relation", order_relation,
                     "minus | sharp | core | drazin | coreep | cn | coreminus")
        ->required()
        ->check(CLI::IsMember({"minus", "sharp", "core", "drazin", "coreep", "cn", "coreminus"}));
    order->add_option("file_a", order_file_a, "left matrix file")->required();
    order->add_option("file_b", order_file_b, "right matrix file")->required();

    auto* verify = app.add_subcommand("verify", "residual audit of all inverses");
    std::string verify_file;
    verify->add_option("file", verify_file, "matrix file")->required();

    auto* gen = app.add_subcommand("gen", "generate structured matrices and order pairs");
    GenArgs gen_args;
    gen->add_option("--n", gen_args.n, "matrix size")->capture_default_str();
    gen->add_option("--rank", gen_args.rank, "core rank (default: n - index)");
    gen->add_option("--index", gen_args.index, "nilpotency index")->capture_default_str();
    gen->add_option("--seed", gen_args.seed, "random seed")->capture_default_str();
    gen->add_option("--cond", gen_args.cond, "conditioning of the regular block")
        ->capture_default_str();
    gen->add_option("--relation", gen_args.relation, "emit an order pair for this relation")
        ->check(CLI::IsMember({"minus", "sharp", "core", "drazin", "coreep", "cn", "coreminus"}));
    gen->add_flag("--negate", gen_args.negate, "emit a pair violating the relation");
    gen->add_option("-o,--out", gen_args.out, "output file (pairs: prefix for .A.mat/.B.mat)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    opt.json_output = format == "json";
    try {
        if (*info) return run_info(opt, info_file);
        if (*inv) return run_inv(opt, inv_kind, inv_file);
        if (*decomp) return run_decomp(opt, decomp_kind, decomp_file);
        if (*order) return run_order(opt, order_relation, order_file_a, order_file_b);
        if (*verify) return run_verify(opt, verify_file);
        if (*gen) return run_gen(opt, gen_args);
    } catch (const std::exception& e) {
        return report_error(opt, e);
    }
    return 2;
}
