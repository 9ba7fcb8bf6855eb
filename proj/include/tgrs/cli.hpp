#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tgrs/deep_holes.hpp"
#include "tgrs/ecp.hpp"
#include "tgrs/equivalence.hpp"
#include "tgrs/io.hpp"

namespace tgrs::cli {

inline constexpr int kOk = 0;
inline constexpr int kTooManyErrors = 2;
inline constexpr int kInconclusive = 3;
inline constexpr int kBadInput = 64;
inline constexpr int kCapExceeded = 65;

/// One parsed invocation: the verb, where the spec comes from, and the
/// global knobs shared by every verb.
struct JobRequest {
    std::string command;
    std::string spec_source = "-";  // file path, or "-" for standard input
    bool json = false;
    std::optional<std::uint64_t> seed;
    std::uint64_t cap = 0;  // 0 keeps each operation's default

    std::uint64_t word_cap() const { return cap ? cap : 10000000; }
    std::uint64_t syndrome_cap() const { return cap ? cap : 1000000; }
    std::uint64_t pair_budget() const { return cap ? cap : 100000; }
    std::uint64_t equiv_cap() const { return cap ? cap : 1000000; }
};

namespace detail {

inline Json read_json_file(const std::string& source, std::istream& in) {
    std::string text;
    if (source == "-") {
        text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    } else {
        std::ifstream file(source);
        if (!file) throw SyntaxError("cannot open " + source);
        text.assign(std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>());
    }
    return Json::parse(text);
}

inline std::string field_name(const FieldPtr& f) {
    return "GF(" + std::to_string(f->q()) + ")";
}

inline std::string bracket_row(const FMatrix& m, std::size_t r) {
    std::string out = "[";
    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (c) out += ", ";
        out += m.at(r, c).str();
    }
    return out + "]";
}

inline void print_matrix(std::ostream& out, const std::string& name, const FMatrix& m) {
    out << name << " =\n";
    for (std::size_t r = 0; r < m.rows(); ++r) out << "  " << bracket_row(m, r) << "\n";
}

inline std::string index_set(const std::vector<std::size_t>& zs) {
    std::string out = "{";
    for (std::size_t i = 0; i < zs.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(zs[i]);
    }
    return out + "}";
}

/// Either a twisted spec or a bare code descriptor, depending on the keys
/// present in the input document.
struct SpecOrCode {
    std::optional<TwistedSpec> spec;
    std::optional<LinearCode> code;

    LinearCode as_code() const { return spec ? twisted_code(*spec) : *code; }
    const TwistedSpec& as_spec() const {
        if (!spec) throw SyntaxError("this command needs a twisted spec, not a bare code");
        return *spec;
    }
};

inline SpecOrCode load_input(const JobRequest& req, std::istream& in) {
    auto j = read_json_file(req.spec_source, in);
    SpecOrCode out;
    if (j.is_object() && j.contains("generator"))
        out.code = code_from_json(j);
    else
        out.spec = spec_from_json(j);
    return out;
}

inline Json witness_to_json(const MonomialWitness& w) {
    Json perm = Json::array();
    for (auto p : w.perm) perm.push_back(p);
    return Json{{"perm", perm}, {"diag", vector_to_json(w.diag)}};
}

inline const char* route_name(GrsVerdict::Route r) {
    switch (r) {
        case GrsVerdict::Route::SQUARE_DIMENSION: return "square_dimension";
        case GrsVerdict::Route::DUAL_SQUARE_DISTANCE: return "dual_square_distance";
        case GrsVerdict::Route::EXHAUSTION: return "exhaustion";
        default: return "none";
    }
}

inline int emit(std::ostream& out, const JobRequest& req, const Json& machine, const std::string& human,
                int code = kOk) {
    if (req.json)
        out << machine.dump(2) << "\n";
    else
        out << human;
    return code;
}

inline int do_classify(const SpecOrCode& input, const JobRequest& req, std::ostream& out) {
    SingletonClass cls = input.spec ? classify_twisted(*input.spec, req.word_cap())
                                    : input.code->classify_singleton(req.word_cap());
    auto C = input.as_code();
    std::string human = std::string(singleton_tag_name(cls.tag)) + " [" + std::to_string(C.length()) +
                        "," + std::to_string(C.dimension()) + "," + std::to_string(cls.d) + "] over " +
                        field_name(C.field()) + "\n";
    Json j{{"tag", singleton_tag_name(cls.tag)},
           {"length", C.length()},
           {"dimension", C.dimension()},
           {"distance", cls.d},
           {"dual_distance", cls.dual_d},
           {"field", field_to_json(C.field())}};
    return emit(out, req, j, human);
}

inline int do_matrices(const TwistedSpec& spec, const JobRequest& req, std::ostream& out) {
    auto G = twisted_generator(spec);
    auto H = spec.extended ? etgrs_parity_check(spec) : twisted_code(spec).parity_check();
    if (req.json)
        return emit(out, req, Json{{"generator", matrix_to_json(G)}, {"parity_check", matrix_to_json(H)}},
                    "");
    print_matrix(out, "G", G);
    print_matrix(out, "H", H);
    return kOk;
}

inline int do_decode(const TwistedSpec& spec, const std::string& received, const JobRequest& req,
                     std::ostream& out) {
    auto y = parse_vector(spec.field, received);
    auto res = decode(spec, y);

    const char* tag = res.tag == DecodeOutcome::Tag::ALREADY_CODEWORD ? "ALREADY_CODEWORD"
                      : res.tag == DecodeOutcome::Tag::CODEWORD       ? "CODEWORD"
                                                                      : "TOO_MANY_ERRORS";
    Json kernel = Json::array();
    for (const auto& v : res.kernel) kernel.push_back(vector_to_json(v));
    Json zeros = Json::array();
    for (auto z : res.zeros) zeros.push_back(z);
    Json j{{"outcome", tag},
           {"t", res.t},
           {"syndrome", vector_to_json(res.syndrome)},
           {"kernel", kernel},
           {"u_prime", vector_to_json(res.u_prime)},
           {"locator", vector_to_json(res.locator)},
           {"zeros", zeros},
           {"error", vector_to_json(res.e)},
           {"codeword", vector_to_json(res.c)}};

    std::ostringstream human;
    human << tag << "\n";
    human << "t: " << res.t << "\n";
    human << "syndrome: " << format_vector(res.syndrome) << "\n";
    if (res.tag != DecodeOutcome::Tag::ALREADY_CODEWORD) {
        human << "kernel dimension: " << res.kernel.size() << "\n";
        if (!res.u_prime.empty()) human << "u': " << format_vector(res.u_prime) << "\n";
        if (!res.locator.empty()) human << "locator: " << format_vector(res.locator) << "\n";
        if (!res.zeros.empty()) human << "zeros (1-indexed): " << index_set(res.zeros) << "\n";
    }
    if (res.tag != DecodeOutcome::Tag::TOO_MANY_ERRORS) {
        human << "error: " << format_vector(res.e) << "\n";
        human << "codeword: " << format_vector(res.c) << "\n";
    }
    int code = res.tag == DecodeOutcome::Tag::TOO_MANY_ERRORS ? kTooManyErrors : kOk;
    return emit(out, req, j, human.str(), code);
}

inline int do_ecp(const TwistedSpec& spec, bool verify, const JobRequest& req, std::ostream& out) {
    auto pair = build_ecp(spec);
    if (!verify) {
        Json j{{"t", pair.t},
               {"parity", pair.odd_gap ? "odd" : "even"},
               {"A", matrix_to_json(pair.GA)},
               {"B", matrix_to_json(pair.GB)}};
        std::ostringstream human;
        human << "t = " << pair.t << " (" << (pair.odd_gap ? "odd" : "even") << " gap)\n";
        std::ostringstream tmp;
        print_matrix(tmp, "G_A", pair.GA);
        print_matrix(tmp, "G_B", pair.GB);
        human << tmp.str();
        return emit(out, req, j, human.str());
    }
    auto rep = verify_ecp(pair.A, pair.B, twisted_code(spec), pair.t, req.word_cap());
    Json j{{"t", pair.t},
           {"product_in_dual", rep.product_in_dual},
           {"dual_b_distance", rep.dual_b_distance},
           {"a_dimension", rep.a_dimension},
           {"distance_sum", rep.distance_sum},
           {"all", rep.all()}};
    std::ostringstream human;
    human << "product_in_dual: " << (rep.product_in_dual ? "true" : "false") << "\n"
          << "dual_b_distance: " << (rep.dual_b_distance ? "true" : "false") << "\n"
          << "a_dimension: " << (rep.a_dimension ? "true" : "false") << "\n"
          << "distance_sum: " << (rep.distance_sum ? "true" : "false") << "\n"
          << "all: " << (rep.all() ? "true" : "false") << "\n";
    return emit(out, req, j, human.str());
}

inline int do_schur(const SpecOrCode& input, bool on_dual, SchurRoute route, const JobRequest& req,
                    std::ostream& out) {
    auto C = input.as_code();
    if (on_dual) C = C.dual(0);
    auto v = schur_certificate(C, route);
    Json j{{"tag", grs_verdict_name(v.tag)},
           {"route", route_name(v.route)},
           {"square_dim", v.square_dim},
           {"expected_square_dim", v.expected_square_dim},
           {"dual_square_zero_column", v.dual_square_zero_column},
           {"dual_square_weight_one", v.dual_square_weight_one}};
    std::ostringstream human;
    human << grs_verdict_name(v.tag);
    if (v.route == GrsVerdict::Route::SQUARE_DIMENSION)
        human << ": dim(C^2) = " << v.square_dim << ", GRS gives " << v.expected_square_dim;
    else if (v.dual_square_weight_one)
        human << ": dual square has a weight-1 word";
    else if (v.dual_square_zero_column)
        human << ": dual square has a zero column";
    else if (v.route == GrsVerdict::Route::DUAL_SQUARE_DISTANCE)
        human << ": dual square is clean";
    human << "\n";
    return emit(out, req, j, human.str(), v.tag == GrsVerdict::Tag::INCONCLUSIVE ? kInconclusive : kOk);
}

inline int do_equiv_search(const SpecOrCode& input, const JobRequest& req, std::ostream& out) {
    auto v = exhaustive_grs_search(input.as_code(), req.pair_budget(), req.equiv_cap());
    Json sets = Json::array();
    for (const auto& s : v.witness_sets) sets.push_back(vector_to_json(s));
    Json j{{"tag", grs_verdict_name(v.tag)},
           {"candidates_tested", v.candidates_tested},
           {"witness_sets", sets},
           {"witness", v.witness ? witness_to_json(*v.witness) : Json(nullptr)},
           {"witness_set", v.witness ? vector_to_json(v.witness_set) : Json(nullptr)}};
    std::ostringstream human;
    human << grs_verdict_name(v.tag) << "\n";
    human << "candidates tested: " << v.candidates_tested << "\n";
    if (v.witness) {
        human << "equivalent evaluation sets: " << v.witness_sets.size() << "\n";
        human << "first witness set: " << format_vector(v.witness_set) << "\n";
    }
    return emit(out, req, j, human.str());
}

inline int do_equiv_pair(const SpecOrCode& input, const std::string& other_path, const JobRequest& req,
                         std::ostream& out, std::istream& in) {
    JobRequest other_req = req;
    other_req.spec_source = other_path;
    auto other = load_input(other_req, in);
    auto w = monomial_equivalent(input.as_code(), other.as_code(), req.equiv_cap());
    Json j{{"equivalent", w.has_value()}, {"witness", w ? witness_to_json(*w) : Json(nullptr)}};
    std::ostringstream human;
    if (w) {
        human << "equivalent\n";
        human << "permutation: ";
        for (std::size_t i = 0; i < w->perm.size(); ++i) human << (i ? "," : "") << w->perm[i];
        human << "\n";
        human << "diagonal: " << format_vector(w->diag) << "\n";
    } else {
        human << "not equivalent\n";
    }
    return emit(out, req, j, human.str());
}

inline int do_deephole(const TwistedSpec& spec, bool check, int which_class, const JobRequest& req,
                       std::ostream& out) {
    auto dh = deep_hole(spec, which_class);
    if (!check) {
        Json j{{"class", which_class}, {"t", dh.t}, {"s", dh.s.str()}, {"u", vector_to_json(dh.u)}};
        std::ostringstream human;
        human << "t = " << dh.t << "\n"
              << "s = " << dh.s.str() << "\n"
              << "u = " << format_vector(dh.u) << "\n";
        return emit(out, req, j, human.str());
    }
    auto D = twisted_code(spec).dual(0);
    auto radius = covering_radius(D, req.syndrome_cap());
    auto dist = error_distance(dh.u, D, req.word_cap());
    bool deep = dist == radius;
    Json j{{"class", which_class},
           {"u", vector_to_json(dh.u)},
           {"radius", radius},
           {"distance", dist},
           {"is_deep_hole", deep}};
    std::ostringstream human;
    human << "radius = " << radius << "\n"
          << "distance = " << dist << "\n"
          << "deep hole: " << (deep ? "yes" : "no") << "\n";
    return emit(out, req, j, human.str());
}

inline int do_radius(const SpecOrCode& input, const JobRequest& req, std::ostream& out) {
    auto C = input.spec ? twisted_code(*input.spec).dual(0) : *input.code;
    auto radius = covering_radius(C, req.syndrome_cap());
    return emit(out, req, Json{{"radius", radius}}, std::to_string(radius) + "\n");
}

} // namespace detail

/// Parse and run one invocation. Arguments come in natural order without the
/// program name; output and errors go to the supplied streams so the whole
/// front end is testable in-process.
inline int run(std::vector<std::string> args, std::istream& in, std::ostream& out, std::ostream& err) {
    JobRequest req;
    std::string received, other_path;
    bool schur_dual = false, schur_dim = false, schur_dist = false;
    int hole_class = 1;

    CLI::App app{"Twisted generalized Reed-Solomon toolkit"};
    app.fallthrough();
    app.require_subcommand(1);
    app.add_option("--spec", req.spec_source, "Spec or code JSON file, - for standard input");
    app.add_flag("--json", req.json, "Emit JSON instead of text");
    auto* seed_opt = app.add_option("--seed", "Seed for randomized subcommands");
    app.add_option("--cap", req.cap, "Enumeration and search budget override");

    auto* classify = app.add_subcommand("classify", "Classify the code against the Singleton bound");
    auto* matrices = app.add_subcommand("matrices", "Print the defining generator and parity check");
    auto* dec = app.add_subcommand("decode", "Run the error-correcting-pair decoder");
    dec->add_option("--received", received, "Received word, comma-separated elements")->required();
    auto* ecp = app.add_subcommand("ecp", "Error-correcting pair operations");
    auto* ecp_build = ecp->add_subcommand("build", "Construct the (A, B) pair");
    auto* ecp_verify = ecp->add_subcommand("verify", "Check the four pair conditions");
    ecp->require_subcommand(1);
    auto* schur = app.add_subcommand("schur", "Schur-square non-GRS certificate");
    schur->add_flag("--dual", schur_dual, "Certify the dual code instead");
    auto* dim_flag = schur->add_flag("--dim", schur_dim, "Force the square-dimension statistic");
    schur->add_flag("--dist", schur_dist, "Force the dual-square-distance statistic")->excludes(dim_flag);
    auto* equiv = app.add_subcommand("equiv", "Monomial equivalence to GRS codes");
    auto* equiv_search = equiv->add_subcommand("search", "Exhaust all evaluation sets");
    auto* equiv_pair = equiv->add_subcommand("pair", "Compare against one other spec or code");
    equiv_pair->add_option("other", other_path, "Second spec or code JSON file")->required();
    equiv->require_subcommand(1);
    auto* hole = app.add_subcommand("deephole", "Deep holes of the dual code");
    auto* hole_vector = hole->add_subcommand("vector", "Print the candidate deep-hole vector");
    auto* hole_check = hole->add_subcommand("check", "Compare its distance with the covering radius");
    for (auto* sub : {hole_vector, hole_check})
        sub->add_option("--class", hole_class, "Deep-hole class, 1 or 2")->check(CLI::Range(1, 2));
    hole->require_subcommand(1);
    auto* rad = app.add_subcommand("radius", "Covering radius of the dual code");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kBadInput;
    }
    if (seed_opt->count()) req.seed = seed_opt->as<std::uint64_t>();

    try {
        auto input = detail::load_input(req, in);
        if (classify->parsed()) return detail::do_classify(input, req, out);
        if (matrices->parsed()) return detail::do_matrices(input.as_spec(), req, out);
        if (dec->parsed()) return detail::do_decode(input.as_spec(), received, req, out);
        if (ecp->parsed()) return detail::do_ecp(input.as_spec(), ecp_verify->parsed(), req, out);
        if (schur->parsed()) {
            auto route = schur_dim ? SchurRoute::DIMENSION
                         : schur_dist ? SchurRoute::DISTANCE
                                      : SchurRoute::AUTO;
            return detail::do_schur(input, schur_dual, route, req, out);
        }
        if (equiv->parsed()) {
            if (equiv_search->parsed()) return detail::do_equiv_search(input, req, out);
            return detail::do_equiv_pair(input, other_path, req, out, in);
        }
        if (hole->parsed()) return detail::do_deephole(input.as_spec(), hole_check->parsed(), hole_class, req, out);
        if (rad->parsed()) return detail::do_radius(input, req, out);
        err << "no subcommand selected\n";
        return kBadInput;
    } catch (const EnumerationCapExceeded& e) {
        err << "cap exceeded: " << e.what() << "\n";
        return kCapExceeded;
    } catch (const CombinatorialCapExceeded& e) {
        err << "cap exceeded: " << e.what() << "\n";
        return kCapExceeded;
    } catch (const BudgetExceeded& e) {
        err << "cap exceeded: " << e.what() << "\n";
        return kCapExceeded;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kBadInput;
    } catch (const Json::exception& e) {
        err << "error: " << e.what() << "\n";
        return kBadInput;
    }
}

inline int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(std::move(args), in, out, err);
}

} // namespace tgrs::cli
