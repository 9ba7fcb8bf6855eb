#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "tgrs/linear_code.hpp"
#include "tgrs/twisted.hpp"

namespace tgrs {

using Json = nlohmann::ordered_json;

/// Field descriptor: {"p": 2, "m": 4, "modulus": [1,1,0,0,1]} with modulus
/// coefficients in ascending degree. The modulus may be omitted to take the
/// library default for that p and m.
inline Json field_to_json(const FieldPtr& f) {
    return Json{{"p", f->p()}, {"m", f->m()}, {"modulus", f->modulus()}};
}

inline FieldPtr field_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("p") || !j.contains("m"))
        throw SyntaxError("field descriptor needs p and m");
    auto p = j.at("p").get<std::uint64_t>();
    auto m = j.at("m").get<std::uint32_t>();
    if (!j.contains("modulus")) return Field::create(p, m);
    return Field::create(p, m, j.at("modulus").get<std::vector<std::uint32_t>>());
}

/// Vectors serialize as arrays of element strings in the field grammar.
inline Json vector_to_json(const FVector& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(x.str());
    return out;
}

inline FVector vector_from_json(const FieldPtr& f, const Json& j) {
    if (!j.is_array()) throw SyntaxError("expected an array of element strings");
    FVector out;
    out.reserve(j.size());
    for (const auto& item : j) out.push_back(f->parse(item.get<std::string>()));
    return out;
}

/// Comma-separated element list, the CLI surface syntax for vectors.
inline FVector parse_vector(const FieldPtr& f, const std::string& csv) {
    FVector out;
    std::size_t start = 0;
    while (start <= csv.size()) {
        std::size_t comma = csv.find(',', start);
        if (comma == std::string::npos) comma = csv.size();
        std::string tok = csv.substr(start, comma - start);
        std::size_t a = tok.find_first_not_of(" \t");
        if (a == std::string::npos) throw SyntaxError("empty element in vector");
        std::size_t b = tok.find_last_not_of(" \t");
        out.push_back(f->parse(tok.substr(a, b - a + 1)));
        start = comma + 1;
    }
    return out;
}

inline std::string format_vector(const FVector& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += v[i].str();
    }
    return out;
}

/// Matrices serialize row-major as arrays of element-string arrays.
inline Json matrix_to_json(const FMatrix& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c).str());
        rows.push_back(std::move(row));
    }
    return rows;
}

inline FMatrix matrix_from_json(const FieldPtr& f, const Json& j) {
    if (!j.is_array() || j.empty()) throw SyntaxError("expected a nonempty array of rows");
    std::size_t cols = j.front().size();
    FMatrix out(f, j.size(), cols);
    for (std::size_t r = 0; r < j.size(); ++r) {
        if (!j[r].is_array() || j[r].size() != cols) throw SyntaxError("ragged matrix rows");
        for (std::size_t c = 0; c < cols; ++c) out.set(r, c, f->parse(j[r][c].get<std::string>()));
    }
    return out;
}

/// Twisted-code descriptor:
///   {"field": {...}, "S": [...], "v": [...], "eta": "w^6", "k": 5,
///    "extended": true}
/// "v" also accepts the shorthands "ones" (all-one multipliers) and "w"
/// (v = w_vector(S)). "extended" defaults to false. Serialization always
/// writes the expanded v, so parse-serialize is idempotent.
inline TwistedSpec spec_from_json(const Json& j) {
    if (!j.is_object()) throw SyntaxError("spec must be a JSON object");
    for (const char* key : {"field", "S", "v", "eta", "k"})
        if (!j.contains(key)) throw SyntaxError(std::string("spec is missing \"") + key + "\"");

    auto f = field_from_json(j.at("field"));
    TwistedSpec spec;
    spec.field = f;
    spec.S = vector_from_json(f, j.at("S"));
    if (j.at("v").is_string()) {
        auto shorthand = j.at("v").get<std::string>();
        if (shorthand == "ones")
            spec.v = FVector(spec.S.size(), f->one());
        else if (shorthand == "w")
            spec.v = w_vector(spec.S);
        else
            throw SyntaxError("v must be an array, \"ones\", or \"w\"");
    } else {
        spec.v = vector_from_json(f, j.at("v"));
    }
    spec.eta = f->parse(j.at("eta").get<std::string>());
    spec.k = j.at("k").get<std::size_t>();
    spec.extended = j.value("extended", false);
    spec.validate();
    return spec;
}

inline Json spec_to_json(const TwistedSpec& spec) {
    return Json{{"field", field_to_json(spec.field)}, {"S", vector_to_json(spec.S)},
                {"v", vector_to_json(spec.v)},        {"eta", spec.eta.str()},
                {"k", spec.k},                        {"extended", spec.extended}};
}

/// Linear-code descriptor: {"field": {...}, "generator": [[...]]} with the
/// canonical (reduced row echelon) generator.
inline Json code_to_json(const LinearCode& C) {
    return Json{{"field", field_to_json(C.field())}, {"generator", matrix_to_json(C.generator())}};
}

inline LinearCode code_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("field") || !j.contains("generator"))
        throw SyntaxError("code descriptor needs field and generator");
    auto f = field_from_json(j.at("field"));
    return LinearCode::from_generator(matrix_from_json(f, j.at("generator")));
}

} // namespace tgrs
