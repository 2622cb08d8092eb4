#pragma once
// JSON interchange for algebras, forms, metrics and almost complex structures.
// Every rational travels as a string "p" or "p/q".

#include "errors.hpp"
#include "exterior.hpp"
#include "hermitian.hpp"
#include "lie_algebra.hpp"
#include "structures.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <optional>
#include <sstream>
#include <string>

namespace nilgeom {

using Json = nlohmann::ordered_json;

namespace detail {

inline std::string pointer_child(const std::string& base, const std::string& key)
{
    std::string escaped;
    for (char c : key) {
        if (c == '~')
            escaped += "~0";
        else if (c == '/')
            escaped += "~1";
        else
            escaped += c;
    }
    return base + "/" + escaped;
}

inline std::string pointer_child(const std::string& base, std::size_t index)
{
    return base + "/" + std::to_string(index);
}

inline const Json& member(const Json& obj, const char* key, const std::string& at)
{
    if (!obj.is_object())
        throw SchemaViolation(at, "expected an object");
    const auto it = obj.find(key);
    if (it == obj.end())
        throw SchemaViolation(pointer_child(at, key), std::string("missing required member '") + key + "'");
    return *it;
}

inline const Json& array_at(const Json& v, const std::string& at)
{
    if (!v.is_array())
        throw SchemaViolation(at, "expected an array");
    return v;
}

inline int int_at(const Json& v, const std::string& at)
{
    if (!v.is_number_integer())
        throw SchemaViolation(at, "expected an integer");
    return v.get<int>();
}

inline bool bool_at(const Json& v, const std::string& at)
{
    if (!v.is_boolean())
        throw SchemaViolation(at, "expected a boolean");
    return v.get<bool>();
}

inline std::string string_at(const Json& v, const std::string& at)
{
    if (!v.is_string())
        throw SchemaViolation(at, "expected a string");
    return v.get<std::string>();
}

/// Key of the "d" object, a decimal covector index.
inline int index_key(const std::string& key, const std::string& at)
{
    if (key.empty() || key.size() > 4 || key.find_first_not_of("0123456789") != std::string::npos)
        throw SchemaViolation(at, "keys of 'd' must be decimal covector indices");
    return std::stoi(key);
}

} // namespace detail

inline Json scalar_to_json(const Scalar& s) { return to_string(s); }

/// Accepts "p/q" strings and JSON integers; floating point is refused.
inline Scalar scalar_from_json(const Json& v, const std::string& at = "")
{
    if (v.is_number_integer())
        return Scalar(v.get<long long>());
    if (!v.is_string())
        throw SchemaViolation(at, "expected a rational string \"p/q\"");
    const auto s = parse_scalar(v.get<std::string>());
    if (!s)
        throw SchemaViolation(at, "malformed rational '" + v.get<std::string>() + "'");
    return *s;
}

inline Json matrix_to_json(const Matrix& m)
{
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(scalar_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Matrix matrix_from_json(const Json& v, const std::string& at = "")
{
    detail::array_at(v, at);
    std::vector<std::vector<Scalar>> rows;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::string row_at = detail::pointer_child(at, i);
        const Json& row = detail::array_at(v[i], row_at);
        if (i > 0 && row.size() != rows.front().size())
            throw SchemaViolation(row_at, "rows must have equal length");
        std::vector<Scalar> r;
        for (std::size_t j = 0; j < row.size(); ++j)
            r.push_back(scalar_from_json(row[j], detail::pointer_child(row_at, j)));
        rows.push_back(std::move(r));
    }
    return Matrix::from_rows(rows, rows.empty() ? 0 : rows.front().size());
}

/// {"dim": n, "degree": k, "terms": [[coeff, [i, j, ...]], ...]}
inline Json form_to_json(const KForm& a)
{
    Json terms = Json::array();
    for (const auto& [m, c] : a.terms())
        terms.push_back(Json::array({scalar_to_json(c), Json(m.indices())}));
    return Json{{"dim", a.dim()}, {"degree", a.degree()}, {"terms", std::move(terms)}};
}

inline KForm form_from_json(const Json& v, const std::string& at = "")
{
    const int dim = detail::int_at(detail::member(v, "dim", at), detail::pointer_child(at, "dim"));
    const int degree = detail::int_at(detail::member(v, "degree", at), detail::pointer_child(at, "degree"));
    if (dim < 0 || dim > max_dimension)
        throw SchemaViolation(detail::pointer_child(at, "dim"), "dimension out of range");
    if (degree < 0 || degree > dim)
        throw SchemaViolation(detail::pointer_child(at, "degree"), "degree out of range");
    const std::string terms_at = detail::pointer_child(at, "terms");
    const Json& terms = detail::array_at(detail::member(v, "terms", at), terms_at);
    KForm out(dim, degree);
    for (std::size_t t = 0; t < terms.size(); ++t) {
        const std::string term_at = detail::pointer_child(terms_at, t);
        const Json& term = detail::array_at(terms[t], term_at);
        if (term.size() != 2)
            throw SchemaViolation(term_at, "a term is [coefficient, [indices]]");
        const Scalar c = scalar_from_json(term[0], detail::pointer_child(term_at, 0));
        const std::string idx_at = detail::pointer_child(term_at, 1);
        const Json& idx = detail::array_at(term[1], idx_at);
        if (static_cast<int>(idx.size()) != degree)
            throw SchemaViolation(idx_at, "index list length must equal the degree");
        std::vector<int> indices;
        for (std::size_t s = 0; s < idx.size(); ++s) {
            const int i = detail::int_at(idx[s], detail::pointer_child(idx_at, s));
            if (i < 1 || i > dim)
                throw SchemaViolation(detail::pointer_child(idx_at, s), "index out of range");
            indices.push_back(i);
        }
        out += KForm::monomial(dim, indices, c);
    }
    return out;
}

/// {"dim": n, "d": {"k": [[coeff, [i, j]], ...]}, "labels": [...]}; zero
/// differentials are omitted and terms follow the canonical monomial order.
inline Json algebra_to_json(const LieAlgebra& algebra)
{
    Json d = Json::object();
    for (int k = 1; k <= algebra.dim(); ++k) {
        const KForm dk = algebra.d_covector(k);
        if (dk.is_zero())
            continue;
        Json terms = Json::array();
        for (const auto& [m, c] : dk.terms())
            terms.push_back(Json::array({scalar_to_json(c), Json(m.indices())}));
        d[std::to_string(k)] = std::move(terms);
    }
    Json out{{"dim", algebra.dim()}, {"d", std::move(d)}};
    if (!algebra.labels().empty())
        out["labels"] = algebra.labels();
    return out;
}

inline LieAlgebra algebra_from_json(const Json& v, const std::string& at = "")
{
    const std::string dim_at = detail::pointer_child(at, "dim");
    const int dim = detail::int_at(detail::member(v, "dim", at), dim_at);
    if (dim < 0 || dim > max_dimension)
        throw SchemaViolation(dim_at, "dimension out of range");
    std::vector<KForm> dx(static_cast<std::size_t>(dim), KForm(dim, 2));
    const std::string d_at = detail::pointer_child(at, "d");
    const Json& d = detail::member(v, "d", at);
    if (!d.is_object())
        throw SchemaViolation(d_at, "expected an object keyed by covector index");
    for (const auto& [key, terms] : d.items()) {
        const std::string key_at = detail::pointer_child(d_at, key);
        const int k = detail::index_key(key, key_at);
        if (k < 1 || k > dim)
            throw SchemaViolation(key_at, "covector index out of range");
        detail::array_at(terms, key_at);
        for (std::size_t t = 0; t < terms.size(); ++t) {
            const std::string term_at = detail::pointer_child(key_at, t);
            const Json& term = detail::array_at(terms[t], term_at);
            if (term.size() != 2)
                throw SchemaViolation(term_at, "a term is [coefficient, [i, j]]");
            const Scalar c = scalar_from_json(term[0], detail::pointer_child(term_at, 0));
            const std::string pair_at = detail::pointer_child(term_at, 1);
            const Json& pair = detail::array_at(term[1], pair_at);
            if (pair.size() != 2)
                throw SchemaViolation(pair_at, "expected an index pair");
            const int i = detail::int_at(pair[0], detail::pointer_child(pair_at, 0));
            const int j = detail::int_at(pair[1], detail::pointer_child(pair_at, 1));
            if (i < 1 || j < 1 || i > dim || j > dim || i == j)
                throw SchemaViolation(pair_at, "index pair out of range or repeated");
            dx[static_cast<std::size_t>(k - 1)] += KForm::monomial(dim, {i, j}, c);
        }
    }
    std::vector<std::string> labels;
    if (v.contains("labels")) {
        const std::string labels_at = detail::pointer_child(at, "labels");
        const Json& l = detail::array_at(v["labels"], labels_at);
        if (static_cast<int>(l.size()) != dim)
            throw SchemaViolation(labels_at, "one label per basis vector");
        for (std::size_t s = 0; s < l.size(); ++s)
            labels.push_back(detail::string_at(l[s], detail::pointer_child(labels_at, s)));
    }
    return LieAlgebra::from_differentials(dim, dx, std::move(labels));
}

/// {"g": [[...], ...], "orientation": 1}
inline Json metric_to_json(const InnerProduct& g)
{
    return Json{{"g", matrix_to_json(g.matrix())}, {"orientation", g.orientation()}};
}

inline InnerProduct metric_from_json(const Json& v, const std::string& at = "")
{
    const Matrix g = matrix_from_json(detail::member(v, "g", at), detail::pointer_child(at, "g"));
    int orientation = 1;
    if (v.contains("orientation")) {
        orientation = detail::int_at(v["orientation"], detail::pointer_child(at, "orientation"));
        if (orientation != 1 && orientation != -1)
            throw SchemaViolation(detail::pointer_child(at, "orientation"), "orientation is 1 or -1");
    }
    return InnerProduct(g, orientation);
}

/// {"J": [[...], ...]}, column i holding J X_i.
inline Json acs_to_json(const AlmostComplexStructure& j) { return Json{{"J", matrix_to_json(j.matrix())}}; }

inline AlmostComplexStructure acs_from_json(const Json& v, const std::string& at = "")
{
    return AlmostComplexStructure(matrix_from_json(detail::member(v, "J", at), detail::pointer_child(at, "J")));
}

/// Parses text, mapping parser failures to SchemaViolation at the root.
inline Json parse_json_text(const std::string& text)
{
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw SchemaViolation("", std::string("not valid JSON: ") + e.what());
    }
}

inline Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InvalidParameter("cannot open '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_json_text(buffer.str());
}

} // namespace nilgeom
