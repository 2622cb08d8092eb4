#pragma once
// Built-in algebras with their expected facts. Facts that exact computation
// can reproduce carry a recompute function; facts proved by other means are
// kept as documentation and never asserted.

#include "cohomology.hpp"
#include "errors.hpp"
#include "hermitian.hpp"
#include "lie_algebra.hpp"
#include "notation.hpp"
#include "structures.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace nilgeom {

enum class Provenance { Stated, Derived, DocumentedOnly };

inline std::string to_string(Provenance p)
{
    switch (p) {
    case Provenance::Stated:
        return "literature-stated";
    case Provenance::Derived:
        return "derived";
    case Provenance::DocumentedOnly:
        return "proved in the literature, not machine-checked";
    }
    return "unknown";
}

struct ExpectedFact {
    std::string name;
    std::string value;
    Provenance provenance = Provenance::Derived;
    /// Recomputes the value from the algebra; empty for documented facts.
    std::function<std::string(const LieAlgebra&)> recompute;

    bool machine_checkable() const { return static_cast<bool>(recompute); }
};

struct HermitianData {
    InnerProduct metric;
    AlmostComplexStructure acs;
};

struct CatalogEntry {
    std::string name;
    std::string title;
    LieAlgebra algebra;
    std::vector<ExpectedFact> expected;
    std::optional<HermitianData> hermitian;

    const ExpectedFact* fact(const std::string& fact_name) const
    {
        for (const auto& f : expected)
            if (f.name == fact_name)
                return &f;
        return nullptr;
    }
};

namespace detail {

inline std::string join(const std::vector<int>& v)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? "," : "") + std::to_string(v[i]);
    return out;
}

inline std::string yes_no(bool b) { return b ? "true" : "false"; }

inline ExpectedFact betti_fact(std::string value, Provenance p)
{
    return {"betti", std::move(value), p, [](const LieAlgebra& l) { return join(betti_numbers(l)); }};
}

inline ExpectedFact b1_fact(std::string value, Provenance p)
{
    return {"b1", std::move(value), p,
            [](const LieAlgebra& l) { return std::to_string(CohomologySpace(l, 1).betti()); }};
}

inline ExpectedFact symplectic_fact(const std::string& form, Provenance p)
{
    return {"symplectic:" + form, "true", p, [form](const LieAlgebra& l) {
                return yes_no(check_symplectic(l, parse_form(form, l.dim(), 2)).symplectic());
            }};
}

inline ExpectedFact kahler_rule_fact(bool admissible)
{
    return {"kahler_admissible", yes_no(admissible), Provenance::Stated,
            [](const LieAlgebra& l) { return yes_no(classify_4d(l).kahler_admissible); }};
}

inline ExpectedFact documented(std::string statement)
{
    return {std::move(statement), "true", Provenance::DocumentedOnly, {}};
}

inline LieAlgebra salamon_algebra(const char* text, std::vector<std::string> labels = {})
{
    const LieAlgebra parsed = parse_salamon(text);
    if (labels.empty())
        return parsed;
    std::vector<KForm> dx;
    for (int k = 1; k <= parsed.dim(); ++k)
        dx.push_back(parsed.d_covector(k));
    return LieAlgebra::from_differentials(parsed.dim(), dx, std::move(labels));
}

} // namespace detail

/// h_{2n-1} + R: basis X_1, Y_1, ..., X_{n-1}, Y_{n-1}, T, Z with the only
/// nonzero brackets [X_i, Y_i] = -Z, so dz = sum_i x_i ^ y_i. Dimension 2n.
inline LieAlgebra heisenberg_line(int n)
{
    if (n < 2)
        throw InvalidParameter("heisenberg_line needs n >= 2");
    const int dim = 2 * n;
    if (dim > max_dimension)
        throw InvalidParameter("heisenberg_line dimension too large");
    LieAlgebra::Brackets brackets;
    std::vector<std::string> labels;
    for (int i = 1; i <= n - 1; ++i) {
        Vector z(static_cast<std::size_t>(dim));
        z[static_cast<std::size_t>(dim - 1)] = -1;
        brackets[{2 * i - 1, 2 * i}] = z;
        labels.push_back("X" + std::to_string(i));
        labels.push_back("Y" + std::to_string(i));
    }
    labels.push_back("T");
    labels.push_back("Z");
    return LieAlgebra::build(dim, brackets, std::move(labels));
}

inline std::vector<std::string> catalog_names()
{
    return {"torus4", "kodaira_thurston", "filiform_0_0_12_13", "six_dim_example"};
}

inline CatalogEntry get_example(const std::string& name)
{
    using detail::documented;
    using detail::yes_no;
    auto e = [](int i, int j) { return KForm::monomial(4, {i, j}); };

    if (name == "torus4") {
        CatalogEntry entry{name, "(0,0,0,0)", abelian(4), {}, std::nullopt};
        entry.expected = {
            detail::b1_fact("4", Provenance::Derived),
            detail::betti_fact("1,4,6,4,1", Provenance::Derived),
            detail::symplectic_fact("e12+e34", Provenance::Stated),
            detail::kahler_rule_fact(true),
            {"hermitian_class", "kahler", Provenance::Derived,
             [](const LieAlgebra& l) {
                 return classify_hermitian(l, InnerProduct::euclidean(4), AlmostComplexStructure::standard(4)).label();
             }},
        };
        entry.hermitian = HermitianData{InnerProduct::euclidean(4), AlmostComplexStructure::standard(4)};
        return entry;
    }
    if (name == "kodaira_thurston") {
        CatalogEntry entry{name, "(0,0,0,12)", detail::salamon_algebra("(0,0,0,12)"), {}, std::nullopt};
        entry.expected = {
            detail::b1_fact("3", Provenance::Stated),
            detail::betti_fact("1,3,4,3,1", Provenance::Derived),
            detail::symplectic_fact("e14+e23", Provenance::Stated),
            detail::kahler_rule_fact(false),
            {"lefschetz_p1_injective:e14+e23", "false", Provenance::Derived,
             [](const LieAlgebra& l) { return yes_no(lefschetz_map(l, parse_form("e14+e23", 4), 1).injective); }},
            {"massey_nonzero:<x1,x1,x2>", "true", Provenance::Derived,
             [](const LieAlgebra& l) {
                 const CohomologySpace h1(l, 1);
                 const auto a = class_of(h1, KForm::covector(4, 1));
                 const auto c = class_of(h1, KForm::covector(4, 2));
                 return yes_no(triple_massey(a, a, c).nonzero_mod_indeterminacy);
             }},
            {"complex_structure_integrable", "true", Provenance::Derived,
             [](const LieAlgebra& l) { return yes_no(nijenhuis(l, AlmostComplexStructure::standard(4)).integrable); }},
            {"hermitian_class", "vaisman", Provenance::Stated,
             [](const LieAlgebra& l) {
                 return classify_hermitian(l, InnerProduct::euclidean(4), AlmostComplexStructure::standard(4)).label();
             }},
            {"lee_form", "-x3", Provenance::Derived,
             [](const LieAlgebra& l) {
                 return format_form(lee_form(l, InnerProduct::euclidean(4), AlmostComplexStructure::standard(4)));
             }},
            documented("not Kaehler (b1 = 3 is odd)"),
        };
        entry.hermitian = HermitianData{InnerProduct::euclidean(4), AlmostComplexStructure::standard(4)};
        return entry;
    }
    if (name == "filiform_0_0_12_13") {
        CatalogEntry entry{name, "(0,0,12,13)", detail::salamon_algebra("(0,0,12,13)"), {}, std::nullopt};
        entry.expected = {
            detail::b1_fact("2", Provenance::Stated),
            detail::betti_fact("1,2,2,2,1", Provenance::Derived),
            detail::symplectic_fact("e14+e23", Provenance::Stated),
            {"lcs_genuine:(e13+e42,x2)", "true", Provenance::Stated,
             [](const LieAlgebra& l) {
                 const auto v = check_lcs(l, parse_form("e13+e42", 4), parse_form("x2", 4));
                 return yes_no(v.is_lcs() && v.genuine);
             }},
            {"twisted_primitive:(e13+e42,x2)", "x4", Provenance::Derived,
             [](const LieAlgebra& l) {
                 const auto eta = twisted_exactness_witness(l, parse_form("e13+e42", 4), parse_form("x2", 4));
                 return eta ? format_form(*eta) : std::string("none");
             }},
            {"standard_acs_integrable", "false", Provenance::Derived,
             [](const LieAlgebra& l) { return yes_no(nijenhuis(l, AlmostComplexStructure::standard(4)).integrable); }},
            detail::kahler_rule_fact(false),
            documented("admits no complex structure"),
            documented("admits no locally conformal Kaehler metric"),
            documented("not a product of a compact 3-manifold and a circle"),
        };
        (void)e;
        return entry;
    }
    if (name == "six_dim_example") {
        CatalogEntry entry{name, "(0,0,0,0,12,34)", detail::salamon_algebra("(0,0,0,0,12,34)"), {}, std::nullopt};
        entry.expected = {
            detail::b1_fact("4", Provenance::Derived),
            detail::betti_fact("1,4,8,10,8,4,1", Provenance::Derived),
            {"symplectic:e15+e24+e36", "true", Provenance::Derived,
             [](const LieAlgebra& l) {
                 return yes_no(check_symplectic(l, parse_form("e15+e24+e36", 6)).symplectic());
             }},
            {"dx5", "e12", Provenance::Stated, [](const LieAlgebra& l) { return format_form(l.d_covector(5)); }},
            {"dx6", "e34", Provenance::Stated, [](const LieAlgebra& l) { return format_form(l.d_covector(6)); }},
        };
        return entry;
    }
    throw UnknownName("no catalog entry named '" + name + "'");
}

/// Catalog entry whose algebra equals the given one structurally, if any.
inline std::optional<CatalogEntry> find_in_catalog(const LieAlgebra& algebra)
{
    for (const auto& name : catalog_names()) {
        CatalogEntry entry = get_example(name);
        if (entry.algebra == algebra)
            return entry;
    }
    return std::nullopt;
}

} // namespace nilgeom
