#pragma once
// Whole-algebra analysis: every detector run once, collected into a report
// that renders as JSON or as indented text built from that same JSON.

#include "catalog.hpp"
#include "cohomology.hpp"
#include "hermitian.hpp"
#include "notation.hpp"
#include "serialization.hpp"
#include "structures.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nilgeom {

struct SymplecticSection {
    bool applicable = false;
    bool found = false;
    bool certain = true;
    std::optional<KForm> witness;
    Scalar volume;
};

struct LcsSection {
    bool applicable = false;
    LcsSearchResult search;
    /// eta with d_theta eta = omega for the genuine witness, if one exists.
    std::optional<KForm> twisted_primitive;
};

struct LefschetzRow {
    int p = 0;
    int source_dim = 0;
    int target_dim = 0;
    int rank = 0;
    bool injective = false;
    bool surjective = false;
};

struct MasseyFinding {
    std::array<int, 3> classes{};  ///< 1-based indices into the H^1 representatives
    KForm representative;
    int indeterminacy_dim = 0;
};

struct MasseySection {
    int triples_examined = 0;
    int triples_defined = 0;
    std::vector<MasseyFinding> nonzero;
};

struct HermitianSection {
    InnerProduct metric;
    AlmostComplexStructure acs;
    HermitianClassification classification;
};

struct KahlerAdmissibility {
    bool applicable = false;
    bool admissible = false;
    std::string rule;
};

struct DocumentedFact {
    std::string statement;
    std::string provenance;
};

struct StructureReport {
    LieAlgebra algebra;
    std::string salamon;
    std::optional<std::string> catalog_name;
    AlgebraInvariants invariants;
    SymplecticSection symplectic;
    LcsSection lcs;
    std::optional<HermitianSection> hermitian;
    std::vector<LefschetzRow> lefschetz;
    MasseySection massey;
    KahlerAdmissibility kahler;
    std::vector<DocumentedFact> documented;
};

struct AnalyzeOptions {
    int height = 2;
    std::optional<InnerProduct> metric;
    std::optional<AlmostComplexStructure> acs;
};

inline MasseySection massey_scan(const LieAlgebra& algebra)
{
    MasseySection out;
    const CohomologySpace h1(algebra, 1);
    std::vector<CohomologyClass> basis;
    for (const auto& rep : h1.representatives())
        basis.push_back(class_of(h1, rep));
    const std::size_t b = basis.size();
    std::vector<std::vector<bool>> cup_zero(b, std::vector<bool>(b));
    for (std::size_t i = 0; i < b; ++i)
        for (std::size_t j = 0; j < b; ++j)
            cup_zero[i][j] = cup(basis[i], basis[j]).is_zero();
    for (std::size_t i = 0; i < b; ++i)
        for (std::size_t j = 0; j < b; ++j)
            for (std::size_t k = 0; k < b; ++k) {
                ++out.triples_examined;
                if (!cup_zero[i][j] || !cup_zero[j][k])
                    continue;
                ++out.triples_defined;
                const MasseyResult m = triple_massey(basis[i], basis[j], basis[k]);
                if (m.nonzero_mod_indeterminacy)
                    out.nonzero.push_back({{static_cast<int>(i) + 1, static_cast<int>(j) + 1, static_cast<int>(k) + 1},
                                           m.representative, static_cast<int>(m.indeterminacy_basis.size())});
            }
    return out;
}

inline StructureReport analyze(const LieAlgebra& algebra, const AnalyzeOptions& options = {})
{
    StructureReport r;
    r.algebra = algebra;
    r.salamon = format_salamon(algebra);
    r.invariants = fingerprint(algebra);
    const int n = algebra.dim();
    const bool even = n % 2 == 0 && n > 0;

    if (even) {
        r.symplectic.applicable = true;
        const NondegeneracySearch s = find_symplectic(algebra);
        r.symplectic.certain = s.certain;
        if (s.witness) {
            r.symplectic.found = true;
            r.symplectic.witness = s.witness;
            r.symplectic.volume = pfaffian_volume(algebra, *s.witness);
            for (int p = 0; p <= n / 2; ++p) {
                const LefschetzMap l = lefschetz_map(algebra, *s.witness, p);
                r.lefschetz.push_back({p, static_cast<int>(l.matrix.cols()), static_cast<int>(l.matrix.rows()),
                                       static_cast<int>(l.rank), l.injective, l.surjective});
            }
        }
    }

    if (even && n >= 4) {
        r.lcs.applicable = true;
        SearchConfig cfg;
        cfg.height_bound = options.height;
        r.lcs.search = find_lcs(algebra, cfg);
        if (r.lcs.search.witness)
            r.lcs.twisted_primitive =
                twisted_exactness_witness(algebra, r.lcs.search.witness->omega, r.lcs.search.witness->theta);
    }

    if (options.metric || options.acs) {
        if (!even)
            throw OddDimension("Hermitian data needs an even-dimensional algebra");
        const auto dim = static_cast<std::size_t>(n);
        const InnerProduct g = options.metric ? *options.metric : InnerProduct::euclidean(dim);
        const AlmostComplexStructure j = options.acs ? *options.acs : AlmostComplexStructure::standard(dim);
        r.hermitian = HermitianSection{g, j, classify_hermitian(algebra, g, j)};
    }

    r.massey = massey_scan(algebra);

    if (r.invariants.nilpotent) {
        r.kahler.applicable = true;
        r.kahler.admissible = algebra.is_abelian();
        r.kahler.rule = "a compact Kaehler nilmanifold is a torus: admissible iff abelian";
        if (n == 4 && classify_4d(algebra).kahler_admissible != r.kahler.admissible)
            throw Error("InternalInvariant", "dimension-4 classification disagrees with the torus rule");
    } else {
        r.kahler.rule = "rule applies to nilpotent algebras only";
    }

    if (auto entry = find_in_catalog(algebra)) {
        r.catalog_name = entry->name;
        for (const auto& f : entry->expected)
            if (!f.machine_checkable())
                r.documented.push_back({f.name, to_string(f.provenance)});
    }
    return r;
}

// ---- JSON ---------------------------------------------------------------

namespace detail {

inline Json optional_form(const std::optional<KForm>& f) { return f ? form_to_json(*f) : Json(nullptr); }

inline std::optional<KForm> optional_form_from(const Json& v, const std::string& at)
{
    if (v.is_null())
        return std::nullopt;
    return form_from_json(v, at);
}

inline Json verdict_to_json(const LcsVerdict& v)
{
    return Json{{"is_almost_symplectic", v.is_almost_symplectic},
                {"lee_closed", v.lee_closed},
                {"identity_holds", v.identity_holds},
                {"genuine", v.genuine},
                {"witness_volume", scalar_to_json(v.witness_volume)},
                {"d_omega", form_to_json(v.d_omega)},
                {"theta_wedge_omega", form_to_json(v.theta_wedge_omega)}};
}

inline LcsVerdict verdict_from_json(const Json& v, const std::string& at)
{
    auto sub = [&](const char* key) { return pointer_child(at, key); };
    LcsVerdict out;
    out.is_almost_symplectic = bool_at(member(v, "is_almost_symplectic", at), sub("is_almost_symplectic"));
    out.lee_closed = bool_at(member(v, "lee_closed", at), sub("lee_closed"));
    out.identity_holds = bool_at(member(v, "identity_holds", at), sub("identity_holds"));
    out.genuine = bool_at(member(v, "genuine", at), sub("genuine"));
    out.witness_volume = scalar_from_json(member(v, "witness_volume", at), sub("witness_volume"));
    out.d_omega = form_from_json(member(v, "d_omega", at), sub("d_omega"));
    out.theta_wedge_omega = form_from_json(member(v, "theta_wedge_omega", at), sub("theta_wedge_omega"));
    return out;
}

inline Json flags_to_json(const HermitianFlags& f)
{
    return Json{{"kahler", f.kahler}, {"gck", f.gck}, {"lck", f.lck}, {"vaisman", f.vaisman}};
}

} // namespace detail

inline Json report_to_json(const StructureReport& r)
{
    Json algebra = algebra_to_json(r.algebra);
    algebra["salamon"] = r.salamon;
    Json out;
    out["algebra"] = std::move(algebra);
    out["catalog_name"] = r.catalog_name ? Json(*r.catalog_name) : Json(nullptr);

    const auto& inv = r.invariants;
    out["invariants"] = Json{{"dim", inv.dim},           {"nilpotent", inv.nilpotent},
                             {"step", inv.step},         {"lcs_dims", inv.lcs_dims},
                             {"center_dim", inv.center_dim}, {"derived_dim", inv.derived_dim},
                             {"unimodular", inv.unimodular}};
    out["betti"] = inv.betti;

    out["symplectic"] = Json{{"applicable", r.symplectic.applicable},
                             {"status", r.symplectic.found ? "FOUND" : "NONE"},
                             {"certain", r.symplectic.certain},
                             {"witness", detail::optional_form(r.symplectic.witness)},
                             {"volume", r.symplectic.witness ? Json(to_string(r.symplectic.volume)) : Json(nullptr)}};

    Json lcs{{"applicable", r.lcs.applicable}};
    if (r.lcs.applicable) {
        const auto& s = r.lcs.search;
        lcs["status"] = s.label();
        lcs["height"] = s.height;
        lcs["candidates_examined"] = s.candidates_examined;
        lcs["truncated"] = s.truncated;
        if (s.witness)
            lcs["witness"] = Json{{"omega", form_to_json(s.witness->omega)},
                                  {"theta", form_to_json(s.witness->theta)},
                                  {"verdict", detail::verdict_to_json(s.witness->verdict)}};
        else
            lcs["witness"] = nullptr;
        lcs["twisted_primitive"] = detail::optional_form(r.lcs.twisted_primitive);
        lcs["gcs_symplectic"] = detail::optional_form(s.gcs_symplectic);
    }
    out["lcs"] = std::move(lcs);

    if (r.hermitian) {
        const auto& c = r.hermitian->classification;
        out["hermitian"] = Json{{"metric", metric_to_json(r.hermitian->metric)},
                                {"acs", acs_to_json(r.hermitian->acs)},
                                {"class", c.label()},
                                {"hermitian", c.hermitian},
                                {"integrable", c.integrable},
                                {"kahler_form", form_to_json(c.kahler_form)},
                                {"lee_form", form_to_json(c.lee_form)},
                                {"lee_closed", c.lee_closed},
                                {"lee_exact", c.lee_exact},
                                {"lee_parallel", c.lee_parallel},
                                {"kahler_form_parallel", c.kahler_form_parallel},
                                {"flags", detail::flags_to_json(c.flags)}};
    } else {
        out["hermitian"] = nullptr;
    }

    Json lef = Json::array();
    for (const auto& row : r.lefschetz)
        lef.push_back(Json{{"p", row.p},
                           {"source_dim", row.source_dim},
                           {"target_dim", row.target_dim},
                           {"rank", row.rank},
                           {"injective", row.injective},
                           {"surjective", row.surjective}});
    out["lefschetz"] = std::move(lef);

    Json nonzero = Json::array();
    for (const auto& f : r.massey.nonzero)
        nonzero.push_back(Json{{"classes", f.classes},
                               {"representative", form_to_json(f.representative)},
                               {"indeterminacy_dim", f.indeterminacy_dim}});
    out["massey"] = Json{{"triples_examined", r.massey.triples_examined},
                         {"triples_defined", r.massey.triples_defined},
                         {"nonzero", std::move(nonzero)}};

    out["kahler_admissibility"] = Json{{"applicable", r.kahler.applicable},
                                       {"admissible", r.kahler.admissible},
                                       {"rule", r.kahler.rule}};

    Json docs = Json::array();
    for (const auto& d : r.documented)
        docs.push_back(Json{{"statement", d.statement}, {"provenance", d.provenance}});
    out["documented"] = std::move(docs);
    return out;
}

inline StructureReport report_from_json(const Json& v)
{
    using detail::bool_at;
    using detail::int_at;
    using detail::member;
    using detail::pointer_child;
    StructureReport r;
    const Json& alg = member(v, "algebra", "");
    r.algebra = algebra_from_json(alg, "/algebra");
    r.salamon = detail::string_at(member(alg, "salamon", "/algebra"), "/algebra/salamon");
    if (r.salamon != format_salamon(r.algebra))
        throw SchemaViolation("/algebra/salamon", "does not match the algebra");
    const Json& cat = member(v, "catalog_name", "");
    if (!cat.is_null())
        r.catalog_name = detail::string_at(cat, "/catalog_name");

    const Json& inv = member(v, "invariants", "");
    auto iat = [](const char* k) { return pointer_child("/invariants", k); };
    r.invariants.dim = int_at(member(inv, "dim", "/invariants"), iat("dim"));
    r.invariants.nilpotent = bool_at(member(inv, "nilpotent", "/invariants"), iat("nilpotent"));
    r.invariants.step = int_at(member(inv, "step", "/invariants"), iat("step"));
    r.invariants.center_dim = int_at(member(inv, "center_dim", "/invariants"), iat("center_dim"));
    r.invariants.derived_dim = int_at(member(inv, "derived_dim", "/invariants"), iat("derived_dim"));
    r.invariants.unimodular = bool_at(member(inv, "unimodular", "/invariants"), iat("unimodular"));
    const Json& lcs_dims = detail::array_at(member(inv, "lcs_dims", "/invariants"), iat("lcs_dims"));
    for (std::size_t i = 0; i < lcs_dims.size(); ++i)
        r.invariants.lcs_dims.push_back(int_at(lcs_dims[i], pointer_child(iat("lcs_dims"), i)));
    const Json& betti = detail::array_at(member(v, "betti", ""), "/betti");
    for (std::size_t i = 0; i < betti.size(); ++i)
        r.invariants.betti.push_back(int_at(betti[i], pointer_child("/betti", i)));

    const Json& sym = member(v, "symplectic", "");
    r.symplectic.applicable = bool_at(member(sym, "applicable", "/symplectic"), "/symplectic/applicable");
    r.symplectic.certain = bool_at(member(sym, "certain", "/symplectic"), "/symplectic/certain");
    r.symplectic.witness = detail::optional_form_from(member(sym, "witness", "/symplectic"), "/symplectic/witness");
    r.symplectic.found = r.symplectic.witness.has_value();
    if (r.symplectic.found)
        r.symplectic.volume = scalar_from_json(member(sym, "volume", "/symplectic"), "/symplectic/volume");

    const Json& lcs = member(v, "lcs", "");
    r.lcs.applicable = bool_at(member(lcs, "applicable", "/lcs"), "/lcs/applicable");
    if (r.lcs.applicable) {
        auto& s = r.lcs.search;
        s.height = int_at(member(lcs, "height", "/lcs"), "/lcs/height");
        const Json& examined = member(lcs, "candidates_examined", "/lcs");
        if (!examined.is_number_unsigned())
            throw SchemaViolation("/lcs/candidates_examined", "expected a non-negative integer");
        s.candidates_examined = examined.get<std::size_t>();
        s.truncated = bool_at(member(lcs, "truncated", "/lcs"), "/lcs/truncated");
        const Json& w = member(lcs, "witness", "/lcs");
        if (!w.is_null()) {
            s.witness = LcsWitness{form_from_json(member(w, "omega", "/lcs/witness"), "/lcs/witness/omega"),
                                   form_from_json(member(w, "theta", "/lcs/witness"), "/lcs/witness/theta"),
                                   detail::verdict_from_json(member(w, "verdict", "/lcs/witness"),
                                                             "/lcs/witness/verdict")};
            s.status = LcsSearchResult::Status::Found;
        }
        if (detail::string_at(member(lcs, "status", "/lcs"), "/lcs/status") != s.label())
            throw SchemaViolation("/lcs/status", "status does not match the witness");
        r.lcs.twisted_primitive =
            detail::optional_form_from(member(lcs, "twisted_primitive", "/lcs"), "/lcs/twisted_primitive");
        s.gcs_symplectic = detail::optional_form_from(member(lcs, "gcs_symplectic", "/lcs"), "/lcs/gcs_symplectic");
    }

    const Json& her = member(v, "hermitian", "");
    if (!her.is_null()) {
        auto hat = [](const char* k) { return pointer_child("/hermitian", k); };
        HermitianClassification c;
        c.hermitian = bool_at(member(her, "hermitian", "/hermitian"), hat("hermitian"));
        c.integrable = bool_at(member(her, "integrable", "/hermitian"), hat("integrable"));
        c.kahler_form = form_from_json(member(her, "kahler_form", "/hermitian"), hat("kahler_form"));
        c.lee_form = form_from_json(member(her, "lee_form", "/hermitian"), hat("lee_form"));
        c.lee_closed = bool_at(member(her, "lee_closed", "/hermitian"), hat("lee_closed"));
        c.lee_exact = bool_at(member(her, "lee_exact", "/hermitian"), hat("lee_exact"));
        c.lee_parallel = bool_at(member(her, "lee_parallel", "/hermitian"), hat("lee_parallel"));
        c.kahler_form_parallel = bool_at(member(her, "kahler_form_parallel", "/hermitian"), hat("kahler_form_parallel"));
        const Json& flags = member(her, "flags", "/hermitian");
        auto fat = [](const char* k) { return pointer_child("/hermitian/flags", k); };
        c.flags.kahler = bool_at(member(flags, "kahler", "/hermitian/flags"), fat("kahler"));
        c.flags.gck = bool_at(member(flags, "gck", "/hermitian/flags"), fat("gck"));
        c.flags.lck = bool_at(member(flags, "lck", "/hermitian/flags"), fat("lck"));
        c.flags.vaisman = bool_at(member(flags, "vaisman", "/hermitian/flags"), fat("vaisman"));
        if (detail::string_at(member(her, "class", "/hermitian"), hat("class")) != c.label())
            throw SchemaViolation(hat("class"), "class does not match the flags");
        r.hermitian = HermitianSection{metric_from_json(member(her, "metric", "/hermitian"), hat("metric")),
                                       acs_from_json(member(her, "acs", "/hermitian"), hat("acs")), c};
    }

    const Json& lef = detail::array_at(member(v, "lefschetz", ""), "/lefschetz");
    for (std::size_t i = 0; i < lef.size(); ++i) {
        const std::string at = pointer_child("/lefschetz", i);
        auto lat = [&](const char* k) { return pointer_child(at, k); };
        LefschetzRow row;
        row.p = int_at(member(lef[i], "p", at), lat("p"));
        row.source_dim = int_at(member(lef[i], "source_dim", at), lat("source_dim"));
        row.target_dim = int_at(member(lef[i], "target_dim", at), lat("target_dim"));
        row.rank = int_at(member(lef[i], "rank", at), lat("rank"));
        row.injective = bool_at(member(lef[i], "injective", at), lat("injective"));
        row.surjective = bool_at(member(lef[i], "surjective", at), lat("surjective"));
        r.lefschetz.push_back(row);
    }

    const Json& mas = member(v, "massey", "");
    r.massey.triples_examined = int_at(member(mas, "triples_examined", "/massey"), "/massey/triples_examined");
    r.massey.triples_defined = int_at(member(mas, "triples_defined", "/massey"), "/massey/triples_defined");
    const Json& nz = detail::array_at(member(mas, "nonzero", "/massey"), "/massey/nonzero");
    for (std::size_t i = 0; i < nz.size(); ++i) {
        const std::string at = pointer_child("/massey/nonzero", i);
        MasseyFinding f;
        const Json& cls = detail::array_at(member(nz[i], "classes", at), pointer_child(at, "classes"));
        if (cls.size() != 3)
            throw SchemaViolation(pointer_child(at, "classes"), "expected three class indices");
        for (std::size_t s = 0; s < 3; ++s)
            f.classes[s] = int_at(cls[s], pointer_child(pointer_child(at, "classes"), s));
        f.representative = form_from_json(member(nz[i], "representative", at), pointer_child(at, "representative"));
        f.indeterminacy_dim = int_at(member(nz[i], "indeterminacy_dim", at), pointer_child(at, "indeterminacy_dim"));
        r.massey.nonzero.push_back(std::move(f));
    }

    const Json& k = member(v, "kahler_admissibility", "");
    r.kahler.applicable = bool_at(member(k, "applicable", "/kahler_admissibility"), "/kahler_admissibility/applicable");
    r.kahler.admissible = bool_at(member(k, "admissible", "/kahler_admissibility"), "/kahler_admissibility/admissible");
    r.kahler.rule = detail::string_at(member(k, "rule", "/kahler_admissibility"), "/kahler_admissibility/rule");

    const Json& docs = detail::array_at(member(v, "documented", ""), "/documented");
    for (std::size_t i = 0; i < docs.size(); ++i) {
        const std::string at = pointer_child("/documented", i);
        r.documented.push_back({detail::string_at(member(docs[i], "statement", at), pointer_child(at, "statement")),
                                detail::string_at(member(docs[i], "provenance", at), pointer_child(at, "provenance"))});
    }
    return r;
}

// ---- text ---------------------------------------------------------------

namespace detail {

inline bool is_form_object(const Json& v)
{
    return v.is_object() && v.size() == 3 && v.contains("dim") && v.contains("degree") && v.contains("terms");
}

inline bool is_flat_array(const Json& v)
{
    if (!v.is_array())
        return false;
    for (const auto& e : v)
        if (e.is_object() || (e.is_array() && !is_flat_array(e)))
            return false;
    return true;
}

inline std::string scalar_text(const Json& v)
{
    if (v.is_string())
        return v.get<std::string>();
    if (v.is_null())
        return "-";
    if (is_form_object(v))
        return format_form(form_from_json(v));
    if (is_flat_array(v)) {
        std::string out = "[";
        for (std::size_t i = 0; i < v.size(); ++i)
            out += (i ? ", " : "") + scalar_text(v[i]);
        return out + "]";
    }
    return v.dump();
}

inline void render(const Json& v, int indent, std::string& out)
{
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    if (v.is_object()) {
        for (const auto& [key, value] : v.items()) {
            const bool nested = (value.is_object() && !value.empty() && !is_form_object(value)) ||
                                (value.is_array() && !is_flat_array(value) && !value.empty());
            if (nested) {
                out += pad + key + ":\n";
                render(value, indent + 2, out);
            } else {
                out += pad + key + ": " + scalar_text(value) + "\n";
            }
        }
    } else if (v.is_array()) {
        for (const auto& item : v) {
            out += pad + "-\n";
            render(item, indent + 2, out);
        }
    } else {
        out += pad + scalar_text(v) + "\n";
    }
}

} // namespace detail

/// Indented text with one line per JSON leaf; forms print in e/x notation.
inline std::string render_text(const Json& v)
{
    std::string out;
    detail::render(v, 0, out);
    return out;
}

inline std::string render_text(const StructureReport& r) { return render_text(report_to_json(r)); }

} // namespace nilgeom
