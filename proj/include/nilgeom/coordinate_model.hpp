#pragma once
// Differential forms with polynomial coefficients on R^n, used to check an
// explicit coordinate model of the nilpotent group with structure equations
// (0,0,12,13): the group law on R^4, its invariant coframe and the lattice
// 2Z x Z x Z x Z.
//
// Variables: the first `ncoords` polynomial variables are coordinates and carry
// differentials; any further variables are parameters (constants for d).

#include "errors.hpp"
#include "exterior.hpp"
#include "lie_algebra.hpp"
#include "notation.hpp"
#include "polynomial.hpp"

#include <array>
#include <map>
#include <tuple>
#include <string>
#include <vector>

namespace nilgeom {

class PolyForm {
public:
    using Terms = std::map<Monomial, Polynomial>;

    PolyForm() = default;
    PolyForm(std::size_t nvars, int ncoords, int degree) : nvars_(nvars), ncoords_(ncoords), degree_(degree)
    {
        if (ncoords < 0 || static_cast<std::size_t>(ncoords) > nvars || ncoords > max_dimension)
            throw DimensionMismatch("coordinate count must not exceed the variable count");
    }

    static PolyForm function(int ncoords, const Polynomial& f)
    {
        PolyForm out(f.nvars(), ncoords, 0);
        out.add(Monomial{}, f);
        return out;
    }

    /// d(coordinate v), v 0-based.
    static PolyForm differential(std::size_t nvars, int ncoords, int v)
    {
        PolyForm out(nvars, ncoords, 1);
        out.add(Monomial(std::uint64_t{1} << v), Polynomial::constant(nvars, 1));
        return out;
    }

    std::size_t nvars() const noexcept { return nvars_; }
    int ncoords() const noexcept { return ncoords_; }
    int degree() const noexcept { return degree_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    void add(Monomial m, const Polynomial& p)
    {
        if (m.degree() != degree_)
            throw IndexOutOfRange("monomial degree does not match form degree");
        if (p.nvars() != nvars_)
            throw DimensionMismatch("coefficient over the wrong variable set");
        if (p.is_zero())
            return;
        auto [it, inserted] = terms_.try_emplace(m, p);
        if (!inserted) {
            it->second += p;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    PolyForm& operator+=(const PolyForm& o)
    {
        check(o);
        for (const auto& [m, p] : o.terms_)
            add(m, p);
        return *this;
    }
    PolyForm& operator-=(const PolyForm& o)
    {
        check(o);
        for (const auto& [m, p] : o.terms_)
            add(m, -p);
        return *this;
    }
    friend PolyForm operator+(PolyForm a, const PolyForm& b) { return a += b; }
    friend PolyForm operator-(PolyForm a, const PolyForm& b) { return a -= b; }

    friend PolyForm operator*(const Polynomial& f, const PolyForm& a)
    {
        PolyForm out(a.nvars_, a.ncoords_, a.degree_);
        for (const auto& [m, p] : a.terms_)
            out.add(m, f * p);
        return out;
    }

    friend bool operator==(const PolyForm& a, const PolyForm& b)
    {
        return a.nvars_ == b.nvars_ && a.ncoords_ == b.ncoords_ && a.degree_ == b.degree_ &&
               a.terms_ == b.terms_;
    }

    /// Coefficients evaluated at a point: a constant-coefficient form.
    KForm evaluate_at(std::span<const Scalar> point) const
    {
        KForm out(ncoords_, degree_);
        for (const auto& [m, p] : terms_)
            out.add(m, p.evaluate(point));
        return out;
    }

    friend PolyForm wedge(const PolyForm& a, const PolyForm& b)
    {
        a.check_space(b);
        PolyForm out(a.nvars_, a.ncoords_, a.degree_ + b.degree_);
        for (const auto& [ma, pa] : a.terms_)
            for (const auto& [mb, pb] : b.terms_) {
                const int s = wedge_sign(ma, mb);
                if (s == 0)
                    continue;
                Polynomial p = pa * pb;
                if (s < 0)
                    p = -p;
                out.add(Monomial(ma.bits() | mb.bits()), p);
            }
        return out;
    }

private:
    void check_space(const PolyForm& o) const
    {
        if (o.nvars_ != nvars_ || o.ncoords_ != ncoords_)
            throw DimensionMismatch("forms over different coordinate spaces");
    }
    void check(const PolyForm& o) const
    {
        check_space(o);
        if (o.degree_ != degree_)
            throw IndexOutOfRange("sum of forms of different degree");
    }

    std::size_t nvars_ = 0;
    int ncoords_ = 0;
    int degree_ = 0;
    Terms terms_;
};

/// Exterior derivative: d(f e_I) = sum_v (df/dx_v) dx_v ^ e_I over coordinates.
inline PolyForm poly_d(const PolyForm& a)
{
    PolyForm out(a.nvars(), a.ncoords(), a.degree() + 1);
    for (const auto& [m, p] : a.terms())
        for (int v = 0; v < a.ncoords(); ++v) {
            const int s = wedge_sign(Monomial(std::uint64_t{1} << v), m);
            if (s == 0)
                continue;
            Polynomial dp = p.derivative(static_cast<std::size_t>(v));
            if (dp.is_zero())
                continue;
            if (s < 0)
                dp = -dp;
            out.add(Monomial(m.bits() | (std::uint64_t{1} << v)), dp);
        }
    return out;
}

/// Polynomial map of a coordinate space to itself: images of the coordinate
/// variables; parameters are fixed.
class PolyMap {
public:
    PolyMap(int ncoords, std::vector<Polynomial> components)
        : ncoords_(ncoords), components_(std::move(components))
    {
        if (static_cast<int>(components_.size()) != ncoords)
            throw DimensionMismatch("a polynomial map needs one component per coordinate");
        for (const auto& c : components_)
            if (c.nvars() != components_[0].nvars())
                throw DimensionMismatch("map components over different variable sets");
        if (!components_.empty() && components_[0].nvars() < static_cast<std::size_t>(ncoords))
            throw DimensionMismatch("fewer variables than coordinates");
    }

    static PolyMap identity(std::size_t nvars, int ncoords)
    {
        std::vector<Polynomial> comps;
        for (int v = 0; v < ncoords; ++v)
            comps.push_back(Polynomial::variable(nvars, static_cast<std::size_t>(v)));
        return PolyMap(ncoords, std::move(comps));
    }

    int ncoords() const noexcept { return ncoords_; }
    std::size_t nvars() const noexcept { return components_.empty() ? 0 : components_[0].nvars(); }
    const std::vector<Polynomial>& components() const noexcept { return components_; }

    /// Images of every variable (parameters map to themselves).
    std::vector<Polynomial> variable_images() const
    {
        std::vector<Polynomial> images = components_;
        for (std::size_t v = static_cast<std::size_t>(ncoords_); v < nvars(); ++v)
            images.push_back(Polynomial::variable(nvars(), v));
        return images;
    }

    /// (this o other)(q) = this(other(q)).
    PolyMap after(const PolyMap& other) const
    {
        if (other.nvars() != nvars() || other.ncoords() != ncoords_)
            throw DimensionMismatch("composition of maps over different spaces");
        const auto images = other.variable_images();
        std::vector<Polynomial> comps;
        for (const auto& c : components_)
            comps.push_back(c.compose(images));
        return PolyMap(ncoords_, std::move(comps));
    }

private:
    int ncoords_;
    std::vector<Polynomial> components_;
};

/// f^* a: substitute the components into the coefficients and replace each
/// dx_v by d(f_v).
inline PolyForm pullback(const PolyMap& f, const PolyForm& a)
{
    if (f.nvars() != a.nvars() || f.ncoords() != a.ncoords())
        throw DimensionMismatch("pullback of a form over a different coordinate space");
    const auto images = f.variable_images();
    std::vector<PolyForm> dfs;
    for (int v = 0; v < f.ncoords(); ++v)
        dfs.push_back(poly_d(PolyForm::function(f.ncoords(), f.components()[static_cast<std::size_t>(v)])));
    PolyForm out(a.nvars(), a.ncoords(), a.degree());
    for (const auto& [m, p] : a.terms()) {
        PolyForm term = PolyForm::function(a.ncoords(), p.compose(images));
        for (int idx : m.indices())
            term = wedge(term, dfs[static_cast<std::size_t>(idx - 1)]);
        out += term;
    }
    return out;
}

/// True when p takes integer values on all of Z^k. A rational polynomial of
/// degree d_v in each variable v is integer-valued iff it is integral on the
/// box prod_v {0..d_v}; `counterexample` receives a failing point.
inline bool is_integer_valued(const Polynomial& p, std::vector<Scalar>* counterexample = nullptr)
{
    const std::size_t k = p.nvars();
    std::vector<int> bound(k);
    for (std::size_t v = 0; v < k; ++v)
        bound[v] = p.degree_in(v);
    std::vector<Scalar> point(k, Scalar(0));
    std::vector<int> digit(k, 0);
    while (true) {
        if (!is_integer(p.evaluate(point))) {
            if (counterexample)
                *counterexample = point;
            return false;
        }
        std::size_t pos = 0;
        while (pos < k) {
            if (++digit[pos] <= bound[pos]) {
                point[pos] = digit[pos];
                break;
            }
            digit[pos] = 0;
            point[pos] = 0;
            ++pos;
        }
        if (pos == k)
            return true;
    }
}

/// The group law on R^4:
/// (x,y,z,t).(x',y',z',t') = (x+x', y+y', z+z'+y x', t+t'+z x'+y x'^2/2),
/// evaluated on two 4-tuples of polynomials over a common variable set.
inline std::vector<Polynomial> group_multiply(const std::vector<Polynomial>& p, const std::vector<Polynomial>& q)
{
    if (p.size() != 4 || q.size() != 4)
        throw DimensionMismatch("group elements have four coordinates");
    const auto& [x, y, z, t] = std::tie(p[0], p[1], p[2], p[3]);
    const auto& [x2, y2, z2, t2] = std::tie(q[0], q[1], q[2], q[3]);
    return {x + x2, y + y2, z + z2 + y * x2, t + t2 + z * x2 + Scalar(1, 2) * y * x2 * x2};
}

/// (x,y,z,t)^{-1} = (-x, -y, -z + x y, -t + x z - x^2 y / 2).
inline std::vector<Polynomial> group_inverse(const std::vector<Polynomial>& p)
{
    const auto& [x, y, z, t] = std::tie(p[0], p[1], p[2], p[3]);
    return {-x, -y, -z + x * y, -t + x * z - Scalar(1, 2) * x * x * y};
}

/// The invariant coframe x1 = dx, x2 = dy, x3 = dz - y dx, x4 = dt - z dx on
/// `nvars` variables whose first four are x, y, z, t.
inline std::vector<PolyForm> model_coframe(std::size_t nvars = 4)
{
    auto var = [&](std::size_t v) { return Polynomial::variable(nvars, v); };
    auto d = [&](int v) { return PolyForm::differential(nvars, 4, v); };
    return {d(0), d(1), d(2) - var(1) * d(0), d(3) - var(2) * d(0)};
}

/// Left translation q -> p.q with p = (a, b, c, e) held in variables 4..7.
inline PolyMap left_translation()
{
    constexpr std::size_t nvars = 8;
    std::vector<Polynomial> p, q;
    for (std::size_t v = 0; v < 4; ++v) {
        p.push_back(Polynomial::variable(nvars, 4 + v));
        q.push_back(Polynomial::variable(nvars, v));
    }
    return PolyMap(4, group_multiply(p, q));
}

struct RealizationCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct RealizationReport {
    std::vector<RealizationCheck> checks;
    bool all_passed() const
    {
        for (const auto& c : checks)
            if (!c.passed)
                return false;
        return true;
    }
    const RealizationCheck* find(const std::string& name) const
    {
        for (const auto& c : checks)
            if (c.name == name)
                return &c;
        return nullptr;
    }
};

/// Closure of the lattice m_1 Z x ... x m_4 Z under the group law (and
/// inverses): substitute x_v = m_v u_v with u integral and require every
/// product coordinate divided by m_v to be integer-valued.
inline RealizationCheck check_lattice_closure(const std::array<int, 4>& moduli, const std::string& name)
{
    constexpr std::size_t nvars = 8;
    std::vector<Polynomial> p, q;
    for (std::size_t v = 0; v < 4; ++v) {
        p.push_back(Polynomial::variable(nvars, v, moduli[v]));
        q.push_back(Polynomial::variable(nvars, 4 + v, moduli[v]));
    }
    RealizationCheck check{name, true, "closed under products and inverses"};
    auto test = [&](const std::vector<Polynomial>& element, const char* what) {
        for (std::size_t v = 0; v < 4 && check.passed; ++v) {
            std::vector<Scalar> bad;
            const Polynomial scaled = element[v] * Scalar(1, moduli[v]);
            if (!is_integer_valued(scaled, &bad)) {
                check.passed = false;
                std::string point;
                for (std::size_t i = 0; i < bad.size(); ++i)
                    point += (i ? "," : "") + nilgeom::to_string(bad[i] * moduli[i % 4]);
                check.detail = std::string(what) + " leaves the lattice in coordinate " +
                               std::to_string(v + 1) + " at integer point (" + point + ")";
            }
        }
    };
    test(group_multiply(p, q), "product");
    test(group_inverse(p), "inverse");
    return check;
}

/// Checks the explicit model against the algebra (0,0,12,13).
inline RealizationReport verify_realization()
{
    RealizationReport report;
    const LieAlgebra algebra = parse_salamon("(0,0,12,13)");
    const auto coframe = model_coframe(4);

    {
        RealizationCheck c{"structure_equations", true, "d x_k matches (0,0,12,13) for k = 1..4"};
        for (int k = 1; k <= 4 && c.passed; ++k) {
            PolyForm predicted(4, 4, 2);
            for (const auto& [m, coeff] : algebra.d_covector(k).terms()) {
                const auto idx = m.indices();
                predicted += Polynomial::constant(4, coeff) *
                             wedge(coframe[static_cast<std::size_t>(idx[0] - 1)],
                                   coframe[static_cast<std::size_t>(idx[1] - 1)]);
            }
            if (!(poly_d(coframe[static_cast<std::size_t>(k - 1)]) == predicted)) {
                c.passed = false;
                c.detail = "d x_" + std::to_string(k) + " differs from the structure equation";
            }
        }
        report.checks.push_back(c);
    }
    {
        RealizationCheck c{"left_invariance", true, "L_p^* x_k = x_k for symbolic p = (a,b,c,e)"};
        const PolyMap translate = left_translation();
        const auto frame8 = model_coframe(8);
        for (std::size_t k = 0; k < 4 && c.passed; ++k)
            if (!(pullback(translate, frame8[k]) == frame8[k])) {
                c.passed = false;
                c.detail = "x_" + std::to_string(k + 1) + " is not left-invariant";
            }
        report.checks.push_back(c);
    }
    {
        RealizationCheck c{"coframe_at_identity", true, "coframe at the origin is the dual basis"};
        const std::vector<Scalar> origin(4, Scalar(0));
        for (int k = 1; k <= 4 && c.passed; ++k)
            if (!(coframe[static_cast<std::size_t>(k - 1)].evaluate_at(origin) == KForm::covector(4, k))) {
                c.passed = false;
                c.detail = "x_" + std::to_string(k) + " at the origin is not the dual covector";
            }
        report.checks.push_back(c);
    }
    report.checks.push_back(check_lattice_closure({2, 1, 1, 1}, "lattice_closure"));
    {
        RealizationCheck c{"associativity", true, "(p.q).r = p.(q.r) as a polynomial identity"};
        constexpr std::size_t nvars = 12;
        std::vector<Polynomial> p, q, r;
        for (std::size_t v = 0; v < 4; ++v) {
            p.push_back(Polynomial::variable(nvars, v));
            q.push_back(Polynomial::variable(nvars, 4 + v));
            r.push_back(Polynomial::variable(nvars, 8 + v));
        }
        if (group_multiply(group_multiply(p, q), r) != group_multiply(p, group_multiply(q, r))) {
            c.passed = false;
            c.detail = "group law is not associative";
        }
        report.checks.push_back(c);
    }
    {
        RealizationCheck c{"inverse", true, "p.p^{-1} = p^{-1}.p = identity"};
        constexpr std::size_t nvars = 4;
        std::vector<Polynomial> p, zero(4, Polynomial(nvars));
        for (std::size_t v = 0; v < 4; ++v)
            p.push_back(Polynomial::variable(nvars, v));
        if (group_multiply(p, group_inverse(p)) != zero || group_multiply(group_inverse(p), p) != zero) {
            c.passed = false;
            c.detail = "inverse formula is wrong";
        }
        report.checks.push_back(c);
    }
    return report;
}

} // namespace nilgeom
