#pragma once
// Chevalley-Eilenberg cohomology (ordinary and twisted by a closed 1-form),
// cup products, Lefschetz maps and triple Massey products. For a nilpotent
// algebra these compute the de Rham cohomology of any compact quotient of the
// corresponding group.

#include "errors.hpp"
#include "exterior.hpp"
#include "lie_algebra.hpp"
#include "linalg.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

namespace nilgeom {

namespace detail {

inline void require_closed_theta(const LieAlgebra& algebra, const KForm& theta)
{
    if (theta.dim() != algebra.dim())
        throw AmbientMismatch("Lee form lives in the wrong dimension");
    if (theta.degree() != 1 && !(theta.is_zero() && theta.degree() == 0))
        throw InvalidParameter("twisting form must have degree 1");
    if (theta.degree() == 1 && !ce_d(algebra, theta).is_zero())
        throw LeeFormNotClosed("twisting 1-form is not closed");
}

inline bool is_trivial_theta(const std::optional<KForm>& theta)
{
    return !theta || theta->is_zero();
}

} // namespace detail

/// d_theta a = d a - theta ^ a. Throws LeeFormNotClosed if d theta != 0.
inline KForm twisted_d(const LieAlgebra& algebra, const KForm& theta, const KForm& a)
{
    detail::require_closed_theta(algebra, theta);
    if (theta.is_zero())
        return ce_d(algebra, a);
    return ce_d(algebra, a) - wedge(theta, a);
}

/// Matrix of d (or d_theta) from degree k to degree k+1 in the lexicographic
/// monomial bases. Column j is the image of the j-th degree-k monomial.
inline Matrix differential_matrix(const LieAlgebra& algebra, int k,
                                  const std::optional<KForm>& theta = std::nullopt)
{
    const int n = algebra.dim();
    const auto source = monomial_basis(n, k);
    const auto target = monomial_basis(n, k + 1);
    Matrix m(target.size(), source.size());
    std::map<Monomial, std::size_t> row_of;
    for (std::size_t r = 0; r < target.size(); ++r)
        row_of.emplace(target[r], r);
    const bool twisted = !detail::is_trivial_theta(theta);
    for (std::size_t c = 0; c < source.size(); ++c) {
        KForm e(n, k);
        e.add(source[c], 1);
        const KForm image = twisted ? ce_d(algebra, e) - wedge(*theta, e) : ce_d(algebra, e);
        for (const auto& [mono, coeff] : image.terms())
            m(row_of.at(mono), c) = coeff;
    }
    return m;
}

class CohomologySpace;

/// A cohomology class: exact coordinates in the space's representative basis
/// plus the form it was built from.
struct CohomologyClass;

class CohomologySpace {
public:
    /// H^k (or H^k_theta) of the algebra. k may exceed dim (the zero space).
    CohomologySpace(LieAlgebra algebra, int k, std::optional<KForm> theta = std::nullopt)
        : impl_(compute(std::move(algebra), k, std::move(theta))) {}

    const LieAlgebra& algebra() const noexcept { return impl_->algebra; }
    int degree() const noexcept { return impl_->degree; }
    const std::optional<KForm>& theta() const noexcept { return impl_->theta; }
    bool twisted() const noexcept { return impl_->theta.has_value(); }

    const std::vector<KForm>& cocycle_basis() const noexcept { return impl_->cocycles; }
    const std::vector<KForm>& coboundary_basis() const noexcept { return impl_->coboundaries; }
    /// Closed forms whose classes form a basis of the quotient.
    const std::vector<KForm>& representatives() const noexcept { return impl_->representatives; }
    int betti() const noexcept { return static_cast<int>(impl_->representatives.size()); }

    bool is_cocycle(const KForm& a) const
    {
        check_form(a);
        return apply_d(a).is_zero();
    }

    /// Coordinates of [a] in the representative basis. Throws NotClosed.
    Vector reduce(const KForm& a) const
    {
        check_form(a);
        if (!apply_d(a).is_zero())
            throw NotClosed("form is not a cocycle of the complex");
        Vector v = a.to_coordinates();
        const auto& b = impl_->coboundary_echelon;
        for (std::size_t r = 0; r < b.rank(); ++r) {
            const Scalar f = v[b.pivots[r]];
            if (f.is_zero())
                continue;
            for (std::size_t c = 0; c < v.size(); ++c)
                if (!b.reduced(r, c).is_zero())
                    v[c] -= f * b.reduced(r, c);
        }
        Vector coords(impl_->representatives.size());
        for (std::size_t j = 0; j < coords.size(); ++j)
            coords[j] = v[impl_->representative_pivots[j]];
        return coords;
    }

    bool is_coboundary(const KForm& a) const
    {
        for (const auto& c : reduce(a))
            if (!c.is_zero())
                return false;
        return true;
    }

    /// The representative combination with the given coordinates.
    KForm form_of(const Vector& coords) const
    {
        if (coords.size() != impl_->representatives.size())
            throw DimensionMismatch("class coordinates have the wrong length");
        KForm out(algebra().dim(), degree());
        for (std::size_t j = 0; j < coords.size(); ++j)
            out += coords[j] * impl_->representatives[j];
        return out;
    }

    /// Some eta with d_theta eta = a (echelon solve, free variables zero), or
    /// nullopt when a is not exact. a must have this space's degree.
    std::optional<KForm> primitive(const KForm& a) const
    {
        check_form(a);
        if (degree() == 0)
            return a.is_zero() ? std::optional<KForm>(KForm(algebra().dim(), 0)) : std::nullopt;
        const auto target = a.to_coordinates();
        if (target.empty())
            return KForm(algebra().dim(), degree() - 1);
        const auto x = solve(impl_->previous_d, target);
        if (!x)
            return std::nullopt;
        return KForm::from_coordinates(algebra().dim(), degree() - 1, *x);
    }

    KForm apply_d(const KForm& a) const
    {
        if (detail::is_trivial_theta(impl_->theta))
            return ce_d(algebra(), a);
        return ce_d(algebra(), a) - wedge(*impl_->theta, a);
    }

    /// Same algebra, degree and twisting form.
    friend bool operator==(const CohomologySpace& a, const CohomologySpace& b)
    {
        if (a.impl_ == b.impl_)
            return true;
        const bool ta = !detail::is_trivial_theta(a.theta());
        const bool tb = !detail::is_trivial_theta(b.theta());
        return a.degree() == b.degree() && a.algebra() == b.algebra() && ta == tb &&
               (!ta || *a.theta() == *b.theta());
    }

private:
    struct Impl {
        LieAlgebra algebra;
        int degree = 0;
        std::optional<KForm> theta;
        std::vector<KForm> cocycles;
        std::vector<KForm> coboundaries;
        std::vector<KForm> representatives;
        EchelonForm coboundary_echelon;
        std::vector<std::size_t> representative_pivots;
        Matrix previous_d;
    };

    void check_form(const KForm& a) const
    {
        if (a.dim() != algebra().dim())
            throw AmbientMismatch("form dimension differs from the algebra's");
        if (a.degree() != degree() && !a.is_zero())
            throw IndexOutOfRange("form of degree " + std::to_string(a.degree()) +
                                  " given to H^" + std::to_string(degree()));
    }

    static std::shared_ptr<const Impl> compute(LieAlgebra algebra, int k, std::optional<KForm> theta)
    {
        if (k < 0)
            throw IndexOutOfRange("negative cohomology degree");
        if (theta)
            detail::require_closed_theta(algebra, *theta);
        auto impl = std::make_shared<Impl>();
        const int n = algebra.dim();
        impl->algebra = algebra;
        impl->degree = k;
        impl->theta = std::move(theta);
        const std::size_t width = monomial_basis(n, k).size();
        if (width == 0)
            return impl;

        auto to_forms = [&](const EchelonForm& e) {
            std::vector<KForm> out;
            for (std::size_t r = 0; r < e.rank(); ++r)
                out.push_back(KForm::from_coordinates(n, k, e.reduced.row(r)));
            return out;
        };

        const Matrix d_here = differential_matrix(algebra, k, impl->theta);
        const auto kernel = nullspace(d_here);
        const EchelonForm z = rref(Matrix::from_rows(kernel, width));
        impl->cocycles = to_forms(z);

        if (k > 0) {
            impl->previous_d = differential_matrix(algebra, k - 1, impl->theta);
            impl->coboundary_echelon = rref(impl->previous_d.transpose());
        } else {
            impl->previous_d = Matrix(width, 0);
            impl->coboundary_echelon = rref(Matrix(0, width));
        }
        impl->coboundaries = to_forms(impl->coboundary_echelon);

        // complement: cocycles reduced against the coboundary pivots, then
        // brought to reduced echelon form
        const auto& b = impl->coboundary_echelon;
        std::vector<Vector> reduced;
        for (std::size_t r = 0; r < z.rank(); ++r) {
            Vector v = z.reduced.row(r);
            for (std::size_t br = 0; br < b.rank(); ++br) {
                const Scalar f = v[b.pivots[br]];
                if (f.is_zero())
                    continue;
                for (std::size_t c = 0; c < width; ++c)
                    v[c] -= f * b.reduced(br, c);
            }
            reduced.push_back(std::move(v));
        }
        const EchelonForm reps = rref(Matrix::from_rows(reduced, width));
        impl->representatives = to_forms(reps);
        impl->representative_pivots = reps.pivots;
        return impl;
    }

    std::shared_ptr<const Impl> impl_;
};

struct CohomologyClass {
    CohomologySpace space;
    Vector coordinates;
    KForm representative;

    int degree() const noexcept { return space.degree(); }
    bool is_zero() const
    {
        for (const auto& c : coordinates)
            if (!c.is_zero())
                return false;
        return true;
    }
    friend bool operator==(const CohomologyClass& a, const CohomologyClass& b)
    {
        return a.space == b.space && a.coordinates == b.coordinates;
    }
};

/// H^k with 0 <= k <= dim, optionally twisted by a closed 1-form.
inline CohomologySpace cohomology_space(const LieAlgebra& algebra, int k,
                                        const std::optional<KForm>& theta = std::nullopt)
{
    if (k < 0 || k > algebra.dim())
        throw IndexOutOfRange("cohomology degree " + std::to_string(k) + " outside 0.." +
                              std::to_string(algebra.dim()));
    return CohomologySpace(algebra, k, theta);
}

/// Throws NotClosed when a is not a cocycle of the space's complex.
inline CohomologyClass class_of(const CohomologySpace& space, const KForm& a)
{
    KForm rep = a;
    if (a.is_zero() && a.degree() != space.degree())
        rep = KForm(space.algebra().dim(), space.degree());
    auto coords = space.reduce(rep);
    return CohomologyClass{space, std::move(coords), std::move(rep)};
}

/// The zero class of H^k (k may exceed the dimension).
inline CohomologyClass zero_class(const LieAlgebra& algebra, int k)
{
    CohomologySpace space(algebra, k);
    return class_of(space, KForm(algebra.dim(), k));
}

inline std::vector<int> betti_numbers(const LieAlgebra& algebra,
                                      const std::optional<KForm>& theta = std::nullopt)
{
    std::vector<int> b;
    for (int k = 0; k <= algebra.dim(); ++k)
        b.push_back(CohomologySpace(algebra, k, theta).betti());
    return b;
}

/// Lower central series data plus the Betti profile.
inline AlgebraInvariants fingerprint(const LieAlgebra& algebra)
{
    AlgebraInvariants inv = lower_central_series(algebra);
    inv.betti = betti_numbers(algebra);
    return inv;
}

inline CohomologyClass cup(const CohomologyClass& a, const CohomologyClass& b)
{
    if (!(a.space.algebra() == b.space.algebra()))
        throw AmbientMismatch("cup product of classes on different algebras");
    if (!detail::is_trivial_theta(a.space.theta()) || !detail::is_trivial_theta(b.space.theta()))
        throw InvalidParameter("cup product is defined here for untwisted classes only");
    const LieAlgebra& algebra = a.space.algebra();
    const int degree = a.degree() + b.degree();
    if (degree > algebra.dim())
        return zero_class(algebra, degree);
    CohomologySpace target(algebra, degree);
    return class_of(target, wedge(a.representative, b.representative));
}

struct LefschetzMap {
    int p = 0;
    Matrix matrix;  ///< b_{2n-p} x b_p, columns are images of the H^p representatives
    std::size_t rank = 0;
    bool injective = false;
    bool surjective = false;
    bool isomorphism() const noexcept { return injective && surjective; }
};

/// [alpha] -> [alpha ^ omega^(n-p)], H^p -> H^(2n-p).
inline LefschetzMap lefschetz_map(const LieAlgebra& algebra, const KForm& omega, int p)
{
    const int dim = algebra.dim();
    if (dim % 2 != 0)
        throw OddDimension("Lefschetz map needs an even-dimensional algebra");
    const int n = dim / 2;
    if (p < 0 || p > n)
        throw IndexOutOfRange("Lefschetz degree must satisfy 0 <= p <= n");
    if (omega.dim() != dim || (omega.degree() != 2 && !omega.is_zero()))
        throw InvalidParameter("omega must be a 2-form on the algebra");
    if (!ce_d(algebra, omega).is_zero())
        throw OmegaNotClosed("omega is not closed");
    const CohomologySpace source(algebra, p);
    const CohomologySpace target(algebra, dim - p);
    const KForm power = wedge_power(omega.degree() == 2 ? omega : KForm(dim, 2), n - p);
    LefschetzMap out;
    out.p = p;
    out.matrix = Matrix(static_cast<std::size_t>(target.betti()), static_cast<std::size_t>(source.betti()));
    for (std::size_t j = 0; j < source.representatives().size(); ++j) {
        const Vector image = target.reduce(wedge(source.representatives()[j], power));
        for (std::size_t i = 0; i < image.size(); ++i)
            out.matrix(i, j) = image[i];
    }
    out.rank = rank(out.matrix);
    out.injective = out.rank == static_cast<std::size_t>(source.betti());
    out.surjective = out.rank == static_cast<std::size_t>(target.betti());
    return out;
}

struct MasseyResult {
    KForm representative;
    KForm primitive_ab;  ///< x with dx = a ^ b
    KForm primitive_bc;  ///< y with dy = b ^ c
    CohomologyClass massey_class;
    std::vector<CohomologyClass> indeterminacy_basis;
    bool nonzero_mod_indeterminacy = false;
};

namespace detail {

/// Independent subset (echelon) of a family of classes in one space.
inline std::vector<CohomologyClass> class_basis(const CohomologySpace& space,
                                                const std::vector<CohomologyClass>& family)
{
    std::vector<Vector> rows;
    for (const auto& c : family)
        rows.push_back(c.coordinates);
    if (rows.empty() || space.betti() == 0)
        return {};
    const EchelonForm e = rref(Matrix::from_rows(rows, static_cast<std::size_t>(space.betti())));
    std::vector<CohomologyClass> out;
    for (std::size_t r = 0; r < e.rank(); ++r) {
        Vector coords = e.reduced.row(r);
        KForm rep = space.form_of(coords);
        out.push_back(CohomologyClass{space, std::move(coords), std::move(rep)});
    }
    return out;
}

inline bool in_span(const CohomologySpace& space, const std::vector<CohomologyClass>& basis,
                    const Vector& target)
{
    std::vector<Vector> rows;
    for (const auto& c : basis)
        rows.push_back(c.coordinates);
    const auto width = static_cast<std::size_t>(space.betti());
    const std::size_t before = rows.empty() ? 0 : rank(Matrix::from_rows(rows, width));
    rows.push_back(target);
    return rank(Matrix::from_rows(rows, width)) == before;
}

} // namespace detail

/// Triple Massey product <a,b,c> for untwisted classes with a.b = b.c = 0.
/// Representative x^c + (-1)^(|a|+1) a^y with dx = a^b and dy = b^c, primitives
/// chosen by echelon solve. Throws CupObstruction.
inline MasseyResult triple_massey(const CohomologyClass& a, const CohomologyClass& b,
                                  const CohomologyClass& c,
                                  const std::optional<KForm>& shift_ab = std::nullopt,
                                  const std::optional<KForm>& shift_bc = std::nullopt)
{
    const LieAlgebra& algebra = a.space.algebra();
    if (!(b.space.algebra() == algebra) || !(c.space.algebra() == algebra))
        throw AmbientMismatch("Massey product of classes on different algebras");
    if (a.space.twisted() || b.space.twisted() || c.space.twisted())
        throw InvalidParameter("Massey products are defined here for untwisted classes only");
    const int n = algebra.dim();
    const KForm ab = wedge(a.representative, b.representative);
    const KForm bc = wedge(b.representative, c.representative);
    const int deg_ab = a.degree() + b.degree();
    const int deg_bc = b.degree() + c.degree();
    const int deg = deg_ab + c.degree() - 1;

    auto primitive_of = [&](const KForm& target, int degree, const char* name) {
        if (degree > n) {
            return KForm(n, degree - 1);
        }
        const CohomologySpace space(algebra, degree);
        auto x = space.primitive(target);
        if (!x)
            throw CupObstruction(std::string("cup product ") + name + " is not zero in cohomology");
        return *x;
    };
    KForm x = primitive_of(ab, deg_ab, "a.b");
    KForm y = primitive_of(bc, deg_bc, "b.c");
    if (shift_ab)
        x += *shift_ab;
    if (shift_bc)
        y += *shift_bc;

    KForm rep = wedge(x, c.representative);
    const KForm second = wedge(a.representative, y);
    if ((a.degree() + 1) % 2 == 0)
        rep += second;
    else
        rep -= second;

    MasseyResult out{rep, x, y, zero_class(algebra, deg), {}, false};
    if (deg > n)
        return out;
    const CohomologySpace target(algebra, deg);
    out.massey_class = class_of(target, rep);

    std::vector<CohomologyClass> family;
    if (deg - a.degree() <= n) {
        const CohomologySpace left(algebra, deg - a.degree());
        for (const auto& r : left.representatives())
            family.push_back(cup(a, class_of(left, r)));
    }
    if (deg - c.degree() <= n && deg - c.degree() >= 0) {
        const CohomologySpace right(algebra, deg - c.degree());
        for (const auto& r : right.representatives())
            family.push_back(cup(class_of(right, r), c));
    }
    out.indeterminacy_basis = detail::class_basis(target, family);
    out.nonzero_mod_indeterminacy =
        !detail::in_span(target, out.indeterminacy_basis, out.massey_class.coordinates);
    return out;
}

/// Read-mostly memo of cohomology spaces keyed by (algebra, degree, theta).
/// Population is idempotent: racing computations of one key store equal values.
class CohomologyCache {
public:
    CohomologySpace get(const LieAlgebra& algebra, int k,
                        const std::optional<KForm>& theta = std::nullopt)
    {
        const std::string key = make_key(algebra, k, theta);
        {
            std::shared_lock lock(mutex_);
            if (auto it = entries_.find(key); it != entries_.end())
                return it->second;
        }
        CohomologySpace computed = cohomology_space(algebra, k, theta);
        std::unique_lock lock(mutex_);
        return entries_.try_emplace(key, std::move(computed)).first->second;
    }

    std::size_t size() const
    {
        std::shared_lock lock(mutex_);
        return entries_.size();
    }

private:
    static std::string make_key(const LieAlgebra& algebra, int k, const std::optional<KForm>& theta)
    {
        const int n = algebra.dim();
        std::string key = std::to_string(n) + ";" + std::to_string(k) + ";";
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                for (int l = 1; l <= n; ++l) {
                    const Scalar c = algebra.constant(i, j, l);
                    if (!c.is_zero())
                        key += std::to_string(i) + "," + std::to_string(j) + "," +
                               std::to_string(l) + "=" + to_string(c) + ";";
                }
        key += "|";
        if (theta)
            for (const auto& [m, c] : theta->terms())
                key += std::to_string(m.bits()) + "=" + to_string(c) + ";";
        return key;
    }

    mutable std::shared_mutex mutex_;
    std::map<std::string, CohomologySpace> entries_;
};

} // namespace nilgeom
