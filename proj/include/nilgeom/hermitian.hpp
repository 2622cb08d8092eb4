#pragma once
// Left-invariant metrics: induced inner products on forms, Hodge star,
// codifferential, Levi-Civita connection (Koszul formula), Kaehler and Lee
// forms of an almost Hermitian pair (g, J), and the Kaehler / gcK / lcK /
// Vaisman classifier.

#include "cohomology.hpp"
#include "errors.hpp"
#include "exterior.hpp"
#include "lie_algebra.hpp"
#include "linalg.hpp"
#include "structures.hpp"

#include <string>
#include <vector>

namespace nilgeom {

/// g_ij = g(X_i, X_j), symmetric positive-definite, with an orientation
/// (+1 or -1) relative to e_{1..n}.
class InnerProduct {
public:
    explicit InnerProduct(Matrix g, int orientation = 1) : g_(std::move(g)), orientation_(orientation)
    {
        if (g_.rows() != g_.cols())
            throw DegenerateMetric("metric matrix must be square");
        if (orientation != 1 && orientation != -1)
            throw InvalidParameter("orientation must be +1 or -1");
        for (std::size_t i = 0; i < g_.rows(); ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (g_(i, j) != g_(j, i))
                    throw DegenerateMetric("metric matrix is not symmetric");
        // leading principal minors
        for (std::size_t k = 1; k <= g_.rows(); ++k) {
            Matrix minor(k, k);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j)
                    minor(i, j) = g_(i, j);
            if (determinant(minor) <= 0)
                throw DegenerateMetric("metric is not positive-definite (leading minor " +
                                       std::to_string(k) + ")");
        }
        det_ = determinant(g_);
        inverse_ = *nilgeom::inverse(g_);
    }

    static InnerProduct euclidean(std::size_t n) { return InnerProduct(Matrix::identity(n)); }

    std::size_t dim() const noexcept { return g_.rows(); }
    const Matrix& matrix() const noexcept { return g_; }
    const Matrix& inverse() const noexcept { return inverse_; }
    const Scalar& determinant_value() const noexcept { return det_; }
    int orientation() const noexcept { return orientation_; }

    Scalar operator()(const Vector& u, const Vector& v) const
    {
        Scalar total = 0;
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t j = 0; j < dim(); ++j)
                if (!u[i].is_zero() && !v[j].is_zero())
                    total += u[i] * g_(i, j) * v[j];
        return total;
    }

    InnerProduct scaled(const Scalar& c) const
    {
        Matrix g = g_;
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t j = 0; j < dim(); ++j)
                g(i, j) *= c;
        return InnerProduct(std::move(g), orientation_);
    }

private:
    Matrix g_;
    int orientation_;
    Scalar det_;
    Matrix inverse_;
};

namespace detail {
inline void require_metric(const LieAlgebra& algebra, const InnerProduct& g)
{
    if (static_cast<int>(g.dim()) != algebra.dim())
        throw DimensionMismatch("metric size differs from algebra dimension");
}

/// det of g^{-1} restricted to rows I, columns J.
inline Scalar inverse_minor(const InnerProduct& g, Monomial rows, Monomial cols)
{
    const auto ri = rows.indices();
    const auto ci = cols.indices();
    Matrix m(ri.size(), ci.size());
    for (std::size_t a = 0; a < ri.size(); ++a)
        for (std::size_t b = 0; b < ci.size(); ++b)
            m(a, b) = g.inverse()(static_cast<std::size_t>(ri[a] - 1), static_cast<std::size_t>(ci[b] - 1));
    return determinant(std::move(m));
}

inline Monomial top_monomial(int n)
{
    return Monomial(n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1));
}
} // namespace detail

/// Induced inner product of two k-forms.
inline Scalar form_inner_product(const InnerProduct& g, const KForm& a, const KForm& b)
{
    if (a.dim() != b.dim() || static_cast<int>(g.dim()) != a.dim())
        throw DimensionMismatch("inner product of forms in different dimensions");
    if (a.degree() != b.degree())
        return Scalar(0);
    Scalar total = 0;
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms())
            total += ca * cb * detail::inverse_minor(g, ma, mb);
    return total;
}

/// The rational part of the Hodge star: a ^ star0(b) = <a,b> e_{1..n}
/// (orientation included). The star itself is sqrt(det g) * star0.
inline KForm hodge_star_unnormalized(const InnerProduct& g, const KForm& b)
{
    const int n = b.dim();
    if (static_cast<int>(g.dim()) != n)
        throw DimensionMismatch("metric size differs from form dimension");
    const int k = b.degree();
    KForm out(n, n - k);
    if (k > n)
        return out;
    const Monomial top = detail::top_monomial(n);
    for (const auto& mono : monomial_basis(n, k)) {
        Scalar pairing = 0;
        for (const auto& [mb, cb] : b.terms())
            pairing += cb * detail::inverse_minor(g, mono, mb);
        if (pairing.is_zero())
            continue;
        const Monomial complement(top.bits() & ~mono.bits());
        const int s = wedge_sign(mono, complement) * g.orientation();
        out.add(complement, s > 0 ? pairing : Scalar(-pairing));
    }
    return out;
}

/// Hodge star: a ^ *b = <a,b> vol with vol = orientation * sqrt(det g) e_{1..n}.
/// Throws IrrationalVolume when det g is not a rational square.
inline KForm hodge_star(const LieAlgebra& algebra, const InnerProduct& g, const KForm& b)
{
    detail::require_metric(algebra, g);
    if (b.dim() != algebra.dim())
        throw AmbientMismatch("form lives in the wrong dimension");
    const auto root = rational_sqrt(g.determinant_value());
    if (!root)
        throw IrrationalVolume("det g = " + to_string(g.determinant_value()) +
                               " is not a rational square; use the unnormalized star");
    return *root * hodge_star_unnormalized(g, b);
}

/// Riemannian volume form; throws IrrationalVolume like hodge_star.
inline KForm volume_form(const LieAlgebra& algebra, const InnerProduct& g)
{
    return hodge_star(algebra, g, KForm::constant(algebra.dim(), 1));
}

/// delta = (-1)^(n(k+1)+1) * d * on k-forms; the formal adjoint of d for
/// invariant forms on a unimodular algebra. Rational even when the star is not.
inline KForm codifferential(const LieAlgebra& algebra, const InnerProduct& g, const KForm& b)
{
    detail::require_metric(algebra, g);
    if (b.dim() != algebra.dim())
        throw AmbientMismatch("form lives in the wrong dimension");
    if (!lower_central_series(algebra).unimodular)
        throw NotUnimodular("codifferential adjointness needs a unimodular algebra");
    const int n = algebra.dim();
    const int k = b.degree();
    if (k == 0)
        return KForm(n, 0);
    KForm out = hodge_star_unnormalized(g, ce_d(algebra, hodge_star_unnormalized(g, b)));
    out *= g.determinant_value();
    if ((n * (k + 1) + 1) % 2 != 0)
        out *= Scalar(-1);
    return out;
}

/// omega(X, Y) = g(JX, Y).
inline KForm kahler_form(const InnerProduct& g, const AlmostComplexStructure& j)
{
    const auto n = g.dim();
    if (j.dim() != n)
        throw DimensionMismatch("J and g have different sizes");
    KForm omega(static_cast<int>(n), 2);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            Scalar v = 0;
            for (std::size_t k = 0; k < n; ++k)
                v += j.matrix()(k, a) * g.matrix()(k, b);
            omega.add(Monomial::of({static_cast<int>(a + 1), static_cast<int>(b + 1)}), v);
        }
    return omega;
}

/// g(JX, JY) = g(X, Y).
inline bool is_compatible(const InnerProduct& g, const AlmostComplexStructure& j)
{
    return j.matrix().transpose() * g.matrix() * j.matrix() == g.matrix();
}

/// Lee form theta(X) = -1/(n-1) * (delta omega)(JX) for dim = 2n >= 4.
inline KForm lee_form(const LieAlgebra& algebra, const InnerProduct& g, const AlmostComplexStructure& j)
{
    detail::require_metric(algebra, g);
    const int dim = algebra.dim();
    if (dim % 2 != 0 || dim < 4)
        throw WrongDimension("Lee form needs dimension 2n >= 4");
    if (static_cast<int>(j.dim()) != dim)
        throw DimensionMismatch("J has the wrong size");
    if (!is_compatible(g, j))
        throw NotHermitian("g(JX, JY) != g(X, Y)");
    const int n = dim / 2;
    const KForm delta = codifferential(algebra, g, kahler_form(g, j));
    KForm theta(dim, 1);
    const Scalar factor = Scalar(-1) / Scalar(n - 1);
    for (int i = 1; i <= dim; ++i) {
        const Vector jx = j.apply(algebra.basis_vector(i));
        Scalar v = 0;
        for (const auto& [m, c] : delta.terms())
            v += c * jx[static_cast<std::size_t>(m.indices()[0] - 1)];
        theta.add(Monomial::of({i}), factor * v);
    }
    return theta;
}

/// Levi-Civita connection of an invariant metric: nabla_{X_i} X_j = sum_k Gamma^k_ij X_k.
class ConnectionCoefficients {
public:
    ConnectionCoefficients(int dim, std::vector<Scalar> gamma) : dim_(dim), gamma_(std::move(gamma)) {}

    int dim() const noexcept { return dim_; }

    const Scalar& gamma(int i, int j, int k) const
    {
        return gamma_[static_cast<std::size_t>(((i - 1) * dim_ + (j - 1)) * dim_ + (k - 1))];
    }

    Vector nabla(int i, int j) const
    {
        Vector v(static_cast<std::size_t>(dim_));
        for (int k = 1; k <= dim_; ++k)
            v[static_cast<std::size_t>(k - 1)] = gamma(i, j, k);
        return v;
    }

    /// nabla_u v for invariant vector fields u, v (bilinear extension).
    Vector covariant(const Vector& u, const Vector& v) const
    {
        Vector out(static_cast<std::size_t>(dim_));
        for (int i = 1; i <= dim_; ++i)
            for (int j = 1; j <= dim_; ++j) {
                const Scalar w = u[static_cast<std::size_t>(i - 1)] * v[static_cast<std::size_t>(j - 1)];
                if (w.is_zero())
                    continue;
                for (int k = 1; k <= dim_; ++k)
                    out[static_cast<std::size_t>(k - 1)] += w * gamma(i, j, k);
            }
        return out;
    }

private:
    int dim_;
    std::vector<Scalar> gamma_;
};

/// 2 g(nabla_X Y, Z) = g([X,Y],Z) - g([Y,Z],X) + g([Z,X],Y), solved on the basis.
inline ConnectionCoefficients koszul_connection(const LieAlgebra& algebra, const InnerProduct& g)
{
    detail::require_metric(algebra, g);
    const int n = algebra.dim();
    std::vector<Scalar> gamma(static_cast<std::size_t>(n * n * n));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            const Vector xi = algebra.basis_vector(i);
            const Vector xj = algebra.basis_vector(j);
            Vector rhs(static_cast<std::size_t>(n));
            for (int l = 1; l <= n; ++l) {
                const Vector xl = algebra.basis_vector(l);
                rhs[static_cast<std::size_t>(l - 1)] =
                    (g(algebra.bracket(xi, xj), xl) - g(algebra.bracket(xj, xl), xi) +
                     g(algebra.bracket(xl, xi), xj)) /
                    2;
            }
            const Vector coeffs = g.inverse() * rhs;
            for (int k = 1; k <= n; ++k)
                gamma[static_cast<std::size_t>(((i - 1) * n + (j - 1)) * n + (k - 1))] =
                    coeffs[static_cast<std::size_t>(k - 1)];
        }
    return ConnectionCoefficients(n, std::move(gamma));
}

/// nabla alpha = 0 for an invariant k-form, i.e.
/// sum_m alpha(.., nabla_{X_i} X_{j_m}, ..) = 0 for all i and increasing J.
inline bool is_parallel(const ConnectionCoefficients& nabla, const KForm& alpha)
{
    const int n = nabla.dim();
    if (alpha.dim() != n)
        throw DimensionMismatch("form and connection dimensions differ");
    const int k = alpha.degree();
    if (alpha.is_zero() || k == 0)
        return true;
    for (int i = 1; i <= n; ++i)
        for (const auto& mono : monomial_basis(n, k)) {
            const auto idx = mono.indices();
            Scalar total = 0;
            for (int m = 0; m < k; ++m) {
                std::vector<Vector> args;
                for (int a = 0; a < k; ++a) {
                    const Vector basis = [&] {
                        Vector v(static_cast<std::size_t>(n));
                        v[static_cast<std::size_t>(idx[static_cast<std::size_t>(a)] - 1)] = 1;
                        return v;
                    }();
                    args.push_back(a == m ? nabla.nabla(i, idx[static_cast<std::size_t>(a)]) : basis);
                }
                total += evaluate(alpha, args);
            }
            if (!total.is_zero())
                return false;
        }
    return true;
}

struct HermitianFlags {
    bool kahler = false;
    bool gck = false;
    bool lck = false;
    bool vaisman = false;
    bool none() const noexcept { return !kahler && !gck && !lck && !vaisman; }
    friend bool operator==(const HermitianFlags&, const HermitianFlags&) = default;
};

struct HermitianClassification {
    bool hermitian = false;
    bool integrable = false;
    KForm kahler_form;
    KForm lee_form;
    bool lee_closed = false;
    bool lee_exact = false;        ///< [theta] = 0 in H^1
    bool lee_parallel = false;     ///< nabla theta = 0 for the given metric
    bool kahler_form_parallel = false;  ///< nabla omega = 0, cross-check of the Kaehler flag
    HermitianFlags flags;

    /// Most specific class: kahler, gck, vaisman, lck or none.
    std::string label() const
    {
        if (flags.kahler)
            return "kahler";
        if (flags.gck)
            return "gck";
        if (flags.vaisman)
            return "vaisman";
        if (flags.lck)
            return "lck";
        return "none";
    }
};

/// Kaehler: integrable and d omega = 0. lcK: integrable, d theta = 0 and
/// d omega = theta ^ omega with theta the Lee form. gcK: lcK with [theta] = 0.
/// Vaisman: lcK, not gcK, and nabla theta = 0. For invariant data the only
/// invariant conformal factors are constants, so checking the given metric
/// decides the Vaisman property for its whole invariant conformal class.
inline HermitianClassification classify_hermitian(const LieAlgebra& algebra, const InnerProduct& g,
                                                  const AlmostComplexStructure& j)
{
    HermitianClassification c;
    c.lee_form = lee_form(algebra, g, j);  // validates dimension and compatibility
    c.hermitian = true;
    c.kahler_form = kahler_form(g, j);
    c.integrable = nijenhuis(algebra, j).integrable;
    const KForm d_omega = ce_d(algebra, c.kahler_form);
    c.lee_closed = ce_d(algebra, c.lee_form).is_zero();
    if (c.lee_closed)
        c.lee_exact = class_of(CohomologySpace(algebra, 1), c.lee_form).is_zero();
    const ConnectionCoefficients nabla = koszul_connection(algebra, g);
    c.lee_parallel = is_parallel(nabla, c.lee_form);
    c.kahler_form_parallel = is_parallel(nabla, c.kahler_form);

    c.flags.kahler = c.integrable && d_omega.is_zero();
    c.flags.lck = c.integrable && c.lee_closed && d_omega == wedge(c.lee_form, c.kahler_form);
    c.flags.gck = c.flags.lck && c.lee_exact;
    c.flags.vaisman = c.flags.lck && !c.flags.gck && c.lee_parallel;
    return c;
}

} // namespace nilgeom
