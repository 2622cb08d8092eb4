#pragma once
// Symplectic and locally conformal symplectic (lcs) structures on Lie
// algebras: Pfaffian nondegeneracy certificates, exact verification, searches
// over closed / twisted-closed 2-forms, Nijenhuis integrability of a supplied
// almost complex structure, and the four-dimensional nilpotent classification.

#include "cohomology.hpp"
#include "errors.hpp"
#include "exterior.hpp"
#include "lie_algebra.hpp"
#include "linalg.hpp"
#include "polynomial.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace nilgeom {

/// Skew coefficient matrix A with A_ij = omega(X_i, X_j).
inline Matrix skew_matrix(const KForm& omega)
{
    if (omega.degree() != 2 && !omega.is_zero())
        throw InvalidParameter("skew matrix of a form that is not a 2-form");
    const auto n = static_cast<std::size_t>(omega.dim());
    Matrix a(n, n);
    for (const auto& [m, c] : omega.terms()) {
        const auto idx = m.indices();
        const auto i = static_cast<std::size_t>(idx[0] - 1);
        const auto j = static_cast<std::size_t>(idx[1] - 1);
        a(i, j) = c;
        a(j, i) = -c;
    }
    return a;
}

/// Pfaffian of a skew-symmetric matrix by skew Gaussian elimination.
inline Scalar pfaffian(Matrix a)
{
    const std::size_t n = a.rows();
    if (a.cols() != n)
        throw DimensionMismatch("Pfaffian of a non-square matrix");
    if (n % 2 != 0)
        return Scalar(0);
    Scalar result = 1;
    for (std::size_t k = 0; k < n; k += 2) {
        std::size_t pivot = k + 1;
        while (pivot < n && a(k, pivot).is_zero())
            ++pivot;
        if (pivot == n)
            return Scalar(0);
        if (pivot != k + 1) {
            for (std::size_t c = 0; c < n; ++c)
                std::swap(a(k + 1, c), a(pivot, c));
            for (std::size_t r = 0; r < n; ++r)
                std::swap(a(r, k + 1), a(r, pivot));
            result = -result;
        }
        const Scalar p = a(k, k + 1);
        result *= p;
        for (std::size_t i = k + 2; i < n; ++i)
            for (std::size_t j = k + 2; j < n; ++j)
                a(i, j) += (a(k + 1, i) * a(k, j) - a(k, i) * a(k + 1, j)) / p;
    }
    return result;
}

/// Pf of the coefficient matrix of omega, i.e. the coefficient of e_{1..2n}
/// in omega^n / n!. Nonzero exactly when omega is nondegenerate.
inline Scalar pfaffian_volume(const LieAlgebra& algebra, const KForm& omega)
{
    if (algebra.dim() % 2 != 0)
        throw OddDimension("Pfaffian volume needs an even dimension");
    if (omega.dim() != algebra.dim())
        throw AmbientMismatch("2-form lives in the wrong dimension");
    return pfaffian(skew_matrix(omega));
}

/// Pfaffian of sum_s t_s * span[s] as a polynomial in t (one variable per
/// spanning 2-form), by cofactor expansion along the first remaining row.
inline Polynomial pfaffian_polynomial(int dim, const std::vector<KForm>& span)
{
    const std::size_t m = span.size();
    const auto n = static_cast<std::size_t>(dim);
    std::vector<Polynomial> entry(n * n, Polynomial(m));
    for (std::size_t s = 0; s < m; ++s)
        for (const auto& [mono, c] : span[s].terms()) {
            const auto idx = mono.indices();
            const auto i = static_cast<std::size_t>(idx[0] - 1);
            const auto j = static_cast<std::size_t>(idx[1] - 1);
            entry[i * n + j] += Polynomial::variable(m, s, c);
            entry[j * n + i] -= Polynomial::variable(m, s, c);
        }
    if (n % 2 != 0)
        return Polynomial(m);
    std::map<std::uint64_t, Polynomial> memo;
    auto pf = [&](auto&& self, std::uint64_t subset) -> Polynomial {
        if (subset == 0)
            return Polynomial::constant(m, 1);
        if (auto it = memo.find(subset); it != memo.end())
            return it->second;
        const auto first = static_cast<std::size_t>(std::countr_zero(subset));
        const std::uint64_t rest = subset & (subset - 1);
        Polynomial total(m);
        int position = 0;
        for (std::uint64_t r = rest; r != 0; r &= r - 1, ++position) {
            const auto j = static_cast<std::size_t>(std::countr_zero(r));
            const Polynomial& a = entry[first * n + j];
            if (a.is_zero())
                continue;
            Polynomial term = a * self(self, rest & ~(std::uint64_t{1} << j));
            if (position % 2 == 0)
                total += term;
            else
                total -= term;
        }
        memo.emplace(subset, total);
        return total;
    };
    const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
    return pf(pf, all);
}

struct NondegeneracySearch {
    std::optional<KForm> witness;  ///< nondegenerate element of the span
    bool certain = true;           ///< false only for an unsuccessful randomized search
};

inline constexpr int symbolic_pfaffian_max_dim = 8;

/// Decides whether span(basis) contains a nondegenerate 2-form. Exact for
/// dim <= 8 (symbolic Pfaffian, identically-zero test); above that a
/// randomized evaluation with a fixed seed.
inline NondegeneracySearch find_nondegenerate_in_span(int dim, const std::vector<KForm>& basis)
{
    NondegeneracySearch out;
    if (dim % 2 != 0 || basis.empty())
        return out;
    auto combine = [&](const std::vector<Scalar>& t) {
        KForm omega(dim, 2);
        for (std::size_t s = 0; s < basis.size(); ++s)
            if (!t[s].is_zero())
                omega += t[s] * basis[s];
        return omega;
    };
    if (dim <= symbolic_pfaffian_max_dim) {
        Polynomial p = pfaffian_polynomial(dim, basis);
        if (p.is_zero())
            return out;
        // fix variables one at a time, preferring 0 so the witness stays sparse;
        // a nonzero polynomial of degree d survives all but d values
        std::vector<Scalar> t(basis.size());
        const int degree = dim / 2;
        for (std::size_t v = 0; v < basis.size(); ++v) {
            for (int attempt = 0; attempt <= 2 * degree + 1; ++attempt) {
                const Scalar value = attempt % 2 == 0 ? Scalar(-attempt / 2) : Scalar((attempt + 1) / 2);
                Polynomial q = p.substitute(v, value);
                if (!q.is_zero()) {
                    t[v] = value;
                    p = std::move(q);
                    break;
                }
            }
        }
        out.witness = combine(t);
        return out;
    }
    std::mt19937_64 rng(0x6e696c67656f6dULL);
    std::uniform_int_distribution<int> dist(-1000, 1000);
    for (int trial = 0; trial < 64; ++trial) {
        std::vector<Scalar> t(basis.size());
        for (auto& x : t)
            x = dist(rng);
        KForm omega = combine(t);
        if (!pfaffian(skew_matrix(omega)).is_zero()) {
            out.witness = std::move(omega);
            return out;
        }
    }
    out.certain = false;
    return out;
}

struct SymplecticVerdict {
    bool closed = false;
    Scalar volume;  ///< Pfaffian volume
    bool symplectic() const { return closed && !volume.is_zero(); }
};

inline SymplecticVerdict check_symplectic(const LieAlgebra& algebra, const KForm& omega)
{
    SymplecticVerdict v;
    v.volume = pfaffian_volume(algebra, omega);
    v.closed = ce_d(algebra, omega).is_zero();
    return v;
}

/// Complete search for a closed nondegenerate 2-form (exact for dim <= 8).
inline NondegeneracySearch find_symplectic(const LieAlgebra& algebra)
{
    if (algebra.dim() % 2 != 0)
        throw OddDimension("symplectic structures need an even dimension");
    if (algebra.dim() == 0)
        return {};
    const CohomologySpace h2(algebra, 2);
    return find_nondegenerate_in_span(algebra.dim(), h2.cocycle_basis());
}

struct LcsVerdict {
    bool is_almost_symplectic = false;  ///< omega^n != 0
    bool lee_closed = false;            ///< d theta = 0
    bool identity_holds = false;        ///< d omega = theta ^ omega
    bool genuine = false;               ///< [theta] != 0 in H^1
    Scalar witness_volume;              ///< Pfaffian volume of omega
    KForm d_omega;                      ///< retained certificates
    KForm theta_wedge_omega;

    bool is_lcs() const noexcept { return is_almost_symplectic && lee_closed && identity_holds; }
    friend bool operator==(const LcsVerdict&, const LcsVerdict&) = default;
};

namespace detail {
inline void require_lcs_dimension(const LieAlgebra& algebra)
{
    if (algebra.dim() % 2 != 0)
        throw OddDimension("lcs structures need an even dimension");
    if (algebra.dim() < 4)
        throw WrongDimension("lcs operations require dimension >= 4 (Lee form not unique below)");
}
} // namespace detail

inline LcsVerdict check_lcs(const LieAlgebra& algebra, const KForm& omega, const KForm& theta)
{
    detail::require_lcs_dimension(algebra);
    if (omega.dim() != algebra.dim() || theta.dim() != algebra.dim())
        throw AmbientMismatch("forms live in the wrong dimension");
    if ((omega.degree() != 2 && !omega.is_zero()) || (theta.degree() != 1 && !theta.is_zero()))
        throw InvalidParameter("check_lcs expects a 2-form and a 1-form");
    const int n = algebra.dim();
    const KForm om = omega.degree() == 2 ? omega : KForm(n, 2);
    const KForm th = theta.degree() == 1 ? theta : KForm(n, 1);
    LcsVerdict v;
    v.witness_volume = pfaffian_volume(algebra, om);
    v.is_almost_symplectic = !v.witness_volume.is_zero();
    v.lee_closed = ce_d(algebra, th).is_zero();
    v.d_omega = ce_d(algebra, om);
    v.theta_wedge_omega = wedge(th, om);
    v.identity_holds = v.d_omega == v.theta_wedge_omega;
    if (v.lee_closed) {
        const CohomologySpace h1(algebra, 1);
        v.genuine = !class_of(h1, th).is_zero();
    }
    return v;
}

struct SearchConfig {
    int height_bound = 2;               ///< H: max height of sampled coefficients
    std::size_t max_candidates = 200000;
    bool basis_covectors_first = true;
};

struct LcsWitness {
    KForm omega;
    KForm theta;
    LcsVerdict verdict;
};

struct LcsSearchResult {
    enum class Status { Found, NotFoundUpToHeight };
    Status status = Status::NotFoundUpToHeight;
    int height = 0;
    std::size_t candidates_examined = 0;
    bool truncated = false;            ///< stopped at max_candidates
    std::optional<LcsWitness> witness; ///< genuine lcs witness (theta != 0)
    /// theta = 0 fallback: a symplectic form, i.e. a non-genuine (gcs) structure.
    std::optional<KForm> gcs_symplectic;

    bool found() const noexcept { return status == Status::Found; }
    /// "FOUND" or "NOT_FOUND_UP_TO_HEIGHT(H)"; never a nonexistence claim.
    std::string label() const
    {
        return found() ? std::string("FOUND")
                       : "NOT_FOUND_UP_TO_HEIGHT(" + std::to_string(height) + ")";
    }
};

namespace detail {

/// Rationals of height <= h ordered by (height, |value|, sign), starting at 0.
inline std::vector<Scalar> ranked_values(int h, bool integers_only)
{
    std::vector<Scalar> values{Scalar(0)};
    for (int level = 1; level <= h; ++level) {
        std::vector<Scalar> fresh;
        for (int q = 1; q <= level; ++q)
            for (int p = 0; p <= level; ++p) {
                if (integers_only && q != 1)
                    continue;
                if (std::max(p, q) != level || p == 0)
                    continue;
                const Scalar v(p, q);
                if (height(v) != level)
                    continue;
                fresh.push_back(v);
            }
        std::sort(fresh.begin(), fresh.end());
        fresh.erase(std::unique(fresh.begin(), fresh.end()), fresh.end());
        for (const auto& v : fresh) {
            values.push_back(v);
            values.push_back(-v);
        }
    }
    return values;
}

/// Enumerates coefficient vectors of length m over `values` in odometer order
/// (position 0 most significant), calling visit(vector) until it returns false.
template <class Visit>
bool for_each_vector(std::size_t m, const std::vector<Scalar>& values, Visit&& visit)
{
    std::vector<std::size_t> digit(m, 0);
    std::vector<Scalar> v(m, values[0]);
    while (true) {
        if (!visit(v))
            return false;
        std::size_t pos = m;
        while (pos > 0) {
            --pos;
            if (++digit[pos] < values.size()) {
                v[pos] = values[digit[pos]];
                break;
            }
            digit[pos] = 0;
            v[pos] = values[0];
            if (pos == 0)
                return true;
        }
        if (m == 0)
            return true;
    }
}

} // namespace detail

/// Semi-decision search for a genuine lcs structure (omega, theta).
///
/// Candidate Lee forms, in this order, skipping repeats:
///   1. closed basis covectors x_1..x_n (when basis_covectors_first);
///   2. integer combinations of the echelon basis of closed 1-forms by
///      increasing max-coefficient h = 1..H, odometer order over the ranking
///      0, 1, -1, 2, -2, ...;
///   3. combinations with some non-integer coefficient, by increasing height
///      h = 2..H, odometer order over rationals ranked by (height, |v|, sign).
/// For each theta the twisted-closed 2-forms are computed exactly and the
/// Pfaffian restricted to them decides nondegeneracy. The first success in
/// this order is returned; otherwise NOT_FOUND_UP_TO_HEIGHT(H).
inline LcsSearchResult find_lcs(const LieAlgebra& algebra, const SearchConfig& cfg = {})
{
    detail::require_lcs_dimension(algebra);
    if (cfg.height_bound < 0)
        throw InvalidParameter("height bound must be non-negative");
    const int n = algebra.dim();
    LcsSearchResult result;
    result.height = cfg.height_bound;

    if (auto sym = find_symplectic(algebra); sym.witness)
        result.gcs_symplectic = sym.witness;
    if (cfg.height_bound == 0)
        return result;

    const CohomologySpace h1(algebra, 1);
    const auto& closed = h1.cocycle_basis();
    const std::size_t m = closed.size();
    std::set<Vector> seen;

    auto try_theta = [&](const KForm& theta) -> bool {
        if (theta.is_zero())
            return true;
        if (!seen.insert(theta.to_coordinates()).second)
            return true;
        if (result.candidates_examined >= cfg.max_candidates) {
            result.truncated = true;
            return false;
        }
        ++result.candidates_examined;
        const CohomologySpace twisted(algebra, 2, theta);
        const auto search = find_nondegenerate_in_span(n, twisted.cocycle_basis());
        if (!search.witness)
            return true;
        LcsVerdict verdict = check_lcs(algebra, *search.witness, theta);
        if (!verdict.is_lcs())
            throw Error("InternalInvariant", "lcs search produced a witness that fails verification");
        result.witness = LcsWitness{*search.witness, theta, std::move(verdict)};
        result.status = LcsSearchResult::Status::Found;
        return false;
    };

    if (cfg.basis_covectors_first)
        for (int i = 1; i <= n; ++i) {
            const KForm x = KForm::covector(n, i);
            if (ce_d(algebra, x).is_zero() && !try_theta(x))
                return result;
        }

    auto combine = [&](const std::vector<Scalar>& t) {
        KForm theta(n, 1);
        for (std::size_t s = 0; s < m; ++s)
            if (!t[s].is_zero())
                theta += t[s] * closed[s];
        return theta;
    };

    for (int h = 1; h <= cfg.height_bound; ++h) {
        const auto values = detail::ranked_values(h, true);
        const bool complete = detail::for_each_vector(m, values, [&](const std::vector<Scalar>& t) {
            Integer top = 0;
            for (const auto& x : t)
                top = std::max(top, Integer(boost::multiprecision::abs(boost::multiprecision::numerator(x))));
            if (top != h)
                return true;
            return try_theta(combine(t));
        });
        if (!complete)
            return result;
    }
    for (int h = 2; h <= cfg.height_bound; ++h) {
        const auto values = detail::ranked_values(h, false);
        const bool complete = detail::for_each_vector(m, values, [&](const std::vector<Scalar>& t) {
            Integer top = 0;
            bool fractional = false;
            for (const auto& x : t) {
                top = std::max(top, height(x));
                fractional = fractional || !is_integer(x);
            }
            if (top != h || !fractional)
                return true;
            return try_theta(combine(t));
        });
        if (!complete)
            return result;
    }
    return result;
}

/// Solves d_theta eta = omega. nullopt means the twisted class [omega] != 0.
/// Throws PreconditionFailed unless theta is closed and d omega = theta ^ omega.
inline std::optional<KForm> twisted_exactness_witness(const LieAlgebra& algebra, const KForm& omega,
                                                      const KForm& theta)
{
    const LcsVerdict v = check_lcs(algebra, omega, theta);
    if (!v.lee_closed || !v.identity_holds)
        throw PreconditionFailed("twisted exactness needs a closed Lee form and d omega = theta ^ omega");
    const CohomologySpace space(algebra, 2, theta.is_zero() ? std::nullopt : std::optional<KForm>(theta));
    return space.primitive(omega);
}

/// Endomorphism J of the algebra with J^2 = -Id. Column i holds J X_i.
class AlmostComplexStructure {
public:
    explicit AlmostComplexStructure(Matrix j) : j_(std::move(j))
    {
        if (j_.rows() != j_.cols())
            throw NotAlmostComplex("J must be square");
        Matrix minus_id = Matrix::identity(j_.rows());
        for (std::size_t i = 0; i < j_.rows(); ++i)
            minus_id(i, i) = -1;
        if (!(j_ * j_ == minus_id))
            throw NotAlmostComplex("J^2 != -Id");
    }

    std::size_t dim() const noexcept { return j_.rows(); }
    const Matrix& matrix() const noexcept { return j_; }
    Vector apply(const Vector& v) const { return j_ * v; }

    /// J X_{2k-1} = X_{2k}, J X_{2k} = -X_{2k-1}.
    static AlmostComplexStructure standard(std::size_t dim)
    {
        Matrix j(dim, dim);
        for (std::size_t k = 0; k + 1 < dim; k += 2) {
            j(k + 1, k) = 1;
            j(k, k + 1) = -1;
        }
        return AlmostComplexStructure(std::move(j));
    }

private:
    Matrix j_;
};

struct NijenhuisTensor {
    int dim = 0;
    std::vector<Vector> values;  ///< N(X_i, X_j) at (i-1)*dim + (j-1)
    bool integrable = false;

    const Vector& at(int i, int j) const
    {
        return values[static_cast<std::size_t>((i - 1) * dim + (j - 1))];
    }
};

/// N(X,Y) = [JX,JY] - J[JX,Y] - J[X,JY] - [X,Y] on all basis pairs.
inline NijenhuisTensor nijenhuis(const LieAlgebra& algebra, const AlmostComplexStructure& j)
{
    const int n = algebra.dim();
    if (static_cast<int>(j.dim()) != n)
        throw DimensionMismatch("J has the wrong size for this algebra");
    NijenhuisTensor out;
    out.dim = n;
    out.integrable = true;
    out.values.reserve(static_cast<std::size_t>(n * n));
    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b) {
            const Vector x = algebra.basis_vector(a);
            const Vector y = algebra.basis_vector(b);
            const Vector jx = j.apply(x);
            const Vector jy = j.apply(y);
            Vector v = algebra.bracket(jx, jy);
            const Vector t1 = j.apply(algebra.bracket(jx, y));
            const Vector t2 = j.apply(algebra.bracket(x, jy));
            const Vector t3 = algebra.bracket(x, y);
            for (std::size_t k = 0; k < v.size(); ++k) {
                v[k] -= t1[k] + t2[k] + t3[k];
                if (!v[k].is_zero())
                    out.integrable = false;
            }
            out.values.push_back(std::move(v));
        }
    return out;
}

inline NijenhuisTensor nijenhuis(const LieAlgebra& algebra, const Matrix& j)
{
    return nijenhuis(algebra, AlmostComplexStructure(j));
}

enum class FourDimClass { Torus, KodairaThurstonType, FiliformType };

inline std::string to_string(FourDimClass c)
{
    switch (c) {
    case FourDimClass::Torus:
        return "torus";
    case FourDimClass::KodairaThurstonType:
        return "kodaira_thurston_type";
    case FourDimClass::FiliformType:
        return "filiform_type";
    }
    return "unknown";
}

struct FourDimClassification {
    FourDimClass kind = FourDimClass::Torus;
    std::string salamon;         ///< canonical representative of the class
    int b1 = 0;
    KForm standard_symplectic;   ///< symplectic form of the class in its standard basis
    bool standard_form_symplectic_on_input = false;
    bool kahler_admissible = false;  ///< a compact Kaehler nilmanifold is a torus
};

/// Four-dimensional nilpotent algebras are decided by b_1 (4, 3 or 2).
inline FourDimClassification classify_4d(const LieAlgebra& algebra)
{
    if (algebra.dim() != 4)
        throw WrongDimension("classify_4d needs a 4-dimensional algebra");
    if (!is_nilpotent(algebra))
        throw NotNilpotent("classify_4d needs a nilpotent algebra");
    FourDimClassification c;
    c.b1 = CohomologySpace(algebra, 1).betti();
    auto e = [](int i, int j) { return KForm::monomial(4, {i, j}); };
    switch (c.b1) {
    case 4:
        c.kind = FourDimClass::Torus;
        c.salamon = "(0,0,0,0)";
        c.standard_symplectic = e(1, 2) + e(3, 4);
        break;
    case 3:
        c.kind = FourDimClass::KodairaThurstonType;
        c.salamon = "(0,0,0,12)";
        c.standard_symplectic = e(1, 4) + e(2, 3);
        break;
    case 2:
        c.kind = FourDimClass::FiliformType;
        c.salamon = "(0,0,12,13)";
        c.standard_symplectic = e(1, 4) + e(2, 3);
        break;
    default:
        throw Error("InternalInvariant", "4-dimensional nilpotent algebra with b1 = " +
                                             std::to_string(c.b1));
    }
    c.standard_form_symplectic_on_input = check_symplectic(algebra, c.standard_symplectic).symplectic();
    c.kahler_admissible = algebra.is_abelian();
    return c;
}

} // namespace nilgeom
