#pragma once
// Finite-dimensional Lie algebras over Q given by structure constants, and the
// Chevalley-Eilenberg differential on their dual exterior algebra.
//
// Sign convention (fixed for the whole library): for the dual basis x_k,
//     dx_k(X_i, X_j) = -x_k([X_i, X_j]),
// so [X_1, X_2] = -X_4 is the same data as dx_4 = x_1 ^ x_2. Structure
// constants imported from sources using dx_k(X_i,X_j) = +x_k([X_i,X_j]) must be
// negated.

#include "errors.hpp"
#include "exterior.hpp"
#include "linalg.hpp"

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace nilgeom {

class LieAlgebra;
KForm ce_d(const LieAlgebra& algebra, const KForm& a);

class LieAlgebra {
public:
    using Brackets = std::map<std::pair<int, int>, Vector>;

    /// The zero-dimensional algebra.
    LieAlgebra() : data_(std::make_shared<Data>()) {}

    /// Validated construction from [X_i, X_j] for i < j (1-based); unlisted
    /// brackets are zero. Throws IndexOutOfRange or JacobiViolation.
    static LieAlgebra build(int dim, const Brackets& brackets,
                            std::vector<std::string> labels = {})
    {
        auto data = make_data(dim, std::move(labels));
        for (const auto& [ij, value] : brackets) {
            const auto [i, j] = ij;
            if (i < 1 || j > dim || i >= j)
                throw IndexOutOfRange("bracket index pair (" + std::to_string(i) + "," +
                                      std::to_string(j) + ") must satisfy 1 <= i < j <= " +
                                      std::to_string(dim));
            if (static_cast<int>(value.size()) != dim)
                throw IndexOutOfRange("bracket value has " + std::to_string(value.size()) +
                                      " coordinates, expected " + std::to_string(dim));
            for (int k = 1; k <= dim; ++k)
                data->set(i, j, k, value[static_cast<std::size_t>(k - 1)]);
        }
        return finish(std::move(data));
    }

    /// Validated construction from the differentials dx_1..dx_n (2-forms).
    static LieAlgebra from_differentials(int dim, const std::vector<KForm>& differentials,
                                         std::vector<std::string> labels = {})
    {
        if (static_cast<int>(differentials.size()) != dim)
            throw IndexOutOfRange("expected " + std::to_string(dim) + " differentials");
        auto data = make_data(dim, std::move(labels));
        for (int k = 1; k <= dim; ++k) {
            const KForm& dx = differentials[static_cast<std::size_t>(k - 1)];
            if (dx.dim() != dim)
                throw AmbientMismatch("differential of x_" + std::to_string(k) +
                                      " lives in the wrong dimension");
            if (dx.degree() != 2 && !dx.is_zero())
                throw IndexOutOfRange("differential of x_" + std::to_string(k) +
                                      " must be a 2-form");
            for (const auto& [m, c] : dx.terms()) {
                const auto idx = m.indices();
                data->set(idx[0], idx[1], k, -c);
            }
        }
        return finish(std::move(data));
    }

    int dim() const noexcept { return data_->dim; }

    /// c^k_{ij} with [X_i, X_j] = sum_k c^k_{ij} X_k; antisymmetric in (i, j).
    Scalar constant(int i, int j, int k) const
    {
        check(i);
        check(j);
        check(k);
        if (i == j)
            return Scalar(0);
        if (i > j)
            return -data_->at(j, i, k);
        return data_->at(i, j, k);
    }

    Vector bracket(const Vector& u, const Vector& v) const
    {
        const int n = dim();
        if (static_cast<int>(u.size()) != n || static_cast<int>(v.size()) != n)
            throw DimensionMismatch("bracket of vectors with wrong length");
        Vector out(static_cast<std::size_t>(n));
        for (int i = 1; i <= n; ++i) {
            const Scalar& ui = u[static_cast<std::size_t>(i - 1)];
            if (ui.is_zero())
                continue;
            for (int j = 1; j <= n; ++j) {
                const Scalar& vj = v[static_cast<std::size_t>(j - 1)];
                if (vj.is_zero() || i == j)
                    continue;
                for (int k = 1; k <= n; ++k) {
                    const Scalar c = constant(i, j, k);
                    if (!c.is_zero())
                        out[static_cast<std::size_t>(k - 1)] += ui * vj * c;
                }
            }
        }
        return out;
    }

    Vector basis_vector(int i) const
    {
        check(i);
        Vector v(static_cast<std::size_t>(dim()));
        v[static_cast<std::size_t>(i - 1)] = 1;
        return v;
    }

    /// dx_k as a 2-form.
    const KForm& d_covector(int k) const
    {
        check(k);
        return data_->dx[static_cast<std::size_t>(k - 1)];
    }

    /// Matrix of ad X_i (column j = [X_i, X_j]).
    Matrix ad(int i) const
    {
        const auto n = static_cast<std::size_t>(dim());
        Matrix m(n, n);
        for (int j = 1; j <= dim(); ++j)
            for (int k = 1; k <= dim(); ++k)
                m(static_cast<std::size_t>(k - 1), static_cast<std::size_t>(j - 1)) = constant(i, j, k);
        return m;
    }

    bool is_abelian() const
    {
        for (const auto& c : data_->c)
            if (!c.is_zero())
                return false;
        return true;
    }

    const std::vector<std::string>& labels() const noexcept { return data_->labels; }

    /// Structural equality: dimension and structure constants (labels ignored).
    friend bool operator==(const LieAlgebra& a, const LieAlgebra& b)
    {
        return a.data_ == b.data_ || (a.dim() == b.dim() && a.data_->c == b.data_->c);
    }

private:
    struct Data {
        int dim = 0;
        std::vector<Scalar> c;  // (i<j, k) packed as ((i-1)*n + (j-1))*n + (k-1)
        std::vector<KForm> dx;
        std::vector<std::string> labels;

        Scalar& ref(int i, int j, int k)
        {
            return c[static_cast<std::size_t>(((i - 1) * dim + (j - 1)) * dim + (k - 1))];
        }
        const Scalar& at(int i, int j, int k) const
        {
            return c[static_cast<std::size_t>(((i - 1) * dim + (j - 1)) * dim + (k - 1))];
        }
        void set(int i, int j, int k, const Scalar& v) { ref(i, j, k) = v; }
    };

    explicit LieAlgebra(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

    static std::shared_ptr<Data> make_data(int dim, std::vector<std::string> labels)
    {
        if (dim < 0 || dim > max_dimension)
            throw IndexOutOfRange("unsupported dimension " + std::to_string(dim));
        if (!labels.empty() && static_cast<int>(labels.size()) != dim)
            throw IndexOutOfRange("label count does not match dimension");
        auto data = std::make_shared<Data>();
        data->dim = dim;
        data->c.assign(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim) *
                           static_cast<std::size_t>(dim),
                       Scalar(0));
        data->labels = std::move(labels);
        return data;
    }

    static LieAlgebra finish(std::shared_ptr<Data> data)
    {
        const int n = data->dim;
        data->dx.clear();
        for (int k = 1; k <= n; ++k) {
            KForm dx(n, 2);
            for (int i = 1; i <= n; ++i)
                for (int j = i + 1; j <= n; ++j)
                    dx.add(Monomial::of({i, j}), -data->at(i, j, k));
            data->dx.push_back(std::move(dx));
        }
        LieAlgebra algebra(std::move(data));
        // d^2 = 0 on every covector is equivalent to the Jacobi identity.
        for (int k = 1; k <= n; ++k) {
            const KForm dd = ce_d(algebra, algebra.d_covector(k));
            if (!dd.is_zero()) {
                const auto idx = dd.terms().begin()->first.indices();
                throw JacobiViolation({idx[0], idx[1], idx[2]},
                                      "Jacobi identity fails: d(d x_" + std::to_string(k) +
                                          ") != 0, witness (" + std::to_string(idx[0]) + "," +
                                          std::to_string(idx[1]) + "," + std::to_string(idx[2]) +
                                          ")");
            }
        }
        return algebra;
    }

    void check(int i) const
    {
        if (i < 1 || i > dim())
            throw IndexOutOfRange("basis index " + std::to_string(i) + " outside 1.." +
                                  std::to_string(dim()));
    }

    std::shared_ptr<const Data> data_;
};

/// Chevalley-Eilenberg differential, extended from covectors by the graded
/// Leibniz rule.
inline KForm ce_d(const LieAlgebra& algebra, const KForm& a)
{
    const int n = algebra.dim();
    if (a.dim() != n)
        throw AmbientMismatch("form dimension " + std::to_string(a.dim()) +
                              " differs from algebra dimension " + std::to_string(n));
    KForm out(n, a.degree() + 1);
    if (out.degree() > n)
        return out;
    for (const auto& [m, coeff] : a.terms()) {
        int position = 0;
        for (std::uint64_t rest = m.bits(); rest != 0; rest &= rest - 1, ++position) {
            const int bit = std::countr_zero(rest);
            const std::uint64_t own = std::uint64_t{1} << bit;
            const Monomial prefix(m.bits() & (own - 1));
            const Monomial suffix(m.bits() & ~(own | (own - 1)));
            const Scalar base = position % 2 == 0 ? coeff : Scalar(-coeff);
            for (const auto& [dm, dc] : algebra.d_covector(bit + 1).terms()) {
                const int s1 = wedge_sign(prefix, dm);
                if (s1 == 0)
                    continue;
                const Monomial head(prefix.bits() | dm.bits());
                const int s2 = wedge_sign(head, suffix);
                if (s2 == 0)
                    continue;
                const Scalar term = base * dc;
                out.add(Monomial(head.bits() | suffix.bits()), s1 * s2 > 0 ? term : Scalar(-term));
            }
        }
    }
    return out;
}

/// Block-diagonal sum; the second summand's basis follows the first's.
inline LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b)
{
    const int na = a.dim();
    const int n = na + b.dim();
    LieAlgebra::Brackets brackets;
    auto embed = [&](const LieAlgebra& part, int offset) {
        for (int i = 1; i <= part.dim(); ++i)
            for (int j = i + 1; j <= part.dim(); ++j) {
                Vector v(static_cast<std::size_t>(n));
                bool nonzero = false;
                for (int k = 1; k <= part.dim(); ++k) {
                    v[static_cast<std::size_t>(offset + k - 1)] = part.constant(i, j, k);
                    nonzero = nonzero || !v[static_cast<std::size_t>(offset + k - 1)].is_zero();
                }
                if (nonzero)
                    brackets[{offset + i, offset + j}] = std::move(v);
            }
    };
    embed(a, 0);
    embed(b, na);
    std::vector<std::string> labels;
    if (!a.labels().empty() || !b.labels().empty()) {
        for (int i = 1; i <= na; ++i)
            labels.push_back(a.labels().empty() ? "X" + std::to_string(i)
                                                : a.labels()[static_cast<std::size_t>(i - 1)]);
        for (int i = 1; i <= b.dim(); ++i)
            labels.push_back(b.labels().empty() ? "X" + std::to_string(na + i)
                                                : b.labels()[static_cast<std::size_t>(i - 1)]);
    }
    return LieAlgebra::build(n, brackets, std::move(labels));
}

/// The same algebra in the basis Y_a = sum_i P(i, a) X_i; P must be invertible.
inline LieAlgebra change_basis(const LieAlgebra& algebra, const Matrix& p)
{
    const int n = algebra.dim();
    if (static_cast<int>(p.rows()) != n || static_cast<int>(p.cols()) != n)
        throw DimensionMismatch("change of basis matrix has the wrong size");
    const auto p_inv = inverse(p);
    if (!p_inv)
        throw InvalidParameter("change of basis matrix is singular");
    LieAlgebra::Brackets brackets;
    for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b) {
            const Vector ya = p.column(static_cast<std::size_t>(a - 1));
            const Vector yb = p.column(static_cast<std::size_t>(b - 1));
            const Vector value = *p_inv * algebra.bracket(ya, yb);
            bool nonzero = false;
            for (const auto& c : value)
                nonzero = nonzero || !c.is_zero();
            if (nonzero)
                brackets[{a, b}] = value;
        }
    return LieAlgebra::build(n, brackets);
}

/// Abelian algebra of the given dimension.
inline LieAlgebra abelian(int dim) { return LieAlgebra::build(dim, {}); }

/// Invariant fingerprint of an algebra. `betti` is left empty here; the
/// cohomology module fills it.
struct AlgebraInvariants {
    int dim = 0;
    bool nilpotent = false;
    int step = 0;                ///< nilpotency step; 0 when not nilpotent or dim 0
    std::vector<int> lcs_dims;   ///< dim g, dim [g,g], dim [g,[g,g]], ...
    int center_dim = 0;
    int derived_dim = 0;
    std::vector<int> betti;
    bool unimodular = false;

    friend bool operator==(const AlgebraInvariants&, const AlgebraInvariants&) = default;
};

inline AlgebraInvariants lower_central_series(const LieAlgebra& algebra)
{
    const int n = algebra.dim();
    AlgebraInvariants inv;
    inv.dim = n;

    std::vector<Vector> current;
    for (int i = 1; i <= n; ++i)
        current.push_back(algebra.basis_vector(i));
    inv.lcs_dims.push_back(n);
    while (!current.empty()) {
        std::vector<Vector> spanning;
        for (int i = 1; i <= n; ++i)
            for (const auto& v : current)
                spanning.push_back(algebra.bracket(algebra.basis_vector(i), v));
        const EchelonForm e = rref(Matrix::from_rows(spanning, static_cast<std::size_t>(n)));
        std::vector<Vector> next;
        for (std::size_t r = 0; r < e.rank(); ++r)
            next.push_back(e.reduced.row(r));
        const int d = static_cast<int>(next.size());
        inv.lcs_dims.push_back(d);
        if (d == static_cast<int>(current.size()))
            break;  // stabilized at a nonzero ideal
        current = std::move(next);
    }
    inv.nilpotent = inv.lcs_dims.back() == 0;
    inv.step = inv.nilpotent ? static_cast<int>(inv.lcs_dims.size()) - 1 : 0;
    inv.derived_dim = inv.lcs_dims.size() > 1 ? inv.lcs_dims[1] : inv.lcs_dims[0];

    // center: v with [v, X_i] = 0 for all i
    Matrix conditions(static_cast<std::size_t>(n * n), static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k)
                conditions(static_cast<std::size_t>((i - 1) * n + (k - 1)),
                           static_cast<std::size_t>(j - 1)) = algebra.constant(j, i, k);
    inv.center_dim = n - static_cast<int>(rank(conditions));

    inv.unimodular = true;
    for (int i = 1; i <= n && inv.unimodular; ++i) {
        Scalar trace = 0;
        for (int k = 1; k <= n; ++k)
            trace += algebra.constant(i, k, k);
        inv.unimodular = trace.is_zero();
    }
    return inv;
}

inline bool is_nilpotent(const LieAlgebra& algebra) { return lower_central_series(algebra).nilpotent; }

} // namespace nilgeom
