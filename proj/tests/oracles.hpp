#pragma once
// Deliberately naive reference implementations used to cross-check the
// library: permutation sums, cofactor expansions, the invariant formula for d.

#include "nilgeom/exterior.hpp"
#include "nilgeom/lie_algebra.hpp"
#include "nilgeom/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace oracle {

using nilgeom::KForm;
using nilgeom::LieAlgebra;
using nilgeom::Matrix;
using nilgeom::Scalar;
using nilgeom::Vector;

inline int permutation_sign(std::vector<int> p)
{
    int inversions = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j])
                ++inversions;
    return inversions % 2 ? -1 : 1;
}

/// Leibniz formula over all permutations.
inline Scalar determinant(const Matrix& m)
{
    const std::size_t n = m.rows();
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    Scalar total = 0;
    do {
        Scalar term = permutation_sign(p);
        for (std::size_t i = 0; i < n; ++i)
            term *= m(i, static_cast<std::size_t>(p[i]));
        total += term;
    } while (std::next_permutation(p.begin(), p.end()));
    return total;
}

/// a(v_1, ..., v_k) = sum_I a_I det(v_j[i_l]).
inline Scalar evaluate(const KForm& a, const std::vector<Vector>& vs)
{
    Scalar total = 0;
    for (const auto& [m, c] : a.terms()) {
        const auto idx = m.indices();
        Matrix minor(idx.size(), idx.size());
        for (std::size_t r = 0; r < idx.size(); ++r)
            for (std::size_t s = 0; s < vs.size(); ++s)
                minor(r, s) = vs[s][static_cast<std::size_t>(idx[r] - 1)];
        total += c * oracle::determinant(minor);
    }
    return total;
}

/// d a(X_0..X_k) = sum_{a<b} (-1)^(a+b) a([X_a, X_b], X_0, ^a, ^b, X_k).
inline KForm ce_d(const LieAlgebra& l, const KForm& a)
{
    const int n = l.dim();
    const int k = a.degree();
    KForm out(n, k + 1);
    if (k + 1 > n)
        return KForm(n, k);
    for (const auto& mono : nilgeom::monomial_basis(n, k + 1)) {
        const auto idx = mono.indices();
        Scalar value = 0;
        for (std::size_t p = 0; p < idx.size(); ++p)
            for (std::size_t q = p + 1; q < idx.size(); ++q) {
                std::vector<Vector> args{l.bracket(l.basis_vector(idx[p]), l.basis_vector(idx[q]))};
                for (std::size_t r = 0; r < idx.size(); ++r)
                    if (r != p && r != q)
                        args.push_back(l.basis_vector(idx[r]));
                const int sign = (p + q) % 2 ? -1 : 1;
                value += sign * oracle::evaluate(a, args);
            }
        if (!value.is_zero())
            out += KForm::monomial(n, idx, value);
    }
    return out;
}

/// Sum of [[X_i,X_j],X_k] over cyclic permutations, for every triple.
inline bool jacobi_holds(const LieAlgebra& l)
{
    const int n = l.dim();
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k) {
                const Vector x = l.basis_vector(i), y = l.basis_vector(j), z = l.basis_vector(k);
                const Vector a = l.bracket(l.bracket(x, y), z);
                const Vector b = l.bracket(l.bracket(y, z), x);
                const Vector c = l.bracket(l.bracket(z, x), y);
                for (int s = 0; s < n; ++s)
                    if (!(a[s] + b[s] + c[s]).is_zero())
                        return false;
            }
    return true;
}

/// Expansion along the first row: Pf(A) = sum_j (-1)^j a_{0j} Pf(A without 0, j).
inline Scalar pfaffian(const Matrix& a)
{
    const std::size_t n = a.rows();
    if (n == 0)
        return 1;
    if (n % 2)
        return 0;
    Scalar total = 0;
    for (std::size_t j = 1; j < n; ++j) {
        if (a(0, j).is_zero())
            continue;
        std::vector<std::size_t> keep;
        for (std::size_t r = 1; r < n; ++r)
            if (r != j)
                keep.push_back(r);
        Matrix minor(keep.size(), keep.size());
        for (std::size_t r = 0; r < keep.size(); ++r)
            for (std::size_t s = 0; s < keep.size(); ++s)
                minor(r, s) = a(keep[r], keep[s]);
        const int sign = (j - 1) % 2 ? -1 : 1;
        total += sign * a(0, j) * oracle::pfaffian(minor);
    }
    return total;
}

/// Straightforward Gaussian elimination.
inline std::size_t rank(Matrix m)
{
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c).is_zero())
            ++p;
        if (p == m.rows())
            continue;
        for (std::size_t s = 0; s < m.cols(); ++s)
            std::swap(m(p, s), m(r, s));
        for (std::size_t q = r + 1; q < m.rows(); ++q) {
            const Scalar f = m(q, c) / m(r, c);
            for (std::size_t s = c; s < m.cols(); ++s)
                m(q, s) -= f * m(r, s);
        }
        ++r;
    }
    return r;
}

/// Matrix of the oracle differential Lambda^k -> Lambda^(k+1).
inline Matrix d_matrix(const LieAlgebra& l, int k)
{
    const int n = l.dim();
    const auto src = nilgeom::monomial_basis(n, k);
    const auto dst = nilgeom::monomial_basis(n, k + 1);
    Matrix m(dst.size(), src.size());
    for (std::size_t c = 0; c < src.size(); ++c) {
        const KForm image = oracle::ce_d(l, KForm::monomial(n, src[c].indices()));
        for (std::size_t r = 0; r < dst.size(); ++r)
            m(r, c) = image.coefficient(dst[r]);
    }
    return m;
}

/// b_k = dim ker d_k - rank d_(k-1), both from the oracle differential.
inline std::vector<int> betti(const LieAlgebra& l)
{
    const int n = l.dim();
    std::vector<int> rank_d(static_cast<std::size_t>(n + 1), 0);
    for (int k = 0; k < n; ++k)
        rank_d[static_cast<std::size_t>(k)] = static_cast<int>(oracle::rank(d_matrix(l, k)));
    std::vector<int> b;
    for (int k = 0; k <= n; ++k) {
        const int dim_k = static_cast<int>(nilgeom::monomial_basis(n, k).size());
        const int kernel = dim_k - rank_d[static_cast<std::size_t>(k)];
        b.push_back(kernel - (k > 0 ? rank_d[static_cast<std::size_t>(k - 1)] : 0));
    }
    return b;
}

} // namespace oracle
