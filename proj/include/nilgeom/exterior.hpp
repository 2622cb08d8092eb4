#pragma once
// Exterior algebra over the dual of an n-dimensional space. A k-form is a
// sparse map from basis monomials e_{i1...ik} (i1 < ... < ik, 1-based) to
// exact coefficients. Zero coefficients are never stored.

#include "errors.hpp"
#include "scalar.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace nilgeom {

inline constexpr int max_dimension = 62;

/// Coordinates in the basis {X_1..X_n} (0-based storage).
using Vector = std::vector<Scalar>;

/// A basis monomial e_I stored as the bit set of I (bit i-1 <-> index i).
/// Ordering is lexicographic on the increasing index tuple.
class Monomial {
public:
    constexpr Monomial() = default;
    constexpr explicit Monomial(std::uint64_t bits) : bits_(bits) {}

    static Monomial of(std::initializer_list<int> indices)
    {
        std::uint64_t bits = 0;
        for (int i : indices)
            bits |= std::uint64_t{1} << (i - 1);
        return Monomial(bits);
    }

    constexpr std::uint64_t bits() const noexcept { return bits_; }
    constexpr int degree() const noexcept { return std::popcount(bits_); }
    constexpr bool contains(int index) const noexcept { return (bits_ >> (index - 1)) & 1U; }

    std::vector<int> indices() const
    {
        std::vector<int> out;
        for (std::uint64_t b = bits_; b != 0; b &= b - 1)
            out.push_back(std::countr_zero(b) + 1);
        return out;
    }

    friend constexpr bool operator==(Monomial, Monomial) = default;
    friend constexpr bool operator<(Monomial a, Monomial b) noexcept
    {
        std::uint64_t x = a.bits_;
        std::uint64_t y = b.bits_;
        while (x != 0 && y != 0) {
            const int ix = std::countr_zero(x);
            const int iy = std::countr_zero(y);
            if (ix != iy)
                return ix < iy;
            x &= x - 1;
            y &= y - 1;
        }
        return x == 0 && y != 0;
    }

private:
    std::uint64_t bits_ = 0;
};

/// Sign of e_A ^ e_B relative to e_{A u B}; 0 when A and B overlap.
constexpr int wedge_sign(Monomial a, Monomial b) noexcept
{
    if ((a.bits() & b.bits()) != 0)
        return 0;
    int inversions = 0;
    for (std::uint64_t y = b.bits(); y != 0; y &= y - 1) {
        const int iy = std::countr_zero(y);
        const std::uint64_t above = iy >= 63 ? 0 : (~std::uint64_t{0} << (iy + 1));
        inversions += std::popcount(a.bits() & above);
    }
    return inversions % 2 == 0 ? 1 : -1;
}

/// All degree-k monomials in dimension n, in lexicographic order.
inline std::vector<Monomial> monomial_basis(int n, int k)
{
    std::vector<Monomial> out;
    if (k < 0 || k > n)
        return out;
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
        idx[static_cast<std::size_t>(i)] = i + 1;
    while (true) {
        std::uint64_t bits = 0;
        for (int i : idx)
            bits |= std::uint64_t{1} << (i - 1);
        out.emplace_back(bits);
        int pos = k - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - (k - 1 - pos))
            --pos;
        if (pos < 0)
            break;
        ++idx[static_cast<std::size_t>(pos)];
        for (int i = pos + 1; i < k; ++i)
            idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
    }
    return out;
}

class KForm {
public:
    using Terms = std::map<Monomial, Scalar>;

    KForm() = default;
    KForm(int dim, int degree) : dim_(dim), degree_(degree)
    {
        if (dim < 0 || dim > max_dimension)
            throw IndexOutOfRange("form ambient dimension " + std::to_string(dim) + " unsupported");
        if (degree < 0)
            throw IndexOutOfRange("negative form degree");
    }

    static KForm constant(int dim, const Scalar& c)
    {
        KForm f(dim, 0);
        f.add(Monomial{}, c);
        return f;
    }

    /// The dual basis covector x_i.
    static KForm covector(int dim, int i, const Scalar& c = 1)
    {
        KForm f(dim, 1);
        f.check_index(i);
        f.add(Monomial(std::uint64_t{1} << (i - 1)), c);
        return f;
    }

    /// c * x_{i1} ^ ... ^ x_{ik} for indices in any order (repeats give 0).
    static KForm monomial(int dim, std::vector<int> indices, const Scalar& c = 1)
    {
        KForm f(dim, static_cast<int>(indices.size()));
        for (int i : indices)
            f.check_index(i);
        int sign = 1;
        for (std::size_t a = 0; a < indices.size(); ++a)
            for (std::size_t b = a + 1; b < indices.size(); ++b) {
                if (indices[a] == indices[b])
                    return f;
                if (indices[a] > indices[b])
                    sign = -sign;
            }
        std::uint64_t bits = 0;
        for (int i : indices)
            bits |= std::uint64_t{1} << (i - 1);
        f.add(Monomial(bits), sign * c);
        return f;
    }

    int dim() const noexcept { return dim_; }
    int degree() const noexcept { return degree_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    Scalar coefficient(Monomial m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? Scalar(0) : it->second;
    }

    /// Adds c * e_m; m must have this form's degree.
    void add(Monomial m, const Scalar& c)
    {
        if (m.degree() != degree_)
            throw IndexOutOfRange("monomial degree does not match form degree");
        if (dim_ < 64 && (m.bits() >> dim_) != 0)
            throw IndexOutOfRange("monomial index exceeds ambient dimension");
        if (c.is_zero())
            return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    KForm& operator+=(const KForm& o)
    {
        check_compatible(o, "addition");
        for (const auto& [m, c] : o.terms_)
            add(m, c);
        return *this;
    }
    KForm& operator-=(const KForm& o)
    {
        check_compatible(o, "subtraction");
        for (const auto& [m, c] : o.terms_)
            add(m, -c);
        return *this;
    }
    KForm& operator*=(const Scalar& s)
    {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_)
            c *= s;
        return *this;
    }

    friend KForm operator+(KForm a, const KForm& b) { return a += b; }
    friend KForm operator-(KForm a, const KForm& b) { return a -= b; }
    friend KForm operator-(KForm a) { return a *= Scalar(-1); }
    friend KForm operator*(const Scalar& s, KForm a) { return a *= s; }
    friend KForm operator*(KForm a, const Scalar& s) { return a *= s; }

    friend bool operator==(const KForm& a, const KForm& b)
    {
        return a.dim_ == b.dim_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
    }

    /// Coefficients in the lexicographic monomial basis of this degree.
    Vector to_coordinates() const
    {
        const auto basis = monomial_basis(dim_, degree_);
        Vector v(basis.size());
        for (std::size_t i = 0; i < basis.size(); ++i)
            v[i] = coefficient(basis[i]);
        return v;
    }

    static KForm from_coordinates(int dim, int degree, std::span<const Scalar> coords)
    {
        KForm f(dim, degree);
        const auto basis = monomial_basis(dim, degree);
        if (coords.size() != basis.size())
            throw DimensionMismatch("coordinate vector length does not match C(n,k)");
        for (std::size_t i = 0; i < basis.size(); ++i)
            f.add(basis[i], coords[i]);
        return f;
    }

    void check_index(int i) const
    {
        if (i < 1 || i > dim_)
            throw IndexOutOfRange("basis index " + std::to_string(i) + " outside 1.." +
                                  std::to_string(dim_));
    }

private:
    void check_compatible(const KForm& o, const char* what) const
    {
        if (o.dim_ != dim_)
            throw AmbientMismatch(std::string(what) + " of forms over different dimensions");
        if (o.degree_ != degree_)
            throw IndexOutOfRange(std::string(what) + " of forms of different degree");
    }

    int dim_ = 0;
    int degree_ = 0;
    Terms terms_;
};

inline KForm wedge(const KForm& a, const KForm& b)
{
    if (a.dim() != b.dim())
        throw AmbientMismatch("wedge of forms over different dimensions");
    KForm out(a.dim(), a.degree() + b.degree());
    if (out.degree() > a.dim())
        return out;
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            const int s = wedge_sign(ma, mb);
            if (s == 0)
                continue;
            out.add(Monomial(ma.bits() | mb.bits()), s > 0 ? ca * cb : -(ca * cb));
        }
    return out;
}

/// a^p, with a^0 the constant 1.
inline KForm wedge_power(const KForm& a, int p)
{
    KForm out = KForm::constant(a.dim(), 1);
    for (int i = 0; i < p; ++i)
        out = wedge(out, a);
    return out;
}

/// Evaluates a k-form on k vectors: sum over I of a_I * det(v_j[I]).
inline Scalar evaluate(const KForm& a, std::span<const Vector> vectors)
{
    if (static_cast<int>(vectors.size()) != a.degree())
        throw DimensionMismatch("form evaluated on the wrong number of vectors");
    for (const auto& v : vectors)
        if (static_cast<int>(v.size()) != a.dim())
            throw DimensionMismatch("vector length differs from ambient dimension");
    Scalar total = 0;
    const std::size_t k = vectors.size();
    for (const auto& [m, c] : a.terms()) {
        const auto idx = m.indices();
        // Leibniz expansion of the k x k minor; k is small.
        std::vector<std::size_t> perm(k);
        for (std::size_t i = 0; i < k; ++i)
            perm[i] = i;
        Scalar det = 0;
        do {
            int inv = 0;
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = i + 1; j < k; ++j)
                    if (perm[i] > perm[j])
                        ++inv;
            Scalar term = inv % 2 == 0 ? Scalar(1) : Scalar(-1);
            for (std::size_t j = 0; j < k && !term.is_zero(); ++j)
                term *= vectors[j][static_cast<std::size_t>(idx[perm[j]] - 1)];
            det += term;
        } while (std::next_permutation(perm.begin(), perm.end()));
        total += c * det;
    }
    return total;
}

} // namespace nilgeom
