#pragma once
// Seeded generators of random algebras, forms and metrics for property tests.

#include "catalog.hpp"
#include "exterior.hpp"
#include "hermitian.hpp"
#include "lie_algebra.hpp"
#include "linalg.hpp"

#include <cstdint>
#include <random>
#include <string>

namespace nilgeom::fuzz {

class Generator {
public:
    explicit Generator(std::uint64_t seed) : rng_(seed) {}

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

    /// p/q with |p| <= h and 1 <= q <= h; zero with the given probability.
    Scalar rational(int h, double zero_probability = 0.0)
    {
        if (coin(zero_probability))
            return 0;
        const int num = uniform(-h, h);
        return Scalar(num) / Scalar(uniform(1, h));
    }

    Scalar integer(int h) { return Scalar(uniform(-h, h)); }

    KForm form(int dim, int degree, int h = 3, double density = 0.5)
    {
        KForm out(dim, degree);
        for (const auto& m : monomial_basis(dim, degree))
            if (coin(density))
                out += KForm::monomial(dim, m.indices(), rational(h));
        return out;
    }

    /// dx_k is arbitrary in the first m covectors for k > m, so Jacobi holds.
    LieAlgebra two_step(int dim)
    {
        const int m = uniform(std::min(2, dim), dim);
        std::vector<KForm> dx;
        for (int k = 1; k <= dim; ++k) {
            KForm f(dim, 2);
            if (k > m)
                for (int i = 1; i <= m; ++i)
                    for (int j = i + 1; j <= m; ++j)
                        if (coin(0.4))
                            f += KForm::monomial(dim, {i, j}, integer(2));
            dx.push_back(f);
        }
        return LieAlgebra::from_differentials(dim, dx);
    }

    /// Model filiform algebra: dx_k = e_{1,k-1} for k >= 3.
    static LieAlgebra filiform(int dim)
    {
        std::vector<KForm> dx;
        for (int k = 1; k <= dim; ++k)
            dx.push_back(k >= 3 ? KForm::monomial(dim, {1, k - 1}) : KForm(dim, 2));
        return LieAlgebra::from_differentials(dim, dx);
    }

    /// Integer matrix with determinant +-1 (when rational_entries is false) or
    /// any invertible rational matrix, as a product of elementary operations.
    Matrix invertible(int n, bool rational_entries)
    {
        Matrix p = Matrix::identity(static_cast<std::size_t>(n));
        if (n == 0)
            return p;
        const int steps = uniform(1, 2 * n);
        for (int s = 0; s < steps; ++s) {
            const auto i = static_cast<std::size_t>(uniform(0, n - 1));
            const auto j = static_cast<std::size_t>(uniform(0, n - 1));
            if (i == j) {
                if (rational_entries) {
                    Scalar f = rational(3);
                    if (f.is_zero())
                        f = 2;
                    for (std::size_t c = 0; c < p.cols(); ++c)
                        p(i, c) *= f;
                } else {
                    for (std::size_t c = 0; c < p.cols(); ++c)
                        p(i, c) = -p(i, c);
                }
                continue;
            }
            const Scalar f = rational_entries ? rational(2) : integer(2);
            for (std::size_t c = 0; c < p.cols(); ++c)
                p(i, c) += f * p(j, c);
        }
        return p;
    }

    /// A random nilpotent algebra of dimension within [lo, hi], usually
    /// presented in a scrambled basis.
    LieAlgebra nilpotent(int lo, int hi)
    {
        const int dim = uniform(lo, hi);
        LieAlgebra base;
        switch (uniform(0, 3)) {
        case 0:
            base = two_step(dim);
            break;
        case 1:
            base = filiform(dim);
            break;
        case 2:
            if (dim % 2 == 0 && dim >= 4) {
                base = heisenberg_line(dim / 2);
                break;
            }
            base = two_step(dim);
            break;
        default: {
            const int first = dim >= 2 ? uniform(1, dim - 1) : dim;
            base = first == dim ? filiform(dim) : direct_sum(filiform(first), two_step(dim - first));
            break;
        }
        }
        if (coin(0.7))
            return change_basis(base, invertible(dim, coin(0.5)));
        return base;
    }

    /// Positive-definite A^T A with A upper triangular, so det g is a square.
    InnerProduct metric(int n, int h = 2)
    {
        Matrix a(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                Scalar v = i == j ? Scalar(uniform(1, h)) : rational(h);
                if (i == j && coin())
                    v = -v;
                a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = v;
            }
        return InnerProduct(a.transpose() * a, coin() ? 1 : -1);
    }

    Matrix skew(int n, int h = 3)
    {
        Matrix a(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const Scalar v = coin(0.2) ? Scalar(0) : integer(h);
                a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = v;
                a(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) = -v;
            }
        return a;
    }

    std::string noise(std::size_t max_length)
    {
        static const std::string alphabet = "(),0123456789+-*/[] ex";
        std::string s;
        const int len = uniform(0, static_cast<int>(max_length));
        for (int i = 0; i < len; ++i)
            s += alphabet[static_cast<std::size_t>(uniform(0, static_cast<int>(alphabet.size()) - 1))];
        return s;
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

} // namespace nilgeom::fuzz
