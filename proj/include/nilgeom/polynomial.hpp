#pragma once
// Multivariate polynomials with rational coefficients in a fixed number of
// variables, kept in expanded form (exponent vector -> coefficient).

#include "errors.hpp"
#include "scalar.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nilgeom {

class Polynomial {
public:
    using Exponents = std::vector<std::uint16_t>;
    using Terms = std::map<Exponents, Scalar>;

    Polynomial() = default;
    explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

    static Polynomial constant(std::size_t nvars, const Scalar& c)
    {
        Polynomial p(nvars);
        p.add(Exponents(nvars, 0), c);
        return p;
    }

    static Polynomial variable(std::size_t nvars, std::size_t var, const Scalar& c = 1)
    {
        if (var >= nvars)
            throw IndexOutOfRange("polynomial variable index out of range");
        Polynomial p(nvars);
        Exponents e(nvars, 0);
        e[var] = 1;
        p.add(e, c);
        return p;
    }

    std::size_t nvars() const noexcept { return nvars_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    int total_degree() const
    {
        int d = -1;
        for (const auto& [e, c] : terms_) {
            int s = 0;
            for (auto x : e)
                s += x;
            d = std::max(d, s);
        }
        return d;
    }

    int degree_in(std::size_t var) const
    {
        int d = 0;
        for (const auto& [e, c] : terms_)
            d = std::max(d, static_cast<int>(e[var]));
        return d;
    }

    void add(const Exponents& e, const Scalar& c)
    {
        if (e.size() != nvars_)
            throw DimensionMismatch("exponent vector length differs from variable count");
        if (c.is_zero())
            return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    Polynomial& operator+=(const Polynomial& o)
    {
        check(o);
        for (const auto& [e, c] : o.terms_)
            add(e, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o)
    {
        check(o);
        for (const auto& [e, c] : o.terms_)
            add(e, -c);
        return *this;
    }
    Polynomial& operator*=(const Scalar& s)
    {
        if (s.is_zero())
            terms_.clear();
        for (auto& [e, c] : terms_)
            c *= s;
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator-(Polynomial a) { return a *= Scalar(-1); }
    friend Polynomial operator*(Polynomial a, const Scalar& s) { return a *= s; }
    friend Polynomial operator*(const Scalar& s, Polynomial a) { return a *= s; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b)
    {
        a.check(b);
        Polynomial out(a.nvars_);
        Exponents e(a.nvars_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                for (std::size_t i = 0; i < a.nvars_; ++i)
                    e[i] = static_cast<std::uint16_t>(ea[i] + eb[i]);
                out.add(e, ca * cb);
            }
        return out;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b)
    {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    Polynomial pow(unsigned k) const
    {
        Polynomial out = constant(nvars_, 1);
        for (unsigned i = 0; i < k; ++i)
            out = out * *this;
        return out;
    }

    Polynomial derivative(std::size_t var) const
    {
        if (var >= nvars_)
            throw IndexOutOfRange("derivative variable out of range");
        Polynomial out(nvars_);
        for (const auto& [e, c] : terms_) {
            if (e[var] == 0)
                continue;
            Exponents f = e;
            --f[var];
            out.add(f, c * Scalar(e[var]));
        }
        return out;
    }

    /// Replaces variable i by images[i] (polynomials in `images[0].nvars()`
    /// variables); every variable needs an image.
    Polynomial compose(std::span<const Polynomial> images) const
    {
        if (images.size() != nvars_)
            throw DimensionMismatch("composition needs one image per variable");
        const std::size_t target = images.empty() ? 0 : images[0].nvars();
        for (const auto& img : images)
            if (img.nvars() != target)
                throw DimensionMismatch("composition images disagree on variable count");
        // cache powers of each image
        std::vector<std::vector<Polynomial>> powers(nvars_);
        Polynomial out(target);
        for (const auto& [e, c] : terms_) {
            Polynomial term = constant(target, c);
            for (std::size_t v = 0; v < nvars_; ++v) {
                if (e[v] == 0)
                    continue;
                auto& pv = powers[v];
                if (pv.empty())
                    pv.push_back(constant(target, 1));
                while (pv.size() <= e[v])
                    pv.push_back(pv.back() * images[v]);
                term = term * pv[e[v]];
            }
            out += term;
        }
        return out;
    }

    /// Substitutes a single variable by a number (the variable stays in the
    /// variable list with exponent 0).
    Polynomial substitute(std::size_t var, const Scalar& value) const
    {
        Polynomial out(nvars_);
        for (const auto& [e, c] : terms_) {
            Exponents f = e;
            Scalar factor = c;
            for (std::uint16_t k = 0; k < e[var]; ++k)
                factor *= value;
            f[var] = 0;
            out.add(f, factor);
        }
        return out;
    }

    Scalar evaluate(std::span<const Scalar> point) const
    {
        if (point.size() != nvars_)
            throw DimensionMismatch("evaluation point has the wrong length");
        Scalar total = 0;
        for (const auto& [e, c] : terms_) {
            Scalar term = c;
            for (std::size_t v = 0; v < nvars_; ++v)
                for (std::uint16_t k = 0; k < e[v]; ++k)
                    term *= point[v];
            total += term;
        }
        return total;
    }

    /// Constant term when the polynomial is constant; nullopt otherwise.
    std::optional<Scalar> as_constant() const
    {
        if (terms_.empty())
            return Scalar(0);
        if (terms_.size() == 1) {
            const auto& [e, c] = *terms_.begin();
            for (auto x : e)
                if (x != 0)
                    return std::nullopt;
            return c;
        }
        return std::nullopt;
    }

    /// Human-readable expansion, e.g. "x*y^2 - 1/2*z".
    std::string to_string(std::span<const std::string> names) const
    {
        if (terms_.empty())
            return "0";
        std::string out;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            Scalar coeff = c;
            if (!first)
                out += coeff < 0 ? " - " : " + ";
            else if (coeff < 0)
                out += "-";
            if (coeff < 0)
                coeff = -coeff;
            std::string mono;
            for (std::size_t v = 0; v < nvars_; ++v) {
                if (e[v] == 0)
                    continue;
                if (!mono.empty())
                    mono += "*";
                mono += v < names.size() ? names[v] : "v" + std::to_string(v);
                if (e[v] > 1)
                    mono += "^" + std::to_string(e[v]);
            }
            if (mono.empty())
                out += nilgeom::to_string(coeff);
            else if (coeff == 1)
                out += mono;
            else
                out += nilgeom::to_string(coeff) + "*" + mono;
            first = false;
        }
        return out;
    }

private:
    void check(const Polynomial& o) const
    {
        if (o.nvars_ != nvars_)
            throw DimensionMismatch("polynomials over different variable sets");
    }

    std::size_t nvars_ = 0;
    Terms terms_;
};

} // namespace nilgeom
