#pragma once
// Text notations.
//
// Salamon notation lists dx_1..dx_n:
//   spec   := "(" entry ("," entry)* ")"
//   entry  := "0" | ["+"|"-"] term (("+"|"-") term)*
//   term   := [rational "*"] pair
//   pair   := digit digit            (n <= 9, e.g. 13 = x_1 ^ x_3)
//           | "[" int "," int "]"    (any n; required for n >= 10)
//   rational := int ["/" int]
// Whitespace between tokens is ignored. Canonical output orders terms by
// (i, j), elides coefficients +-1 and uses digit pairs when n <= 9.
//
// Form notation: sums of [rational "*"] ("e" | "x") indices, where indices are
// single digits (n <= 9) or "[i,j,...]"; e.g. "e13-e24", "x2", "1/2*e[1,12]".
// A bare rational is a 0-form.

#include "errors.hpp"
#include "exterior.hpp"
#include "lie_algebra.hpp"

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nilgeom {

namespace detail {

class Cursor {
public:
    explicit Cursor(std::string_view text) : text_(text) {}

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }
    bool at_end()
    {
        skip_space();
        return pos_ >= text_.size();
    }
    char peek()
    {
        skip_space();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }
    bool accept(char c)
    {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c)
    {
        if (!accept(c))
            fail({std::string(1, c)}, std::string("expected '") + c + "'");
    }
    std::string digits()
    {
        skip_space();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }
    int integer(const char* what)
    {
        const std::size_t start = position();
        const std::string d = digits();
        if (d.empty())
            fail({"digit"}, std::string("expected ") + what);
        if (d.size() > 9)
            throw SyntaxError(start, {"smaller integer"}, std::string(what) + " too large");
        return std::stoi(d);
    }
    std::size_t position()
    {
        skip_space();
        return pos_;
    }
    [[noreturn]] void fail(std::vector<std::string> expected, const std::string& message)
    {
        throw SyntaxError(position(), std::move(expected), message);
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

inline Integer decimal(const std::string& digits)
{
    const std::size_t first = digits.find_first_not_of('0');
    return first == std::string::npos ? Integer(0) : Integer(digits.substr(first));
}

inline Scalar read_rational(Cursor& cur, const std::string& leading)
{
    const Integer num = decimal(leading);
    if (cur.accept('/')) {
        const std::size_t at = cur.position();
        const std::string d = cur.digits();
        if (d.empty())
            cur.fail({"digit"}, "expected denominator");
        const Integer den = decimal(d);
        if (den == 0)
            throw SyntaxError(at, {"nonzero denominator"}, "zero denominator");
        return Scalar(num, den);
    }
    return Scalar(num);
}

inline std::string pair_text(int i, int j, int n)
{
    if (n <= 9)
        return std::to_string(i) + std::to_string(j);
    return "[" + std::to_string(i) + "," + std::to_string(j) + "]";
}

/// "c*" prefix for |c| != 1, with the sign emitted by the caller.
inline std::string coefficient_prefix(const Scalar& magnitude)
{
    return magnitude == 1 ? std::string() : to_string(magnitude) + "*";
}

} // namespace detail

/// Parses Salamon notation; throws SyntaxError, IndexOutOfRange or
/// JacobiViolation.
inline LieAlgebra parse_salamon(std::string_view text)
{
    // entry count first: top-level commas outside brackets
    int n = 1;
    int depth = 0;
    for (char ch : text) {
        if (ch == '[')
            ++depth;
        else if (ch == ']')
            --depth;
        else if (ch == ',' && depth == 0)
            ++n;
    }

    detail::Cursor cur(text);
    cur.expect('(');
    if (cur.peek() == ')')
        cur.fail({"0", "term"}, "empty tuple");
    if (n > max_dimension)
        throw IndexOutOfRange("Salamon tuple has too many entries");

    std::vector<KForm> differentials;
    for (int k = 1; k <= n; ++k) {
        if (k > 1)
            cur.expect(',');
        KForm dx(n, 2);
        bool first = true;
        while (true) {
            const char c0 = cur.peek();
            Scalar sign = 1;
            if (c0 == '+' || c0 == '-') {
                cur.accept(c0);
                sign = c0 == '-' ? -1 : 1;
            } else if (!first) {
                break;
            }
            const std::size_t term_start = cur.position();
            Scalar coeff = 1;
            int i = 0;
            int j = 0;
            if (cur.peek() == '[') {
                cur.accept('[');
                i = cur.integer("index");
                cur.expect(',');
                j = cur.integer("index");
                cur.expect(']');
            } else {
                const std::string d = cur.digits();
                if (d.empty())
                    cur.fail({"0", "digit", "["}, "expected a term");
                if (first && c0 != '+' && c0 != '-' && d == "0" && cur.peek() != '*' && cur.peek() != '/')
                    break;  // the literal entry "0"

                if (cur.peek() == '*' || cur.peek() == '/') {
                    coeff = detail::read_rational(cur, d);
                    cur.expect('*');
                    if (cur.peek() == '[') {
                        cur.accept('[');
                        i = cur.integer("index");
                        cur.expect(',');
                        j = cur.integer("index");
                        cur.expect(']');
                    } else {
                        const std::size_t at = cur.position();
                        const std::string p = cur.digits();
                        if (p.size() != 2 || n > 9)
                            throw SyntaxError(at, n > 9 ? std::vector<std::string>{"["}
                                                        : std::vector<std::string>{"digit pair", "["},
                                              "expected an index pair");
                        i = p[0] - '0';
                        j = p[1] - '0';
                    }
                } else {
                    if (d.size() != 2 || n > 9)
                        throw SyntaxError(term_start,
                                          n > 9 ? std::vector<std::string>{"["}
                                                : std::vector<std::string>{"digit pair", "*", "["},
                                          n > 9 ? "digit pairs are ambiguous beyond dimension 9"
                                                : "expected a two-digit index pair");
                    i = d[0] - '0';
                    j = d[1] - '0';
                }
            }
            if (i < 1 || j < 1 || i > n || j > n)
                throw IndexOutOfRange("index pair (" + std::to_string(i) + "," + std::to_string(j) +
                                      ") outside 1.." + std::to_string(n));
            if (i >= j)
                throw SyntaxError(term_start, {"increasing pair"}, "index pair must satisfy i < j");
            dx.add(Monomial::of({i, j}), sign * coeff);
            first = false;
        }
        differentials.push_back(std::move(dx));
    }
    cur.expect(')');
    if (!cur.at_end())
        cur.fail({"end of input"}, "trailing characters");
    return LieAlgebra::from_differentials(n, differentials);
}

/// Canonical Salamon text of an algebra.
inline std::string format_salamon(const LieAlgebra& algebra)
{
    const int n = algebra.dim();
    std::string out = "(";
    for (int k = 1; k <= n; ++k) {
        if (k > 1)
            out += ",";
        const KForm& dx = algebra.d_covector(k);
        if (dx.is_zero()) {
            out += "0";
            continue;
        }
        bool first = true;
        for (const auto& [m, c] : dx.terms()) {
            const auto idx = m.indices();
            if (c < 0)
                out += "-";
            else if (!first)
                out += "+";
            out += detail::coefficient_prefix(c < 0 ? Scalar(-c) : c) + detail::pair_text(idx[0], idx[1], n);
            first = false;
        }
    }
    return out + ")";
}

/// Parses form notation in dimension `dim`. "0" yields the zero form of
/// degree `zero_degree`.
inline KForm parse_form(std::string_view text, int dim, int zero_degree = 0)
{
    detail::Cursor cur(text);
    std::optional<KForm> result;
    bool first = true;
    while (first || !cur.at_end()) {
        const char c0 = cur.peek();
        Scalar sign = 1;
        if (c0 == '+' || c0 == '-') {
            cur.accept(c0);
            sign = c0 == '-' ? -1 : 1;
        } else if (!first) {
            cur.fail({"+", "-", "end of input"}, "expected '+' or '-'");
        }
        const std::size_t term_at = cur.position();
        Scalar coeff = 1;
        bool has_basis = true;
        if (std::isdigit(static_cast<unsigned char>(cur.peek()))) {
            coeff = detail::read_rational(cur, cur.digits());
            if (!cur.accept('*'))
                has_basis = false;
        }
        std::vector<int> indices;
        if (has_basis) {
            const char kind = cur.peek();
            if (kind != 'e' && kind != 'x')
                cur.fail({"e", "x"}, "expected a basis monomial");
            cur.accept(kind);
            if (cur.accept('[')) {
                indices.push_back(cur.integer("index"));
                while (cur.accept(','))
                    indices.push_back(cur.integer("index"));
                cur.expect(']');
            } else {
                const std::size_t at = cur.position();
                const std::string d = cur.digits();
                if (d.empty())
                    cur.fail({"digit", "["}, "expected indices");
                if (dim > 9)
                    throw SyntaxError(at, {"["}, "digit indices are ambiguous beyond dimension 9");
                if (kind == 'x' && d.size() != 1)
                    throw SyntaxError(at, {"single digit"}, "x takes a single index");
                for (char ch : d)
                    indices.push_back(ch - '0');
            }
            for (int i : indices)
                if (i < 1 || i > dim)
                    throw IndexOutOfRange("form index " + std::to_string(i) + " outside 1.." +
                                          std::to_string(dim));
        }
        const KForm term = KForm::monomial(dim, indices, sign * coeff);
        const bool zero_coefficient = coeff.is_zero();
        if (!result) {
            result = zero_coefficient && indices.empty() ? KForm(dim, zero_degree) : term;
        } else if (result->degree() != term.degree()) {
            if (!(zero_coefficient && indices.empty()))
                throw SyntaxError(term_at, {"degree " + std::to_string(result->degree()) + " term"},
                                  "form mixes degrees " + std::to_string(result->degree()) + " and " +
                                      std::to_string(term.degree()));
        } else {
            *result += term;
        }
        first = false;
    }
    return *result;
}

/// Canonical form text: lexicographic terms, "x" for 1-forms, "e" otherwise.
inline std::string format_form(const KForm& a)
{
    if (a.is_zero())
        return "0";
    const int n = a.dim();
    std::string out;
    bool first = true;
    for (const auto& [m, c] : a.terms()) {
        const Scalar magnitude = c < 0 ? Scalar(-c) : c;
        if (c < 0)
            out += "-";
        else if (!first)
            out += "+";
        first = false;
        if (a.degree() == 0) {
            out += to_string(magnitude);
            continue;
        }
        out += detail::coefficient_prefix(magnitude);
        out += a.degree() == 1 ? "x" : "e";
        const auto idx = m.indices();
        if (n <= 9) {
            for (int i : idx)
                out += std::to_string(i);
        } else {
            out += "[";
            for (std::size_t i = 0; i < idx.size(); ++i)
                out += (i ? "," : "") + std::to_string(idx[i]);
            out += "]";
        }
    }
    return out;
}

} // namespace nilgeom
