#ifndef NDFLOW_TEXT_HPP
#define NDFLOW_TEXT_HPP

#include <algorithm>
#include <cctype>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "laurent.hpp"

namespace ndflow {

namespace detail {

// Recursive-descent parser for the polynomial text grammar:
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*        (division only by constants)
//   unary  := ('+' | '-') unary | power
//   power  := atom ('^' ['-'] digits)?
//   atom   := rational | 's' digits | '(' expr ')'
class PolyParser {
   public:
    PolyParser(std::string_view text, int nvars) : text_(text), nvars_(nvars) {}

    LaurentPolynomial parse() {
        skip_ws();
        if (pos_ == text_.size()) fail("empty polynomial");
        LaurentPolynomial p = expr();
        skip_ws();
        if (pos_ != text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
        return p;
    }

   private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::string digits() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected digits");
        return std::string(text_.substr(start, pos_ - start));
    }

    LaurentPolynomial expr() {
        LaurentPolynomial acc = term();
        for (;;) {
            if (accept('+'))
                acc += term();
            else if (accept('-'))
                acc -= term();
            else
                return acc;
        }
    }

    LaurentPolynomial term() {
        LaurentPolynomial acc = unary();
        for (;;) {
            if (accept('*')) {
                acc = acc * unary();
            } else if (accept('/')) {
                std::size_t at = pos_;
                LaurentPolynomial d = unary();
                if (!d.is_constant() || d.is_zero()) {
                    pos_ = at;
                    fail("division only by nonzero constants");
                }
                acc *= 1 / d.constant_term();
            } else {
                return acc;
            }
        }
    }

    LaurentPolynomial unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    LaurentPolynomial power() {
        LaurentPolynomial base = atom();
        if (!accept('^')) return base;
        bool neg = accept('-');
        std::size_t at = pos_;
        std::string ds = digits();
        if (ds.size() > 9) {
            pos_ = at;
            fail("exponent too large");
        }
        int e = std::stoi(ds);
        if (neg) {
            if (!base.is_unit()) {
                pos_ = at;
                fail("negative power of a non-monomial");
            }
            e = -e;
        }
        return base.pow(e);
    }

    LaurentPolynomial atom() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            LaurentPolynomial inner = expr();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (c == 's') {
            ++pos_;
            std::size_t at = pos_;
            std::string ds = digits();
            int idx = ds.size() > 6 ? -1 : std::stoi(ds);
            if (idx < 1 || idx > nvars_) {
                pos_ = at;
                fail("variable s" + ds + " out of range 1.." + std::to_string(nvars_));
            }
            return LaurentPolynomial::variable(nvars_, idx - 1);
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num = digits();
            // p/q is read as one rational literal when q follows immediately.
            if (pos_ + 1 < text_.size() && text_[pos_] == '/' && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
                ++pos_;
                std::size_t at = pos_;
                std::string den = digits();
                Rational r(num + "/" + den);
                if (r.get_den() == 0) {
                    pos_ = at;
                    fail("zero denominator");
                }
                r.canonicalize();
                return LaurentPolynomial::constant(nvars_, r);
            }
            return LaurentPolynomial::constant(nvars_, Rational(num));
        }
        fail(std::string("unexpected '") + c + "'");
    }

    std::string_view text_;
    int nvars_;
    std::size_t pos_ = 0;
};

inline std::string monomial_string(const ExponentVector& e) {
    std::string out;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!out.empty()) out += '*';
        out += 's' + std::to_string(i + 1);
        if (e[i] != 1) out += '^' + std::to_string(e[i]);
    }
    return out;
}

}  // namespace detail

/// Parses a polynomial such as `s1*s2^-1 - 3/2` in `nvars` variables.
inline LaurentPolynomial parse_polynomial(std::string_view text, int nvars) {
    return detail::PolyParser(text, nvars).parse();
}

/// Terms of f in display order: graded lexicographic on the cleared
/// exponents (largest first), ties by raw lexicographic order.
inline std::vector<std::pair<ExponentVector, Rational>> display_terms(const LaurentPolynomial& f) {
    std::vector<std::pair<ExponentVector, Rational>> terms(f.terms().begin(), f.terms().end());
    ExponentVector lo = f.min_exponents();
    auto degree = [&](const ExponentVector& e) {
        int d = 0;
        for (std::size_t i = 0; i < e.size(); ++i) d += e[i] - lo[i];
        return d;
    };
    std::stable_sort(terms.begin(), terms.end(), [&](const auto& a, const auto& b) {
        int da = degree(a.first), db = degree(b.first);
        if (da != db) return da > db;
        return a.first > b.first;
    });
    return terms;
}

inline std::string to_string(const LaurentPolynomial& f) {
    if (f.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : display_terms(f)) {
        std::string mono = detail::monomial_string(e);
        Rational mag = abs(c);
        if (first) {
            if (c < 0) out += '-';
        } else {
            out += c < 0 ? " - " : " + ";
        }
        if (mono.empty())
            out += to_string(mag);
        else if (mag == 1)
            out += mono;
        else
            out += to_string(mag) + "*" + mono;
        first = false;
    }
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const LaurentPolynomial& f) { return os << to_string(f); }

}  // namespace ndflow

#endif
