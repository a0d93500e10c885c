#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <sstream>
#include <string>
#include <vector>

namespace khopf {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

inline std::string rat_to_string(const Rational& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << '/' << denominator(r);
    return os.str();
}

inline Rational rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(Integer(s));
    return Rational(Integer(s.substr(0, slash)), Integer(s.substr(slash + 1)));
}

// Polynomial in beta with exact rational coefficients, index = beta exponent.
using BetaPoly = std::vector<Rational>;

inline void bp_trim(BetaPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline BetaPoly bp_const(const Rational& c) {
    if (c == 0) return {};
    return {c};
}

inline BetaPoly bp_monomial(const Rational& c, int k) {
    if (c == 0) return {};
    BetaPoly p(k + 1);
    p[k] = c;
    return p;
}

inline bool bp_is_zero(const BetaPoly& p) {
    for (const auto& c : p)
        if (c != 0) return false;
    return true;
}

inline void bp_add_inplace(BetaPoly& a, const BetaPoly& b, const Rational& scale = 1) {
    if (a.size() < b.size()) a.resize(b.size());
    for (size_t i = 0; i < b.size(); ++i) a[i] += scale * b[i];
    bp_trim(a);
}

inline BetaPoly bp_add(const BetaPoly& a, const BetaPoly& b) {
    BetaPoly r = a;
    bp_add_inplace(r, b);
    return r;
}

inline BetaPoly bp_mul(const BetaPoly& a, const BetaPoly& b) {
    if (a.empty() || b.empty()) return {};
    BetaPoly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    bp_trim(r);
    return r;
}

inline BetaPoly bp_scale(const BetaPoly& a, const Rational& c) {
    if (c == 0) return {};
    BetaPoly r = a;
    for (auto& x : r) x *= c;
    return r;
}

// Substitutes beta -> -beta.
inline BetaPoly bp_negate_beta(const BetaPoly& a) {
    BetaPoly r = a;
    for (size_t i = 1; i < r.size(); i += 2) r[i] = -r[i];
    return r;
}

inline Rational bp_coeff(const BetaPoly& p, size_t k) {
    return k < p.size() ? p[k] : Rational(0);
}

// Renders like "3", "-1/2", "b", "2b", "3 + 2b^2".  Used inside coefficient
// tables; a sum is parenthesized by the caller when needed.
inline std::string bp_to_string(const BetaPoly& p) {
    if (bp_is_zero(p)) return "0";
    std::string out;
    bool first = true;
    for (size_t k = 0; k < p.size(); ++k) {
        if (p[k] == 0) continue;
        Rational c = p[k];
        std::string piece;
        if (!first) {
            out += (c < 0) ? " - " : " + ";
            if (c < 0) c = -c;
        }
        if (k == 0) {
            piece = rat_to_string(c);
        } else {
            if (c == 1) piece = "";
            else if (c == -1) piece = "-";
            else piece = rat_to_string(c) + "*";
            piece += "b";
            if (k > 1) piece += "^" + std::to_string(k);
        }
        out += piece;
        first = false;
    }
    return out;
}

}  // namespace khopf
