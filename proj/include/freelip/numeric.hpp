#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace freelip {

/// Exact rational scalar used wherever constructions are closed-form.
using Rational = boost::multiprecision::cpp_rational;

/// Per-scalar numeric policy. Rational arithmetic is exact (zero tolerance),
/// double arithmetic carries a pivot guard for the solvers.
template <class S>
struct scalar_traits;

template <>
struct scalar_traits<double> {
    static constexpr bool exact = false;
    static double tol() { return 1e-11; }
    static double to_double(double v) { return v; }
    static double from_rational(const Rational& v) { return v.convert_to<double>(); }
    static const char* name() { return "float"; }
};

template <>
struct scalar_traits<Rational> {
    static constexpr bool exact = true;
    static Rational tol() { return Rational(0); }
    static double to_double(const Rational& v) { return v.convert_to<double>(); }
    static Rational from_rational(const Rational& v) { return v; }
    static const char* name() { return "rational"; }
};

template <class S>
double to_double(const S& v) {
    return scalar_traits<S>::to_double(v);
}

inline Rational rational_from_double(double v) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite value has no rational form");
    return Rational(v);  // exact binary expansion
}

/// Parses "p/q", "p", or a base-10 literal (decimal point, optional
/// exponent) into an exact rational: "0.25" is 1/4, "1e-2" is 1/100.
inline Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        boost::multiprecision::cpp_int num(text.substr(0, slash));
        boost::multiprecision::cpp_int den(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("rational with zero denominator: " + text);
        return Rational(num, den);
    }
    const auto epos = text.find_first_of("eE");
    long long exp10 = 0;
    std::string mant = text;
    if (epos != std::string::npos) {
        exp10 = std::stoll(text.substr(epos + 1));
        if (exp10 > 100000 || exp10 < -100000)
            throw std::invalid_argument("exponent out of range: " + text);
        mant = text.substr(0, epos);
    }
    const auto dot = mant.find('.');
    std::string digits = mant;
    if (dot != std::string::npos) {
        digits = mant.substr(0, dot) + mant.substr(dot + 1);
        exp10 -= static_cast<long long>(mant.size() - dot - 1);
    }
    std::string sign;
    if (!digits.empty() && (digits[0] == '+' || digits[0] == '-')) {
        if (digits[0] == '-') sign = "-";
        digits.erase(digits.begin());
    }
    // cpp_int reads a leading zero as an octal prefix
    const auto nz = digits.find_first_not_of('0');
    digits = nz == std::string::npos ? (digits.empty() ? "" : "0") : digits.substr(nz);
    if (digits.empty()) throw std::invalid_argument("empty numeric literal: " + text);
    Rational r{boost::multiprecision::cpp_int(sign + digits)};
    const boost::multiprecision::cpp_int p10 = boost::multiprecision::pow(
        boost::multiprecision::cpp_int(10), static_cast<unsigned>(exp10 < 0 ? -exp10 : exp10));
    if (exp10 > 0) r *= Rational(p10);
    if (exp10 < 0) r /= Rational(p10);
    return r;
}

inline std::string rational_to_string(const Rational& v) {
    return v.str();
}

/// Canonical report rounding: 12 significant digits. Keeps emitted JSON
/// byte-stable across runs without hiding more precision than reports need.
inline double canonical(double v) {
    if (!std::isfinite(v)) return v;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return std::strtod(buf, nullptr);
}

template <class S>
S abs_val(const S& v) {
    return v < S(0) ? S(-v) : v;
}

}  // namespace freelip
