#pragma once

// Arbitrary-precision rationals and integers on top of GMP's C++ bindings.
// Every exact computation in the library goes through these types; no
// floating point enters until a value is explicitly rendered.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace torsym {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline int sign(const Rat& x) { return sgn(x); }
inline int sign(const Int& x) { return sgn(x); }

inline Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

// Largest integer <= x.
inline Int rat_floor(const Rat& x) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

inline Int rat_ceil(const Rat& x) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

// Nearest integer; ties round toward +infinity.
inline Int rat_round(const Rat& x) { return rat_floor(x + Rat(1, 2)); }

// Fractional part in [0, 1).
inline Rat rat_mod1(const Rat& x) { return x - Rat(rat_floor(x)); }

inline bool is_integer(const Rat& x) { return x.get_den() == 1; }

inline Rat rat_pow(const Rat& x, unsigned long e) {
    Rat r;
    mpz_pow_ui(r.get_num_mpz_t(), x.get_num_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), x.get_den_mpz_t(), e);
    return r;
}

inline Int int_pow(const Int& x, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), x.get_mpz_t(), e);
    return r;
}

// Parses "p/q", "p", a decimal like "-3.14159", or scientific notation
// like "1e-20" / "2.5E3", all exactly.
inline Rat parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    auto epos = s.find_first_of("eE");
    if (epos != std::string::npos) {
        std::string mant = s.substr(0, epos), exp = s.substr(epos + 1);
        if (mant.empty() || exp.empty() || mant.find('/') != std::string::npos)
            throw std::invalid_argument("malformed rational literal: " + s);
        long e;
        try {
            std::size_t used = 0;
            e = std::stol(exp, &used);
            if (used != exp.size()) throw std::invalid_argument("");
        } catch (...) {
            throw std::invalid_argument("malformed rational literal: " + s);
        }
        Rat base = parse_rational(mant);
        Rat pw(int_pow(Int(10), static_cast<unsigned long>(e < 0 ? -e : e)));
        return e >= 0 ? Rat(base * pw) : Rat(base / pw);
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        if (s.find('/') != std::string::npos)
            throw std::invalid_argument("malformed rational literal: " + s);
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        std::size_t frac_len = s.size() - dot - 1;
        if (frac_len == 0) throw std::invalid_argument("malformed rational literal: " + s);
        Int num;
        if (mpz_set_str(num.get_mpz_t(), digits.c_str(), 10) != 0)
            throw std::invalid_argument("malformed rational literal: " + s);
        Rat r(num, int_pow(Int(10), frac_len));
        r.canonicalize();
        return r;
    }
    Rat r;
    if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
        throw std::invalid_argument("malformed rational literal: " + s);
    if (r.get_den() == 0) throw std::invalid_argument("rational with zero denominator: " + s);
    r.canonicalize();
    return r;
}

// Canonical "p/q" form; integers render without the "/1".
inline std::string format_rational(const Rat& x) {
    if (is_integer(x)) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

// Closed rational interval [lo, hi]; the basic certificate currency for
// real algebraic values.
struct Interval {
    Rat lo, hi;

    Interval() = default;
    Interval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw std::invalid_argument("interval with lo > hi");
    }

    Rat width() const { return hi - lo; }
    Rat mid() const { return (lo + hi) / 2; }
    bool contains(const Rat& x) const { return lo <= x && x <= hi; }
    bool contains_zero() const { return sign(lo) <= 0 && sign(hi) >= 0; }
    bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
    bool disjoint(const Interval& o) const { return hi < o.lo || o.hi < lo; }

    // Determined sign: -1, 0 only if the interval is the point 0, +1;
    // nullopt when the interval straddles zero.
    std::optional<int> determined_sign() const {
        if (sign(lo) > 0) return 1;
        if (sign(hi) < 0) return -1;
        if (sign(lo) == 0 && sign(hi) == 0) return 0;
        return std::nullopt;
    }

    Interval operator+(const Interval& o) const { return {lo + o.lo, hi + o.hi}; }
    Interval operator-(const Interval& o) const { return {lo - o.hi, hi - o.lo}; }
    Interval operator*(const Interval& o) const {
        Rat a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
        Rat mn = a, mx = a;
        for (const Rat& v : {b, c, d}) {
            if (v < mn) mn = v;
            if (v > mx) mx = v;
        }
        return {mn, mx};
    }
    Interval operator*(const Rat& c) const {
        if (sign(c) >= 0) return {lo * c, hi * c};
        return {hi * c, lo * c};
    }
    Interval operator+(const Rat& c) const { return {lo + c, hi + c}; }

    Interval abs() const {
        if (sign(lo) >= 0) return *this;
        if (sign(hi) <= 0) return {-hi, -lo};
        return {Rat(0), std::max(Rat(-lo), hi)};
    }
};

inline double to_double(const Rat& x) { return x.get_d(); }

} // namespace torsym
