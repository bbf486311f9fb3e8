#pragma once

// Dense univariate polynomials over an exact field K (rationals, or real
// algebraic field elements). Coefficients are stored lowest degree first.
// The zero polynomial has an empty coefficient vector and degree -1.
//
// K must provide field arithmetic, K * Rat scaling, and the two hooks
// coeff_is_zero / coeff_sign (exact sign determination).

#include "torsym/rational.hpp"

#include <algorithm>
#include <cassert>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace torsym {

inline bool coeff_is_zero(const Rat& x) { return sign(x) == 0; }
inline int coeff_sign(const Rat& x) { return sign(x); }

template <class K>
class Poly {
  public:
    Poly() = default;
    explicit Poly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }
    explicit Poly(K constant) : c_{std::move(constant)} { trim(); }

    static Poly zero() { return Poly(); }
    static Poly one() { return Poly(K(1)); }
    // x^k
    static Poly monomial(int k, K coeff = K(1)) {
        std::vector<K> v(static_cast<std::size_t>(k) + 1, K(0));
        v.back() = std::move(coeff);
        return Poly(std::move(v));
    }
    static Poly from_int_coeffs(std::initializer_list<long> lo_first) {
        std::vector<K> v;
        for (long x : lo_first) v.emplace_back(x);
        return Poly(std::move(v));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    const std::vector<K>& coeffs() const { return c_; }
    const K& operator[](std::size_t i) const {
        static const K kzero{0};
        return i < c_.size() ? c_[i] : kzero;
    }
    const K& leading() const {
        assert(!c_.empty());
        return c_.back();
    }
    const K& constant_term() const {
        static const K kzero{0};
        return c_.empty() ? kzero : c_.front();
    }

    bool operator==(const Poly& o) const {
        if (c_.size() != o.c_.size()) return false;
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (!coeff_is_zero(c_[i] - o.c_[i])) return false;
        return true;
    }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly operator-() const {
        std::vector<K> v = c_;
        for (K& x : v) x = -x;
        return Poly(std::move(v));
    }
    Poly operator+(const Poly& o) const {
        std::vector<K> v(std::max(c_.size(), o.c_.size()), K(0));
        for (std::size_t i = 0; i < c_.size(); ++i) v[i] = v[i] + c_[i];
        for (std::size_t i = 0; i < o.c_.size(); ++i) v[i] = v[i] + o.c_[i];
        return Poly(std::move(v));
    }
    Poly operator-(const Poly& o) const { return *this + (-o); }
    Poly operator*(const Poly& o) const {
        if (is_zero() || o.is_zero()) return zero();
        std::vector<K> v(c_.size() + o.c_.size() - 1, K(0));
        for (std::size_t i = 0; i < c_.size(); ++i)
            for (std::size_t j = 0; j < o.c_.size(); ++j) v[i + j] = v[i + j] + c_[i] * o.c_[j];
        return Poly(std::move(v));
    }
    Poly operator*(const K& s) const {
        std::vector<K> v = c_;
        for (K& x : v) x = x * s;
        return Poly(std::move(v));
    }

    // Exact division with remainder over the field K.
    std::pair<Poly, Poly> divmod(const Poly& d) const {
        if (d.is_zero()) throw std::invalid_argument("polynomial division by zero");
        Poly r = *this;
        std::vector<K> q(std::max<int>(degree() - d.degree() + 1, 0), K(0));
        while (!r.is_zero() && r.degree() >= d.degree()) {
            K f = r.leading() / d.leading();
            int k = r.degree() - d.degree();
            q[static_cast<std::size_t>(k)] = f;
            std::vector<K> rc = r.c_;
            for (std::size_t i = 0; i < d.c_.size(); ++i)
                rc[i + static_cast<std::size_t>(k)] = rc[i + static_cast<std::size_t>(k)] - f * d.c_[i];
            rc.pop_back(); // leading term cancels exactly
            r = Poly(std::move(rc));
        }
        return {Poly(std::move(q)), std::move(r)};
    }
    Poly operator/(const Poly& d) const { return divmod(d).first; }
    Poly operator%(const Poly& d) const { return divmod(d).second; }

    bool divides(const Poly& num) const { return num.divmod(*this).second.is_zero(); }

    Poly derivative() const {
        if (c_.size() <= 1) return zero();
        std::vector<K> v(c_.size() - 1, K(0));
        for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * Rat(static_cast<long>(i));
        return Poly(std::move(v));
    }

    Poly monic() const {
        if (is_zero()) return *this;
        K inv = K(1) / leading();
        return *this * inv;
    }

    bool is_monic() const { return !is_zero() && coeff_is_zero(leading() - K(1)); }

    template <class T>
    T eval(const T& x) const {
        if (c_.empty()) return T(0);
        T acc(c_.back());
        for (std::size_t i = c_.size() - 1; i-- > 0;) acc = acc * x + T(c_[i]);
        return acc;
    }

    // Horner evaluation at a rational point without leaving K.
    K eval_at_rat(const Rat& x) const {
        if (c_.empty()) return K(0);
        K acc = c_.back();
        for (std::size_t i = c_.size() - 1; i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    // x^deg * p(1/x): coefficient reversal.
    Poly reversed() const {
        std::vector<K> v(c_.rbegin(), c_.rend());
        return Poly(std::move(v));
    }

    // p(s * x)
    Poly scale_arg(const K& s) const {
        std::vector<K> v = c_;
        K p(1);
        for (std::size_t i = 1; i < v.size(); ++i) {
            p = p * s;
            v[i] = v[i] * p;
        }
        return Poly(std::move(v));
    }

    // p(x + a)
    Poly shift_arg(const K& a) const {
        // Synthetic division cascade.
        std::vector<K> v = c_;
        int n = degree();
        for (int i = 0; i < n; ++i)
            for (int j = n - 1; j >= i; --j) v[static_cast<std::size_t>(j)] = v[static_cast<std::size_t>(j)] + a * v[static_cast<std::size_t>(j) + 1];
        return Poly(std::move(v));
    }

    std::string str(const std::string& var = "x") const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (int i = degree(); i >= 0; --i) {
            const K& a = c_[static_cast<std::size_t>(i)];
            if (coeff_is_zero(a)) continue;
            if (!first) os << " + ";
            os << "(" << coeff_str(a) << ")";
            if (i >= 1) os << "*" << var;
            if (i >= 2) os << "^" << i;
            first = false;
        }
        return os.str();
    }

  private:
    static std::string coeff_str(const Rat& a) { return format_rational(a); }
    template <class T>
    static std::string coeff_str(const T& a) {
        return a.str();
    }

    void trim() {
        while (!c_.empty() && coeff_is_zero(c_.back())) c_.pop_back();
    }

    std::vector<K> c_;
};

using QPoly = Poly<Rat>;

template <class K>
Poly<K> poly_gcd(Poly<K> a, Poly<K> b) {
    while (!b.is_zero()) {
        Poly<K> r = a % b;
        a = std::move(b);
        b = std::move(r).monic();
    }
    return a.monic();
}

// Yun's squarefree decomposition: returns pairs (factor, multiplicity) with
// each factor monic squarefree, pairwise coprime, and
// p = lc * prod factor^multiplicity.
template <class K>
std::vector<std::pair<Poly<K>, int>> squarefree_decomposition(const Poly<K>& p) {
    std::vector<std::pair<Poly<K>, int>> out;
    if (p.degree() <= 0) return out;
    Poly<K> f = p.monic();
    Poly<K> df = f.derivative();
    Poly<K> a = poly_gcd(f, df);
    Poly<K> b = f / a;
    Poly<K> c = df / a;
    Poly<K> d = c - b.derivative();
    int mult = 1;
    while (!(b.degree() == 0)) {
        Poly<K> g = poly_gcd(b, d);
        if (g.degree() > 0) out.emplace_back(g, mult);
        b = b / g;
        c = d / g;
        d = c - b.derivative();
        ++mult;
    }
    return out;
}

template <class K>
Poly<K> squarefree_part(const Poly<K>& p) {
    Poly<K> out = Poly<K>::one();
    for (const auto& [f, m] : squarefree_decomposition(p)) out = out * f;
    return out;
}

// Root multiplicity of a rational point (exact repeated division).
template <class K>
int root_multiplicity(Poly<K> p, const Rat& r) {
    int m = 0;
    Poly<K> lin(std::vector<K>{K(0) - K(1) * r, K(1)});
    while (!p.is_zero() && coeff_is_zero(p.eval_at_rat(r))) {
        p = p / lin;
        ++m;
    }
    return m;
}

namespace detail {

template <class K>
int sign_at_rat(const Poly<K>& p, const Rat& x) {
    return coeff_sign(p.eval_at_rat(x));
}

template <class K>
int sign_at_pos_inf(const Poly<K>& p) {
    return p.is_zero() ? 0 : coeff_sign(p.leading());
}

template <class K>
int sign_at_neg_inf(const Poly<K>& p) {
    if (p.is_zero()) return 0;
    int s = coeff_sign(p.leading());
    return (p.degree() % 2 == 0) ? s : -s;
}

inline int count_variations(const std::vector<int>& signs) {
    int var = 0, prev = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++var;
        prev = s;
    }
    return var;
}

} // namespace detail

// Signed remainder (Sturm) chain of (p, q). With q = p' this is the
// classical Sturm sequence.
template <class K>
std::vector<Poly<K>> signed_remainder_chain(Poly<K> p, Poly<K> q) {
    std::vector<Poly<K>> chain;
    if (p.is_zero()) return chain;
    chain.push_back(std::move(p));
    if (q.is_zero()) return chain;
    chain.push_back(std::move(q));
    while (!chain.back().is_zero()) {
        const Poly<K>& a = chain[chain.size() - 2];
        const Poly<K>& b = chain.back();
        Poly<K> r = -(a % b);
        if (r.is_zero()) break;
        chain.push_back(std::move(r));
    }
    return chain;
}

// Endpoint of a Sturm query: -infinity / finite / +infinity.
struct SturmPoint {
    enum Kind { NegInf, Finite, PosInf } kind = Finite;
    Rat value;

    static SturmPoint neg_inf() { return {NegInf, Rat(0)}; }
    static SturmPoint pos_inf() { return {PosInf, Rat(0)}; }
    static SturmPoint at(Rat v) { return {Finite, std::move(v)}; }
};

template <class K>
int chain_variations(const std::vector<Poly<K>>& chain, const SturmPoint& pt) {
    std::vector<int> signs;
    signs.reserve(chain.size());
    for (const auto& p : chain) {
        switch (pt.kind) {
            case SturmPoint::NegInf: signs.push_back(detail::sign_at_neg_inf(p)); break;
            case SturmPoint::PosInf: signs.push_back(detail::sign_at_pos_inf(p)); break;
            case SturmPoint::Finite: signs.push_back(detail::sign_at_rat(p, pt.value)); break;
        }
    }
    return detail::count_variations(signs);
}

// Number of distinct real roots of p in (a, b]; a, b must not be roots when
// finite (checked for a only via the standard half-open Sturm semantics).
template <class K>
int sturm_count(const Poly<K>& p, const SturmPoint& a, const SturmPoint& b) {
    if (p.is_zero()) throw std::invalid_argument("sturm_count of zero polynomial");
    auto chain = signed_remainder_chain(p, p.derivative());
    return chain_variations(chain, a) - chain_variations(chain, b);
}

template <class K>
int count_real_roots(const Poly<K>& p) {
    return sturm_count(p, SturmPoint::neg_inf(), SturmPoint::pos_inf());
}

// Distinct real roots in the open interval (a, b); endpoints may be roots of
// p (they are excluded from the count).
template <class K>
int count_real_roots_open(const Poly<K>& p, const Rat& a, const Rat& b) {
    if (!(a < b)) return 0;
    Poly<K> q = p;
    // Remove endpoint roots so that Sturm endpoints are regular.
    for (const Rat& e : {a, b}) {
        Poly<K> lin(std::vector<K>{K(0) - K(1) * e, K(1)});
        while (!q.is_zero() && coeff_is_zero(q.eval_at_rat(e))) q = q / lin;
    }
    if (q.degree() <= 0) return 0;
    return sturm_count(q, SturmPoint::at(a), SturmPoint::at(b));
}

// Cauchy bound: all real roots of p lie in (-bound, bound).
inline Rat root_bound(const QPoly& p) {
    if (p.degree() <= 0) return Rat(1);
    Rat mx(0);
    for (int i = 0; i < p.degree(); ++i) {
        Rat a = rat_abs(p[static_cast<std::size_t>(i)] / p.leading());
        if (a > mx) mx = a;
    }
    return mx + 1;
}

// Isolating intervals for all distinct real roots of p (any nonzero p;
// multiple roots are isolated once). Each interval (lo, hi) satisfies:
// exactly one distinct root inside, and neither endpoint is a root.
std::vector<Interval> isolate_real_roots(const QPoly& p);

// Halve an isolating interval of the squarefree polynomial p (p changes
// sign across it) while keeping endpoints off the root.
Interval bisect_root_interval(const QPoly& p, const Interval& iv);

// Refine until width <= eps.
Interval refine_root_interval(const QPoly& p, Interval iv, const Rat& eps);

// Interval Horner evaluation: encloses p([x]) for rational p.
Interval eval_interval(const QPoly& p, const Interval& x);

} // namespace torsym
