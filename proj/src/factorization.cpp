#include "torsym/factorization.hpp"

#include <algorithm>
#include <bitset>
#include <random>
#include <stdexcept>

namespace torsym {

std::vector<Int> primitive_integer_poly(const QPoly& p) {
    if (p.is_zero()) return {};
    Int den(1);
    for (const Rat& c : p.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    std::vector<Int> w;
    Int content(0);
    for (const Rat& c : p.coeffs()) {
        Rat s = c * Rat(den);
        w.push_back(s.get_num());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), w.back().get_mpz_t());
    }
    if (sign(w.back()) < 0) content = -content;
    for (Int& x : w) x /= content;
    return w;
}

namespace {

// --- GF(p)[x], p an odd word-sized prime ---------------------------------

using PPoly = std::vector<unsigned long>; // lowest degree first, no zero lead

void ptrim(PPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int pdeg(const PPoly& a) { return static_cast<int>(a.size()) - 1; }

PPoly padd(const PPoly& a, const PPoly& b, unsigned long p) {
    PPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + b[i]) % p;
    ptrim(r);
    return r;
}

PPoly psub(const PPoly& a, const PPoly& b, unsigned long p) {
    PPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + p - b[i]) % p;
    ptrim(r);
    return r;
}

PPoly pmul(const PPoly& a, const PPoly& b, unsigned long p) {
    if (a.empty() || b.empty()) return {};
    PPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    ptrim(r);
    return r;
}

unsigned long pinv(unsigned long a, unsigned long p) {
    long long t = 0, nt = 1;
    long long r = static_cast<long long>(p), nr = static_cast<long long>(a % p);
    while (nr != 0) {
        long long q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    long long res = t % static_cast<long long>(p);
    if (res < 0) res += static_cast<long long>(p);
    return static_cast<unsigned long>(res);
}

// Division with remainder; divisor need not be monic.
std::pair<PPoly, PPoly> pdivmod(PPoly a, const PPoly& b, unsigned long p) {
    if (b.empty()) throw std::invalid_argument("mod-p division by zero");
    PPoly q(a.size() > b.size() - 1 ? a.size() - b.size() + 1 : 0, 0);
    unsigned long inv = pinv(b.back(), p);
    while (!a.empty() && pdeg(a) >= pdeg(b)) {
        std::size_t k = a.size() - b.size();
        unsigned long f = (a.back() * inv) % p;
        q[k] = f;
        for (std::size_t i = 0; i < b.size(); ++i) a[i + k] = (a[i + k] + p - (f * b[i]) % p) % p;
        ptrim(a);
    }
    ptrim(q);
    return {q, a};
}

PPoly pmod(const PPoly& a, const PPoly& b, unsigned long p) { return pdivmod(a, b, p).second; }

PPoly pmonic(PPoly a, unsigned long p) {
    if (a.empty()) return a;
    unsigned long inv = pinv(a.back(), p);
    for (auto& c : a) c = (c * inv) % p;
    return a;
}

PPoly pgcd(PPoly a, PPoly b, unsigned long p) {
    while (!b.empty()) {
        PPoly r = pmod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return pmonic(a, p);
}

PPoly pderiv(const PPoly& a, unsigned long p) {
    if (a.size() <= 1) return {};
    PPoly r(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = (a[i] * (i % p)) % p;
    ptrim(r);
    return r;
}

// a^e mod (f, p) with arbitrary-precision exponent.
PPoly ppowmod(PPoly a, const Int& e, const PPoly& f, unsigned long p) {
    PPoly acc{1};
    a = pmod(a, f, p);
    for (long bit = static_cast<long>(mpz_sizeinbase(e.get_mpz_t(), 2)) - 1; bit >= 0; --bit) {
        acc = pmod(pmul(acc, acc, p), f, p);
        if (mpz_tstbit(e.get_mpz_t(), static_cast<mp_bitcnt_t>(bit)))
            acc = pmod(pmul(acc, a, p), f, p);
    }
    return acc;
}

PPoly reduce_mod_p(const std::vector<Int>& f, unsigned long p) {
    PPoly r(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        Int m = f[i] % static_cast<long>(p);
        if (sign(m) < 0) m += static_cast<long>(p);
        r[i] = m.get_ui();
    }
    ptrim(r);
    return r;
}

// Distinct-degree factorization of a monic squarefree f mod p:
// list of (product of irreducible factors of degree d, d).
std::vector<std::pair<PPoly, int>> ddf(PPoly f, unsigned long p) {
    std::vector<std::pair<PPoly, int>> out;
    PPoly x{0, 1};
    PPoly h = x;
    int d = 0;
    while (pdeg(f) >= 2 * (d + 1)) {
        ++d;
        h = ppowmod(h, Int(static_cast<long>(p)), f, p);
        PPoly g = pgcd(f, psub(h, x, p), p);
        if (pdeg(g) > 0) {
            out.emplace_back(g, d);
            f = pdivmod(f, g, p).first;
            h = pmod(h, f, p);
        }
    }
    if (pdeg(f) > 0) out.emplace_back(f, pdeg(f));
    return out;
}

// Cantor-Zassenhaus equal-degree splitting (p odd).
void edf(const PPoly& f, int d, unsigned long p, std::mt19937_64& rng, std::vector<PPoly>& out) {
    if (pdeg(f) == d) {
        out.push_back(pmonic(f, p));
        return;
    }
    Int exp = (int_pow(Int(static_cast<long>(p)), static_cast<unsigned long>(d)) - 1) / 2;
    for (;;) {
        PPoly a(static_cast<std::size_t>(pdeg(f)), 0);
        for (auto& c : a) c = rng() % p;
        ptrim(a);
        if (pdeg(a) < 1) continue;
        PPoly g = pgcd(f, a, p);
        if (pdeg(g) == 0) {
            PPoly b = ppowmod(a, exp, f, p);
            g = pgcd(f, psub(b, PPoly{1}, p), p);
        }
        if (pdeg(g) > 0 && pdeg(g) < pdeg(f)) {
            edf(g, d, p, rng, out);
            edf(pdivmod(f, g, p).first, d, p, rng, out);
            return;
        }
    }
}

std::vector<PPoly> factor_mod_p(const PPoly& f, unsigned long p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<PPoly> out;
    for (const auto& [g, d] : ddf(pmonic(f, p), p)) edf(g, d, p, rng, out);
    std::sort(out.begin(), out.end());
    return out;
}

// --- Z/p^k[x] arithmetic for the Hensel lift ------------------------------

using ZPoly = std::vector<Int>;

void ztrim(ZPoly& a) {
    while (!a.empty() && sign(a.back()) == 0) a.pop_back();
}

ZPoly zreduce(ZPoly a, const Int& m) {
    for (Int& c : a) {
        mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    }
    ztrim(a);
    return a;
}

ZPoly zmul(const ZPoly& a, const ZPoly& b, const Int& m) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (sign(a[i]) == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return zreduce(std::move(r), m);
}

ZPoly zadd(const ZPoly& a, const ZPoly& b, const Int& m) {
    ZPoly r(std::max(a.size(), b.size()), Int(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return zreduce(std::move(r), m);
}

ZPoly zsub(const ZPoly& a, const ZPoly& b, const Int& m) {
    ZPoly r(std::max(a.size(), b.size()), Int(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    return zreduce(std::move(r), m);
}

// Division by a monic divisor over Z/m.
std::pair<ZPoly, ZPoly> zdivmod_monic(ZPoly a, const ZPoly& b, const Int& m) {
    if (b.empty() || b.back() != 1) throw std::logic_error("zdivmod_monic needs monic divisor");
    ZPoly q(a.size() > b.size() - 1 ? a.size() - b.size() + 1 : 0, Int(0));
    ztrim(a);
    while (a.size() >= b.size()) {
        std::size_t k = a.size() - b.size();
        Int f = a.back();
        q[k] = f;
        for (std::size_t i = 0; i < b.size(); ++i) a[i + k] -= f * b[i];
        a = zreduce(std::move(a), m);
    }
    return {zreduce(std::move(q), m), std::move(a)};
}

// Symmetric representative in (-m/2, m/2].
ZPoly zsym(ZPoly a, const Int& m) {
    Int half = m / 2;
    for (Int& c : a) {
        mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
        if (c > half) c -= m;
    }
    ztrim(a);
    return a;
}

ZPoly from_ppoly(const PPoly& a) {
    ZPoly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = Int(static_cast<unsigned long>(a[i]));
    return r;
}

// Bezout s*g + t*h = 1 over GF(p) with deg s < deg h, deg t < deg g.
std::pair<PPoly, PPoly> pbezout(const PPoly& g, const PPoly& h, unsigned long p) {
    PPoly r0 = g, r1 = h;
    PPoly s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        auto [q, r2] = pdivmod(r0, r1, p);
        PPoly s2 = psub(s0, pmul(q, s1, p), p);
        PPoly t2 = psub(t0, pmul(q, t1, p), p);
        r0 = std::move(r1); r1 = std::move(r2);
        s0 = std::move(s1); s1 = std::move(s2);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    if (pdeg(r0) != 0) throw std::logic_error("pbezout: inputs not coprime");
    unsigned long inv = pinv(r0[0], p);
    for (auto& c : s0) c = (c * inv) % p;
    for (auto& c : t0) c = (c * inv) % p;
    return {s0, t0};
}

struct LiftedPair {
    ZPoly g, h;
};

// Quadratic Hensel lifting of F = g*h from mod p to mod at least p^target_k.
LiftedPair hensel_pair(const ZPoly& f_int, const PPoly& g0, const PPoly& h0, unsigned long p,
                       const Int& target_modulus) {
    auto [s0, t0] = pbezout(g0, h0, p);
    ZPoly g = from_ppoly(g0), h = from_ppoly(h0), s = from_ppoly(s0), t = from_ppoly(t0);
    Int m(static_cast<long>(p));
    while (m < target_modulus) {
        Int m2 = m * m;
        ZPoly f = zreduce(f_int, m2);
        ZPoly e = zsub(f, zmul(g, h, m2), m2);
        auto [q, dh] = zdivmod_monic(zmul(s, e, m2), h, m2);
        ZPoly dg = zadd(zmul(t, e, m2), zmul(q, g, m2), m2);
        h = zadd(h, dh, m2);
        g = zadd(g, dg, m2);
        ZPoly b = zsub(zadd(zmul(s, g, m2), zmul(t, h, m2), m2), ZPoly{Int(1)}, m2);
        auto [q2, ds] = zdivmod_monic(zmul(s, b, m2), h, m2);
        s = zsub(s, ds, m2);
        t = zsub(t, zadd(zmul(t, b, m2), zmul(q2, g, m2), m2), m2);
        m = m2;
    }
    return {zreduce(g, target_modulus), zreduce(h, target_modulus)};
}

// Lift all modular factors of the monic f_int to mod target_modulus.
void hensel_tree(const ZPoly& f_int, const std::vector<PPoly>& factors, std::size_t lo,
                 std::size_t hi, unsigned long p, const Int& target_modulus,
                 std::vector<ZPoly>& out) {
    if (hi - lo == 1) {
        out.push_back(zreduce(f_int, target_modulus));
        return;
    }
    std::size_t mid = lo + (hi - lo) / 2;
    PPoly g0{1}, h0{1};
    for (std::size_t i = lo; i < mid; ++i) g0 = pmul(g0, factors[i], p);
    for (std::size_t i = mid; i < hi; ++i) h0 = pmul(h0, factors[i], p);
    LiftedPair gh = hensel_pair(f_int, g0, h0, p, target_modulus);
    hensel_tree(gh.g, factors, lo, mid, p, target_modulus, out);
    hensel_tree(gh.h, factors, mid, hi, p, target_modulus, out);
}

// Exact trial division of monic integer polynomials; true iff g | f over Z.
bool divides_over_z(const ZPoly& f, const ZPoly& g) {
    if (g.empty() || g.back() != 1) return false;
    ZPoly r = f;
    ztrim(r);
    while (r.size() >= g.size()) {
        Int c = r.back();
        std::size_t k = r.size() - g.size();
        for (std::size_t i = 0; i < g.size(); ++i) r[i + k] -= c * g[i];
        ztrim(r);
    }
    return r.empty();
}

const unsigned long kPrimes[] = {3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41, 43,
                                 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101};

std::uint64_t poly_seed(const std::vector<Int>& f) {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (const Int& c : f) h = h * 1099511628211ull + static_cast<std::uint64_t>(mpz_fdiv_ui(c.get_mpz_t(), 0x7fffffffUL));
    return h;
}

// Achievable proper factor degrees, as a bitmask over 0..n.
std::uint64_t degree_subset_sums(const std::vector<int>& degs) {
    std::uint64_t reach = 1; // degree 0 reachable
    for (int d : degs) reach |= reach << d;
    return reach;
}

// Quotient of exact division of monic integer polynomials.
ZPoly quotient_over_z(const ZPoly& f, const ZPoly& g) {
    ZPoly r = f, q(f.size() - g.size() + 1, Int(0));
    while (r.size() >= g.size()) {
        Int c = r.back();
        std::size_t k = r.size() - g.size();
        q[k] = c;
        for (std::size_t i = 0; i < g.size(); ++i) r[i + k] -= c * g[i];
        ztrim(r);
    }
    if (!r.empty()) throw std::logic_error("quotient_over_z: not divisible");
    return q;
}

// Complete factorization of a monic squarefree integer polynomial into
// monic irreducible integer factors (unsorted).
std::vector<ZPoly> zassenhaus_factors(const std::vector<Int>& fi) {
    int n = static_cast<int>(fi.size()) - 1;
    ZPoly fz(fi.begin(), fi.end());
    if (n <= 1) return {fz};

    // Degree-pattern sieve; also picks the working prime.
    std::uint64_t possible = ~0ull;
    std::vector<std::pair<unsigned long, std::size_t>> usable;
    for (unsigned long q : kPrimes) {
        std::vector<int> degs;
        try {
            degs = factor_degrees_mod_p(fi, q);
        } catch (const std::invalid_argument&) {
            continue; // bad prime for this polynomial
        }
        usable.emplace_back(q, degs.size());
        possible &= degree_subset_sums(degs);
        std::uint64_t proper = possible & ~((1ull << 0) | (1ull << n));
        proper &= (2ull << n) - 1;
        if (proper == 0) return {fz};
        if (usable.size() >= 10) break;
    }
    if (usable.empty()) throw std::logic_error("no usable prime found for factorization");

    std::sort(usable.begin(), usable.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });
    unsigned long q = usable.front().first;
    std::vector<PPoly> local = factor_mod_p(reduce_mod_p(fi, q), q, poly_seed(fi));
    if (local.size() == 1) return {fz};

    // Landau-Mignotte style bound on factor coefficients of f and of any
    // cofactor (valid for all quotients below as well).
    Int norm2(0);
    for (const Int& c : fi) norm2 += c * c;
    Int bound = (sqrt(norm2) + 1) * int_pow(Int(2), static_cast<unsigned long>(n)) + 1;
    Int target(static_cast<long>(q));
    while (target < 2 * bound + 1) target *= static_cast<long>(q);

    std::vector<ZPoly> lifted;
    hensel_tree(fz, local, 0, local.size(), q, target, lifted);

    // Recombination, smallest subsets first: the first divisor found with
    // a minimal index set is irreducible over Q.
    std::vector<ZPoly> out;
    std::vector<std::size_t> avail(lifted.size());
    for (std::size_t i = 0; i < avail.size(); ++i) avail[i] = i;
    ZPoly rem = fz;
    std::size_t size = 1;
    while (2 * size <= avail.size()) {
        bool found = false;
        std::vector<std::size_t> idx(size);
        for (std::size_t i = 0; i < size; ++i) idx[i] = i;
        for (;;) {
            ZPoly cand{Int(1)};
            for (std::size_t i : idx) cand = zmul(cand, lifted[avail[i]], target);
            cand = zsym(cand, target);
            if (!cand.empty() && cand.back() == 1 && divides_over_z(rem, cand)) {
                out.push_back(cand);
                rem = quotient_over_z(rem, cand);
                std::vector<std::size_t> next;
                for (std::size_t i = 0, k = 0; i < avail.size(); ++i) {
                    if (k < idx.size() && idx[k] == i)
                        ++k;
                    else
                        next.push_back(avail[i]);
                }
                avail = std::move(next);
                found = true;
                break;
            }
            long k = static_cast<long>(size) - 1;
            while (k >= 0 &&
                   idx[static_cast<std::size_t>(k)] == avail.size() - size + static_cast<std::size_t>(k))
                --k;
            if (k < 0) break;
            ++idx[static_cast<std::size_t>(k)];
            for (std::size_t j = static_cast<std::size_t>(k) + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
        }
        if (!found) ++size;
    }
    if (rem.size() > 1) out.push_back(rem);
    return out;
}

// Monicized copy: F(y) = lc^{n-1} f(y/lc); coefficient i picks up
// lc^{n-1-i}. Factorizations correspond 1:1 over Q.
std::vector<Int> monicize(const std::vector<Int>& f) {
    int n = static_cast<int>(f.size()) - 1;
    Int lc = f.back();
    if (lc == 1) return f;
    std::vector<Int> fi = f;
    for (int i = 0; i < n; ++i)
        fi[static_cast<std::size_t>(i)] =
            f[static_cast<std::size_t>(i)] * int_pow(lc, static_cast<unsigned long>(n - 1 - i));
    fi[static_cast<std::size_t>(n)] = 1;
    return fi;
}

QPoly unmonicize(const ZPoly& g, const Int& lc) {
    // g(lc * x) / lc^{deg g}, monic over Q.
    std::vector<Rat> c(g.size());
    Int denom = int_pow(lc, static_cast<unsigned long>(g.size() - 1));
    Int pw(1);
    for (std::size_t i = 0; i < g.size(); ++i) {
        Rat v(g[i] * pw, denom);
        v.canonicalize();
        c[i] = v;
        pw *= lc;
    }
    return QPoly(std::move(c));
}

std::vector<QPoly> factor_squarefree_monic_rational(const QPoly& s) {
    if (s.degree() == 1) return {s};
    if (s.degree() > 12)
        throw std::invalid_argument("rational factorization supports degree <= 12");
    std::vector<Int> f = primitive_integer_poly(s);
    Int lc = f.back();
    std::vector<QPoly> out;
    for (const ZPoly& g : zassenhaus_factors(monicize(f))) out.push_back(unmonicize(g, lc));
    std::sort(out.begin(), out.end(), [](const QPoly& a, const QPoly& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        for (int i = a.degree(); i >= 0; --i) {
            if (a[static_cast<std::size_t>(i)] != b[static_cast<std::size_t>(i)])
                return a[static_cast<std::size_t>(i)] < b[static_cast<std::size_t>(i)];
        }
        return false;
    });
    return out;
}

} // namespace

std::vector<int> factor_degrees_mod_p(const std::vector<Int>& f, unsigned long p) {
    PPoly fp = reduce_mod_p(f, p);
    if (pdeg(fp) != static_cast<int>(f.size()) - 1)
        throw std::invalid_argument("leading coefficient vanishes mod p");
    fp = pmonic(fp, p);
    if (pdeg(pgcd(fp, pderiv(fp, p), p)) != 0)
        throw std::invalid_argument("polynomial not squarefree mod p");
    std::vector<int> degs;
    for (const auto& [g, d] : ddf(fp, p))
        for (int i = 0; i < pdeg(g) / d; ++i) degs.push_back(d);
    std::sort(degs.begin(), degs.end());
    return degs;
}

std::vector<std::pair<QPoly, int>> factor_over_q(const QPoly& p) {
    if (p.is_zero() || p.degree() < 1)
        throw std::invalid_argument("factorization is defined for degree >= 1");
    std::vector<std::pair<QPoly, int>> out;
    for (const auto& [s, mult] : squarefree_decomposition(p))
        for (const QPoly& g : factor_squarefree_monic_rational(s)) out.emplace_back(g, mult);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        for (int i = a.first.degree(); i >= 0; --i) {
            const Rat& x = a.first[static_cast<std::size_t>(i)];
            const Rat& y = b.first[static_cast<std::size_t>(i)];
            if (x != y) return x < y;
        }
        return a.second < b.second;
    });
    return out;
}

bool is_irreducible(const QPoly& p) {
    if (p.is_zero() || p.degree() < 1)
        throw std::invalid_argument("irreducibility is defined for degree >= 1");
    int n = p.degree();
    if (n == 1) return true;
    if (n > 12) throw std::invalid_argument("irreducibility test supports degree <= 12");
    if (poly_gcd(p, p.derivative()).degree() > 0) return false; // repeated factor
    return factor_squarefree_monic_rational(p.monic()).size() == 1;
}

} // namespace torsym
