#pragma once

// Exact location of polynomial roots relative to the unit circle.
//
// Unit-circle roots are found through the reciprocal gcd h = gcd(p, p*)
// and the substitution t = x + 1/x, which maps conjugate pairs e^{+-i a}
// to real t in (-2,2); root counting is then a Sturm query. Roots strictly
// inside the disk are counted through the Moebius map x = (1+y)/(1-y) and
// a Cauchy-index (Routh-Hurwitz) computation. No floating point anywhere.

#include "torsym/poly.hpp"
#include "torsym/rational.hpp"

#include <stdexcept>

namespace torsym {

// Cauchy index of num/den over the whole real line, computed from the
// signed remainder sequence (den, num).
int cauchy_index(const QPoly& den, const QPoly& num);

// Writes a monic palindromic polynomial h (even degree 2q, h(+-1) != 0)
// as h(x) = x^q * H(x + 1/x) and returns H.
template <class K>
Poly<K> reciprocal_transform(const Poly<K>& h) {
    int m = h.degree();
    if (m < 0 || m % 2 != 0) throw std::invalid_argument("reciprocal_transform: odd degree");
    int q = m / 2;
    Poly<K> work = h;
    Poly<K> xsq1 = Poly<K>::from_int_coeffs({1, 0, 1}); // x^2 + 1
    std::vector<K> cs(static_cast<std::size_t>(q) + 1, K(0));
    for (int j = q; j >= 0; --j) {
        K c = work[static_cast<std::size_t>(q + j)];
        cs[static_cast<std::size_t>(j)] = c;
        if (coeff_is_zero(c)) continue;
        Poly<K> basis = Poly<K>::monomial(q - j, K(1));
        for (int t = 0; t < j; ++t) basis = basis * xsq1;
        work = work - basis * c;
    }
    if (!work.is_zero()) throw std::logic_error("reciprocal_transform: input not palindromic");
    return Poly<K>(std::move(cs));
}

// Number of roots of p on the unit circle, counted with multiplicity.
template <class K>
int unit_circle_root_count(const Poly<K>& p) {
    if (p.is_zero()) throw std::invalid_argument("unit circle count of zero polynomial");
    int total = 0;
    for (auto& [sf, mult] : squarefree_decomposition(p)) {
        Poly<K> s = sf;
        for (long r : {1L, -1L}) {
            Rat rr(r);
            if (coeff_is_zero(s.eval_at_rat(rr))) {
                total += mult;
                s = s / Poly<K>(std::vector<K>{K(0) - K(1) * rr, K(1)});
            }
        }
        // Roots at 0 are off the circle and break the reversal; strip them.
        while (!s.is_zero() && coeff_is_zero(s.constant_term()))
            s = s / Poly<K>::monomial(1, K(1));
        if (s.degree() <= 0) continue;
        Poly<K> h = poly_gcd(s, s.reversed());
        if (h.degree() <= 0) continue;
        Poly<K> bigh = reciprocal_transform(h);
        total += mult * 2 * count_real_roots_open(bigh, Rat(-2), Rat(2));
    }
    return total;
}

// Partition of the reciprocal part: pairs (x, 1/x) with |x| != 1 split
// evenly between inside and outside. Returns the number of unimodular
// CONJUGATE PAIRS of the squarefree s (not counting +-1, which the caller
// strips), plus s with its reciprocal part divided out, plus the counts of
// the reciprocal part.
struct ReciprocalSplit {
    Poly<Rat> remainder;   // s / gcd(s, s*), no reciprocal-pair roots
    int unimodular_pairs = 0;
    int inside = 0;        // strictly inside the disk (from the gcd part)
    int outside = 0;
};
ReciprocalSplit split_reciprocal_part(const QPoly& s);

// Number of roots strictly inside the unit disk for a squarefree s with no
// roots on the unit circle and no reciprocal root pairs required; s(0) != 0.
int open_disk_count(const QPoly& s);

} // namespace torsym
