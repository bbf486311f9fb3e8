#include "torsym/circle.hpp"

namespace torsym {

int cauchy_index(const QPoly& den, const QPoly& num) {
    if (den.is_zero()) throw std::invalid_argument("cauchy index with zero denominator");
    if (num.is_zero()) return 0;
    auto chain = signed_remainder_chain(den, num);
    return chain_variations(chain, SturmPoint::neg_inf()) -
           chain_variations(chain, SturmPoint::pos_inf());
}

ReciprocalSplit split_reciprocal_part(const QPoly& s) {
    ReciprocalSplit out;
    out.remainder = s;
    if (s.degree() <= 0) return out;
    if (sign(s.constant_term()) == 0)
        throw std::invalid_argument("split_reciprocal_part: zero constant term");
    QPoly h = poly_gcd(s, s.reversed());
    if (h.degree() <= 0) return out;
    QPoly bigh = reciprocal_transform(h);
    out.unimodular_pairs = count_real_roots_open(bigh, Rat(-2), Rat(2));
    int off_circle = h.degree() - 2 * out.unimodular_pairs;
    // Off-circle roots of the reciprocal part come in (x, 1/x) pairs, one
    // on each side of the circle.
    out.inside = off_circle / 2;
    out.outside = off_circle / 2;
    out.remainder = s / h;
    return out;
}

namespace {

// G(y) = (1-y)^m * s((1+y)/(1-y)); maps the open unit disk to Re y < 0.
QPoly moebius_disk_to_halfplane(const QPoly& s) {
    int m = s.degree();
    QPoly one_plus = QPoly::from_int_coeffs({1, 1});
    QPoly one_minus = QPoly::from_int_coeffs({1, -1});
    // Precompute powers.
    std::vector<QPoly> pp(static_cast<std::size_t>(m) + 1), mp(static_cast<std::size_t>(m) + 1);
    pp[0] = mp[0] = QPoly::one();
    for (int i = 1; i <= m; ++i) {
        pp[static_cast<std::size_t>(i)] = pp[static_cast<std::size_t>(i - 1)] * one_plus;
        mp[static_cast<std::size_t>(i)] = mp[static_cast<std::size_t>(i - 1)] * one_minus;
    }
    QPoly g = QPoly::zero();
    for (int k = 0; k <= m; ++k) {
        const Rat& c = s[static_cast<std::size_t>(k)];
        if (sign(c) == 0) continue;
        g = g + pp[static_cast<std::size_t>(k)] * mp[static_cast<std::size_t>(m - k)] * c;
    }
    return g;
}

} // namespace

int open_disk_count(const QPoly& s) {
    int m = s.degree();
    if (m <= 0) return 0;
    if (sign(s.eval_at_rat(Rat(1))) == 0 || sign(s.eval_at_rat(Rat(-1))) == 0)
        throw std::invalid_argument("open_disk_count: root at +-1");
    QPoly g = moebius_disk_to_halfplane(s);
    if (g.degree() != m) throw std::logic_error("moebius transform degree drop");

    // G(i w) = U(w) + i V(w).
    std::vector<Rat> uc(static_cast<std::size_t>(m) + 1, Rat(0));
    std::vector<Rat> vc(static_cast<std::size_t>(m) + 1, Rat(0));
    for (int k = 0; k <= m; ++k) {
        const Rat& c = g[static_cast<std::size_t>(k)];
        switch (k % 4) {
            case 0: uc[static_cast<std::size_t>(k)] = c; break;
            case 1: vc[static_cast<std::size_t>(k)] = c; break;
            case 2: uc[static_cast<std::size_t>(k)] = -c; break;
            case 3: vc[static_cast<std::size_t>(k)] = -c; break;
        }
    }
    QPoly u(std::move(uc)), v(std::move(vc));
    QPoly shared = poly_gcd(u, v);
    if (shared.degree() > 0) {
        if (count_real_roots(shared) > 0)
            throw std::logic_error("open_disk_count: root on the unit circle");
        u = u / shared;
        v = v / shared;
    }
    // Routh-Hurwitz via the Cauchy index; parity picks the orientation.
    int diff; // (# left) - (# right)
    if (m % 2 == 1)
        diff = cauchy_index(v, u);
    else
        diff = -cauchy_index(u, v);
    if ((m + diff) % 2 != 0) throw std::logic_error("open_disk_count: parity failure");
    return (m + diff) / 2;
}

} // namespace torsym
