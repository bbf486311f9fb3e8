#include "torsym/poly.hpp"

#include <stdexcept>

namespace torsym {

Interval eval_interval(const QPoly& p, const Interval& x) {
    if (p.is_zero()) return {Rat(0), Rat(0)};
    Interval acc(p.leading(), p.leading());
    for (int i = p.degree() - 1; i >= 0; --i) {
        acc = acc * x;
        acc = acc + p[static_cast<std::size_t>(i)];
    }
    return acc;
}

namespace {

// A cut point strictly inside (a, b) that is not a root of q.
Rat nonroot_cut(const QPoly& q, const Rat& a, const Rat& b) {
    // Try a short deterministic schedule of interior points.
    static const std::pair<long, long> fractions[] = {{1, 2}, {1, 3}, {2, 3}, {1, 5},
                                                      {2, 5}, {3, 5}, {4, 5}, {1, 7}};
    for (auto [num, den] : fractions) {
        Rat cut = a + (b - a) * Rat(num, den);
        if (sign(q.eval_at_rat(cut)) != 0) return cut;
    }
    // q has finitely many roots; walk a denominator ladder until free.
    for (long den = 11;; den += 2) {
        Rat cut = a + (b - a) / den;
        if (sign(q.eval_at_rat(cut)) != 0) return cut;
    }
}

void isolate_rec(const QPoly& q, const std::vector<QPoly>& chain, const Rat& a, int var_a,
                 const Rat& b, int var_b, std::vector<Interval>& out) {
    int cnt = var_a - var_b;
    if (cnt <= 0) return;
    if (cnt == 1) {
        out.emplace_back(a, b);
        return;
    }
    Rat cut = nonroot_cut(q, a, b);
    int var_cut = chain_variations(chain, SturmPoint::at(cut));
    isolate_rec(q, chain, a, var_a, cut, var_cut, out);
    isolate_rec(q, chain, cut, var_cut, b, var_b, out);
}

} // namespace

std::vector<Interval> isolate_real_roots(const QPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("root isolation of zero polynomial");
    QPoly q = squarefree_part(p);
    if (q.degree() <= 0) return {};
    Rat bound = root_bound(q);
    auto chain = signed_remainder_chain(q, q.derivative());
    std::vector<Interval> out;
    isolate_rec(q, chain, -bound, chain_variations(chain, SturmPoint::at(-bound)), bound,
                chain_variations(chain, SturmPoint::at(bound)), out);
    return out;
}

Interval bisect_root_interval(const QPoly& p, const Interval& iv) {
    int slo = sign(p.eval_at_rat(iv.lo));
    int shi = sign(p.eval_at_rat(iv.hi));
    if (slo == 0 || shi == 0 || slo == shi)
        throw std::logic_error("bisect_root_interval: endpoints must bracket a sign change");
    Rat mid = nonroot_cut(p, iv.lo, iv.hi);
    int smid = sign(p.eval_at_rat(mid));
    if (smid == slo) return {mid, iv.hi};
    return {iv.lo, mid};
}

Interval refine_root_interval(const QPoly& p, Interval iv, const Rat& eps) {
    while (iv.width() > eps) iv = bisect_root_interval(p, iv);
    return iv;
}

} // namespace torsym
