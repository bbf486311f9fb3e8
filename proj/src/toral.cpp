#include "torsym/toral.hpp"

#include "torsym/circle.hpp"
#include "torsym/errors.hpp"

#include <algorithm>
#include <sstream>

namespace torsym {

std::string HyperbolicityReport::kind_name() const {
    switch (classification) {
        case Kind::anosov: return "anosov";
        case Kind::partially_hyperbolic: return "partially_hyperbolic";
        case Kind::no_expansion: return "no_expansion";
    }
    return "?";
}

HyperbolicityReport classify_hyperbolicity(const IntegerMatrix& b) {
    Int d = b.det();
    if (d != 1 && d != -1)
        throw SemanticError("matrix with det " + d.get_str() + " does not induce an automorphism");
    QPoly f = b.characteristic_polynomial();
    HyperbolicityReport rep;
    for (const auto& [sf, mult] : squarefree_decomposition(f)) {
        QPoly s = sf;
        for (long r : {1L, -1L}) {
            if (sign(s.eval_at_rat(Rat(r))) == 0) {
                rep.center_dim += mult;
                s = s / QPoly(std::vector<Rat>{Rat(-r), Rat(1)});
            }
        }
        if (s.degree() <= 0) continue;
        ReciprocalSplit split = split_reciprocal_part(s);
        rep.center_dim += mult * 2 * split.unimodular_pairs;
        rep.stable_dim += mult * split.inside;
        rep.unstable_dim += mult * split.outside;
        if (split.remainder.degree() > 0) {
            int in = open_disk_count(split.remainder);
            rep.stable_dim += mult * in;
            rep.unstable_dim += mult * (split.remainder.degree() - in);
        }
    }
    if (rep.center_dim == 0)
        rep.classification = HyperbolicityReport::Kind::anosov;
    else if (rep.stable_dim > 0 || rep.unstable_dim > 0)
        rep.classification = HyperbolicityReport::Kind::partially_hyperbolic;
    else
        rep.classification = HyperbolicityReport::Kind::no_expansion;
    return rep;
}

std::vector<Rat> mod1(std::vector<Rat> x) {
    for (Rat& c : x) c = rat_mod1(c);
    return x;
}

AffineMap::AffineMap(IntegerMatrix linear, std::vector<Rat> translation)
    : linear_(std::move(linear)), translation_(std::move(translation)) {
    if (translation_.empty()) translation_.assign(linear_.dim(), Rat(0));
    if (translation_.size() != linear_.dim())
        throw SemanticError("translation length does not match matrix dimension");
    if (!linear_.is_unimodular())
        throw SemanticError("affine map linear part must lie in GL(n,Z)");
    translation_ = mod1(std::move(translation_));
}

bool AffineMap::is_linear() const {
    for (const Rat& c : translation_)
        if (sign(c) != 0) return false;
    return true;
}

AffineMap AffineMap::compose(const AffineMap& o) const {
    if (dim() != o.dim()) throw SemanticError("composition dimension mismatch");
    std::vector<Rat> c = linear_.apply(o.translation_);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += translation_[i];
    return AffineMap(linear_ * o.linear_, mod1(std::move(c)));
}

AffineMap AffineMap::inverse() const {
    IntegerMatrix inv = linear_.inverse_unimodular();
    std::vector<Rat> c = inv.apply(translation_);
    for (Rat& x : c) x = -x;
    return AffineMap(inv, mod1(std::move(c)));
}

AffineMap AffineMap::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    AffineMap acc(IntegerMatrix::identity(dim()));
    AffineMap base = *this;
    unsigned long u = static_cast<unsigned long>(e);
    while (u) {
        if (u & 1) acc = acc.compose(base);
        base = base.compose(base);
        u >>= 1;
    }
    return acc;
}

std::vector<Rat> AffineMap::apply(const std::vector<Rat>& x) const {
    std::vector<Rat> y = linear_.apply(x);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += translation_[i];
    return mod1(std::move(y));
}

bool AffineMap::commutes_with(const AffineMap& o) const {
    return compose(o) == o.compose(*this);
}

bool AffineMap::operator==(const AffineMap& o) const {
    return linear_ == o.linear_ && translation_ == o.translation_;
}

std::string AffineMap::str() const {
    std::ostringstream os;
    os << linear_.str() << " + (";
    for (std::size_t i = 0; i < translation_.size(); ++i) {
        if (i) os << ", ";
        os << format_rational(translation_[i]);
    }
    os << ")";
    return os.str();
}

FixedPointSet fixed_points(const AffineMap& r) {
    std::size_t n = r.dim();
    IntegerMatrix bmi = r.linear();
    for (std::size_t i = 0; i < n; ++i) bmi(i, i) -= 1;
    SmithForm s = smith_normal_form(bmi);

    // (B - I)x + c in Z^n  <=>  D y + U c in Z^n with y = V^{-1} x.
    std::vector<Rat> uc = s.u.apply(r.translation());
    std::vector<long> counts(n, 0);
    bool infinite = false;
    for (std::size_t i = 0; i < n; ++i) {
        const Int& di = s.d(i, i);
        if (sign(di) == 0) {
            if (!is_integer(uc[i])) return {true, {}}; // unsolvable
            infinite = true;
            counts[i] = 1; // y_i pinned to 0 for representative listing
        } else {
            counts[i] = di.get_si();
        }
    }
    if (infinite) return {false, {}};

    FixedPointSet out;
    out.finite = true;
    std::vector<long> idx(n, 0);
    for (;;) {
        std::vector<Rat> y(n);
        for (std::size_t i = 0; i < n; ++i)
            y[i] = rat_mod1((Rat(idx[i]) - uc[i]) / Rat(s.d(i, i)));
        out.points.push_back(mod1(s.v.apply(y)));
        std::size_t k = 0;
        while (k < n && ++idx[k] == counts[k]) {
            idx[k] = 0;
            ++k;
        }
        if (k == n) break;
    }
    std::sort(out.points.begin(), out.points.end());
    return out;
}

} // namespace torsym
