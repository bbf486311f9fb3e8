#include "torsym/numeric.hpp"

#include "torsym/errors.hpp"
#include "torsym/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace torsym {

namespace {

double mod1d(double x) {
    double r = x - std::floor(x);
    if (r >= 1.0) r -= 1.0; // floor rounding at the boundary
    return r;
}

void check_finite(double x) {
    if (!std::isfinite(x)) throw NumericError("non-finite value in numeric evaluation");
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

std::vector<double> mat_vec(const std::vector<double>& m, const std::vector<double>& v) {
    std::size_t n = v.size();
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out[i] += m[i * n + j] * v[j];
    return out;
}

std::vector<double> mat_mul(const std::vector<double>& a, const std::vector<double>& b, std::size_t n) {
    std::vector<double> out(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            double v = a[i * n + k];
            if (v == 0) continue;
            for (std::size_t j = 0; j < n; ++j) out[i * n + j] += v * b[k * n + j];
        }
    return out;
}

std::vector<double> mat_inverse(std::vector<double> a, std::size_t n) {
    std::vector<double> inv(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) inv[i * n + i] = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
        if (std::abs(a[piv * n + col]) < 1e-14) throw NumericError("singular Jacobian");
        if (piv != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a[piv * n + j], a[col * n + j]);
                std::swap(inv[piv * n + j], inv[col * n + j]);
            }
        double f = a[col * n + col];
        for (std::size_t j = 0; j < n; ++j) {
            a[col * n + j] /= f;
            inv[col * n + j] /= f;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            double g = a[r * n + col];
            if (g == 0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                a[r * n + j] -= g * a[col * n + j];
                inv[r * n + j] -= g * inv[col * n + j];
            }
        }
    }
    return inv;
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

} // namespace

std::vector<double> flow_advance(std::vector<double> theta, const std::vector<double>& d, double t) {
    if (theta.size() != d.size()) throw SemanticError("flow_advance dimension mismatch");
    for (std::size_t i = 0; i < theta.size(); ++i) theta[i] = mod1d(theta[i] + t * d[i]);
    return theta;
}

std::vector<std::vector<double>> halton_points(std::size_t count, std::size_t dim,
                                               std::size_t offset) {
    static const unsigned bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
    if (dim > std::size(bases)) throw SemanticError("halton dimension too large");
    std::vector<std::vector<double>> pts;
    pts.reserve(count);
    for (std::size_t i = 1 + offset; i <= count + offset; ++i) {
        std::vector<double> p(dim);
        for (std::size_t j = 0; j < dim; ++j) {
            unsigned base = bases[j];
            double f = 1.0, r = 0.0;
            std::size_t k = i;
            while (k) {
                f /= base;
                r += f * static_cast<double>(k % base);
                k /= base;
            }
            p[j] = r;
        }
        pts.push_back(std::move(p));
    }
    return pts;
}

LinearTorusMap::LinearTorusMap(AffineMap map) : n_(map.dim()) {
    linear_.resize(n_ * n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) linear_[i * n_ + j] = map.linear()(i, j).get_d();
    translation_.reserve(n_);
    for (const Rat& c : map.translation()) translation_.push_back(to_double(c));
}

std::vector<double> LinearTorusMap::apply(const std::vector<double>& x) const {
    std::vector<double> y = mat_vec(linear_, x);
    for (std::size_t i = 0; i < n_; ++i) y[i] = mod1d(y[i] + translation_[i]);
    return y;
}

std::vector<double> LinearTorusMap::jacobian(const std::vector<double>&) const { return linear_; }

NonlinearTestMap::NonlinearTestMap(AffineMap base, double epsilon, std::vector<TrigTerm> terms)
    : base_(std::move(base)), n_(base_.dim()), epsilon_(epsilon), terms_(std::move(terms)) {
    for (const TrigTerm& t : terms_)
        if (t.source >= n_ || t.target >= n_ || t.k == 0)
            throw SemanticError("invalid perturbation term");
    // Max-row-sum of the perturbation Jacobian must stay below 1.
    std::vector<double> row_sum(n_, 0.0);
    for (const TrigTerm& t : terms_)
        row_sum[t.target] += std::abs(epsilon_ * t.c) * kTwoPi * static_cast<double>(std::labs(t.k));
    for (double s : row_sum)
        if (s >= 1.0)
            throw SemanticError("perturbation amplitude too large for a diffeomorphism");
    base_linear_.resize(n_ * n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) base_linear_[i * n_ + j] = base_.linear()(i, j).get_d();
}

std::vector<TrigTerm> NonlinearTestMap::default_family(std::size_t n) {
    return {TrigTerm{0.5, 1, n - 1, 0}};
}

std::vector<double> NonlinearTestMap::h(const std::vector<double>& theta) const {
    std::vector<double> y = theta;
    for (const TrigTerm& t : terms_)
        y[t.target] += epsilon_ * t.c * std::sin(kTwoPi * static_cast<double>(t.k) * theta[t.source]);
    for (double& c : y) c = mod1d(c);
    return y;
}

std::vector<double> NonlinearTestMap::h_inverse(const std::vector<double>& x) const {
    std::vector<double> theta = x;
    for (int it = 0; it < 200; ++it) {
        std::vector<double> next = x;
        for (const TrigTerm& t : terms_)
            next[t.target] -=
                epsilon_ * t.c * std::sin(kTwoPi * static_cast<double>(t.k) * theta[t.source]);
        double delta = 0;
        for (std::size_t i = 0; i < n_; ++i) delta = std::max(delta, std::abs(next[i] - theta[i]));
        theta = std::move(next);
        if (delta < 1e-14) break;
    }
    return theta;
}

std::vector<double> NonlinearTestMap::dh(const std::vector<double>& theta) const {
    std::vector<double> j(n_ * n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) j[i * n_ + i] = 1.0;
    for (const TrigTerm& t : terms_)
        j[t.target * n_ + t.source] += epsilon_ * t.c * kTwoPi * static_cast<double>(t.k) *
                                       std::cos(kTwoPi * static_cast<double>(t.k) * theta[t.source]);
    return j;
}

std::vector<double> NonlinearTestMap::push_vector(const std::vector<double>& theta,
                                                  const std::vector<double>& v) const {
    return mat_vec(dh(theta), v);
}

std::vector<double> NonlinearTestMap::apply(const std::vector<double>& x) const {
    std::vector<double> theta = h_inverse(x);
    std::vector<double> y = mat_vec(base_linear_, theta);
    const auto& c = base_.translation();
    for (std::size_t i = 0; i < n_; ++i) y[i] = y[i] + to_double(c[i]);
    // h is 1-periodic, so reducing before applying it is harmless.
    for (double& t : y) t = mod1d(t);
    return h(y);
}

std::vector<double> NonlinearTestMap::jacobian(const std::vector<double>& x) const {
    std::vector<double> theta = h_inverse(x);
    std::vector<double> r_theta = mat_vec(base_linear_, theta);
    const auto& c = base_.translation();
    for (std::size_t i = 0; i < n_; ++i) r_theta[i] = mod1d(r_theta[i] + to_double(c[i]));
    std::vector<double> outer = dh(r_theta);
    std::vector<double> inner_inv = mat_inverse(dh(theta), n_);
    return mat_mul(mat_mul(outer, base_linear_, n_), inner_inv, n_);
}

LyapunovEstimate lyapunov_along(const TorusMap& map, std::vector<double> p, std::vector<double> v,
                                int m) {
    if (m < 1) throw SemanticError("iteration count must be >= 1");
    double prev_norm = std::sqrt(dot(v, v));
    if (!(prev_norm > 0)) throw SemanticError("zero tangent vector");

    double acc = 0.0;
    int tail_start = m - std::max(1, m / 10);
    double tail_max = -1e300;
    for (int t = 0; t < m; ++t) {
        std::vector<double> j = map.jacobian(p);
        v = mat_vec(j, v);
        double norm = std::sqrt(dot(v, v));
        check_finite(norm);
        if (!(norm > 0)) throw NumericError("tangent vector collapsed");
        acc += std::log(norm / prev_norm);
        // Renormalize to dodge overflow; the next ratio uses the recomputed
        // norm so an isometric step contributes exactly log 1.
        for (double& x : v) x /= norm;
        prev_norm = std::sqrt(dot(v, v));
        p = map.apply(p);
        double mean = acc / static_cast<double>(t + 1);
        if (t >= tail_start) tail_max = std::max(tail_max, mean);
    }
    check_finite(acc);
    return {acc / static_cast<double>(m), tail_max, m};
}

LyapunovReport verify_lyapunov_theorem(const MultiplierRecord& record, const FrequencyVector& d,
                                       int samples, int m, const NonlinearTestMap* conjugacy,
                                       unsigned threads, std::size_t halton_offset) {
    if (samples < 1) throw SemanticError("sample count must be >= 1");
    std::size_t n = d.dim();
    if (record.matrix.dim() != n) throw SemanticError("record and flow dimensions differ");

    // The record must really scale the flow.
    auto mu = multiplier_of(AffineMap(record.matrix), d);
    if (!mu || *mu != record.mu) throw SemanticError("record does not scale the flow");

    std::vector<double> direction = d.to_doubles();
    LinearTorusMap linear(AffineMap(record.matrix));
    auto points = halton_points(static_cast<std::size_t>(samples), n, halton_offset);

    auto worker = [&](std::size_t lo, std::size_t hi) {
        std::vector<LyapunovSample> out;
        for (std::size_t i = lo; i < hi; ++i) {
            std::vector<double> p = points[i];
            std::vector<double> v = direction;
            LyapunovEstimate est;
            if (conjugacy) {
                std::vector<double> q = conjugacy->h(p);
                std::vector<double> w = conjugacy->push_vector(p, v);
                est = lyapunov_along(*conjugacy, q, w, m);
                out.push_back({q, m, est.running_mean, est.tail_max});
            } else {
                est = lyapunov_along(linear, p, v, m);
                out.push_back({p, m, est.running_mean, est.tail_max});
            }
        }
        return out;
    };
    LyapunovReport rep;
    rep.estimates = parallel_collect<LyapunovSample>(points.size(), threads, worker);
    rep.exact_target = record.abs_log;
    rep.exact_target_str = record.abs_log_str;
    for (const auto& s : rep.estimates)
        rep.max_abs_deviation = std::max(rep.max_abs_deviation, std::abs(s.estimate - rep.exact_target));
    return rep;
}

std::vector<ScanCandidate> numeric_symmetry_scan(const std::vector<Rat>& d, long entry_bound,
                                                 const Rat& tol, unsigned threads) {
    std::size_t n = d.size();
    if (n < 2) throw SemanticError("scan needs dimension >= 2");
    if (entry_bound < 1) throw SemanticError("entry bound must be >= 1");

    // Pivot: the coordinate of largest magnitude.
    std::size_t pivot = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (rat_abs(d[i]) > rat_abs(d[pivot])) pivot = i;
    if (sign(d[pivot]) == 0) throw SemanticError("scan needs a nonzero vector");

    Rat maxd(0);
    for (const Rat& x : d) maxd = std::max(maxd, rat_abs(x));

    const std::size_t stride = static_cast<std::size_t>(2 * entry_bound + 1);
    std::size_t pivot_rows = 1;
    for (std::size_t i = 0; i < n; ++i) pivot_rows *= stride;

    auto decode_row = [&](std::size_t code) {
        std::vector<long> row(n);
        for (std::size_t j = 0; j < n; ++j) {
            row[j] = static_cast<long>(code % stride) - entry_bound;
            code /= stride;
        }
        return row;
    };

    auto worker = [&](std::size_t lo, std::size_t hi) {
        std::vector<ScanCandidate> found;
        std::size_t free_count = 1;
        for (std::size_t i = 0; i + 1 < n; ++i) free_count *= stride;
        for (std::size_t code = lo; code < hi; ++code) {
            std::vector<long> prow = decode_row(code);
            Rat pdot(0);
            for (std::size_t j = 0; j < n; ++j) pdot += Rat(prow[j]) * d[j];
            Rat mu = pdot / d[pivot];
            Rat scale = std::max(Rat(1), Rat(rat_abs(mu) * maxd));
            Rat abs_tol = tol * scale;

            // Row lists for every non-pivot row index.
            std::vector<std::vector<std::pair<std::vector<long>, Rat>>> lists(n);
            bool dead = false;
            for (std::size_t i = 0; i < n && !dead; ++i) {
                if (i == pivot) continue;
                auto& list = lists[i];
                Rat target = mu * d[i];
                for (std::size_t fc = 0; fc < free_count; ++fc) {
                    // Decode the non-pivot entries.
                    std::vector<long> row(n, 0);
                    std::size_t rest = fc;
                    for (std::size_t j = 0; j < n; ++j) {
                        if (j == pivot) continue;
                        row[j] = static_cast<long>(rest % stride) - entry_bound;
                        rest /= stride;
                    }
                    Rat partial(0);
                    for (std::size_t j = 0; j < n; ++j)
                        if (j != pivot) partial += Rat(row[j]) * d[j];
                    Rat exact = (target - partial) / d[pivot];
                    Int base = rat_floor(exact);
                    for (Int cand = base; cand <= base + 1; ++cand) {
                        if (cand < -entry_bound || cand > entry_bound) continue;
                        Rat residual = rat_abs(partial + Rat(cand) * d[pivot] - target);
                        if (residual <= abs_tol) {
                            row[pivot] = cand.get_si();
                            list.emplace_back(row, residual);
                        }
                    }
                }
                if (list.empty()) dead = true;
                if (list.size() > 64) throw NumericError("scan row lists exploded; tighten tol");
            }
            if (dead) continue;

            // Assemble candidate matrices from the row lists.
            std::vector<std::size_t> idx(n, 0);
            for (;;) {
                IntegerMatrix b(n);
                Rat worst(0);
                for (std::size_t j = 0; j < n; ++j) b(pivot, j) = prow[j];
                for (std::size_t i = 0; i < n; ++i) {
                    if (i == pivot) continue;
                    const auto& [row, residual] = lists[i][idx[i]];
                    for (std::size_t j = 0; j < n; ++j) b(i, j) = row[j];
                    worst = std::max(worst, residual);
                }
                Int det = b.det();
                if (det == 1 || det == -1)
                    found.push_back({b, to_double(mu), mu, worst / scale});
                std::size_t k = 0;
                while (k < n) {
                    if (k == pivot) {
                        ++k;
                        continue;
                    }
                    if (++idx[k] < lists[k].size()) break;
                    idx[k] = 0;
                    ++k;
                }
                if (k == n) break;
            }
        }
        return found;
    };

    auto found = parallel_collect<ScanCandidate>(pivot_rows, threads, worker);
    std::sort(found.begin(), found.end(), [n](const ScanCandidate& a, const ScanCandidate& b) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (a.matrix(i, j) != b.matrix(i, j)) return a.matrix(i, j) < b.matrix(i, j);
            }
        return false;
    });
    return found;
}

} // namespace torsym
