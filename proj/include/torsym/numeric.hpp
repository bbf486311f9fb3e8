#pragma once

// Floating-point verification layer: torus orbit simulation, Lyapunov
// exponents along the flow direction via renormalized cocycle products,
// and the heuristic bounded-matrix scan for numerically specified
// frequency vectors.

#include "torsym/flow.hpp"
#include "torsym/symmetry.hpp"
#include "torsym/toral.hpp"

#include <memory>
#include <string>
#include <vector>

namespace torsym {

// theta + t*d reduced mod 1 componentwise into [0,1).
std::vector<double> flow_advance(std::vector<double> theta, const std::vector<double>& d, double t);

// Low-discrepancy points in [0,1)^dim (Halton, fixed prime bases, with the
// conventional index offset so 0 is not the first sample).
std::vector<std::vector<double>> halton_points(std::size_t count, std::size_t dim,
                                               std::size_t offset = 0);

class TorusMap {
  public:
    virtual ~TorusMap() = default;
    virtual std::size_t dim() const = 0;
    virtual std::vector<double> apply(const std::vector<double>& x) const = 0;
    // Row-major dim x dim Jacobian at x.
    virtual std::vector<double> jacobian(const std::vector<double>& x) const = 0;
};

class LinearTorusMap : public TorusMap {
  public:
    explicit LinearTorusMap(AffineMap map);
    std::size_t dim() const override { return n_; }
    std::vector<double> apply(const std::vector<double>& x) const override;
    std::vector<double> jacobian(const std::vector<double>& x) const override;

  private:
    std::size_t n_;
    std::vector<double> linear_, translation_;
};

// One perturbation term: adds c * sin(2 pi k theta_source) to the target
// coordinate (all scaled by the family amplitude epsilon).
struct TrigTerm {
    double c = 0.0;
    long k = 1;
    std::size_t source = 0;
    std::size_t target = 0;
};

// The conjugated map h o base o h^{-1} for h = id + epsilon * (trig terms).
// Construction rejects amplitudes for which the perturbation Jacobian
// reaches max-row-sum 1 (h might fail to be a diffeomorphism).
class NonlinearTestMap : public TorusMap {
  public:
    NonlinearTestMap(AffineMap base, double epsilon, std::vector<TrigTerm> terms);

    // One mild term: 0.5 * sin(2 pi theta_n) added to the first coordinate.
    static std::vector<TrigTerm> default_family(std::size_t n);

    std::size_t dim() const override { return n_; }
    std::vector<double> apply(const std::vector<double>& x) const override;
    std::vector<double> jacobian(const std::vector<double>& x) const override;

    std::vector<double> h(const std::vector<double>& theta) const;
    std::vector<double> h_inverse(const std::vector<double>& x) const; // fixed-point iteration to 1e-14
    std::vector<double> dh(const std::vector<double>& theta) const;    // row-major
    // T_theta h applied to v.
    std::vector<double> push_vector(const std::vector<double>& theta, const std::vector<double>& v) const;

    double epsilon() const { return epsilon_; }
    const std::vector<TrigTerm>& terms() const { return terms_; }
    const AffineMap& base() const { return base_; }

  private:
    AffineMap base_;
    std::size_t n_;
    double epsilon_;
    std::vector<TrigTerm> terms_;
    std::vector<double> base_linear_;
};

struct LyapunovEstimate {
    double running_mean = 0.0; // (1/m) sum of log norm ratios
    double tail_max = 0.0;     // max of the running mean over the last 10% of steps
    int iterations = 0;
};

// Renormalized cocycle product along the orbit of p; throws NumericError
// on NaN/Inf. v must be nonzero, m >= 1.
LyapunovEstimate lyapunov_along(const TorusMap& map, std::vector<double> p, std::vector<double> v,
                                int m);

struct LyapunovSample {
    std::vector<double> point;
    int iterations = 0;
    double estimate = 0.0;
    double tail_max = 0.0;
};

struct LyapunovReport {
    std::vector<LyapunovSample> estimates;
    double exact_target = 0.0;    // log |mu| from the exact record
    std::string exact_target_str;
    double max_abs_deviation = 0.0;
};

// Samples Halton base points and estimates the exponent along the flow
// direction; when a conjugacy is supplied the base point and direction are
// pushed through h. The exact target comes from the record's multiplier.
LyapunovReport verify_lyapunov_theorem(const MultiplierRecord& record, const FrequencyVector& d,
                                       int samples, int m,
                                       const NonlinearTestMap* conjugacy = nullptr,
                                       unsigned threads = 1, std::size_t halton_offset = 0);

struct ScanCandidate {
    IntegerMatrix matrix;
    double mu = 0.0;       // (B d)_p / d_p at the pivot coordinate
    Rat mu_exact;          // the same ratio over the exact input rationals
    Rat max_residual;      // max_i |(B d)_i - mu d_i| / max(1, |mu| max|d|)
};

// Enumerates B with |entries| <= entry_bound and |det B| = 1 whose action
// keeps d parallel to itself within tol (exact rational arithmetic on the
// supplied decimal values; heuristic evidence for transcendental input).
std::vector<ScanCandidate> numeric_symmetry_scan(const std::vector<Rat>& d, long entry_bound,
                                                 const Rat& tol, unsigned threads = 1);

} // namespace torsym
