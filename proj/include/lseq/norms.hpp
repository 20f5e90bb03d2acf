#ifndef LSEQ_NORMS_HPP
#define LSEQ_NORMS_HPP

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "lseq/bracket.hpp"
#include "lseq/sequence.hpp"
#include "lseq/weights.hpp"

namespace lseq {

inline constexpr double kDefaultWidth = 1e-10;
inline constexpr double kDefaultLuxemburgTol = 1e-9;

/// Bounded exponent sequence p_0..p_{M-1} followed by a constant tail value.
/// Every exponent is > 1, so sup_n p_n is finite by construction.
class ExponentSeq {
public:
    ExponentSeq(std::vector<double> prefix, double tail);
    static ExponentSeq constant(double p) { return ExponentSeq({}, p); }

    double at(std::size_t n) const noexcept { return n < prefix_.size() ? prefix_[n] : tail_; }
    double sup() const noexcept { return sup_; }
    double tail() const noexcept { return tail_; }
    std::size_t prefix_size() const noexcept { return prefix_.size(); }
    const std::vector<double>& prefix() const noexcept { return prefix_; }

private:
    std::vector<double> prefix_;
    double tail_;
    double sup_;
};

struct ModularValue {
    Bracket bracket;
    std::size_t truncation_index = 0;   // first index summed through the analytic tail
    std::string tail_bound_method;
};

struct LuxemburgResult {
    Bracket norm;
    double modular_residual = 0.0;      // sup |σ(x/r) - 1| over r in the final bracket
    int iterations = 0;
};

/// Certified bracket for Σ_{n>=m} λ_n^{-p}: explicit terms up to some K, then the
/// Euler–Maclaurin expansion of the completely monotone remainder, which encloses
/// the exact value between consecutive partial expansions.
Bracket tail_sum_bracket(const LambdaWeights& w, std::size_t m, double p, double target_width = 1e-14);

/// ‖x‖_p for finite p > 1.
Bracket pnorm(const FiniteSequence& x, const LambdaWeights& w, double p, double target_width = kDefaultWidth);

/// ‖x‖_∞ = max_n Λx(n), attained on the support of x.
double supnorm(const FiniteSequence& x, const LambdaWeights& w);

/// σ(x) = Σ_n (Λx(n))^{p_n}.
ModularValue modular(const FiniteSequence& x, const LambdaWeights& w, const ExponentSeq& p,
                     double target_width = kDefaultWidth);

/// Luxemburg norm inf{r > 0 : σ(x/r) <= 1}.
Bracket luxemburg(const FiniteSequence& x, const LambdaWeights& w, const ExponentSeq& p,
                  double tol = kDefaultLuxemburgTol);
LuxemburgResult luxemburg_detail(const FiniteSequence& x, const LambdaWeights& w, const ExponentSeq& p,
                                 double tol = kDefaultLuxemburgTol);

/// σ(x/r) for arbitrary r > 0 with the tail sum computed once.
class ModularEvaluator {
public:
    ModularEvaluator(const FiniteSequence& x, const LambdaWeights& w, const ExponentSeq& p);

    Bracket at_scale(double r) const;
    bool is_zero() const noexcept { return zero_; }
    std::size_t truncation_index() const noexcept { return cutoff_; }
    /// max(Λx(0), S/λ_L) with L = max_support.
    double initial_scale() const noexcept { return initial_scale_; }
    long double mass() const noexcept { return mass_; }

private:
    bool zero_ = true;
    std::size_t cutoff_ = 0;
    std::vector<long double> transform_;  // Λx(n) for n < cutoff_
    std::vector<long double> exponents_;
    long double mass_ = 0.0L;
    long double tail_exponent_ = 2.0L;
    Bracket tail_sum_;
    double initial_scale_ = 0.0;
};

namespace detail {

/// Relative padding applied to extended-precision sums when rounding to a Bracket.
inline constexpr long double kRoundingSlack = 1e-15L;

/// Bisection for inf{r > 0 : σ(r) <= 1} given certified σ(r) brackets, strictly
/// decreasing in r. Starts at r0 and expands by factors of 2 until straddled.
LuxemburgResult luxemburg_bisect(const std::function<Bracket(double)>& sigma_at, double r0, double tol);

} // namespace detail

} // namespace lseq

#endif
