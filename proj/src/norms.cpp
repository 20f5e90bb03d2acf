#include "lseq/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lseq/error.hpp"

namespace lseq {

namespace {

// Neumaier-compensated accumulator.
struct CompensatedSum {
    long double sum = 0.0L;
    long double carry = 0.0L;

    void add(long double v) {
        const long double t = sum + v;
        if (std::fabs(sum) >= std::fabs(v))
            carry += (sum - t) + v;
        else
            carry += (v - t) + sum;
        sum = t;
    }
    long double value() const { return sum + carry; }
};

// The remainder g(t) = C (t + shift)^{-s} reproduces λ_n^{-p} on the law's range.
struct RemainderShape {
    long double scale;
    long double shift;
    long double decay;
};

RemainderShape remainder_shape(const GrowthLaw& law, long double p) {
    if (law.kind == GrowthLaw::Kind::Affine)
        return {std::pow(law.b, -p), law.a / law.b, p};
    return {std::pow(law.a, -p), 1.0L, law.b * p};
}

// Σ_{n>=K} g(n) lies in [lo, hi]; Euler–Maclaurin through f''' with the f^(5)
// term as the enclosing bound, intersected with the plain integral test.
std::pair<long double, long double> remainder_enclosure(const RemainderShape& g, std::size_t K) {
    const long double s = g.decay;
    const long double y = static_cast<long double>(K) + g.shift;
    const long double f = g.scale * std::pow(y, -s);
    const long double integral = f * y / (s - 1.0L);
    const long double d1 = -s * f / y;
    const long double d3 = -s * (s + 1.0L) * (s + 2.0L) * f / (y * y * y);
    const long double d5 = d3 * (s + 3.0L) * (s + 4.0L) / (y * y);
    const long double base = integral + 0.5L * f - d1 / 12.0L + d3 / 720.0L;
    long double lo = base;
    long double hi = base - d5 / 30240.0L;
    lo = std::max(lo, integral);
    hi = std::min(hi, integral + f);
    return {lo, hi};
}

void require_positive_width(double w, const char* what) {
    if (!(w > 0.0) || !std::isfinite(w))
        throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be positive and finite");
}

// The evaluators always run at full working precision; a requested width below
// the rounding floor of the result cannot be honoured.
void require_attained(const Bracket& b, double target_width) {
    if (b.width() > target_width)
        throw Error(ErrorCode::InvalidArgument, "target width " + std::to_string(target_width) +
                                                    " is below the attainable precision " + std::to_string(b.width()));
}

} // namespace

ExponentSeq::ExponentSeq(std::vector<double> prefix, double tail) : prefix_(std::move(prefix)), tail_(tail) {
    auto check = [](double p) {
        if (!std::isfinite(p) || !(p > 1.0))
            throw Error(ErrorCode::InvalidArgument, "exponents must be finite and > 1");
    };
    check(tail_);
    for (double p : prefix_) check(p);
    sup_ = tail_;
    for (double p : prefix_) sup_ = std::max(sup_, p);
}

Bracket tail_sum_bracket(const LambdaWeights& w, std::size_t m, double p, double target_width) {
    if (!std::isfinite(p) || !(p > 1.0)) throw Error(ErrorCode::InvalidArgument, "tail sum needs finite p > 1");
    require_positive_width(target_width, "tail sum target width");
    const auto& law = w.tail_law();
    if (!law) throw Error(ErrorCode::NoTailBound, "weights carry no growth law for the tail");

    const long double pl = p;
    const RemainderShape shape = remainder_shape(*law, pl);
    if (!(shape.decay > 1.0L))
        throw Error(ErrorCode::NonConvergent, "sum of lambda_n^{-p} diverges (decay exponent <= 1)");

    CompensatedSum head;
    std::size_t K = std::max(m, law->from);
    for (std::size_t n = m; n < K; ++n) head.add(std::pow(w.lambda_ld(n), -pl));

    constexpr std::size_t kMaxIndex = std::size_t{1} << 28;
    std::size_t step = 32;
    std::pair<long double, long double> rem;
    while (true) {
        for (std::size_t end = K + step; K < end; ++K) head.add(std::pow(w.lambda_ld(K), -pl));
        rem = remainder_enclosure(shape, K);
        const long double width = rem.second - rem.first;
        const long double total = head.value() + rem.first;
        if (width <= 0.25L * target_width || width <= 0x1p-64L * total || K > kMaxIndex) break;
        step *= 2;
    }
    const long double h = head.value();
    return Bracket::outward(h + rem.first, h + rem.second, detail::kRoundingSlack);
}

ModularEvaluator::ModularEvaluator(const FiniteSequence& x, const LambdaWeights& w, const ExponentSeq& p) {
    if (x.is_zero()) return;
    zero_ = false;
    const std::size_t last = *x.max_support();
    cutoff_ = std::max(last, p.prefix_size());
    tail_exponent_ = p.tail();

    transform_.resize(cutoff_);
    exponents_.resize(cutoff_);
    long double partial = 0.0L;
    auto it = x.entries().begin();
    for (std::size_t n = 0; n < cutoff_; ++n) {
        if (it != x.entries().end() && it->first == n) {
            partial += w.delta_ld(n) * std::fabs(static_cast<long double>(it->second));
            ++it;
        }
        transform_[n] = partial / w.lambda_ld(n);
        exponents_[n] = p.at(n);
    }
    mass_ = weighted_mass(x, w);
    tail_sum_ = tail_sum_bracket(w, cutoff_, p.tail(), 1e-300);

    const long double first = w.delta_ld(0) * std::fabs(static_cast<long double>(x.at(0))) / w.lambda_ld(0);
    initial_scale_ = static_cast<double>(std::max(first, mass_ / w.lambda_ld(last)));
}

Bracket ModularEvaluator::at_scale(double r) const {
    if (zero_) return Bracket::exact(0.0);
    if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorCode::InvalidArgument, "scale must be positive");
    const long double rl = r;
    CompensatedSum head;
    for (std::size_t n = 0; n < cutoff_; ++n)
        if (transform_[n] > 0.0L) head.add(std::pow(transform_[n] / rl, exponents_[n]));
    const long double tail_factor = std::pow(mass_ / rl, tail_exponent_);
    const long double h = head.value();
    return Bracket::outward(h + tail_factor * tail_sum_.lo, h + tail_factor * tail_sum_.hi, detail::kRoundingSlack);
}

namespace detail {

LuxemburgResult luxemburg_bisect(const std::function<Bracket(double)>& sigma_at, double r0, double tol) {
    require_positive_width(tol, "Luxemburg tolerance");
    if (!(r0 > 0.0) || !std::isfinite(r0))
        throw Error(ErrorCode::BracketingFailed, "initial scale must be positive and finite");

    constexpr int kMaxExpansions = 2100;
    LuxemburgResult out;
    double lo = r0;
    double hi = r0;
    Bracket s_hi = sigma_at(hi);
    int expansions = 0;
    while (s_hi.hi > 1.0) {
        hi *= 2.0;
        if (++expansions > kMaxExpansions || !std::isfinite(hi))
            throw Error(ErrorCode::BracketingFailed, "could not find r with sigma(x/r) <= 1");
        s_hi = sigma_at(hi);
    }
    Bracket s_lo = sigma_at(lo);
    while (s_lo.lo < 1.0) {
        lo *= 0.5;
        if (++expansions > kMaxExpansions || lo == 0.0)
            throw Error(ErrorCode::BracketingFailed, "could not find r with sigma(x/r) >= 1");
        s_lo = sigma_at(lo);
    }

    while (hi - lo > tol * std::min(1.0, hi)) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) break;
        const Bracket s = sigma_at(mid);
        ++out.iterations;
        if (s.hi <= 1.0) {
            hi = mid;
            s_hi = s;
        } else if (s.lo >= 1.0) {
            lo = mid;
            s_lo = s;
        } else {
            break;  // σ(mid) straddles 1 at the evaluator's precision
        }
    }
    out.norm = {lo, hi};
    out.modular_residual = std::max(s_lo.hi - 1.0, 1.0 - s_hi.lo);
    return out;
}

} // namespace detail

ModularValue modular(const FiniteSequence& x, const LambdaWeights& w, const ExponentSeq& p, double target_width) {
    require_positive_width(target_width, "modular target width");
    if (x.is_zero()) return {Bracket::exact(0.0), 0, "exact (zero sequence)"};
    const ModularEvaluator eval(x, w, p);
    const Bracket b = eval.at_scale(1.0);
    require_attained(b, target_width);
    return {b, eval.truncation_index(), "euler-maclaurin enclosure of the constant-mass tail"};
}

Bracket pnorm(const FiniteSequence& x, const LambdaWeights& w, double p, double target_width) {
    require_positive_width(target_width, "norm target width");
    if (!std::isfinite(p) || !(p > 1.0)) throw Error(ErrorCode::InvalidArgument, "pnorm needs finite p > 1");
    if (x.is_zero()) return Bracket::exact(0.0);
    const ModularEvaluator eval(x, w, ExponentSeq::constant(p));
    const Bracket s = eval.at_scale(1.0);
    const long double inv = 1.0L / static_cast<long double>(p);
    const Bracket b = Bracket::outward(std::pow(static_cast<long double>(s.lo), inv),
                                      std::pow(static_cast<long double>(s.hi), inv), detail::kRoundingSlack);
    require_attained(b, target_width);
    return b;
}

double supnorm(const FiniteSequence& x, const LambdaWeights& w) {
    double best = 0.0;
    long double partial = 0.0L;
    for (const auto& [k, v] : x.entries()) {
        partial += w.delta_ld(k) * std::fabs(static_cast<long double>(v));
        best = std::max(best, static_cast<double>(partial) / w.lambda_at(k));
    }
    return best;
}

LuxemburgResult luxemburg_detail(const FiniteSequence& x, const LambdaWeights& w, const ExponentSeq& p, double tol) {
    require_positive_width(tol, "Luxemburg tolerance");
    if (x.is_zero()) return {Bracket::exact(0.0), 0.0, 0};
    const ModularEvaluator eval(x, w, p);
    return detail::luxemburg_bisect([&](double r) { return eval.at_scale(r); }, eval.initial_scale(), tol);
}

Bracket luxemburg(const FiniteSequence& x, const LambdaWeights& w, const ExponentSeq& p, double tol) {
    return luxemburg_detail(x, w, p, tol).norm;
}

} // namespace lseq
