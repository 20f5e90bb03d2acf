#include "lseq/constants.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "lseq/error.hpp"
#include "lseq/norms.hpp"

namespace lseq {

namespace {

void validate_weights(double lambda0, double lambda1) {
    if (!std::isfinite(lambda0) || !std::isfinite(lambda1) || !(lambda0 > 0.0) || !(lambda1 > lambda0))
        throw Error(ErrorCode::InvalidWeights, "two-dimensional weights need 0 < lambda0 < lambda1");
}

void validate_exponent(double p) {
    if (!(p >= 1.0) || std::isnan(p)) throw Error(ErrorCode::Domain, "exponent must satisfy p >= 1 (or inf)");
}

// (a^p + b^p)^{1/p} for a, b >= 0 without overflow.
double lp_pair(double a, double b, double p) {
    if (std::isinf(p)) return std::max(a, b);
    if (p == 2.0) return std::hypot(a, b);
    const double m = std::max(a, b);
    if (m == 0.0) return 0.0;
    return m * std::pow(std::pow(a / m, p) + std::pow(b / m, p), 1.0 / p);
}

struct Candidate {
    double t1 = 0.0;
    double t2 = 0.0;
    double sign = 1.0;
    double value = -kInfinity;
};

constexpr double kInvPhi = 0.6180339887498948482;

// Maximizes f on [a, b] by golden-section; returns the best abscissa seen.
std::pair<double, double> golden_max(const std::function<double(double)>& f, double a, double b, int iters,
                                     std::size_t& evals) {
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = f(c);
    double fd = f(d);
    evals += 2;
    std::pair<double, double> best = fc >= fd ? std::pair{c, fc} : std::pair{d, fd};
    for (int i = 0; i < iters; ++i) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = f(c);
            if (fc > best.second) best = {c, fc};
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = f(d);
            if (fd > best.second) best = {d, fd};
        }
        ++evals;
    }
    return best;
}

// Coordinate-wise golden-section polish of a pair-search candidate inside a
// shrinking box. Only improvements are accepted.
Candidate refine_pair(const std::function<double(double, double, double)>& objective, Candidate start,
                      double radius, std::size_t rounds, std::size_t& evals) {
    Candidate cur = start;
    for (std::size_t r = 0; r < rounds; ++r) {
        for (int coord = 0; coord < 2; ++coord) {
            const double c = coord == 0 ? cur.t1 : cur.t2;
            const double a = std::max(0.0, c - radius);
            const double b = std::min(1.0, c + radius);
            if (!(b > a)) continue;
            auto f = [&](double t) {
                return coord == 0 ? objective(t, cur.t2, cur.sign) : objective(cur.t1, t, cur.sign);
            };
            const auto [t, val] = golden_max(f, a, b, 24, evals);
            if (val > cur.value) {
                (coord == 0 ? cur.t1 : cur.t2) = t;
                cur.value = val;
            }
        }
        radius *= 0.75;
    }
    return cur;
}

using PairObjective = double (*)(TwoDimPoint, TwoDimPoint, double, double, double);

ConstantEstimate pair_search(PairObjective objective, double lambda0, double lambda1, double p,
                             const OptimizerConfig& cfg) {
    validate_weights(lambda0, lambda1);
    validate_exponent(p);
    if (cfg.grid < 1) throw Error(ErrorCode::InvalidArgument, "grid must be at least 1");

    const std::size_t g = cfg.grid;
    std::vector<TwoDimPoint> sphere(g + 1);
    for (std::size_t i = 0; i <= g; ++i)
        sphere[i] = unit_sphere_point(static_cast<double>(i) / static_cast<double>(g), lambda0, lambda1, p);

    // The norm depends on |u|, |v| only, so x may be taken in the closed first
    // quadrant and y up to a global sign; sign = -1 flips y's second coordinate.
    ConstantEstimate est;
    est.method = EstimateMethod::GridRefine;
    est.seed = cfg.seed;
    Candidate best;
    for (std::size_t i = 0; i <= g; ++i) {
        for (std::size_t j = 0; j <= g; ++j) {
            for (double sign : {1.0, -1.0}) {
                const TwoDimPoint y{sphere[j].u, sign * sphere[j].v};
                const double val = objective(sphere[i], y, lambda0, lambda1, p);
                ++est.evaluations;
                if (val > best.value) {
                    best = {static_cast<double>(i) / static_cast<double>(g),
                            static_cast<double>(j) / static_cast<double>(g), sign, val};
                }
            }
        }
    }
    const double grid_best = best.value;

    auto eval = [&](double t1, double t2, double sign) {
        const TwoDimPoint x = unit_sphere_point(t1, lambda0, lambda1, p);
        TwoDimPoint y = unit_sphere_point(t2, lambda0, lambda1, p);
        y.v *= sign;
        return objective(x, y, lambda0, lambda1, p);
    };

    Candidate refined = refine_pair(eval, best, 1.0 / static_cast<double>(g), cfg.refine, est.evaluations);

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t k = 0; k < cfg.restarts; ++k) {
        Candidate c;
        c.t1 = unit(rng);
        c.t2 = unit(rng);
        c.sign = unit(rng) < 0.5 ? 1.0 : -1.0;
        c.value = eval(c.t1, c.t2, c.sign);
        ++est.evaluations;
        c = refine_pair(eval, c, 0.25, cfg.refine, est.evaluations);
        if (c.value > refined.value) refined = c;
    }

    const TwoDimPoint x = unit_sphere_point(refined.t1, lambda0, lambda1, p);
    TwoDimPoint y = unit_sphere_point(refined.t2, lambda0, lambda1, p);
    y.v *= refined.sign;
    est.value = refined.value;
    est.refinement_gap = refined.value - grid_best;
    est.certify = {refined.value, refined.value + est.refinement_gap};
    est.argmax = {x.u, x.v, y.u, y.v};
    return est;
}

ConstantEstimate closed_form(double value) {
    ConstantEstimate est;
    est.value = value;
    est.certify = Bracket::exact(value);
    est.method = EstimateMethod::ClosedForm;
    return est;
}

} // namespace

std::string_view to_string(EstimateMethod m) noexcept {
    switch (m) {
    case EstimateMethod::ClosedForm: return "closed_form";
    case EstimateMethod::GridRefine: return "grid_refine";
    case EstimateMethod::SequenceLimit: return "sequence_limit";
    }
    return "unknown";
}

double norm2d(TwoDimPoint pt, double lambda0, double lambda1, double p) {
    validate_weights(lambda0, lambda1);
    validate_exponent(p);
    const double a = std::fabs(pt.u);
    const double b = (lambda0 * a + (lambda1 - lambda0) * std::fabs(pt.v)) / lambda1;
    return lp_pair(a, b, p);
}

TwoDimPoint unit_sphere_point(double t, double lambda0, double lambda1, double p) {
    validate_weights(lambda0, lambda1);
    if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorCode::Domain, "sphere parameter must lie in [0, 1]");
    const double u_max = 1.0 / lp_pair(1.0, lambda0 / lambda1, p);
    const double u = t * u_max;
    double lo = 0.0;
    double hi = lambda1 / (lambda1 - lambda0);
    for (int i = 0; i < 200; ++i) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) break;
        if (norm2d({u, mid}, lambda0, lambda1, p) < 1.0)
            lo = mid;
        else
            hi = mid;
    }
    const double e_lo = std::fabs(norm2d({u, lo}, lambda0, lambda1, p) - 1.0);
    const double e_hi = std::fabs(norm2d({u, hi}, lambda0, lambda1, p) - 1.0);
    return {u, e_lo <= e_hi ? lo : hi};
}

double james2_objective(TwoDimPoint x, TwoDimPoint y, double lambda0, double lambda1, double p) {
    const double plus = norm2d({x.u + y.u, x.v + y.v}, lambda0, lambda1, p);
    const double minus = norm2d({x.u - y.u, x.v - y.v}, lambda0, lambda1, p);
    return std::min(plus, minus);
}

double cnj2_objective(TwoDimPoint x, TwoDimPoint y, double lambda0, double lambda1, double p) {
    const double nx = norm2d(x, lambda0, lambda1, p);
    const double ny = norm2d(y, lambda0, lambda1, p);
    const double denom = 2.0 * (nx * nx + ny * ny);
    if (denom == 0.0) throw Error(ErrorCode::Domain, "C_NJ ratio undefined for x = y = 0");
    const double plus = norm2d({x.u + y.u, x.v + y.v}, lambda0, lambda1, p);
    const double minus = norm2d({x.u - y.u, x.v - y.v}, lambda0, lambda1, p);
    return (plus * plus + minus * minus) / denom;
}

ConstantEstimate cnj2_exact(double lambda0, double lambda1) {
    validate_weights(lambda0, lambda1);
    return closed_form(1.0 + lambda0 / std::hypot(lambda0, lambda1));
}

ConstantEstimate james2_exact(double lambda0, double lambda1) {
    validate_weights(lambda0, lambda1);
    return closed_form(std::sqrt(2.0 + 2.0 * lambda0 / std::hypot(lambda0, lambda1)));
}

ConstantEstimate cnj2_numeric(double lambda0, double lambda1, double p, const OptimizerConfig& cfg) {
    return pair_search(&cnj2_objective, lambda0, lambda1, p, cfg);
}

ConstantEstimate james2_numeric(double lambda0, double lambda1, double p, const OptimizerConfig& cfg) {
    return pair_search(&james2_objective, lambda0, lambda1, p, cfg);
}

double psi(double t, double lambda0, double lambda1, double p) {
    validate_weights(lambda0, lambda1);
    if (!std::isfinite(p) || !(p > 1.0)) throw Error(ErrorCode::Domain, "psi needs finite p > 1");
    if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorCode::Domain, "psi is defined on [0, 1]");
    // a = λ1/(λ0^p+λ1^p)^{1/p}, b = λ0/(λ0^p+λ1^p)^{1/p}, so a^p + b^p = 1.
    const double root = lambda1 * lp_pair(1.0, lambda0 / lambda1, p);
    const double a = lambda1 / root;
    const double b = lambda0 / root;
    return lp_pair(a * (1.0 - t), b * (1.0 - t) + t, p);
}

double psi2(double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorCode::Domain, "psi2 is defined on [0, 1]");
    return std::hypot(1.0 - t, t);
}

ConstantEstimate cnj_from_psi(double lambda0, double lambda1, double p, const OptimizerConfig& cfg) {
    validate_weights(lambda0, lambda1);
    if (!std::isfinite(p) || !(p > 1.0)) throw Error(ErrorCode::Domain, "psi route needs finite p > 1");
    if (cfg.grid < 1) throw Error(ErrorCode::InvalidArgument, "grid must be at least 1");

    ConstantEstimate est;
    est.method = EstimateMethod::GridRefine;
    est.seed = cfg.seed;
    est.out_of_hypothesis = p > 2.0;

    auto ratio = [&](double t) { return psi(t, lambda0, lambda1, p) / psi2(t); };
    const std::size_t g = cfg.grid;
    double best_t = 0.0;
    double best = -kInfinity;
    for (std::size_t i = 0; i <= g; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(g);
        const double r = ratio(t);
        ++est.evaluations;
        if (r > best) {
            best = r;
            best_t = t;
        }
    }
    const double grid_best = best;
    double radius = 1.0 / static_cast<double>(g);
    for (std::size_t round = 0; round < cfg.refine; ++round) {
        const double a = std::max(0.0, best_t - radius);
        const double b = std::min(1.0, best_t + radius);
        const auto [t, r] = golden_max(ratio, a, b, 24, est.evaluations);
        if (r > best) {
            best = r;
            best_t = t;
        }
        radius *= 0.75;
    }
    est.value = best * best;
    est.refinement_gap = est.value - grid_best * grid_best;
    est.certify = {est.value, est.value + est.refinement_gap};
    est.argmax = {best_t};
    return est;
}

namespace {

void validate_finite_p(double p) {
    if (!std::isfinite(p) || !(p > 1.0))
        throw Error(ErrorCode::InvalidArgument, "construction needs finite p > 1 (use the sup-norm variant for p = inf)");
}

// ‖e_k‖_p = δ_k (Σ_{n>=k} λ_n^{-p})^{1/p}
Bracket unit_vector_norm(const LambdaWeights& w, double p, std::size_t k) {
    const Bracket tail = tail_sum_bracket(w, k, p);
    const long double d = w.delta_ld(k);
    const long double inv = 1.0L / static_cast<long double>(p);
    return Bracket::outward(d * std::pow(static_cast<long double>(tail.lo), inv),
                            d * std::pow(static_cast<long double>(tail.hi), inv), detail::kRoundingSlack);
}

} // namespace

ConstructionBound jns_construction(const LambdaWeights& w, double p, std::size_t n, std::size_t m) {
    validate_finite_p(p);
    if (n < 2) throw Error(ErrorCode::InvalidArgument, "jns construction needs n >= 2");
    const std::size_t last = m + n - 1;

    std::vector<Bracket> norms;
    FiniteSequence sum;
    for (std::size_t j = 0; j < n; ++j) {
        norms.push_back(unit_vector_norm(w, p, m + j));
        sum.set(m + j, 1.0 / norms.back().mid());
    }
    ConstructionBound out;
    // Conservative ends of the norm brackets keep this a lower bound.
    const double delta_ratio = static_cast<double>(w.delta_ld(m) / w.delta_ld(last));
    out.lower_bound = static_cast<double>(n) * delta_ratio * (norms.back().lo / norms.front().hi);
    out.direct = pnorm(sum, w, p);
    return out;
}

ConstructionBound james_pair_construction(const LambdaWeights& w, double p, std::size_t m) {
    validate_finite_p(p);
    const Bracket nx = unit_vector_norm(w, p, m);
    const Bracket ny = unit_vector_norm(w, p, m + 1);
    const FiniteSequence x = FiniteSequence::basis(m, 1.0 / nx.mid());
    const FiniteSequence y = FiniteSequence::basis(m + 1, 1.0 / ny.mid());

    ConstructionBound out;
    const double delta_ratio = static_cast<double>(w.delta_ld(m) / w.delta_ld(m + 1));
    out.lower_bound = 1.0 + delta_ratio * (ny.lo / nx.hi);
    const Bracket plus = pnorm(x + y, w, p);
    const Bracket minus = pnorm(x - y, w, p);
    out.direct = {std::min(plus.lo, minus.lo), std::min(plus.hi, minus.hi)};
    return out;
}

SupConstruction jns_inf(const LambdaWeights& w, std::size_t n, std::size_t m) {
    if (n < 2) throw Error(ErrorCode::InvalidArgument, "jns construction needs n >= 2");
    SupConstruction out;
    FiniteSequence sum;
    FiniteSequence alternating;
    double numerator = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t k = m + j;
        const double lambda = w.lambda_at(k);
        const double coeff = static_cast<double>(w.lambda_ld(k) / w.delta_ld(k));
        const FiniteSequence xj = FiniteSequence::basis(k, coeff);
        out.unit_supnorms.push_back(supnorm(xj, w));
        out.vectors.push_back(xj);
        sum = sum + xj;
        alternating = alternating + xj.scaled(j % 2 == 0 ? 1.0 : -1.0);
        numerator += lambda;
    }
    // (λ_m + ... + λ_{m+n-1}) / λ_{m+n-1}: one rounding for integer-valued weights.
    out.value = numerator / w.lambda_at(m + n - 1);
    out.supnorm_sum = supnorm(sum, w);
    out.supnorm_alternating = supnorm(alternating, w);
    return out;
}

SupConstruction james_inf_pair(const LambdaWeights& w, std::size_t m) {
    return jns_inf(w, 2, m);
}

} // namespace lseq
