#include "lseq/extreme.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "lseq/error.hpp"

namespace lseq {

namespace {

// True when a + b is exactly representable.
bool exact_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return (a - (s - bb)) + (b - bb) == 0.0;
}

} // namespace

std::string_view to_string(Verdict v) noexcept {
    switch (v) {
    case Verdict::Extreme: return "extreme";
    case Verdict::NotExtremeModular: return "not_extreme_modular";
    case Verdict::NotExtremeAffine: return "not_extreme_affine";
    case Verdict::Indeterminate: return "indeterminate";
    }
    return "unknown";
}

std::string_view to_string(WitnessMethod m) noexcept {
    switch (m) {
    case WitnessMethod::TailCutoff: return "tail_cutoff";
    case WitnessMethod::DyadicSplit: return "dyadic_split";
    }
    return "unknown";
}

bool in_affine_interior(double t, double exponent) noexcept {
    // |t|^q is strictly convex for q > 1; for q = 1 it is affine on each half-line.
    if (exponent == 1.0) return t != 0.0;
    return false;
}

std::size_t affine_interval_card(const FiniteSequence& x, const LambdaWeights& w,
                                 const std::function<double(std::size_t)>& exponent_at) {
    const auto support = x.support();
    std::size_t card = 0;
    for (std::size_t i = 0; i + 1 < support.size(); ++i) {
        bool inside = true;
        for (std::size_t j = support[i]; j < support[i + 1] && inside; ++j) {
            const double t = lambda_transform(x, w, j);
            inside = t != 0.0 && in_affine_interior(t, exponent_at(j));
        }
        if (inside) ++card;
    }
    return card;
}

std::size_t affine_interval_card(const FiniteSequence& x, const LambdaWeights& w, const ExponentSeq& p) {
    return affine_interval_card(x, w, [&](std::size_t j) { return p.at(j); });
}

ExtremeVerdict extreme_check(const FiniteSequence& x, const LambdaWeights& w, const ExponentSeq& p, double tol,
                             double band) {
    if (!(tol > 0.0) || !(band > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerances must be positive");
    ExtremeVerdict out;
    out.norm = luxemburg(x, w, p, std::min(tol, kDefaultLuxemburgTol));
    if (out.norm.hi < 1.0 - tol || out.norm.lo > 1.0 + tol)
        throw Error(ErrorCode::NotOnSphere, "norm bracket [" + std::to_string(out.norm.lo) + ", " +
                                                std::to_string(out.norm.hi) + "] is not within tolerance of 1");

    out.modular = modular(x, w, p).bracket;
    out.on_sphere_modular = out.modular.lo >= 1.0 - band && out.modular.hi <= 1.0 + band;
    const bool off_sphere = out.modular.hi < 1.0 - band || out.modular.lo > 1.0 + band;
    out.affine_card = affine_interval_card(x, w, p);

    if (off_sphere)
        out.verdict = Verdict::NotExtremeModular;
    else if (out.on_sphere_modular)
        out.verdict = out.affine_card <= 1 ? Verdict::Extreme : Verdict::NotExtremeAffine;
    else
        out.verdict = Verdict::Indeterminate;
    return out;
}

Witness non_extreme_witness(const FiniteSequence& x, const LambdaWeights& w, const ExponentSeq& p, double band) {
    const auto support = x.support();
    if (support.size() < 2)
        throw Error(ErrorCode::WitnessUnavailable, "witness construction needs at least two support points");
    const Bracket sx = modular(x, w, p).bracket;
    if (!(sx.hi < 1.0 - band))
        throw Error(ErrorCode::WitnessUnavailable, "sigma(x) is not certified below 1 - band");

    Witness out;
    out.budget = 1.0 - sx.hi;
    const double amplification = std::pow(2.0, p.sup());

    // Σ_{n<=n0} Λx(n)^{p_n}, accumulated as the cutoff moves right.
    std::vector<long double> head(support.back(), 0.0L);
    long double acc = 0.0L;
    for (std::size_t n = 0; n < support.back(); ++n) {
        acc += std::pow(static_cast<long double>(lambda_transform(x, w, n)), static_cast<long double>(p.at(n)));
        head[n] = acc;
    }

    for (std::size_t i = support.size() - 1; i >= 1; --i) {
        const std::size_t n0 = support[i] - 1;
        FiniteSequence y;
        FiniteSequence z;
        for (const auto& [k, v] : x.entries()) {
            if (k <= n0) {
                y.set(k, v);
                z.set(k, v);
            } else {
                z.set(k, 2.0 * v);
            }
        }
        const Bracket sz = modular(z, w, p).bracket;
        if (sz.hi < 1.0) {
            out.y = std::move(y);
            out.z = std::move(z);
            out.method = WitnessMethod::TailCutoff;
            out.cutoff = n0;
            out.cutoff_tail_bound = amplification * static_cast<double>(static_cast<long double>(sx.hi) - head[n0]);
            out.sigma_y = modular(out.y, w, p).bracket;
            out.sigma_z = sz;
            return out;
        }
    }

    // Every cutoff overshoots: move a single coordinate by a dyadic amount h,
    // y_k = x_k - sgn(x_k) h and z_k = x_k + sgn(x_k) h, both exact in binary.
    for (auto it = support.rbegin(); it != support.rend(); ++it) {
        const std::size_t k = *it;
        const double xk = x.at(k);
        const double mag = std::fabs(xk);
        const double sgn = xk < 0.0 ? -1.0 : 1.0;
        const int e = std::ilogb(mag);
        for (int j = 1; j <= 60; ++j) {
            const double h = std::ldexp(1.0, e - j);
            if (h == 0.0 || !exact_sum(mag, h) || !exact_sum(mag, -h)) continue;
            FiniteSequence y = x;
            FiniteSequence z = x;
            y.set(k, sgn * (mag - h));
            z.set(k, sgn * (mag + h));
            const Bracket sz = modular(z, w, p).bracket;
            if (!(sz.hi < 1.0)) continue;
            out.y = std::move(y);
            out.z = std::move(z);
            out.method = WitnessMethod::DyadicSplit;
            out.cutoff = k == 0 ? 0 : k - 1;
            out.split = h / mag;
            out.sigma_y = modular(out.y, w, p).bracket;
            out.sigma_z = sz;
            return out;
        }
    }
    throw Error(ErrorCode::WitnessUnavailable,
                "no cutoff or dyadic split keeps sigma(z) below 1 (budget " + std::to_string(out.budget) + ")");
}

UkkDelta ukk_delta(double eps, double p_sup) {
    if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorCode::Domain, "epsilon must lie in (0, 1)");
    if (!std::isfinite(p_sup) || !(p_sup > 1.0)) throw Error(ErrorCode::Domain, "p_sup must be finite and > 1");
    UkkDelta out;
    out.eta = std::pow(eps / 4.0, p_sup);
    out.delta = -std::expm1(std::log1p(-out.eta) / p_sup);
    return out;
}

bool superadditivity_check(double u, double v, double p) {
    if (!(u >= 0.0) || !(v >= 0.0) || !(p >= 1.0) || !std::isfinite(p))
        throw Error(ErrorCode::Domain, "superadditivity needs u, v >= 0 and finite p >= 1");
    const long double lhs = std::pow(static_cast<long double>(u) + v, static_cast<long double>(p));
    const long double rhs = std::pow(static_cast<long double>(u), static_cast<long double>(p)) +
                            std::pow(static_cast<long double>(v), static_cast<long double>(p));
    return lhs >= rhs - 8.0L * std::numeric_limits<double>::epsilon() * lhs;
}

} // namespace lseq
