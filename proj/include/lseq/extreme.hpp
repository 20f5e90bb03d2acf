#ifndef LSEQ_EXTREME_HPP
#define LSEQ_EXTREME_HPP

#include <cstddef>
#include <functional>
#include <string_view>

#include "lseq/bracket.hpp"
#include "lseq/norms.hpp"
#include "lseq/sequence.hpp"
#include "lseq/weights.hpp"

namespace lseq {

inline constexpr double kDefaultModularBand = 1e-8;

enum class Verdict { Extreme, NotExtremeModular, NotExtremeAffine, Indeterminate };

std::string_view to_string(Verdict v) noexcept;

struct ExtremeVerdict {
    bool on_sphere_modular = false;   // σ(x) certified inside [1 - band, 1 + band]
    std::size_t affine_card = 0;      // Card(A_x)
    Verdict verdict = Verdict::Indeterminate;
    Bracket modular;
    Bracket norm;
};

/// Extreme-point test for x on the unit sphere: σ(x) = 1 and Card(A_x) <= 1.
/// Throws NOT_ON_SPHERE when ‖x‖ is certified to differ from 1 by more than `tol`.
ExtremeVerdict extreme_check(const FiniteSequence& x, const LambdaWeights& w, const ExponentSeq& p,
                             double tol = 1e-8, double band = kDefaultModularBand);

/// True when t is interior to an interval on which |t|^exponent is affine.
bool in_affine_interior(double t, double exponent) noexcept;

/// Card(A_x): support points n whose run Λx(n), ..., Λx(m-1) up to the next
/// support point m stays nonzero and inside affine pieces of |t|^{p_j}. The last
/// support point has no successor and is never counted.
std::size_t affine_interval_card(const FiniteSequence& x, const LambdaWeights& w, const ExponentSeq& p);
std::size_t affine_interval_card(const FiniteSequence& x, const LambdaWeights& w,
                                 const std::function<double(std::size_t)>& exponent_at);

enum class WitnessMethod { TailCutoff, DyadicSplit };

std::string_view to_string(WitnessMethod m) noexcept;

struct Witness {
    FiniteSequence y;
    FiniteSequence z;
    WitnessMethod method = WitnessMethod::TailCutoff;
    std::size_t cutoff = 0;          // y and z agree with x on indices <= cutoff
    double budget = 0.0;             // 1 - σ(x).hi
    double cutoff_tail_bound = 0.0;  // 2^{p_sup} Σ_{n>cutoff} Λx(n)^{p_n} (upper end)
    double split = 0.0;              // DyadicSplit: |z_k - x_k| / |x_k|
    Bracket sigma_y;
    Bracket sigma_z;
};

/// Exhibits y != z with 2x = y + z (exactly) and σ(y), σ(z) < 1 for x with
/// σ(x) < 1 - band. Tries tail cutoffs y = x|_{<=n0}, z = 2x - y from the largest
/// n0 down; when every cutoff overshoots the budget, splits a single entry
/// x_k into x_k ∓ h with h a power of two.
Witness non_extreme_witness(const FiniteSequence& x, const LambdaWeights& w, const ExponentSeq& p,
                            double band = kDefaultModularBand);

struct UkkDelta {
    double eta = 0.0;
    double delta = 0.0;
};

/// η = (ε/4)^{p_sup}, δ = 1 - (1 - η)^{1/p_sup}.
UkkDelta ukk_delta(double eps, double p_sup);

/// (u + v)^p >= u^p + v^p up to rounding slack.
bool superadditivity_check(double u, double v, double p);

} // namespace lseq

#endif
