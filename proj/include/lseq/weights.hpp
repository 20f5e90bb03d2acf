#ifndef LSEQ_WEIGHTS_HPP
#define LSEQ_WEIGHTS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lseq/sequence.hpp"

namespace lseq {

enum class WeightFamily { Cesaro, Power, Riesz, Custom };

std::string_view to_string(WeightFamily f) noexcept;

/// Closed-form law followed by λ_n for every n >= `from`.
///   Affine: λ_n = a + b·n        Power: λ_n = a·(n+1)^b
struct GrowthLaw {
    enum class Kind { Affine, Power };
    Kind kind = Kind::Affine;
    long double a = 1.0L;
    long double b = 1.0L;
    std::size_t from = 0;

    long double value(std::size_t n) const noexcept;
};

/// A strictly increasing positive weight family λ_0 < λ_1 < ... with
/// increments δ_n = λ_n - λ_{n-1} (λ_{-1} = 0, so δ_0 = λ_0).
///
/// Instances are immutable; every accessor is safe to call concurrently.
class LambdaWeights {
public:
    /// λ_n = n + 1.
    static LambdaWeights cesaro();
    /// λ_n = (n + 1)^alpha, alpha > 0.
    static LambdaWeights power(double alpha);
    /// λ_n = q_0 + ... + q_n; beyond the given list q_k repeats its last entry.
    static LambdaWeights riesz(std::vector<double> q);
    /// Explicit λ_0..λ_{N-1}. With a tail law, λ_n = tail_c·(n+1)^tail_alpha for n >= N;
    /// without one, indices >= N are out of range and no tail bound exists.
    static LambdaWeights custom(std::vector<double> values,
                                std::optional<double> tail_c = std::nullopt,
                                std::optional<double> tail_alpha = std::nullopt);

    WeightFamily family() const noexcept { return family_; }
    double alpha() const noexcept { return alpha_; }

    double lambda_at(std::size_t n) const { return static_cast<double>(lambda_ld(n)); }
    double delta_at(std::size_t n) const { return static_cast<double>(delta_ld(n)); }
    long double lambda_ld(std::size_t n) const;
    long double delta_ld(std::size_t n) const;

    /// Law valid on a tail of indices, if one is known.
    const std::optional<GrowthLaw>& tail_law() const noexcept { return law_; }

    /// Non-fatal diagnostics, e.g. an unverifiable λ_{n+1}/λ_n → 1 condition.
    const std::vector<std::string>& warnings() const noexcept { return warnings_; }

    /// Key-value form accepted by parse_weights.
    std::string describe() const;

private:
    LambdaWeights() = default;

    WeightFamily family_ = WeightFamily::Cesaro;
    double alpha_ = 1.0;
    std::vector<long double> values_;  // riesz: partial sums; custom: given values
    std::vector<long double> increments_;  // riesz only
    std::optional<GrowthLaw> law_;
    std::vector<std::string> warnings_;
};

/// Builds weights from "family=cesaro", "family=power alpha=1.5",
/// "family=riesz q=[1,2,3]" or "family=custom values=[1,3,4] tail_c=1 tail_alpha=1".
LambdaWeights parse_weights(std::string_view config);

/// Λx(n) = (1/λ_n) Σ_{k<=n} δ_k |x_k|.
double lambda_transform(const FiniteSequence& x, const LambdaWeights& w, std::size_t n);

/// S = Σ_k δ_k |x_k|, the numerator of Λx(n) for every n >= max_support.
long double weighted_mass(const FiniteSequence& x, const LambdaWeights& w);

} // namespace lseq

#endif
