#ifndef LSEQ_CONSTANTS_HPP
#define LSEQ_CONSTANTS_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string_view>
#include <vector>

#include "lseq/bracket.hpp"
#include "lseq/sequence.hpp"
#include "lseq/weights.hpp"

namespace lseq {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class EstimateMethod { ClosedForm, GridRefine, SequenceLimit };

std::string_view to_string(EstimateMethod m) noexcept;

/// A geometric constant. For grid_refine estimates `value` (= certify.lo) is a
/// lower bound of the supremum; certify.hi adds the observed refinement gain.
struct ConstantEstimate {
    double value = 0.0;
    Bracket certify;
    EstimateMethod method = EstimateMethod::ClosedForm;
    std::size_t evaluations = 0;
    std::uint64_t seed = 0;
    bool out_of_hypothesis = false;
    double refinement_gap = 0.0;
    /// Maximizer: (u1, v1, u2, v2) for pair searches, (t) for the ψ route.
    std::vector<double> argmax;
};

struct OptimizerConfig {
    std::size_t grid = 512;     // grid intervals per parameter
    std::size_t refine = 64;    // local refinement rounds
    std::uint64_t seed = 0;     // drives the extra random restarts
    std::size_t restarts = 4;
};

struct TwoDimPoint {
    double u = 0.0;
    double v = 0.0;
};

/// ‖(u,v)‖_p = (|u|^p + ((λ0|u| + (λ1-λ0)|v|)/λ1)^p)^{1/p}; p = kInfinity gives the max form.
double norm2d(TwoDimPoint pt, double lambda0, double lambda1, double p);

/// Point (u, v) with u = t·u_max, v >= 0 and ‖(u,v)‖_p = 1; v is found by bisection.
TwoDimPoint unit_sphere_point(double t, double lambda0, double lambda1, double p);

double james2_objective(TwoDimPoint x, TwoDimPoint y, double lambda0, double lambda1, double p);
double cnj2_objective(TwoDimPoint x, TwoDimPoint y, double lambda0, double lambda1, double p);

/// 1 + λ0/√(λ0² + λ1²).
ConstantEstimate cnj2_exact(double lambda0, double lambda1);
/// √(2 + 2λ0/√(λ0² + λ1²)).
ConstantEstimate james2_exact(double lambda0, double lambda1);

ConstantEstimate cnj2_numeric(double lambda0, double lambda1, double p, const OptimizerConfig& cfg = {});
ConstantEstimate james2_numeric(double lambda0, double lambda1, double p, const OptimizerConfig& cfg = {});

double psi(double t, double lambda0, double lambda1, double p);
double psi2(double t);

/// (sup_t ψ(t)/ψ2(t))². Flagged out_of_hypothesis for p > 2.
ConstantEstimate cnj_from_psi(double lambda0, double lambda1, double p, const OptimizerConfig& cfg = {});

struct ConstructionBound {
    double lower_bound = 0.0;   // analytic bound from the tail-sum ratio
    Bracket direct;             // the norm of the constructed vector, computed directly
};

/// x = e_m/‖e_m‖_p, y = e_{m+1}/‖e_{m+1}‖_p; bound on min(‖x+y‖, ‖x-y‖).
ConstructionBound james_pair_construction(const LambdaWeights& w, double p, std::size_t m);

/// Σ_{j<n} e_{m+j}/‖e_{m+j}‖_p.
ConstructionBound jns_construction(const LambdaWeights& w, double p, std::size_t n, std::size_t m);

struct SupConstruction {
    double value = 0.0;                    // closed form
    double supnorm_sum = 0.0;              // ‖Σ x_j‖_∞
    double supnorm_alternating = 0.0;      // ‖Σ (-1)^j x_j‖_∞
    std::vector<double> unit_supnorms;     // ‖x_j‖_∞, each 1
    std::vector<FiniteSequence> vectors;
};

/// x = (λ_m/δ_m) e_m, y = (λ_{m+1}/δ_{m+1}) e_{m+1}; ‖x ± y‖_∞ = 1 + λ_m/λ_{m+1}.
SupConstruction james_inf_pair(const LambdaWeights& w, std::size_t m);

/// x_j = (λ_{m+j}/δ_{m+j}) e_{m+j}; ‖Σ x_j‖_∞ = 1 + Σ_{i<n-1} λ_{m+i}/λ_{m+n-1}.
SupConstruction jns_inf(const LambdaWeights& w, std::size_t n, std::size_t m);

} // namespace lseq

#endif
