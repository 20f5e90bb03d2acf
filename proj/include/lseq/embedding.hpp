#ifndef LSEQ_EMBEDDING_HPP
#define LSEQ_EMBEDDING_HPP

#include <cstddef>
#include <vector>

#include "lseq/bracket.hpp"
#include "lseq/norms.hpp"
#include "lseq/sequence.hpp"
#include "lseq/weights.hpp"

namespace lseq {

/// Finite prefix b_0..b_N of a Nakano block sequence; block n lives in ℝ^{n+1}
/// with the ℓ1 norm.
class BlockVector {
public:
    BlockVector() = default;
    explicit BlockVector(std::vector<std::vector<double>> blocks);

    std::size_t count() const noexcept { return blocks_.size(); }
    const std::vector<double>& block(std::size_t n) const { return blocks_.at(n); }
    long double block_norm(std::size_t n) const;

    BlockVector scaled(double c) const;
    friend BlockVector operator+(const BlockVector& a, const BlockVector& b);

private:
    std::vector<std::vector<double>> blocks_;
};

/// Modular contribution of the blocks after the stored prefix, at unit scale.
/// At scale r it becomes r^{-exponent} · modular.
struct BlockTail {
    Bracket modular = Bracket::exact(0.0);
    double exponent = 2.0;
};

/// Block n = (δ_0 x_0, δ_1 x_1, ..., δ_n x_n) / λ_n for n = 0..N.
BlockVector embed(const FiniteSequence& x, const LambdaWeights& w, std::size_t N);

/// Tail of the embedded sequence beyond block N: blocks n > N all have ℓ1 norm
/// S/λ_n, so the tail is S^{p} Σ_{n>N} λ_n^{-p}. Needs N >= max_support and
/// N + 1 >= the exponent prefix length.
BlockTail embedding_tail(const FiniteSequence& x, const LambdaWeights& w, const ExponentSeq& p, std::size_t N);

/// Luxemburg norm of the block sequence for ρ(b) = Σ_n ‖b_n‖_1^{p_n}.
Bracket nakano_luxemburg(const BlockVector& b, const ExponentSeq& p, const BlockTail& tail,
                         double tol = kDefaultLuxemburgTol);

struct IsometryReport {
    Bracket embedded;          // Nakano norm of the embedded blocks
    Bracket direct;            // Luxemburg norm in the sequence space
    double residual = 0.0;     // largest distance between the two brackets
    std::size_t blocks = 0;    // materialized block count
};

/// Compares ‖embed(x)‖ in the Nakano space with ‖x‖_p̂. The block count is raised
/// to cover the support of x and the exponent prefix when N is smaller.
IsometryReport isometry_check(const FiniteSequence& x, const LambdaWeights& w, const ExponentSeq& p, std::size_t N,
                              double tol = kDefaultLuxemburgTol);

double isometry_residual(const FiniteSequence& x, const LambdaWeights& w, const ExponentSeq& p, std::size_t N,
                         double tol = kDefaultLuxemburgTol);

} // namespace lseq

#endif
