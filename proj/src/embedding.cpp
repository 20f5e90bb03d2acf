#include "lseq/embedding.hpp"

#include <algorithm>
#include <cmath>

#include "lseq/error.hpp"

namespace lseq {

BlockVector::BlockVector(std::vector<std::vector<double>> blocks) : blocks_(std::move(blocks)) {
    for (std::size_t n = 0; n < blocks_.size(); ++n) {
        if (blocks_[n].size() != n + 1)
            throw Error(ErrorCode::InvalidArgument, "block " + std::to_string(n) + " must have " +
                                                        std::to_string(n + 1) + " entries");
        for (double v : blocks_[n])
            if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "block entries must be finite");
    }
}

long double BlockVector::block_norm(std::size_t n) const {
    long double s = 0.0L;
    for (double v : blocks_.at(n)) s += std::fabs(static_cast<long double>(v));
    return s;
}

BlockVector BlockVector::scaled(double c) const {
    BlockVector out = *this;
    for (auto& b : out.blocks_)
        for (auto& v : b) v *= c;
    return out;
}

BlockVector operator+(const BlockVector& a, const BlockVector& b) {
    if (a.count() != b.count()) throw Error(ErrorCode::InvalidArgument, "block counts differ");
    BlockVector out = a;
    for (std::size_t n = 0; n < out.blocks_.size(); ++n)
        for (std::size_t k = 0; k <= n; ++k) out.blocks_[n][k] += b.blocks_[n][k];
    return out;
}

BlockVector embed(const FiniteSequence& x, const LambdaWeights& w, std::size_t N) {
    std::vector<long double> weighted(N + 1, 0.0L);
    for (const auto& [k, v] : x.entries())
        if (k <= N) weighted[k] = w.delta_ld(k) * static_cast<long double>(v);

    std::vector<std::vector<double>> blocks(N + 1);
    for (std::size_t n = 0; n <= N; ++n) {
        const long double lambda = w.lambda_ld(n);
        blocks[n].resize(n + 1);
        for (std::size_t k = 0; k <= n; ++k) blocks[n][k] = static_cast<double>(weighted[k] / lambda);
    }
    return BlockVector(std::move(blocks));
}

BlockTail embedding_tail(const FiniteSequence& x, const LambdaWeights& w, const ExponentSeq& p, std::size_t N) {
    if (x.max_support() && *x.max_support() > N)
        throw Error(ErrorCode::InvalidArgument, "embedding tail needs N >= max_support");
    if (N + 1 < p.prefix_size())
        throw Error(ErrorCode::InvalidArgument, "embedding tail needs N + 1 >= exponent prefix length");
    BlockTail tail;
    tail.exponent = p.tail();
    if (x.is_zero()) return tail;
    const long double scale = std::pow(weighted_mass(x, w), static_cast<long double>(p.tail()));
    const Bracket sum = tail_sum_bracket(w, N + 1, p.tail(), 1e-300);
    tail.modular = Bracket::outward(scale * sum.lo, scale * sum.hi, detail::kRoundingSlack);
    return tail;
}

Bracket nakano_luxemburg(const BlockVector& b, const ExponentSeq& p, const BlockTail& tail, double tol) {
    if (!tail.modular.valid() || tail.modular.lo < 0.0)
        throw Error(ErrorCode::InvalidArgument, "tail modular must be a valid non-negative bracket");
    if (!(tail.exponent > 1.0) || !std::isfinite(tail.exponent))
        throw Error(ErrorCode::InvalidArgument, "tail exponent must be finite and > 1");

    std::vector<long double> norms(b.count());
    long double largest = 0.0L;
    for (std::size_t n = 0; n < b.count(); ++n) {
        norms[n] = b.block_norm(n);
        largest = std::max(largest, norms[n]);
    }
    const long double tail_root = std::pow(static_cast<long double>(tail.modular.hi), 1.0L / tail.exponent);
    const double r0 = static_cast<double>(std::max(largest, tail_root));
    if (r0 == 0.0) return Bracket::exact(0.0);

    const long double e = tail.exponent;
    auto rho_at = [&](double r) {
        const long double rl = r;
        long double s = 0.0L;
        for (std::size_t n = 0; n < norms.size(); ++n)
            if (norms[n] > 0.0L) s += std::pow(norms[n] / rl, static_cast<long double>(p.at(n)));
        const long double f = std::pow(rl, -e);
        return Bracket::outward(s + f * tail.modular.lo, s + f * tail.modular.hi, detail::kRoundingSlack);
    };
    return detail::luxemburg_bisect(rho_at, r0, tol).norm;
}

IsometryReport isometry_check(const FiniteSequence& x, const LambdaWeights& w, const ExponentSeq& p, std::size_t N,
                              double tol) {
    std::size_t blocks_needed = N;
    if (x.max_support()) blocks_needed = std::max(blocks_needed, *x.max_support());
    if (p.prefix_size() > 0) blocks_needed = std::max(blocks_needed, p.prefix_size() - 1);

    IsometryReport report;
    report.blocks = blocks_needed + 1;
    report.direct = luxemburg(x, w, p, tol);
    report.embedded = nakano_luxemburg(embed(x, w, blocks_needed), p, embedding_tail(x, w, p, blocks_needed), tol);
    report.residual = report.direct.max_distance(report.embedded);
    return report;
}

double isometry_residual(const FiniteSequence& x, const LambdaWeights& w, const ExponentSeq& p, std::size_t N,
                         double tol) {
    return isometry_check(x, w, p, N, tol).residual;
}

} // namespace lseq
