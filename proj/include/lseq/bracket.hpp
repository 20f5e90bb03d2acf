#ifndef LSEQ_BRACKET_HPP
#define LSEQ_BRACKET_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace lseq {

/// Closed interval [lo, hi] known to contain an exact real value.
struct Bracket {
    double lo = 0.0;
    double hi = 0.0;

    static constexpr Bracket exact(double v) noexcept { return {v, v}; }

    /// Rounds an extended-precision interval outward to doubles and pads it by
    /// `rel_slack` relative to its magnitude (covers accumulated rounding).
    static Bracket outward(long double lo, long double hi, long double rel_slack) noexcept {
        const long double pad = rel_slack * std::max(std::fabs(lo), std::fabs(hi));
        double l = static_cast<double>(lo - pad);
        double h = static_cast<double>(hi + pad);
        if (static_cast<long double>(l) > lo - pad) l = std::nextafter(l, -std::numeric_limits<double>::infinity());
        if (static_cast<long double>(h) < hi + pad) h = std::nextafter(h, std::numeric_limits<double>::infinity());
        return {l, h};
    }

    double width() const noexcept { return hi - lo; }
    double mid() const noexcept { return lo + 0.5 * (hi - lo); }
    bool contains(double v) const noexcept { return lo <= v && v <= hi; }
    bool valid() const noexcept { return std::isfinite(lo) && std::isfinite(hi) && lo <= hi; }

    /// Largest distance between a point of this bracket and a point of `other`.
    double max_distance(const Bracket& other) const noexcept {
        return std::max(std::fabs(hi - other.lo), std::fabs(other.hi - lo));
    }
};

inline std::ostream& operator<<(std::ostream& os, const Bracket& b) {
    return os << '[' << b.lo << ", " << b.hi << ']';
}

} // namespace lseq

#endif
