#include "lseq/weights.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "lseq/error.hpp"

namespace lseq {

namespace {

// (n+1)^a - n^a without cancellation for large n.
long double power_increment(std::size_t n, long double a) {
    if (n == 0) return 1.0L;
    const long double nn = static_cast<long double>(n);
    return std::pow(nn, a) * std::expm1(a * std::log1p(1.0L / nn));
}

std::vector<double> parse_list(std::string_view s) {
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
        throw Error(ErrorCode::InvalidArgument, "expected a bracketed list, got '" + std::string(s) + "'");
    s = s.substr(1, s.size() - 2);
    std::vector<double> out;
    std::stringstream ss{std::string(s)};
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0) throw Error(ErrorCode::InvalidArgument, "bad list entry '" + item + "'");
        out.push_back(v);
    }
    return out;
}

double parse_real(const std::string& key, const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size())
        throw Error(ErrorCode::InvalidArgument, "bad value for " + key + ": '" + s + "'");
    return v;
}

std::string format_list(const std::vector<long double>& v) {
    std::ostringstream os;
    os.precision(17);
    os << '[';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << static_cast<double>(v[i]);
    os << ']';
    return os.str();
}

} // namespace

std::string_view to_string(WeightFamily f) noexcept {
    switch (f) {
    case WeightFamily::Cesaro: return "cesaro";
    case WeightFamily::Power: return "power";
    case WeightFamily::Riesz: return "riesz";
    case WeightFamily::Custom: return "custom";
    }
    return "unknown";
}

long double GrowthLaw::value(std::size_t n) const noexcept {
    const long double nn = static_cast<long double>(n);
    if (kind == Kind::Affine) return a + b * nn;
    return a * std::pow(nn + 1.0L, b);
}

LambdaWeights LambdaWeights::cesaro() {
    LambdaWeights w;
    w.family_ = WeightFamily::Cesaro;
    w.law_ = GrowthLaw{GrowthLaw::Kind::Affine, 1.0L, 1.0L, 0};
    return w;
}

LambdaWeights LambdaWeights::power(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw Error(ErrorCode::InvalidWeights, "power family needs alpha > 0");
    LambdaWeights w;
    w.family_ = WeightFamily::Power;
    w.alpha_ = alpha;
    w.law_ = GrowthLaw{GrowthLaw::Kind::Power, 1.0L, alpha, 0};
    return w;
}

LambdaWeights LambdaWeights::riesz(std::vector<double> q) {
    if (q.empty()) throw Error(ErrorCode::InvalidWeights, "riesz family needs at least one q value");
    LambdaWeights w;
    w.family_ = WeightFamily::Riesz;
    long double acc = 0.0L;
    for (double qk : q) {
        if (!(qk > 0.0) || !std::isfinite(qk))
            throw Error(ErrorCode::InvalidWeights, "riesz q values must be positive and finite");
        const long double next = acc + qk;
        if (!(next > acc)) throw Error(ErrorCode::InvalidWeights, "riesz partial sums are not strictly increasing");
        acc = next;
        w.values_.push_back(acc);
        w.increments_.push_back(qk);
    }
    const std::size_t last = q.size() - 1;
    const long double step = q.back();
    w.law_ = GrowthLaw{GrowthLaw::Kind::Affine, acc - step * static_cast<long double>(last), step, last};
    return w;
}

LambdaWeights LambdaWeights::custom(std::vector<double> values, std::optional<double> tail_c,
                                    std::optional<double> tail_alpha) {
    if (values.empty()) throw Error(ErrorCode::InvalidWeights, "custom family needs at least one value");
    if (tail_c.has_value() != tail_alpha.has_value())
        throw Error(ErrorCode::InvalidWeights, "tail_c and tail_alpha must be given together");
    LambdaWeights w;
    w.family_ = WeightFamily::Custom;
    long double prev = 0.0L;
    for (double v : values) {
        if (!std::isfinite(v) || !(v > prev))
            throw Error(ErrorCode::InvalidWeights, "custom values must be positive and strictly increasing");
        w.values_.push_back(v);
        prev = v;
    }
    if (tail_c) {
        if (!(*tail_c > 0.0) || !(*tail_alpha > 0.0))
            throw Error(ErrorCode::InvalidWeights, "tail law needs tail_c > 0 and tail_alpha > 0");
        GrowthLaw law{GrowthLaw::Kind::Power, *tail_c, *tail_alpha, values.size()};
        if (!(law.value(values.size()) > prev))
            throw Error(ErrorCode::InvalidWeights, "tail law does not continue the values increasingly");
        w.law_ = law;
    } else {
        w.warnings_.push_back(
            "custom weights without a tail law: lambda_{n+1}/lambda_n -> 1 cannot be verified "
            "and indices beyond the given values are unavailable");
    }
    return w;
}

long double LambdaWeights::lambda_ld(std::size_t n) const {
    switch (family_) {
    case WeightFamily::Cesaro: return static_cast<long double>(n) + 1.0L;
    case WeightFamily::Power: return std::pow(static_cast<long double>(n) + 1.0L, static_cast<long double>(alpha_));
    case WeightFamily::Riesz:
        return n < values_.size() ? values_[n] : law_->value(n);
    case WeightFamily::Custom:
        if (n < values_.size()) return values_[n];
        if (law_) return law_->value(n);
        throw Error(ErrorCode::IndexOutOfRange,
                    "custom weights define lambda_0..lambda_" + std::to_string(values_.size() - 1) +
                        " only; requested index " + std::to_string(n));
    }
    return 0.0L;
}

long double LambdaWeights::delta_ld(std::size_t n) const {
    switch (family_) {
    case WeightFamily::Cesaro: return 1.0L;
    case WeightFamily::Power: return power_increment(n, alpha_);
    case WeightFamily::Riesz: return n < increments_.size() ? increments_[n] : increments_.back();
    case WeightFamily::Custom:
        if (n == 0) return values_[0];
        if (n > values_.size() && law_) return law_->a * power_increment(n, law_->b);
        return lambda_ld(n) - lambda_ld(n - 1);
    }
    return 0.0L;
}

std::string LambdaWeights::describe() const {
    std::ostringstream os;
    os.precision(17);
    os << "family=" << to_string(family_);
    switch (family_) {
    case WeightFamily::Cesaro: break;
    case WeightFamily::Power: os << " alpha=" << alpha_; break;
    case WeightFamily::Riesz: os << " q=" << format_list(increments_); break;
    case WeightFamily::Custom:
        os << " values=" << format_list(values_);
        if (law_) os << " tail_c=" << static_cast<double>(law_->a) << " tail_alpha=" << static_cast<double>(law_->b);
        break;
    }
    return os.str();
}

LambdaWeights parse_weights(std::string_view config) {
    std::map<std::string, std::string> kv;
    std::stringstream ss{std::string(config)};
    std::string token;
    while (ss >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos || eq == 0)
            throw Error(ErrorCode::InvalidArgument, "expected key=value, got '" + token + "'");
        const auto key = token.substr(0, eq);
        if (kv.count(key)) throw Error(ErrorCode::InvalidArgument, "duplicate key '" + key + "'");
        kv[key] = token.substr(eq + 1);
    }
    auto take = [&](const std::string& key) -> std::optional<std::string> {
        auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        auto v = it->second;
        kv.erase(it);
        return v;
    };

    const auto family = take("family");
    if (!family) throw Error(ErrorCode::InvalidArgument, "weight config needs family=...");

    LambdaWeights result = LambdaWeights::cesaro();
    if (*family == "cesaro") {
        result = LambdaWeights::cesaro();
    } else if (*family == "power") {
        const auto alpha = take("alpha");
        if (!alpha) throw Error(ErrorCode::InvalidArgument, "family=power needs alpha=...");
        result = LambdaWeights::power(parse_real("alpha", *alpha));
    } else if (*family == "riesz") {
        const auto q = take("q");
        if (!q) throw Error(ErrorCode::InvalidArgument, "family=riesz needs q=[...]");
        result = LambdaWeights::riesz(parse_list(*q));
    } else if (*family == "custom") {
        const auto values = take("values");
        if (!values) throw Error(ErrorCode::InvalidArgument, "family=custom needs values=[...]");
        std::optional<double> c, a;
        if (auto s = take("tail_c")) c = parse_real("tail_c", *s);
        if (auto s = take("tail_alpha")) a = parse_real("tail_alpha", *s);
        result = LambdaWeights::custom(parse_list(*values), c, a);
    } else {
        throw Error(ErrorCode::InvalidArgument, "unknown family '" + *family + "'");
    }
    if (!kv.empty())
        throw Error(ErrorCode::InvalidArgument, "unused key '" + kv.begin()->first + "' for family " + *family);
    return result;
}

long double weighted_mass(const FiniteSequence& x, const LambdaWeights& w) {
    long double s = 0.0L;
    for (const auto& [k, v] : x.entries()) s += w.delta_ld(k) * std::fabs(static_cast<long double>(v));
    return s;
}

double lambda_transform(const FiniteSequence& x, const LambdaWeights& w, std::size_t n) {
    long double s = 0.0L;
    for (const auto& [k, v] : x.entries()) {
        if (k > n) break;
        s += w.delta_ld(k) * std::fabs(static_cast<long double>(v));
    }
    return static_cast<double>(s) / w.lambda_at(n);
}

} // namespace lseq
