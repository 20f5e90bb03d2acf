#include "lseq/sequence.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "lseq/error.hpp"

namespace lseq {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

std::size_t parse_index(std::string_view s) {
    s = trim(s);
    std::size_t out = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        throw Error(ErrorCode::InvalidArgument, "bad sequence index '" + std::string(s) + "'");
    return out;
}

double parse_value(std::string_view s) {
    s = trim(s);
    std::string buf(s);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(buf, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != buf.size())
        throw Error(ErrorCode::InvalidArgument, "bad sequence value '" + buf + "'");
    return v;
}

} // namespace

FiniteSequence::FiniteSequence(const std::vector<std::pair<std::size_t, double>>& entries) {
    for (const auto& [k, v] : entries) set(k, v);
}

FiniteSequence FiniteSequence::basis(std::size_t k, double value) {
    FiniteSequence x;
    x.set(k, value);
    return x;
}

FiniteSequence FiniteSequence::from_dense(const std::vector<double>& values) {
    FiniteSequence x;
    for (std::size_t k = 0; k < values.size(); ++k) x.set(k, values[k]);
    return x;
}

FiniteSequence FiniteSequence::parse(std::string_view text) {
    text = trim(text);
    if (text.empty()) throw Error(ErrorCode::InvalidArgument, "empty sequence literal");
    if (text == "0") return {};
    if (text.front() == 'e') return basis(parse_index(text.substr(1)));

    FiniteSequence x;
    while (!text.empty()) {
        const auto comma = text.find(',');
        const auto item = text.substr(0, comma);
        const auto colon = item.find(':');
        if (colon == std::string_view::npos)
            throw Error(ErrorCode::InvalidArgument, "expected 'index:value' in '" + std::string(item) + "'");
        const auto k = parse_index(item.substr(0, colon));
        if (x.entries_.count(k))
            throw Error(ErrorCode::InvalidArgument, "index " + std::to_string(k) + " given twice");
        x.set(k, parse_value(item.substr(colon + 1)));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return x;
}

void FiniteSequence::set(std::size_t index, double value) {
    if (!std::isfinite(value))
        throw Error(ErrorCode::InvalidArgument, "sequence entries must be finite");
    if (value == 0.0)
        entries_.erase(index);
    else
        entries_[index] = value;
}

double FiniteSequence::at(std::size_t index) const noexcept {
    const auto it = entries_.find(index);
    return it == entries_.end() ? 0.0 : it->second;
}

std::optional<std::size_t> FiniteSequence::max_support() const noexcept {
    if (entries_.empty()) return std::nullopt;
    return entries_.rbegin()->first;
}

std::optional<std::size_t> FiniteSequence::min_support() const noexcept {
    if (entries_.empty()) return std::nullopt;
    return entries_.begin()->first;
}

std::vector<std::size_t> FiniteSequence::support() const {
    std::vector<std::size_t> out;
    out.reserve(entries_.size());
    for (const auto& [k, v] : entries_) out.push_back(k);
    return out;
}

FiniteSequence FiniteSequence::scaled(double c) const {
    FiniteSequence out;
    for (const auto& [k, v] : entries_) out.set(k, c * v);
    return out;
}

FiniteSequence operator+(const FiniteSequence& a, const FiniteSequence& b) {
    FiniteSequence out = a;
    for (const auto& [k, v] : b.entries_) out.set(k, out.at(k) + v);
    return out;
}

FiniteSequence operator-(const FiniteSequence& a, const FiniteSequence& b) {
    FiniteSequence out = a;
    for (const auto& [k, v] : b.entries_) out.set(k, out.at(k) - v);
    return out;
}

} // namespace lseq
