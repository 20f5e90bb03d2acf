#ifndef LSEQ_SEQUENCE_HPP
#define LSEQ_SEQUENCE_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace lseq {

/// A finitely supported real sequence. Zeros are never stored.
class FiniteSequence {
public:
    using Storage = std::map<std::size_t, double>;

    FiniteSequence() = default;
    explicit FiniteSequence(const std::vector<std::pair<std::size_t, double>>& entries);

    /// `value` times the k-th unit vector.
    static FiniteSequence basis(std::size_t k, double value = 1.0);
    static FiniteSequence from_dense(const std::vector<double>& values);

    /// Parses "e<k>" or a sparse literal "i:v,i:v,...".
    static FiniteSequence parse(std::string_view text);

    void set(std::size_t index, double value);
    double at(std::size_t index) const noexcept;

    bool is_zero() const noexcept { return entries_.empty(); }
    std::optional<std::size_t> max_support() const noexcept;
    std::optional<std::size_t> min_support() const noexcept;
    std::size_t support_size() const noexcept { return entries_.size(); }
    std::vector<std::size_t> support() const;
    const Storage& entries() const noexcept { return entries_; }

    FiniteSequence scaled(double c) const;

    friend FiniteSequence operator+(const FiniteSequence& a, const FiniteSequence& b);
    friend FiniteSequence operator-(const FiniteSequence& a, const FiniteSequence& b);
    friend bool operator==(const FiniteSequence& a, const FiniteSequence& b) = default;

private:
    Storage entries_;
};

} // namespace lseq

#endif
