#pragma once

#include <bit>
#include <cstdint>
#include <iterator>

namespace latinp {

using LabelId = std::uint8_t;
using CellId = std::uint32_t;
using AsterismId = std::uint32_t;

inline constexpr int kMaxLabels = 64;

// Candidate labels of one cell, as a bit mask over interned label ids.
class LabelSet {
public:
    constexpr LabelSet() = default;
    constexpr explicit LabelSet(std::uint64_t bits) : bits_(bits) {}

    static constexpr LabelSet single(LabelId l) { return LabelSet{std::uint64_t{1} << l}; }
    static constexpr LabelSet first_n(int n)
    {
        return LabelSet{n >= kMaxLabels ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1};
    }

    constexpr std::uint64_t bits() const { return bits_; }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr int size() const { return std::popcount(bits_); }
    constexpr bool is_singleton() const { return bits_ != 0 && (bits_ & (bits_ - 1)) == 0; }
    constexpr bool contains(LabelId l) const { return (bits_ >> l) & 1U; }
    constexpr bool subset_of(LabelSet other) const { return (bits_ & ~other.bits_) == 0; }
    // Lowest label id; undefined on an empty set.
    constexpr LabelId first() const { return static_cast<LabelId>(std::countr_zero(bits_)); }

    constexpr void insert(LabelId l) { bits_ |= std::uint64_t{1} << l; }
    constexpr void erase(LabelId l) { bits_ &= ~(std::uint64_t{1} << l); }

    constexpr LabelSet operator&(LabelSet o) const { return LabelSet{bits_ & o.bits_}; }
    constexpr LabelSet operator|(LabelSet o) const { return LabelSet{bits_ | o.bits_}; }
    constexpr LabelSet operator-(LabelSet o) const { return LabelSet{bits_ & ~o.bits_}; }
    constexpr bool operator==(const LabelSet&) const = default;

    class iterator {
    public:
        using value_type = LabelId;
        using difference_type = std::ptrdiff_t;
        using iterator_category = std::forward_iterator_tag;

        constexpr iterator() = default;
        constexpr explicit iterator(std::uint64_t rest) : rest_(rest) {}
        constexpr LabelId operator*() const { return static_cast<LabelId>(std::countr_zero(rest_)); }
        constexpr iterator& operator++()
        {
            rest_ &= rest_ - 1;
            return *this;
        }
        constexpr iterator operator++(int)
        {
            auto old = *this;
            ++*this;
            return old;
        }
        constexpr bool operator==(const iterator&) const = default;

    private:
        std::uint64_t rest_ = 0;
    };

    constexpr iterator begin() const { return iterator{bits_}; }
    constexpr iterator end() const { return iterator{0}; }

private:
    std::uint64_t bits_ = 0;
};

} // namespace latinp
