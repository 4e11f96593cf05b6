// numeric.hpp — small numeric helpers: constants and order-stable summation

#pragma once

#include <cstddef>
#include <numbers>
#include <span>

namespace iondecoh {

template <typename Scalar>
inline constexpr Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;

// Recursive pairwise summation in ascending index order. The result depends
// only on the values and their order, never on how callers split the work.
template <typename T>
T pairwise_sum(std::span<const T> values) {
    constexpr std::size_t leaf = 8;
    if (values.size() <= leaf) {
        T acc{};
        for (const T& v : values) acc += v;
        return acc;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

} // namespace iondecoh
