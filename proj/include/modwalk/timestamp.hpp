#pragma once

#include <algorithm>
#include <compare>
#include <vector>

#include "walk.hpp"

namespace modwalk {

// First-visited timestamp (|w| - i_m, ..., |w| - i_1) where i_1 < ... < i_m
// are the positions of first-visited steps.
struct Timestamp {
    std::vector<std::size_t> values;

    friend bool operator==(const Timestamp&, const Timestamp&) = default;
};

inline Timestamp timestamp(const Walk& w) {
    const auto first = first_visited_flags(w);
    Timestamp t;
    for (std::size_t i = w.size(); i >= 1; --i)
        if (first[i]) t.values.push_back(w.size() - i);
    return t;
}

// Lexicographic comparison. Timestamps of walks over different edge sets are
// incomparable; only the tuple lengths are checked.
inline std::strong_ordering timestamp_compare(const Timestamp& a, const Timestamp& b) {
    if (a.values.size() != b.values.size())
        throw ValidationError("timestamps of different lengths are incomparable");
    return std::lexicographical_compare_three_way(a.values.begin(), a.values.end(), b.values.begin(),
                                                  b.values.end());
}

}  // namespace modwalk
