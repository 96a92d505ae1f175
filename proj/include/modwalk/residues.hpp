#pragma once

#include <bitset>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <vector>

#include "errors.hpp"

namespace modwalk {

// Largest modulus supported by the reachability and oracle layers. The solver
// packs remainder sets in one machine word and is capped separately.
inline constexpr std::uint32_t kMaxModulus = 256;

// A subset of {0..q-1}; bit r set iff r is present.
using ResidueSet = std::bitset<kMaxModulus>;

inline void check_modulus(std::uint64_t q) {
    if (q == 0) throw ValidationError("modulus must be positive");
    if (q > kMaxModulus)
        throw CapacityError("modulus " + std::to_string(q) + " exceeds supported maximum " +
                            std::to_string(kMaxModulus));
}

inline ResidueSet residue_set(std::initializer_list<std::uint32_t> values) {
    ResidueSet s;
    for (auto v : values) s.set(v);
    return s;
}

inline std::vector<std::uint32_t> members(const ResidueSet& s, std::uint32_t q) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t r = 0; r < q; ++r)
        if (s.test(r)) out.push_back(r);
    return out;
}

// { (x + shift) mod q : x in s }
inline ResidueSet rotate(const ResidueSet& s, std::uint32_t shift, std::uint32_t q) {
    shift %= q;
    if (shift == 0) return s;
    ResidueSet mask;
    mask.set();
    mask >>= (kMaxModulus - q);
    return ((s << shift) | (s >> (q - shift))) & mask;
}

// { (a + b) mod q : a in x, b in y }
inline ResidueSet sumset(const ResidueSet& x, const ResidueSet& y, std::uint32_t q) {
    ResidueSet out;
    for (std::uint32_t r = 0; r < q; ++r)
        if (x.test(r)) out |= rotate(y, r, q);
    return out;
}

// Subgroup of Z_q generated by the given elements: the multiples of
// gcd(generators..., q). An empty generator list yields {0}.
inline ResidueSet generated_subgroup(const std::vector<std::uint32_t>& generators, std::uint32_t q) {
    std::uint32_t g = q;
    for (auto x : generators) g = std::gcd(g, x % q);
    ResidueSet out;
    for (std::uint32_t r = 0; r < q; r += g) out.set(r);
    return out;
}

inline std::uint64_t lcm_of(const std::vector<std::uint32_t>& values) {
    std::uint64_t l = 1;
    for (auto v : values) l = std::lcm(l, static_cast<std::uint64_t>(v));
    return l;
}

}  // namespace modwalk
