#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace simpfib {

/// Largest simplex degree the engine represents (degeneracy masks are 32 bit).
inline constexpr int kMaxDegree = 30;

/**
 * A simplex of a simplicial set in Eilenberg-Zilber normal form.
 *
 * Every simplex is a unique degeneracy s_{j_1} ... s_{j_k} (j_1 > ... > j_k)
 * applied to a unique nondegenerate cell. The degeneracy is kept as a bitmask:
 * bit j is set exactly when the underlying monotone surjection
 * [dim] -> [cell_dim] identifies j and j+1, which is the same as j occurring
 * in the degeneracy word.
 */
struct Simplex {
    int dim = 0;
    int cell_dim = 0;
    int cell = 0;
    std::uint32_t degen = 0;

    bool nondegenerate() const { return degen == 0; }

    friend auto operator<=>(const Simplex&, const Simplex&) = default;
};

struct SimplexHash {
    std::size_t operator()(const Simplex& s) const noexcept {
        std::size_t h = static_cast<std::size_t>(s.cell) * 0x9E3779B97F4A7C15ULL;
        h ^= (static_cast<std::size_t>(s.degen) << 16) + static_cast<std::size_t>(s.dim) * 131 +
             static_cast<std::size_t>(s.cell_dim);
        return h;
    }
};

namespace degeneracy {

/// Degeneracy word as strictly decreasing indices.
std::vector<int> word(std::uint32_t mask);
std::uint32_t from_word(const std::vector<int>& word);

/// "2,0" style rendering; the empty string for a nondegenerate simplex.
std::string format(std::uint32_t mask);
/// Inverse of format(); throws std::invalid_argument on bad syntax or order.
std::uint32_t parse(std::string_view text);

/// Monotone surjection [dim] -> [dim - popcount(mask)] as its value list.
std::vector<int> surjection(std::uint32_t mask, int dim);
/// Mask of a monotone surjection given by its value list.
std::uint32_t mask_of(const std::vector<int>& surjection);

/// Degeneracy of the opposite simplex (indices j -> dim - 1 - j).
std::uint32_t reverse(std::uint32_t mask, int dim);

int length(std::uint32_t mask);

/// Lexicographic order on the decreasing words.
bool word_less(std::uint32_t a, std::uint32_t b);

/// All masks over `dim` positions with `count` bits, in word order.
std::vector<std::uint32_t> masks(int dim, int count);

/// Remove the positions in `positions` (a subset of the set bits of `mask`
/// or not) and renumber the remaining bits.
std::uint32_t collapse(std::uint32_t mask, std::uint32_t positions);

}  // namespace degeneracy

}  // namespace simpfib
