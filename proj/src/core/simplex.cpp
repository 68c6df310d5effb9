#include "simpfib/simplex.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <stdexcept>

namespace simpfib::degeneracy {

std::vector<int> word(std::uint32_t mask) {
    std::vector<int> out;
    for (int j = 31; j >= 0; --j)
        if (mask & (1u << j)) out.push_back(j);
    return out;
}

std::uint32_t from_word(const std::vector<int>& word) {
    std::uint32_t mask = 0;
    for (std::size_t k = 0; k < word.size(); ++k) {
        if (word[k] < 0 || word[k] >= kMaxDegree)
            throw std::invalid_argument("degeneracy index out of range: " + std::to_string(word[k]));
        if (k > 0 && word[k] >= word[k - 1])
            throw std::invalid_argument("degeneracy word is not strictly decreasing");
        mask |= 1u << word[k];
    }
    return mask;
}

std::string format(std::uint32_t mask) {
    std::string out;
    for (int j : word(mask)) {
        if (!out.empty()) out += ',';
        out += std::to_string(j);
    }
    return out;
}

std::uint32_t parse(std::string_view text) {
    std::vector<int> indices;
    if (text.empty()) return 0;
    std::size_t pos = 0;
    while (true) {
        std::size_t comma = text.find(',', pos);
        std::string_view piece = text.substr(pos, comma == std::string_view::npos ? text.size() - pos : comma - pos);
        int value = 0;
        auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), value);
        if (piece.empty() || ec != std::errc{} || ptr != piece.data() + piece.size())
            throw std::invalid_argument("bad degeneracy word \"" + std::string(text) + "\"");
        indices.push_back(value);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return from_word(indices);
}

std::vector<int> surjection(std::uint32_t mask, int dim) {
    std::vector<int> values(static_cast<std::size_t>(dim) + 1);
    int v = 0;
    for (int k = 0; k <= dim; ++k) {
        if (k > 0 && !(mask & (1u << (k - 1)))) ++v;
        values[static_cast<std::size_t>(k)] = v;
    }
    return values;
}

std::uint32_t mask_of(const std::vector<int>& surjection) {
    std::uint32_t mask = 0;
    for (std::size_t k = 0; k + 1 < surjection.size(); ++k)
        if (surjection[k] == surjection[k + 1]) mask |= 1u << k;
    return mask;
}

std::uint32_t reverse(std::uint32_t mask, int dim) {
    std::uint32_t out = 0;
    for (int j = 0; j < dim; ++j)
        if (mask & (1u << j)) out |= 1u << (dim - 1 - j);
    return out;
}

int length(std::uint32_t mask) { return std::popcount(mask); }

bool word_less(std::uint32_t a, std::uint32_t b) {
    auto wa = word(a);
    auto wb = word(b);
    return std::lexicographical_compare(wa.begin(), wa.end(), wb.begin(), wb.end());
}

std::vector<std::uint32_t> masks(int dim, int count) {
    std::vector<std::uint32_t> out;
    if (count < 0 || count > dim) return out;
    for (std::uint32_t m = 0; m < (1u << dim); ++m)
        if (std::popcount(m) == count) out.push_back(m);
    std::sort(out.begin(), out.end(), word_less);
    return out;
}

std::uint32_t collapse(std::uint32_t mask, std::uint32_t positions) {
    std::uint32_t out = 0;
    int shift = 0;
    for (int p = 0; p < 32; ++p) {
        if (positions & (1u << p)) {
            ++shift;
            continue;
        }
        if (mask & (1u << p)) out |= 1u << (p - shift);
    }
    return out;
}

}  // namespace simpfib::degeneracy
