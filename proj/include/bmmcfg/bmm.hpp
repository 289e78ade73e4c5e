#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "bmmcfg/bool_matrix.hpp"
#include "bmmcfg/rng.hpp"

namespace bmmcfg {

using BmmKernel = std::function<BoolMatrix(const BoolMatrix&, const BoolMatrix&)>;

inline void check_dims(const BoolMatrix& a, const BoolMatrix& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("bmm: dimension mismatch " + std::to_string(a.dim()) +
                                    " vs " + std::to_string(b.dim()));
}

// Ground-truth triple loop: c_ij = OR_k (a_ik AND b_kj). Every other
// multiplication path is tested against this one.
inline BoolMatrix bmm_naive(const BoolMatrix& a, const BoolMatrix& b) {
    check_dims(a, b);
    const std::size_t m = a.dim();
    BoolMatrix c(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t k = 0; k < m; ++k)
                if (a.get(i, k) && b.get(k, j)) {
                    c.set(i, j, true);
                    break;
                }
    return c;
}

// Word-parallel kernel: for each 1-bit a_ik, OR row k of b into row i of c.
inline BoolMatrix bmm_bitset(const BoolMatrix& a, const BoolMatrix& b) {
    check_dims(a, b);
    const std::size_t m = a.dim();
    const std::size_t words = b.words_per_row();
    BoolMatrix c(m);
    for (std::size_t i = 0; i < m; ++i) {
        std::uint64_t* ci = c.row(i);
        for (std::size_t k = 0; k < m; ++k) {
            if (!a.get(i, k)) continue;
            const std::uint64_t* bk = b.row(k);
            for (std::size_t w = 0; w < words; ++w) ci[w] |= bk[w];
        }
    }
    return c;
}

// Four-Russians kernel: split the k-axis into blocks of t = ceil(log2 m)
// rows of b, precompute all 2^t subset unions per block, then each row of a
// does one table lookup per block.
inline BoolMatrix bmm_four_russians(const BoolMatrix& a, const BoolMatrix& b) {
    check_dims(a, b);
    const std::size_t m = a.dim();
    std::size_t t = 1;
    while ((std::size_t(1) << t) < m) ++t;  // t = ceil(log2 m), min 1
    if (t > 16) t = 16;                     // cap the table size
    const std::size_t words = b.words_per_row();
    BoolMatrix c(m);
    std::vector<std::uint64_t> table((std::size_t(1) << t) * words);
    for (std::size_t block = 0; block < m; block += t) {
        const std::size_t bsize = std::min(t, m - block);
        const std::size_t combos = std::size_t(1) << bsize;
        // table[s] = union of rows {block+p : bit p of s set}, built
        // incrementally from table[s without lowest bit].
        for (std::size_t w = 0; w < words; ++w) table[w] = 0;
        for (std::size_t s = 1; s < combos; ++s) {
            const std::size_t low = s & (~s + 1);
            std::size_t p = 0;
            while ((std::size_t(1) << p) != low) ++p;
            const std::uint64_t* br = b.row(block + p);
            const std::uint64_t* prev = table.data() + (s ^ low) * words;
            std::uint64_t* cur = table.data() + s * words;
            for (std::size_t w = 0; w < words; ++w) cur[w] = prev[w] | br[w];
        }
        for (std::size_t i = 0; i < m; ++i) {
            std::size_t s = 0;
            for (std::size_t p = 0; p < bsize; ++p)
                if (a.get(i, block + p)) s |= std::size_t(1) << p;
            if (!s) continue;
            const std::uint64_t* row = table.data() + s * words;
            std::uint64_t* ci = c.row(i);
            for (std::size_t w = 0; w < words; ++w) ci[w] |= row[w];
        }
    }
    return c;
}

// Deterministic seeded generator: entries drawn row-major from a single
// xorshift64* stream, entry = 1 iff the next [0,1) draw is < density.
inline BoolMatrix random_matrix(std::size_t m, double density, std::uint64_t seed) {
    if (m < 1) throw std::invalid_argument("random_matrix: m must be >= 1");
    if (density < 0.0 || density > 1.0)
        throw std::invalid_argument("random_matrix: density outside [0,1]");
    Xorshift64Star rng(seed);
    BoolMatrix a(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (rng.next_double() < density) a.set(i, j, true);
    assert(a.padding_clear());
    return a;
}

inline BoolMatrix identity_matrix(std::size_t m) {
    BoolMatrix a(m);
    for (std::size_t i = 0; i < m; ++i) a.set(i, i, true);
    return a;
}

}  // namespace bmmcfg
