#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace bmmcfg {

// Square 0/1 matrix, row-major, one bit per entry. Rows are padded to whole
// 64-bit words; padding bits are kept zero so word-level row operations need
// no masking.
class BoolMatrix {
public:
    BoolMatrix() : dim_(0), words_per_row_(0) {}

    explicit BoolMatrix(std::size_t dim)
        : dim_(dim),
          words_per_row_((dim + 63) / 64),
          bits_(dim * words_per_row_, 0) {}

    std::size_t dim() const { return dim_; }
    std::size_t words_per_row() const { return words_per_row_; }

    bool get(std::size_t i, std::size_t j) const {
        return (bits_[i * words_per_row_ + j / 64] >> (j % 64)) & 1;
    }

    void set(std::size_t i, std::size_t j, bool value) {
        std::uint64_t& word = bits_[i * words_per_row_ + j / 64];
        const std::uint64_t mask = std::uint64_t(1) << (j % 64);
        if (value)
            word |= mask;
        else
            word &= ~mask;
    }

    const std::uint64_t* row(std::size_t i) const {
        return bits_.data() + i * words_per_row_;
    }
    std::uint64_t* row(std::size_t i) {
        return bits_.data() + i * words_per_row_;
    }

    bool any() const {
        for (std::uint64_t w : bits_)
            if (w) return true;
        return false;
    }

    std::size_t popcount() const {
        std::size_t total = 0;
        for (std::uint64_t w : bits_) total += __builtin_popcountll(w);
        return total;
    }

    bool padding_clear() const {
        if (dim_ % 64 == 0) return true;
        const std::uint64_t pad = ~((std::uint64_t(1) << (dim_ % 64)) - 1);
        for (std::size_t i = 0; i < dim_; ++i)
            if (row(i)[words_per_row_ - 1] & pad) return false;
        return true;
    }

    friend bool operator==(const BoolMatrix& a, const BoolMatrix& b) {
        return a.dim_ == b.dim_ && a.bits_ == b.bits_;
    }

private:
    std::size_t dim_;
    std::size_t words_per_row_;
    std::vector<std::uint64_t> bits_;
};

// Text format: first line is the dimension, then dim lines of exactly dim
// characters from {0,1}. Ragged or malformed lines are rejected.
inline BoolMatrix read_matrix(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("matrix file: missing dimension line");
    std::size_t dim = 0;
    try {
        std::size_t pos = 0;
        dim = std::stoul(line, &pos);
        if (pos != line.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw std::runtime_error("matrix file: bad dimension line '" + line + "'");
    }
    if (dim == 0) throw std::runtime_error("matrix file: dimension must be >= 1");
    BoolMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        if (!std::getline(in, line))
            throw std::runtime_error("matrix file: expected " + std::to_string(dim) +
                                     " rows, got " + std::to_string(i));
        if (line.size() != dim)
            throw std::runtime_error("matrix file: row " + std::to_string(i + 1) +
                                     " has length " + std::to_string(line.size()) +
                                     ", expected " + std::to_string(dim));
        for (std::size_t j = 0; j < dim; ++j) {
            if (line[j] == '1')
                m.set(i, j, true);
            else if (line[j] != '0')
                throw std::runtime_error("matrix file: row " + std::to_string(i + 1) +
                                         " contains character '" + std::string(1, line[j]) + "'");
        }
    }
    return m;
}

inline void write_matrix(std::ostream& out, const BoolMatrix& m) {
    out << m.dim() << '\n';
    for (std::size_t i = 0; i < m.dim(); ++i) {
        std::string line(m.dim(), '0');
        for (std::size_t j = 0; j < m.dim(); ++j)
            if (m.get(i, j)) line[j] = '1';
        out << line << '\n';
    }
}

}  // namespace bmmcfg
