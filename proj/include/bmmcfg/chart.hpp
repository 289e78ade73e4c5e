#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bmmcfg/grammar.hpp"

namespace bmmcfg {

// Triangular table over spans (i, j), 1 <= i <= j <= N, one fixed-width bit
// row of nonterminal ids per cell. Membership is a single word index plus a
// bit test, so queries cost the same regardless of N and |R|.
class Chart {
public:
    Chart(std::size_t n_positions, std::size_t n_nonterminals)
        : n_(n_positions),
          nts_(n_nonterminals),
          words_per_cell_((n_nonterminals + 63) / 64),
          bits_(n_positions * (n_positions + 1) / 2 * words_per_cell_, 0) {}

    std::size_t n_positions() const { return n_; }
    std::size_t n_nonterminals() const { return nts_; }
    std::size_t words_per_cell() const { return words_per_cell_; }

    bool contains(std::size_t i, std::size_t j, int nt) const {
        return (cell(i, j)[nt / 64] >> (nt % 64)) & 1;
    }

    void insert(std::size_t i, std::size_t j, int nt) {
        cell(i, j)[nt / 64] |= std::uint64_t(1) << (nt % 64);
    }

    const std::uint64_t* cell(std::size_t i, std::size_t j) const {
        return bits_.data() + cell_index(i, j) * words_per_cell_;
    }
    std::uint64_t* cell(std::size_t i, std::size_t j) {
        return bits_.data() + cell_index(i, j) * words_per_cell_;
    }

    void check_span(std::size_t i, std::size_t j) const {
        if (i < 1 || j < i || j > n_)
            throw std::out_of_range("chart span (" + std::to_string(i) + "," +
                                    std::to_string(j) + ") out of range");
    }

    friend bool operator==(const Chart& a, const Chart& b) {
        return a.n_ == b.n_ && a.nts_ == b.nts_ && a.bits_ == b.bits_;
    }

private:
    // Cells stored row by row: (i, j) -> row i's block at offset j - i.
    std::size_t cell_index(std::size_t i, std::size_t j) const {
        const std::size_t row_start = (i - 1) * n_ - (i - 1) * (i - 2) / 2;
        return row_start + (j - i);
    }

    std::size_t n_;
    std::size_t nts_;
    std::size_t words_per_cell_;
    std::vector<std::uint64_t> bits_;
};

enum class OracleAnswer { Yes, No };

namespace detail {

struct BinaryRule {
    int lhs, left, right;
};

struct SplitRules {
    std::vector<BinaryRule> binary;
    std::vector<std::vector<int>> terminal;  // terminal id -> lhs list
};

inline SplitRules split_rules(const Grammar& g) {
    if (!g.cnf()) throw std::invalid_argument("parser requires a CNF grammar");
    SplitRules r;
    r.terminal.resize(g.num_terminals());
    for (const Production& p : g.productions()) {
        if (p.rhs.size() == 1)
            r.terminal[p.rhs[0].id].push_back(p.lhs);
        else
            r.binary.push_back({p.lhs, p.rhs[0].id, p.rhs[1].id});
    }
    return r;
}

inline void check_word(const Grammar& g, const std::vector<int>& word) {
    if (word.empty()) throw std::invalid_argument("parser requires a nonempty string");
    for (int t : word)
        if (t < 0 || t >= static_cast<int>(g.num_terminals()))
            throw std::invalid_argument("unknown terminal id " + std::to_string(t));
}

}  // namespace detail

// Standard CKY: cell(i,j) holds exactly the nonterminals deriving w_i^j.
// O(|R| N^3).
inline Chart cky_parse(const Grammar& g, const std::vector<int>& word) {
    const detail::SplitRules rules = detail::split_rules(g);
    detail::check_word(g, word);
    const std::size_t n = word.size();
    Chart chart(n, g.num_nonterminals());
    for (std::size_t i = 1; i <= n; ++i)
        for (int lhs : rules.terminal[word[i - 1]]) chart.insert(i, i, lhs);
    for (std::size_t len = 2; len <= n; ++len) {
        for (std::size_t i = 1; i + len - 1 <= n; ++i) {
            const std::size_t j = i + len - 1;
            std::uint64_t* out = chart.cell(i, j);
            for (std::size_t k = i; k < j; ++k) {
                const std::uint64_t* left = chart.cell(i, k);
                const std::uint64_t* right = chart.cell(k + 1, j);
                for (const detail::BinaryRule& r : rules.binary) {
                    if ((left[r.left / 64] >> (r.left % 64)) & 1 &&
                        (right[r.right / 64] >> (r.right % 64)) & 1)
                        out[r.lhs / 64] |= std::uint64_t(1) << (r.lhs % 64);
                }
            }
        }
    }
    return chart;
}

// The oracle F_{G,w}: one cell membership test, nothing else.
inline OracleAnswer oracle_query(const Chart& chart, int nt, std::size_t i,
                                 std::size_t j) {
    chart.check_span(i, j);
    return chart.contains(i, j, nt) ? OracleAnswer::Yes : OracleAnswer::No;
}

// Top-down outside pass: marks (A, i, j) iff S derives the sentential form
// w_1^{i-1} A w_{j+1}^N. Descends from the root through binary rules whose
// sibling span is present in the inside chart. Combined with chart
// membership this decides c-derivation exactly.
inline Chart outside_reachable(const Chart& chart, const Grammar& g) {
    const detail::SplitRules rules = detail::split_rules(g);
    const std::size_t n = chart.n_positions();
    Chart out(n, g.num_nonterminals());
    // S =>* S in zero steps, so the root span is always reachable for S.
    out.insert(1, n, g.start());
    for (std::size_t len = n; len >= 2; --len) {
        for (std::size_t i = 1; i + len - 1 <= n; ++i) {
            const std::size_t j = i + len - 1;
            const std::uint64_t* parent = out.cell(i, j);
            for (const detail::BinaryRule& r : rules.binary) {
                if (!((parent[r.lhs / 64] >> (r.lhs % 64)) & 1)) continue;
                for (std::size_t k = i; k < j; ++k) {
                    if (chart.contains(k + 1, j, r.right)) out.insert(i, k, r.left);
                    if (chart.contains(i, k, r.left)) out.insert(k + 1, j, r.right);
                }
            }
        }
    }
    return out;
}

// Debug text dump: one line per nonempty cell, ordered by (j - i, i).
inline void dump_chart(std::ostream& os, const Chart& chart, const Grammar& g) {
    const std::size_t n = chart.n_positions();
    for (std::size_t len = 1; len <= n; ++len) {
        for (std::size_t i = 1; i + len - 1 <= n; ++i) {
            const std::size_t j = i + len - 1;
            std::string names;
            for (std::size_t nt = 0; nt < chart.n_nonterminals(); ++nt)
                if (chart.contains(i, j, static_cast<int>(nt)))
                    names += " " + name_text(g.name_of(static_cast<int>(nt)));
            if (!names.empty()) os << i << " " << j << " :" << names << '\n';
        }
    }
}

}  // namespace bmmcfg
