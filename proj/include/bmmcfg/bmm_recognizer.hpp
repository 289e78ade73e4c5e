#pragma once

#include <cassert>
#include <vector>

#include "bmmcfg/bmm.hpp"
#include "bmmcfg/bool_matrix.hpp"
#include "bmmcfg/chart.hpp"
#include "bmmcfg/grammar.hpp"

namespace bmmcfg {

// Recognizer that routes all chart-building work through a pluggable BMM
// kernel. Each nonterminal X gets an (N+1) x (N+1) span-endpoint matrix
// M_X with M_X[a][b] = 1 iff X =>* w_{a+1}^b. Seeding covers the unary
// terminal rules; then each binary rule X -> Y Z contributes the Boolean
// product M_Y x M_Z, unioned into M_X, iterated to fixpoint. Output is
// cell-identical to cky_parse.
inline Chart recognize_bmm(const Grammar& g, const std::vector<int>& word,
                           const BmmKernel& mult) {
    const detail::SplitRules rules = detail::split_rules(g);
    detail::check_word(g, word);
    const std::size_t n = word.size();
    const std::size_t nts = g.num_nonterminals();

    std::vector<BoolMatrix> span(nts, BoolMatrix(n + 1));
    for (std::size_t i = 1; i <= n; ++i)
        for (int lhs : rules.terminal[word[i - 1]]) span[lhs].set(i - 1, i, true);

    // Chain rules such as X -> Y X grow spans by one position per sweep, so
    // the fixpoint can take up to N rounds (length-doubling does not apply
    // to right-linear chains). Only rules whose children changed in the
    // previous round are recomputed.
    std::vector<char> dirty(nts, 1), next_dirty(nts, 0);
    std::size_t rounds = 0;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const detail::BinaryRule& r : rules.binary) {
            if (!dirty[r.left] && !dirty[r.right]) continue;
            BoolMatrix product = mult(span[r.left], span[r.right]);
            BoolMatrix& target = span[r.lhs];
            bool grew = false;
            for (std::size_t a = 0; a <= n; ++a) {
                std::uint64_t* trow = target.row(a);
                const std::uint64_t* prow = product.row(a);
                for (std::size_t w = 0; w < target.words_per_row(); ++w) {
                    if (prow[w] & ~trow[w]) {
                        trow[w] |= prow[w];
                        grew = true;
                    }
                }
            }
            if (grew) {
                next_dirty[r.lhs] = 1;
                changed = true;
            }
        }
        dirty.swap(next_dirty);
        next_dirty.assign(nts, 0);
        ++rounds;
        assert(rounds <= n + 1);
    }
    (void)rounds;

    Chart chart(n, nts);
    for (std::size_t nt = 0; nt < nts; ++nt)
        for (std::size_t i = 1; i <= n; ++i)
            for (std::size_t j = i; j <= n; ++j)
                if (span[nt].get(i - 1, j)) chart.insert(i, j, static_cast<int>(nt));
    return chart;
}

}  // namespace bmmcfg
