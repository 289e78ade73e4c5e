#pragma once

#include <string>
#include <vector>

#include "bmmcfg/bmm.hpp"
#include "bmmcfg/bool_matrix.hpp"
#include "bmmcfg/grammar.hpp"
#include "bmmcfg/rng.hpp"

namespace testsupport {

inline bmmcfg::BoolMatrix make_matrix(const std::vector<std::string>& rows) {
    bmmcfg::BoolMatrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            if (rows[i][j] == '1') m.set(i, j, true);
    return m;
}

// Small random CNF grammar: start symbol 0, no epsilon or unit productions
// by construction. Generic nonterminals are named C[i,0].
inline bmmcfg::Grammar random_cnf_grammar(std::uint64_t seed,
                                          std::size_t max_productions = 30) {
    using namespace bmmcfg;
    Xorshift64Star rng(seed);
    Grammar g;
    const std::size_t nts = 2 + rng.next_in(0, 4);
    const std::size_t terms = 2 + rng.next_in(0, 2);
    g.set_num_terminals(terms);
    for (std::size_t i = 0; i < nts; ++i)
        g.add_nonterminal({Tag::C, static_cast<int>(i), 0});
    g.set_start(0);
    const std::size_t n_prods = 1 + rng.next_in(0, max_productions - 1);
    for (std::size_t i = 0; i < n_prods; ++i) {
        const int lhs = static_cast<int>(rng.next_in(0, nts - 1));
        if (rng.next_double() < 0.45) {
            g.add_production(lhs, {Symbol::terminal(
                                      static_cast<int>(rng.next_in(0, terms - 1)))});
        } else {
            g.add_production(lhs,
                             {Symbol::nonterminal(static_cast<int>(rng.next_in(0, nts - 1))),
                              Symbol::nonterminal(static_cast<int>(rng.next_in(0, nts - 1)))});
        }
    }
    // Guarantee at least one terminal rule so charts are never trivially empty.
    g.add_production(0, {Symbol::terminal(0)});
    g.set_cnf(true);
    return g;
}

inline std::vector<int> random_word(std::uint64_t seed, std::size_t terms,
                                    std::size_t max_len = 10) {
    bmmcfg::Xorshift64Star rng(seed);
    const std::size_t len = 1 + rng.next_in(0, max_len - 1);
    std::vector<int> w(len);
    for (auto& t : w) t = static_cast<int>(rng.next_in(0, terms - 1));
    return w;
}

}  // namespace testsupport
