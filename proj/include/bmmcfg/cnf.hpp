#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bmmcfg/grammar.hpp"

namespace bmmcfg {

// CNF conversion for grammars with no epsilon-productions and no unit
// productions between nonterminals. Scheme:
//   - terminal wrapper T[l] -> w_l for each terminal used in a rhs of
//     length >= 2, so long rules become all-nonterminal;
//   - a length-3 rule X -> P Q R (after wrapping) whose lhs is the start
//     symbol is split from the left with a helper shared per (lhs, P):
//     X -> P S', S' -> Q R;
//   - any other length-3 rule is split from the right with a helper shared
//     per (Q, R): X -> P U, U -> Q R; when R wraps terminal w_l the helper
//     is named U[l].
// The derivation set of every original nonterminal is unchanged.
inline Grammar to_cnf(const Grammar& g) {
    Grammar out;
    out.set_num_terminals(g.num_terminals());
    for (std::size_t id = 0; id < g.num_nonterminals(); ++id)
        out.add_nonterminal(g.name_of(static_cast<int>(id)));
    out.set_start(g.start());

    std::map<int, int> wrapper;  // terminal id -> wrapper nonterminal id
    auto wrap = [&](const Symbol& s) -> Symbol {
        if (s.kind == SymbolKind::Nonterminal) return s;
        auto it = wrapper.find(s.id);
        if (it == wrapper.end()) {
            int id = out.add_nonterminal({Tag::T, s.id + 1, -1});
            out.add_production(id, {Symbol::terminal(s.id)});
            it = wrapper.emplace(s.id, id).first;
        }
        return Symbol::nonterminal(it->second);
    };

    std::map<std::pair<Symbol, Symbol>, int> suffix_helper;
    std::set<int> used_u_indices;
    int fresh_u = 0;
    auto suffix = [&](const Symbol& q, const Symbol& r) -> int {
        auto key = std::make_pair(q, r);
        auto it = suffix_helper.find(key);
        if (it != suffix_helper.end()) return it->second;
        // Prefer naming the helper after the terminal its last symbol wraps.
        int idx = -1;
        if (r.kind == SymbolKind::Nonterminal) {
            const NonterminalName& rn = out.name_of(r.id);
            if (rn.tag == Tag::T && !used_u_indices.count(rn.p)) idx = rn.p;
        }
        if (idx < 0) {
            while (used_u_indices.count(++fresh_u)) {}
            idx = fresh_u;
        }
        used_u_indices.insert(idx);
        int id = out.add_nonterminal({Tag::U, idx, -1});
        out.add_production(id, {q, r});
        suffix_helper.emplace(key, id);
        return id;
    };

    std::map<std::pair<int, Symbol>, int> start_helper;  // (lhs, first symbol)
    int sprime_count = 0;

    for (const Production& p : g.productions()) {
        if (p.rhs.empty())
            throw std::invalid_argument("to_cnf: epsilon-production on " +
                                        name_text(g.name_of(p.lhs)));
        if (p.rhs.size() == 1) {
            if (p.rhs[0].kind == SymbolKind::Nonterminal)
                throw std::invalid_argument("to_cnf: unit production " +
                                            production_text(g, p));
            out.add_production(p.lhs, p.rhs);
            continue;
        }
        if (p.rhs.size() > 3)
            throw std::invalid_argument("to_cnf: rhs longer than 3 in " +
                                        production_text(g, p));
        std::vector<Symbol> rhs;
        for (const Symbol& s : p.rhs) rhs.push_back(wrap(s));
        if (rhs.size() == 2) {
            out.add_production(p.lhs, std::move(rhs));
            continue;
        }
        if (p.lhs == g.start()) {
            auto key = std::make_pair(p.lhs, rhs[0]);
            auto it = start_helper.find(key);
            if (it == start_helper.end()) {
                int id = out.add_nonterminal(
                    {Tag::Sprime, sprime_count == 0 ? -1 : sprime_count + 1, -1});
                ++sprime_count;
                it = start_helper.emplace(key, id).first;
                out.add_production(p.lhs, {rhs[0], Symbol::nonterminal(id)});
            }
            out.add_production(it->second, {rhs[1], rhs[2]});
        } else {
            int helper = suffix(rhs[1], rhs[2]);
            out.add_production(p.lhs, {rhs[0], Symbol::nonterminal(helper)});
        }
    }

    out.set_cnf(true);
    return out;
}

}  // namespace bmmcfg
