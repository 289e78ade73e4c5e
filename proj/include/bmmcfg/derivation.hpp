#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "bmmcfg/grammar.hpp"

namespace bmmcfg {

namespace detail {

// Memoized search: does nonterminal `nt` derive the symbol sequence
// seq[l..r) (mixed terminals and nonterminals)? Zero-step derivations
// count, so a single-symbol sequence equal to `nt` itself is derived.
// Independent of the chart parser by construction.
class SententialSearch {
public:
    SententialSearch(const Grammar& g, std::vector<Symbol> seq)
        : g_(g), seq_(std::move(seq)) {}

    bool derives(int nt, std::size_t l, std::size_t r) {
        if (l >= r) return false;  // no epsilon-productions
        const std::uint64_t key =
            (std::uint64_t(nt) << 32) | (std::uint64_t(l) << 16) | r;
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        memo_[key] = false;  // in-progress guard; no unit cycles expected
        bool result = false;
        if (r - l == 1 && seq_[l] == Symbol::nonterminal(nt)) {
            result = true;
        } else {
            for (int pi : g_.by_lhs()[nt]) {
                if (match(g_.productions()[pi].rhs, 0, l, r)) {
                    result = true;
                    break;
                }
            }
        }
        memo_[key] = result;
        return result;
    }

private:
    // Does rhs[k..] derive seq[l..r) split into nonempty contiguous parts?
    bool match(const std::vector<Symbol>& rhs, std::size_t k, std::size_t l,
               std::size_t r) {
        const std::size_t remaining = rhs.size() - k;
        if (remaining == 0) return l == r;
        if (r - l < remaining) return false;
        const Symbol& sym = rhs[k];
        if (remaining == 1) return matches_part(sym, l, r);
        // First part takes seq[l..split); leave at least one symbol each
        // for the rest.
        for (std::size_t split = l + 1; split + (remaining - 1) <= r; ++split) {
            if (matches_part(sym, l, split) && match(rhs, k + 1, split, r))
                return true;
        }
        return false;
    }

    bool matches_part(const Symbol& sym, std::size_t l, std::size_t r) {
        if (sym.kind == SymbolKind::Terminal)
            return r - l == 1 && seq_[l] == sym;
        return derives(sym.id, l, r);
    }

    const Grammar& g_;
    std::vector<Symbol> seq_;
    std::unordered_map<std::uint64_t, bool> memo_;
};

inline void check_span(std::size_t i, std::size_t j, std::size_t n) {
    if (i < 1 || j < i || j > n)
        throw std::out_of_range("span (" + std::to_string(i) + "," +
                                std::to_string(j) + ") out of bounds for length " +
                                std::to_string(n));
}

inline constexpr std::size_t kBruteForceCap = 40;

inline void check_length(std::size_t n) {
    if (n > kBruteForceCap)
        throw std::invalid_argument(
            "brute-force oracle refuses strings longer than " +
            std::to_string(kBruteForceCap));
}

}  // namespace detail

// Ground truth for A =>* w_i^j (1-based inclusive span). Exhaustive
// memoized recursion over all rhs split points.
inline bool derives_bruteforce(const Grammar& g, int nt,
                               const std::vector<int>& word, std::size_t i,
                               std::size_t j) {
    detail::check_length(word.size());
    detail::check_span(i, j, word.size());
    std::vector<Symbol> seq;
    for (int t : word) seq.push_back(Symbol::terminal(t));
    detail::SententialSearch search(g, std::move(seq));
    return search.derives(nt, i - 1, j);
}

// Ground truth for both c-derivation clauses: A =>* w_i^j and
// S =>* w_1^{i-1} A w_{j+1}^N.
inline bool cderives_bruteforce(const Grammar& g, int nt,
                                const std::vector<int>& word, std::size_t i,
                                std::size_t j) {
    if (!derives_bruteforce(g, nt, word, i, j)) return false;
    std::vector<Symbol> context;
    for (std::size_t k = 0; k + 1 < i; ++k)
        context.push_back(Symbol::terminal(word[k]));
    context.push_back(Symbol::nonterminal(nt));
    for (std::size_t k = j; k < word.size(); ++k)
        context.push_back(Symbol::terminal(word[k]));
    detail::SententialSearch search(g, std::move(context));
    return search.derives(g.start(), 0, word.size() - (j - i));
}

}  // namespace bmmcfg
