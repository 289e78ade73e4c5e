#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "bmmcfg/bool_matrix.hpp"
#include "bmmcfg/chart.hpp"
#include "bmmcfg/cnf.hpp"
#include "bmmcfg/grammar.hpp"

namespace bmmcfg {

// Matrix index i, 1 <= i <= n^3, split as (floor(i/n), (i mod n) + 2). The
// grammar checks the first part; substring adjacency checks the second.
struct EncodedIndex {
    int i1;  // in [0, n^2]
    int i2;  // in [2, n+1]
};

inline EncodedIndex encode_index(std::size_t i, std::size_t n) {
    if (i < 1 || i > n * n * n)
        throw std::out_of_range("encode_index: i=" + std::to_string(i) +
                                " outside [1, n^3] for n=" + std::to_string(n));
    return {static_cast<int>(i / n), static_cast<int>(i % n) + 2};
}

inline std::size_t decode_index(const EncodedIndex& e, std::size_t n) {
    if (e.i1 < 0 || e.i1 > static_cast<int>(n * n) || e.i2 < 2 ||
        e.i2 > static_cast<int>(n) + 1)
        throw std::out_of_range("decode_index: encoded pair outside its ranges");
    const std::size_t i = static_cast<std::size_t>(e.i1) * n +
                          (static_cast<std::size_t>(e.i2) - 2);
    if (i < 1 || i > n * n * n)
        throw std::out_of_range("decode_index: decoded index outside [1, n^3]");
    return i;
}

// Smallest n with n^3 >= m.
inline std::size_t block_size(std::size_t m) {
    std::size_t n = 1;
    while (n * n * n < m) ++n;
    return n;
}

// The grammar/string instance built from a pair of matrices. The string is
// w_1 ... w_{3n+6} (terminal id = position - 1), in thirds x, y, z of
// length delta = n + 2 each.
struct ReductionInstance {
    std::size_t m = 0;
    std::size_t n = 0;
    std::size_t delta = 0;
    bool pruned = false;
    Grammar grammar;      // raw construction
    Grammar cnf_grammar;  // to_cnf(grammar); same family ids
    std::vector<int> word;

    std::size_t w_rules = 0, a_rules = 0, b_rules = 0, c_rules = 0, s_rules = 0;

    int start_id = -1, w_id = -1;

    int family_id(Tag tag, int p, int q) const {
        auto id = grammar.find({tag, p, q});
        if (!id) throw std::out_of_range("no such family nonterminal");
        return *id;
    }
};

inline ReductionInstance build_instance(const BoolMatrix& a, const BoolMatrix& b,
                                        bool prune = false) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("build_instance: dimension mismatch");
    ReductionInstance inst;
    inst.m = a.dim();
    inst.n = block_size(inst.m);
    inst.delta = inst.n + 2;
    inst.pruned = prune;
    const std::size_t n = inst.n;
    const std::size_t delta = inst.delta;
    const std::size_t len = 3 * n + 6;
    const int families = static_cast<int>(n * n) + 1;  // indices 0..n^2

    Grammar& g = inst.grammar;
    g.set_num_terminals(len);
    inst.start_id = g.add_nonterminal({Tag::S, -1, -1});
    inst.w_id = g.add_nonterminal({Tag::W, -1, -1});
    g.set_start(inst.start_id);
    for (Tag tag : {Tag::A, Tag::B, Tag::C})
        for (int p = 0; p < families; ++p)
            for (int q = 0; q < families; ++q) g.add_nonterminal({tag, p, q});

    auto nt = [&](Tag tag, int p, int q) {
        return Symbol::nonterminal(*g.find({tag, p, q}));
    };
    auto pos = [](std::size_t position) {  // 1-based position -> terminal
        return Symbol::terminal(static_cast<int>(position) - 1);
    };
    const Symbol w_sym = Symbol::nonterminal(inst.w_id);

    // W-rules: W -> w_l W | w_l for every terminal.
    for (std::size_t l = 1; l <= len; ++l) {
        g.add_production(inst.w_id, {pos(l), w_sym});
        g.add_production(inst.w_id, {pos(l)});
        inst.w_rules += 2;
    }

    // A-rules: one per non-zero a_ij.
    std::vector<std::size_t> a_prods(families * families, 0);
    std::vector<std::size_t> b_prods(families * families, 0);
    for (std::size_t i = 1; i <= inst.m; ++i) {
        for (std::size_t j = 1; j <= inst.m; ++j) {
            if (!a.get(i - 1, j - 1)) continue;
            const EncodedIndex ei = encode_index(i, n);
            const EncodedIndex ej = encode_index(j, n);
            g.add_production(nt(Tag::A, ei.i1, ej.i1).id,
                             {pos(ei.i2), w_sym, pos(ej.i2 + delta)});
            ++a_prods[ei.i1 * families + ej.i1];
            ++inst.a_rules;
        }
    }

    // B-rules: one per non-zero b_ij.
    for (std::size_t i = 1; i <= inst.m; ++i) {
        for (std::size_t j = 1; j <= inst.m; ++j) {
            if (!b.get(i - 1, j - 1)) continue;
            const EncodedIndex ei = encode_index(i, n);
            const EncodedIndex ej = encode_index(j, n);
            g.add_production(nt(Tag::B, ei.i1, ej.i1).id,
                             {pos(ei.i2 + 1 + delta), w_sym, pos(ej.i2 + 2 * delta)});
            ++b_prods[ei.i1 * families + ej.i1];
            ++inst.b_rules;
        }
    }

    // C-rules: C_{p,q} -> A_{p,r} B_{r,q}. With pruning, rules whose A or B
    // family has no productions are dropped; they can never reach terminals.
    std::vector<std::size_t> c_prods(families * families, 0);
    for (int p = 0; p < families; ++p) {
        for (int q = 0; q < families; ++q) {
            for (int r = 0; r < families; ++r) {
                if (prune && (a_prods[p * families + r] == 0 ||
                              b_prods[r * families + q] == 0))
                    continue;
                g.add_production(nt(Tag::C, p, q).id,
                                 {nt(Tag::A, p, r), nt(Tag::B, r, q)});
                ++c_prods[p * families + q];
                ++inst.c_rules;
            }
        }
    }

    // S-rules: S -> W C_{p,q} W.
    for (int p = 0; p < families; ++p) {
        for (int q = 0; q < families; ++q) {
            if (prune && c_prods[p * families + q] == 0) continue;
            g.add_production(inst.start_id, {w_sym, nt(Tag::C, p, q), w_sym});
            ++inst.s_rules;
        }
    }

    inst.cnf_grammar = to_cnf(g);
    inst.word.resize(len);
    for (std::size_t l = 0; l < len; ++l) inst.word[l] = static_cast<int>(l);
    return inst;
}

using ParseFn = std::function<Chart(const Grammar&, const std::vector<int>&)>;

// Reads the product off an existing chart for the instance: c_ij = 1 iff
// the chart holds C_{i1,j1} over (i2, j2 + 2*delta). Plain derivation
// suffices; no outside pass is needed for retrieval.
inline BoolMatrix product_from_chart(const ReductionInstance& inst,
                                     const Chart& chart) {
    BoolMatrix c(inst.m);
    for (std::size_t i = 1; i <= inst.m; ++i) {
        const EncodedIndex ei = encode_index(i, inst.n);
        for (std::size_t j = 1; j <= inst.m; ++j) {
            const EncodedIndex ej = encode_index(j, inst.n);
            const int cid = inst.family_id(Tag::C, ei.i1, ej.i1);
            if (oracle_query(chart, cid, ei.i2, ej.i2 + 2 * inst.delta) ==
                OracleAnswer::Yes)
                c.set(i - 1, j - 1, true);
        }
    }
    return c;
}

// The full pipeline: build the instance, hand grammar and string to the
// parser, then read every entry of the product off the resulting chart.
inline BoolMatrix multiply_via_parser(const BoolMatrix& a, const BoolMatrix& b,
                                      const ParseFn& parser, bool prune = false) {
    const ReductionInstance inst = build_instance(a, b, prune);
    const Chart chart = parser(inst.cnf_grammar, inst.word);
    return product_from_chart(inst, chart);
}

struct InstanceStats {
    std::size_t m, n, delta, string_length;
    std::size_t w_rules, a_rules, b_rules, c_rules, s_rules;
    std::size_t total_size;      // raw grammar, sum of |rhs| + 1
    std::size_t nonterminals;    // raw grammar
    std::size_t cnf_total_size;
    std::size_t cnf_nonterminals;
};

inline InstanceStats instance_stats(const ReductionInstance& inst) {
    return {inst.m,
            inst.n,
            inst.delta,
            inst.word.size(),
            inst.w_rules,
            inst.a_rules,
            inst.b_rules,
            inst.c_rules,
            inst.s_rules,
            inst.grammar.total_size(),
            inst.grammar.num_nonterminals(),
            inst.cnf_grammar.total_size(),
            inst.cnf_grammar.num_nonterminals()};
}

inline void dump_stats(std::ostream& out, const InstanceStats& s) {
    out << "m=" << s.m << '\n'
        << "n=" << s.n << '\n'
        << "delta=" << s.delta << '\n'
        << "string_length=" << s.string_length << '\n'
        << "w_rules=" << s.w_rules << '\n'
        << "a_rules=" << s.a_rules << '\n'
        << "b_rules=" << s.b_rules << '\n'
        << "c_rules=" << s.c_rules << '\n'
        << "s_rules=" << s.s_rules << '\n'
        << "total_size=" << s.total_size << '\n'
        << "nonterminals=" << s.nonterminals << '\n'
        << "cnf_total_size=" << s.cnf_total_size << '\n'
        << "cnf_nonterminals=" << s.cnf_nonterminals << '\n';
}

// Full instance dump: header, productions, string.
inline void dump_instance(std::ostream& out, const ReductionInstance& inst) {
    out << "# m=" << inst.m << " n=" << inst.n << " delta=" << inst.delta << '\n';
    dump_grammar(out, inst.grammar);
    out << "STRING:";
    for (int t : inst.word) out << " w" << t + 1;
    out << '\n';
}

// Rough construction footprint, used by the benchmark memory cap. Counts
// raw + CNF productions at a fixed per-production estimate plus the chart.
inline std::size_t estimate_instance_bytes(std::size_t m) {
    const std::size_t n = block_size(m);
    const std::size_t fam = n * n + 1;
    const std::size_t rules =
        2 * (3 * n + 6) + 2 * m * m + fam * fam * fam + fam * fam;
    const std::size_t nts = 2 + 3 * fam * fam + 5 * n + 7;
    const std::size_t len = 3 * n + 6;
    const std::size_t chart_bytes = len * len / 2 * ((nts + 63) / 64) * 8;
    return 2 * rules * 96 + chart_bytes;
}

}  // namespace bmmcfg
