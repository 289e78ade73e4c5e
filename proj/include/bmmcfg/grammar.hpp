#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace bmmcfg {

enum class SymbolKind { Terminal, Nonterminal };

struct Symbol {
    SymbolKind kind;
    int id;

    static Symbol terminal(int id) { return {SymbolKind::Terminal, id}; }
    static Symbol nonterminal(int id) { return {SymbolKind::Nonterminal, id}; }

    friend bool operator==(const Symbol&, const Symbol&) = default;
    friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

// Structured nonterminal identity. Tags A, B, C carry both indices, T and U
// carry one, S, W and S' carry none.
enum class Tag { S, W, A, B, C, T, U, Sprime };

struct NonterminalName {
    Tag tag;
    int p = -1;
    int q = -1;

    friend bool operator==(const NonterminalName&, const NonterminalName&) = default;
    friend auto operator<=>(const NonterminalName&, const NonterminalName&) = default;
};

inline std::string tag_text(Tag t) {
    switch (t) {
        case Tag::S: return "S";
        case Tag::W: return "W";
        case Tag::A: return "A";
        case Tag::B: return "B";
        case Tag::C: return "C";
        case Tag::T: return "T";
        case Tag::U: return "U";
        case Tag::Sprime: return "S'";
    }
    return "?";
}

inline std::string name_text(const NonterminalName& n) {
    std::string s = tag_text(n.tag);
    if (n.p >= 0 && n.q >= 0)
        s += "[" + std::to_string(n.p) + "," + std::to_string(n.q) + "]";
    else if (n.p >= 0)
        s += "[" + std::to_string(n.p) + "]";
    return s;
}

struct Production {
    int lhs;                  // nonterminal id
    std::vector<Symbol> rhs;  // 1..3 symbols, never empty for valid grammars

    friend bool operator==(const Production&, const Production&) = default;
};

// CFG 4-tuple with dense ids. Terminal ids are 0..num_terminals-1;
// nonterminal ids are assigned in registration order. Immutable by
// convention once built, so shared concurrent reads are safe.
class Grammar {
public:
    std::size_t num_terminals() const { return num_terminals_; }
    void set_num_terminals(std::size_t n) { num_terminals_ = n; }

    std::size_t num_nonterminals() const { return names_.size(); }

    int add_nonterminal(const NonterminalName& name) {
        if (lookup_.count(name))
            throw std::invalid_argument("duplicate nonterminal " + name_text(name));
        int id = static_cast<int>(names_.size());
        names_.push_back(name);
        lookup_[name] = id;
        return id;
    }

    std::optional<int> find(const NonterminalName& name) const {
        auto it = lookup_.find(name);
        if (it == lookup_.end()) return std::nullopt;
        return it->second;
    }

    const NonterminalName& name_of(int id) const { return names_.at(id); }

    void add_production(int lhs, std::vector<Symbol> rhs) {
        productions_.push_back({lhs, std::move(rhs)});
    }

    const std::vector<Production>& productions() const { return productions_; }

    // Production indices grouped by lhs; built lazily, cached.
    const std::vector<std::vector<int>>& by_lhs() const {
        if (by_lhs_.size() != names_.size() || by_lhs_count_ != productions_.size()) {
            by_lhs_.assign(names_.size(), {});
            for (std::size_t i = 0; i < productions_.size(); ++i) {
                const int lhs = productions_[i].lhs;
                if (lhs >= 0 && lhs < static_cast<int>(names_.size()))
                    by_lhs_[lhs].push_back(static_cast<int>(i));
            }
            by_lhs_count_ = productions_.size();
        }
        return by_lhs_;
    }

    int start() const { return start_; }
    void set_start(int id) { start_ = id; }

    bool cnf() const { return cnf_; }
    void set_cnf(bool v) { cnf_ = v; }

    // Sum over productions of |rhs| + 1.
    std::size_t total_size() const {
        std::size_t s = 0;
        for (const Production& p : productions_) s += p.rhs.size() + 1;
        return s;
    }

private:
    std::size_t num_terminals_ = 0;
    std::vector<NonterminalName> names_;
    std::map<NonterminalName, int> lookup_;
    std::vector<Production> productions_;
    int start_ = -1;
    bool cnf_ = false;

    mutable std::vector<std::vector<int>> by_lhs_;
    mutable std::size_t by_lhs_count_ = static_cast<std::size_t>(-1);
};

inline bool cnf_shape(const Grammar& g, const Production& p) {
    if (p.rhs.size() == 1) return p.rhs[0].kind == SymbolKind::Terminal;
    if (p.rhs.size() == 2)
        return p.rhs[0].kind == SymbolKind::Nonterminal &&
               p.rhs[1].kind == SymbolKind::Nonterminal;
    (void)g;
    return false;
}

inline std::string symbol_text(const Grammar& g, const Symbol& s) {
    if (s.kind == SymbolKind::Terminal) return "w" + std::to_string(s.id + 1);
    return name_text(g.name_of(s.id));
}

inline std::string production_text(const Grammar& g, const Production& p) {
    std::string line = name_text(g.name_of(p.lhs)) + " ->";
    for (const Symbol& s : p.rhs) line += " " + symbol_text(g, s);
    return line;
}

// Violations are data, not failures: an empty report means all invariants hold.
inline std::vector<std::string> validate_grammar(const Grammar& g) {
    std::vector<std::string> report;
    const int nts = static_cast<int>(g.num_nonterminals());
    if (g.start() < 0 || g.start() >= nts)
        report.push_back("start symbol is not a registered nonterminal");
    for (const Production& p : g.productions()) {
        if (p.lhs < 0 || p.lhs >= nts) {
            report.push_back("production has unregistered lhs id " + std::to_string(p.lhs));
            continue;
        }
        if (p.rhs.empty()) {
            report.push_back("epsilon-production: " + name_text(g.name_of(p.lhs)) + " ->");
            continue;
        }
        for (const Symbol& s : p.rhs) {
            if (s.kind == SymbolKind::Terminal) {
                if (s.id < 0 || s.id >= static_cast<int>(g.num_terminals()))
                    report.push_back("production '" + name_text(g.name_of(p.lhs)) +
                                     " -> ...' references unregistered terminal id " +
                                     std::to_string(s.id));
            } else if (s.id < 0 || s.id >= nts) {
                report.push_back("production '" + name_text(g.name_of(p.lhs)) +
                                 " -> ...' references unregistered nonterminal id " +
                                 std::to_string(s.id));
            }
        }
        if (g.cnf() && !cnf_shape(g, p))
            report.push_back("non-CNF production: " + production_text(g, p));
    }
    return report;
}

// Deterministic dump: one production per line, sorted by (lhs tag, p, q, rhs).
inline void dump_grammar(std::ostream& out, const Grammar& g) {
    std::vector<const Production*> order;
    order.reserve(g.productions().size());
    for (const Production& p : g.productions()) order.push_back(&p);
    std::sort(order.begin(), order.end(), [&](const Production* a, const Production* b) {
        const NonterminalName& na = g.name_of(a->lhs);
        const NonterminalName& nb = g.name_of(b->lhs);
        if (na != nb) return na < nb;
        return a->rhs < b->rhs;
    });
    for (const Production* p : order) out << production_text(g, *p) << '\n';
}

}  // namespace bmmcfg
