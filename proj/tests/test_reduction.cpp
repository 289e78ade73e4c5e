#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "bmmcfg/bmm.hpp"
#include "bmmcfg/bmm_recognizer.hpp"
#include "bmmcfg/chart.hpp"
#include "bmmcfg/derivation.hpp"
#include "bmmcfg/reduction.hpp"
#include "support.hpp"

using namespace bmmcfg;
using testsupport::make_matrix;

namespace {

const ParseFn kCky = [](const Grammar& g, const std::vector<int>& w) {
    return cky_parse(g, w);
};
const ParseFn kRecognizer = [](const Grammar& g, const std::vector<int>& w) {
    return recognize_bmm(g, w, bmm_bitset);
};

bool has_production(const Grammar& g, const std::string& line) {
    for (const Production& p : g.productions())
        if (production_text(g, p) == line) return true;
    return false;
}

}  // namespace

TEST_CASE("index encoding formulas") {
    CHECK(encode_index(5, 2).i1 == 2);
    CHECK(encode_index(5, 2).i2 == 3);
    CHECK(encode_index(1, 1).i1 == 1);
    CHECK(encode_index(1, 1).i2 == 2);
    CHECK(encode_index(1, 2).i1 == 0);  // the f1 = 0 case
    CHECK(encode_index(1, 2).i2 == 3);
    CHECK_THROWS_AS(encode_index(0, 2), std::out_of_range);
    CHECK_THROWS_AS(encode_index(9, 2), std::out_of_range);
}

TEST_CASE("index decoding inverts encoding") {
    CHECK(decode_index({2, 3}, 2) == 5);
    CHECK(decode_index({0, 3}, 2) == 1);
    for (std::size_t i = 1; i <= 27; ++i)
        CHECK(decode_index(encode_index(i, 3), 3) == i);
    CHECK_THROWS_AS(decode_index({0, 1}, 2), std::out_of_range);
    CHECK_THROWS_AS(decode_index({5, 2}, 2), std::out_of_range);
    CHECK_THROWS_AS(decode_index({0, 2}, 2), std::out_of_range);  // decodes to 0
}

TEST_CASE("instance shape at m=2") {
    const BoolMatrix a = make_matrix({"10", "00"});
    const BoolMatrix b = make_matrix({"10", "00"});
    const ReductionInstance inst = build_instance(a, b);
    CHECK(inst.n == 2);
    CHECK(inst.delta == 4);
    CHECK(inst.word.size() == 12);
    CHECK(inst.w_rules == 24);
    CHECK(inst.c_rules == 125);  // (n^2+1)^3
    CHECK(inst.s_rules == 25);   // (n^2+1)^2
    CHECK(inst.a_rules == 1);
    CHECK(has_production(inst.grammar, "A[0,0] -> w3 W w7"));
}

TEST_CASE("instance stats at boundary sizes") {
    const ReductionInstance one = build_instance(BoolMatrix(1), BoolMatrix(1));
    const InstanceStats s1 = instance_stats(one);
    CHECK(s1.n == 1);
    CHECK(s1.delta == 3);
    CHECK(s1.string_length == 9);

    const ReductionInstance eight =
        build_instance(random_matrix(8, 0.5, 4), random_matrix(8, 0.5, 5));
    const InstanceStats s8 = instance_stats(eight);
    CHECK(s8.n == 2);
    // 2 base nonterminals plus three (n^2+1)^2 families.
    CHECK(s8.nonterminals == 2 + 3 * 25);
    CHECK(s8.a_rules == random_matrix(8, 0.5, 4).popcount());
}

TEST_CASE("dimension mismatch is rejected") {
    CHECK_THROWS_AS(build_instance(BoolMatrix(2), BoolMatrix(3)),
                    std::invalid_argument);
    CHECK_THROWS_AS(multiply_via_parser(BoolMatrix(2), BoolMatrix(3), kCky),
                    std::invalid_argument);
}

TEST_CASE("constructed A-rule derives its designated span") {
    // a_11 = 1 at m=2: A[0,0] -> w3 W w7 spans positions 3..7.
    const BoolMatrix a = make_matrix({"10", "00"});
    const ReductionInstance inst = build_instance(a, BoolMatrix(2));
    const int a00 = inst.family_id(Tag::A, 0, 0);
    CHECK(derives_bruteforce(inst.grammar, a00, inst.word, 3, 7));
    CHECK(!derives_bruteforce(inst.grammar, a00, inst.word, 3, 6));
}

TEST_CASE("product entry appears as chart membership") {
    // c_11 = 1, so C[0,0] must cover (i2, j2 + 2*delta) = (3, 11).
    const BoolMatrix a = make_matrix({"10", "00"});
    const BoolMatrix b = make_matrix({"10", "00"});
    const ReductionInstance inst = build_instance(a, b);
    const Chart chart = cky_parse(inst.cnf_grammar, inst.word);
    const int c00 = inst.family_id(Tag::C, 0, 0);
    CHECK(oracle_query(chart, c00, 3, 11) == OracleAnswer::Yes);
    // Cross-check with the exhaustive oracle on the raw grammar.
    CHECK(derives_bruteforce(inst.grammar, c00, inst.word, 3, 11));
}

TEST_CASE("pipeline identity and zero cases") {
    CHECK(multiply_via_parser(identity_matrix(2), identity_matrix(2), kCky) ==
          identity_matrix(2));
    const BoolMatrix z3(3);
    CHECK(!multiply_via_parser(z3, z3, kCky).any());
    // Corollary: S derives w exactly when the product is nonzero.
    const ReductionInstance inst = build_instance(z3, z3);
    const Chart chart = cky_parse(inst.cnf_grammar, inst.word);
    CHECK(oracle_query(chart, inst.start_id, 1, inst.word.size()) ==
          OracleAnswer::No);
}

TEST_CASE("pipeline agrees with the naive oracle on random pairs") {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const std::size_t m = 1 + seed % 6;
        const double density = 0.2 + 0.1 * (seed % 7);
        const BoolMatrix a = random_matrix(m, density, seed * 2 + 1);
        const BoolMatrix b = random_matrix(m, density, seed * 2 + 2);
        const BoolMatrix expected = bmm_naive(a, b);
        CHECK(multiply_via_parser(a, b, kCky) == expected);
        CHECK(multiply_via_parser(a, b, kRecognizer) == expected);
    }
}

TEST_CASE("theorem holds in full c-derivation form at tiny sizes") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const std::size_t m = 1 + seed % 3;
        const BoolMatrix a = random_matrix(m, 0.5, seed + 40);
        const BoolMatrix b = random_matrix(m, 0.5, seed + 80);
        const BoolMatrix c = bmm_naive(a, b);
        const ReductionInstance inst = build_instance(a, b);
        for (std::size_t i = 1; i <= m; ++i) {
            const EncodedIndex ei = encode_index(i, inst.n);
            for (std::size_t j = 1; j <= m; ++j) {
                const EncodedIndex ej = encode_index(j, inst.n);
                const int cid = inst.family_id(Tag::C, ei.i1, ej.i1);
                const bool cd = cderives_bruteforce(inst.cnf_grammar, cid, inst.word,
                                                    ei.i2, ej.i2 + 2 * inst.delta);
                CHECK(cd == c.get(i - 1, j - 1));
            }
        }
    }
}

TEST_CASE("adjacent A and B spans witness each product one") {
    const std::size_t m = 5;
    const BoolMatrix a = random_matrix(m, 0.4, 7);
    const BoolMatrix b = random_matrix(m, 0.4, 8);
    const ReductionInstance inst = build_instance(a, b);
    const Chart chart = cky_parse(inst.cnf_grammar, inst.word);
    for (std::size_t i = 1; i <= m; ++i)
        for (std::size_t k = 1; k <= m; ++k)
            for (std::size_t j = 1; j <= m; ++j) {
                if (!a.get(i - 1, k - 1) || !b.get(k - 1, j - 1)) continue;
                const EncodedIndex ei = encode_index(i, inst.n);
                const EncodedIndex ek = encode_index(k, inst.n);
                const EncodedIndex ej = encode_index(j, inst.n);
                CHECK(chart.contains(ei.i2, ek.i2 + inst.delta,
                                     inst.family_id(Tag::A, ei.i1, ek.i1)));
                CHECK(chart.contains(ek.i2 + 1 + inst.delta,
                                     ej.i2 + 2 * inst.delta,
                                     inst.family_id(Tag::B, ek.i1, ej.i1)));
            }
}

TEST_CASE("pruning drops dead rules without changing the product") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const std::size_t m = 1 + seed % 5;
        const BoolMatrix a = random_matrix(m, 0.3, seed + 21);
        const BoolMatrix b = random_matrix(m, 0.3, seed + 22);
        const ReductionInstance full = build_instance(a, b, false);
        const ReductionInstance pruned = build_instance(a, b, true);
        CHECK(pruned.c_rules <= full.c_rules);
        CHECK(multiply_via_parser(a, b, kCky, true) ==
              multiply_via_parser(a, b, kCky, false));
    }
}

TEST_CASE("cnf conversion preserves family derivations on instances") {
    for (std::size_t m : {1, 2}) {
        const BoolMatrix ones = random_matrix(m, 1.0, 0);
        const ReductionInstance inst = build_instance(ones, ones);
        const std::size_t len = inst.word.size();
        const int fams = static_cast<int>(inst.n * inst.n) + 1;
        for (int p = 0; p < fams; ++p)
            for (int q = 0; q < fams; ++q) {
                const int cid = inst.family_id(Tag::C, p, q);
                for (std::size_t i = 1; i <= len; ++i)
                    for (std::size_t j = i; j <= len; ++j)
                        CHECK(derives_bruteforce(inst.grammar, cid, inst.word, i, j) ==
                              derives_bruteforce(inst.cnf_grammar, cid, inst.word, i, j));
            }
    }
}

TEST_CASE("a corrupted instance is caught by the oracle comparison") {
    // Self-test of the verification harness: dropping the B-rules must
    // produce a detectable mismatch whenever the true product is nonzero.
    const BoolMatrix a = identity_matrix(3);
    const BoolMatrix b = identity_matrix(3);
    const ReductionInstance inst = build_instance(a, b);
    Grammar corrupted;
    corrupted.set_num_terminals(inst.grammar.num_terminals());
    for (std::size_t id = 0; id < inst.grammar.num_nonterminals(); ++id)
        corrupted.add_nonterminal(inst.grammar.name_of(static_cast<int>(id)));
    corrupted.set_start(inst.grammar.start());
    for (const Production& p : inst.grammar.productions())
        if (inst.grammar.name_of(p.lhs).tag != Tag::B)
            corrupted.add_production(p.lhs, p.rhs);
    const Chart chart = cky_parse(to_cnf(corrupted), inst.word);
    BoolMatrix got(3);
    for (std::size_t i = 1; i <= 3; ++i) {
        const EncodedIndex ei = encode_index(i, inst.n);
        for (std::size_t j = 1; j <= 3; ++j) {
            const EncodedIndex ej = encode_index(j, inst.n);
            if (chart.contains(ei.i2, ej.i2 + 2 * inst.delta,
                               inst.family_id(Tag::C, ei.i1, ej.i1)))
                got.set(i - 1, j - 1, true);
        }
    }
    CHECK(!(got == bmm_naive(a, b)));
}

TEST_CASE("instance dump is deterministic and carries the header") {
    const BoolMatrix a = make_matrix({"10", "00"});
    const ReductionInstance inst = build_instance(a, BoolMatrix(2));
    std::stringstream first, second;
    dump_instance(first, inst);
    dump_instance(second, inst);
    CHECK(first.str() == second.str());
    CHECK(first.str().rfind("# m=2 n=2 delta=4\n", 0) == 0);
    CHECK(first.str().find("A[0,0] -> w3 W w7\n") != std::string::npos);
    CHECK(first.str().find("STRING: w1 w2 w3 w4 w5 w6 w7 w8 w9 w10 w11 w12\n") !=
          std::string::npos);
}
