// Command-line harness: multiply Boolean matrices through the parsing
// pipeline or a direct kernel, bulk-verify the pipeline against the naive
// oracle, benchmark the paths with a log-log exponent fit, and dump
// grammar/string instances for inspection.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bmmcfg/bmm.hpp"
#include "bmmcfg/bmm_recognizer.hpp"
#include "bmmcfg/bool_matrix.hpp"
#include "bmmcfg/chart.hpp"
#include "bmmcfg/exponent_fit.hpp"
#include "bmmcfg/reduction.hpp"
#include "bmmcfg/rng.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitParseError = 2;
constexpr int kExitContract = 3;

bmmcfg::BoolMatrix load_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open matrix file '" + path + "'");
    try {
        return bmmcfg::read_matrix(in);
    } catch (const std::runtime_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

std::ostream& open_output(std::ofstream& file, const std::string& out_path) {
    if (out_path.empty()) return std::cout;
    file.open(out_path);
    if (!file) throw std::runtime_error("cannot open output file '" + out_path + "'");
    return file;
}

bmmcfg::ParseFn cky_fn() {
    return [](const bmmcfg::Grammar& g, const std::vector<int>& w) {
        return bmmcfg::cky_parse(g, w);
    };
}

bmmcfg::ParseFn bmm_recognizer_fn() {
    return [](const bmmcfg::Grammar& g, const std::vector<int>& w) {
        return bmmcfg::recognize_bmm(g, w, bmmcfg::bmm_bitset);
    };
}

bmmcfg::BoolMatrix multiply_path(const std::string& path, const bmmcfg::BoolMatrix& a,
                                 const bmmcfg::BoolMatrix& b) {
    if (path == "naive") return bmmcfg::bmm_naive(a, b);
    if (path == "bitset") return bmmcfg::bmm_bitset(a, b);
    if (path == "cky") return bmmcfg::multiply_via_parser(a, b, cky_fn());
    return bmmcfg::multiply_via_parser(a, b, bmm_recognizer_fn());  // "bmm"
}

double cycled_density(std::size_t index) {
    constexpr double densities[] = {0.1, 0.5, 0.9};
    return densities[index % 3];
}

int run_multiply(const std::string& file_a, const std::string& file_b,
                 const std::string& path, const std::string& out_path) {
    const bmmcfg::BoolMatrix a = load_matrix(file_a);
    const bmmcfg::BoolMatrix b = load_matrix(file_b);
    const bmmcfg::BoolMatrix c = multiply_path(path, a, b);
    std::ofstream file;
    bmmcfg::write_matrix(open_output(file, out_path), c);
    return kExitOk;
}

void dump_mismatch(std::ostream& out, std::uint64_t seed, const bmmcfg::BoolMatrix& a,
                   const bmmcfg::BoolMatrix& b, const bmmcfg::BoolMatrix& expected,
                   const bmmcfg::BoolMatrix& got) {
    out << "MISMATCH seed=" << seed << " m=" << a.dim() << "\n";
    out << "A:\n";
    bmmcfg::write_matrix(out, a);
    out << "B:\n";
    bmmcfg::write_matrix(out, b);
    out << "expected:\n";
    bmmcfg::write_matrix(out, expected);
    out << "got:\n";
    bmmcfg::write_matrix(out, got);
}

int run_verify(std::size_t trials, std::size_t max_m, std::uint64_t seed) {
    std::size_t passed = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        const std::uint64_t trial_seed = bmmcfg::derive_seed(seed, t);
        bmmcfg::Xorshift64Star rng(trial_seed);
        const std::size_t m = 1 + rng.next_in(0, max_m - 1);
        const double density = cycled_density(t);
        const bmmcfg::BoolMatrix a = bmmcfg::random_matrix(m, density, trial_seed ^ 1);
        const bmmcfg::BoolMatrix b = bmmcfg::random_matrix(m, density, trial_seed ^ 2);
        const bmmcfg::BoolMatrix expected = bmmcfg::bmm_naive(a, b);
        for (const auto& [backend, parser] :
             {std::pair{std::string("cky"), cky_fn()},
              std::pair{std::string("bmm"), bmm_recognizer_fn()}}) {
            const bmmcfg::BoolMatrix got = bmmcfg::multiply_via_parser(a, b, parser);
            if (!(got == expected)) {
                std::cout << "trial=" << t << " m=" << m << " backend=" << backend
                          << " FAIL\n";
                dump_mismatch(std::cout, trial_seed, a, b, expected, got);
                std::cout << "summary: " << passed << "/" << trials << " passed\n";
                return kExitMismatch;
            }
        }
        std::cout << "trial=" << t << " m=" << m << " density=" << density
                  << " PASS\n";
        ++passed;
    }
    std::cout << "summary: " << passed << "/" << trials << " passed\n";
    return kExitOk;
}

int run_bench(const std::vector<std::size_t>& sizes, const std::string& path,
              std::size_t reps, bool prune, std::size_t mem_cap,
              std::uint64_t seed, const std::string& out_path) {
    std::ofstream file;
    std::ostream& out = open_output(file, out_path);
    std::vector<bmmcfg::BenchRecord> records;
    for (std::size_t idx = 0; idx < sizes.size(); ++idx) {
        const std::size_t m = sizes[idx];
        if (m < 8) throw std::invalid_argument("bench: every m must be >= 8");
        if ((path == "cky" || path == "bmm") &&
            bmmcfg::estimate_instance_bytes(m) > mem_cap)
            throw std::invalid_argument(
                "bench: m=" + std::to_string(m) +
                " exceeds the memory cap; raise --mem-cap to proceed");
        const std::uint64_t s = bmmcfg::derive_seed(seed, idx);
        const bmmcfg::BoolMatrix a = bmmcfg::random_matrix(m, 0.5, s ^ 1);
        const bmmcfg::BoolMatrix b = bmmcfg::random_matrix(m, 0.5, s ^ 2);

        std::size_t grammar_size = 0, string_length = 0;
        std::vector<double> times;
        for (std::size_t rep = 0; rep < reps; ++rep) {
            const auto start = std::chrono::steady_clock::now();
            if (path == "naive" || path == "bitset") {
                volatile bool sink = multiply_path(path, a, b).any();
                (void)sink;
            } else {
                const bmmcfg::ReductionInstance inst =
                    bmmcfg::build_instance(a, b, prune);
                const bmmcfg::Chart chart =
                    path == "cky" ? bmmcfg::cky_parse(inst.cnf_grammar, inst.word)
                                  : bmmcfg::recognize_bmm(inst.cnf_grammar, inst.word,
                                                          bmmcfg::bmm_bitset);
                volatile bool sink = bmmcfg::product_from_chart(inst, chart).any();
                (void)sink;
                grammar_size = inst.cnf_grammar.total_size();
                string_length = inst.word.size();
            }
            const auto stop = std::chrono::steady_clock::now();
            times.push_back(std::chrono::duration<double>(stop - start).count());
        }
        std::sort(times.begin(), times.end());
        const double median = times[times.size() / 2];
        records.push_back({m, path, median, grammar_size, string_length});
        out << "m=" << m << " path=" << path << " wall_time=" << median
            << " grammar_size=" << grammar_size
            << " string_length=" << string_length << "\n";
    }
    std::vector<std::size_t> distinct = sizes;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() >= 3) {
        const bmmcfg::ExponentFit fit = bmmcfg::fit_exponent(records);
        out << "fit path=" << path << " slope=" << fit.slope
            << " intercept=" << fit.intercept << " r2=" << fit.r_squared << "\n";
        if (fit.r_squared < 0.98)
            out << "warning: r2 below 0.98; small-m constants likely dominate\n";
    }
    return kExitOk;
}

int run_dump(const std::string& file_a, const std::string& file_b, bool prune,
             const std::string& out_path) {
    const bmmcfg::BoolMatrix a = load_matrix(file_a);
    const bmmcfg::BoolMatrix b = load_matrix(file_b);
    const bmmcfg::ReductionInstance inst = bmmcfg::build_instance(a, b, prune);
    std::ofstream file;
    std::ostream& out = open_output(file, out_path);
    bmmcfg::dump_instance(out, inst);
    bmmcfg::dump_stats(out, bmmcfg::instance_stats(inst));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Boolean matrix multiplication via CFG parsing"};
    app.require_subcommand(1);

    std::string file_a, file_b, path = "naive", out_path;
    std::uint64_t seed = 1;
    std::size_t trials = 100, max_m = 10, reps = 3;
    std::size_t mem_cap = std::size_t(2) << 30;
    bool prune = false;
    std::vector<std::size_t> sizes;

    auto* multiply = app.add_subcommand("multiply", "multiply two matrix files");
    multiply->add_option("a", file_a, "left matrix file")->required();
    multiply->add_option("b", file_b, "right matrix file")->required();
    multiply->add_option("--path", path, "naive|bitset|cky|bmm")
        ->check(CLI::IsMember({"naive", "bitset", "cky", "bmm"}));
    multiply->add_option("--out", out_path, "output file (default stdout)");

    auto* verify = app.add_subcommand(
        "verify", "random instances: parsing pipeline vs naive oracle");
    verify->add_option("--trials", trials, "number of trials");
    verify->add_option("--max-m", max_m, "dimension upper bound");
    verify->add_option("--seed", seed, "top-level seed");

    auto* bench = app.add_subcommand("bench", "time a path over several sizes");
    bench->add_option("--sizes", sizes, "comma-separated m list")
        ->required()
        ->delimiter(',');
    bench->add_option("--path", path, "naive|bitset|cky|bmm")
        ->check(CLI::IsMember({"naive", "bitset", "cky", "bmm"}));
    bench->add_option("--reps", reps, "repetitions (median reported)");
    bench->add_option("--seed", seed, "top-level seed");
    bench->add_option("--mem-cap", mem_cap, "instance memory cap in bytes");
    bench->add_flag("--prune", prune, "drop C/S-rules with empty children");
    bench->add_option("--out", out_path, "output file (default stdout)");

    auto* dump = app.add_subcommand("dump", "dump the grammar/string instance");
    dump->add_option("a", file_a, "left matrix file")->required();
    dump->add_option("b", file_b, "right matrix file")->required();
    dump->add_flag("--prune", prune, "drop C/S-rules with empty children");
    dump->add_option("--out", out_path, "output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (multiply->parsed()) return run_multiply(file_a, file_b, path, out_path);
        if (verify->parsed()) {
            if (trials < 1 || max_m < 1)
                throw std::invalid_argument("verify: trials and max-m must be >= 1");
            return run_verify(trials, max_m, seed);
        }
        if (bench->parsed()) {
            if (reps < 1) throw std::invalid_argument("bench: reps must be >= 1");
            return run_bench(sizes, path, reps, prune, mem_cap, seed, out_path);
        }
        return run_dump(file_a, file_b, prune, out_path);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitContract;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParseError;
    }
}
