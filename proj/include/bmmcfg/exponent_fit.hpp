#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace bmmcfg {

struct BenchRecord {
    std::size_t m;
    std::string path;
    double wall_time;  // seconds, median over repetitions
    std::size_t grammar_size;
    std::size_t string_length;
};

struct ExponentFit {
    double slope;
    double intercept;
    double r_squared;
};

// Ordinary least squares of log(time) against log(m). Needs at least three
// distinct sizes; small-m constants pollute slopes, so callers should warn
// rather than fail on mediocre r^2.
inline ExponentFit fit_exponent(const std::vector<BenchRecord>& records) {
    std::vector<double> xs, ys;
    for (const BenchRecord& r : records) {
        if (r.wall_time <= 0.0)
            throw std::invalid_argument("fit_exponent: nonpositive wall time");
        xs.push_back(std::log(static_cast<double>(r.m)));
        ys.push_back(std::log(r.wall_time));
    }
    std::vector<double> distinct = xs;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 3)
        throw std::invalid_argument("fit_exponent: need at least 3 distinct sizes");

    const std::size_t k = xs.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < k; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= k;
    my /= k;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < k; ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    ExponentFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    return fit;
}

}  // namespace bmmcfg
