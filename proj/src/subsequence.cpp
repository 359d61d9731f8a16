#include "radbound/subsequence.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "radbound/bounds.hpp"
#include "radbound/error.hpp"

namespace radbound {

Subsequence::Subsequence(std::vector<std::size_t> breakpoints) : points_(std::move(breakpoints)) {
    if (points_.size() < 2) {
        throw StructuralError("subsequence needs at least the breakpoints 0 and D");
    }
    if (points_.front() != 0) {
        throw StructuralError("subsequence must start at 0");
    }
    for (std::size_t i = 1; i < points_.size(); ++i) {
        if (points_[i] <= points_[i - 1]) {
            throw StructuralError("subsequence must be strictly increasing");
        }
    }
}

Subsequence Subsequence::parse(std::string_view text) {
    std::vector<std::size_t> points;
    while (true) {
        const auto comma = text.find(',');
        std::string_view token = text.substr(0, comma);
        while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
        while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
        std::size_t value = 0;
        const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
            throw StructuralError("malformed subsequence entry '" + std::string(token) + "'");
        }
        points.push_back(value);
        if (comma == std::string_view::npos) {
            break;
        }
        text.remove_prefix(comma + 1);
    }
    return Subsequence(std::move(points));
}

Subsequence Subsequence::single_step(std::size_t depth) {
    return Subsequence({0, depth});
}

double subsequence_cost(const NormProfile& profile, const Subsequence& seq) {
    if (seq.depth() != profile.depth()) {
        throw StructuralError("subsequence ends at " + std::to_string(seq.depth()) + " but the network depth is " +
                              std::to_string(profile.depth()));
    }
    const auto& d = seq.breakpoints();
    double cost = 0.0;
    for (std::size_t i = 1; i < d.size(); ++i) {
        cost += profile.ratio(d[i - 1]) * std::sqrt(static_cast<double>(d[i] - d[i - 1]));
    }
    return cost;
}

Subsequence dyadic_subsequence(const NormProfile& profile) {
    const std::size_t depth = profile.depth();
    std::vector<std::size_t> points{0};
    std::size_t d = 0;
    for (int i = 1;; ++i) {
        const double threshold = std::ldexp(1.0, -i);
        if (threshold == 0.0) {
            points.push_back(depth);
            break;
        }
        // R is nonincreasing, so the minimal d for this threshold is at or after the previous one.
        while (d < depth && profile.ratio(d) > threshold) {
            ++d;
        }
        if (d >= depth) {
            points.push_back(depth);
            break;
        }
        if (d != points.back()) {
            points.push_back(d);
        }
    }
    return Subsequence(std::move(points));
}

Subsequence optimal_subsequence(const NormProfile& profile) {
    const std::size_t depth = profile.depth();
    std::vector<double> cost(depth + 1, std::numeric_limits<double>::infinity());
    std::vector<std::size_t> prev(depth + 1, 0);
    cost[0] = 0.0;
    for (std::size_t d = 1; d <= depth; ++d) {
        for (std::size_t p = 0; p < d; ++p) {
            const double c = cost[p] + profile.ratio(p) * std::sqrt(static_cast<double>(d - p));
            if (c < cost[d]) {
                cost[d] = c;
                prev[d] = p;
            }
        }
    }
    std::vector<std::size_t> points{depth};
    while (points.back() != 0) {
        points.push_back(prev[points.back()]);
    }
    std::reverse(points.begin(), points.end());
    return Subsequence(std::move(points));
}

Subsequence brute_force_subsequence(const NormProfile& profile) {
    const std::size_t depth = profile.depth();
    if (depth > kBruteForceMaxDepth) {
        throw StructuralError("brute-force enumeration refuses depth " + std::to_string(depth) + " > " +
                              std::to_string(kBruteForceMaxDepth));
    }
    // Prefer, among equal costs, the smallest breakpoints read from the end;
    // this is the sequence the DP's smallest-predecessor rule backtracks to.
    const auto later_wins_tie = [](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
        return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
    };

    const std::uint64_t interior = depth - 1;
    std::vector<std::size_t> best;
    double best_cost = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> points;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << interior); ++mask) {
        points.assign(1, 0);
        for (std::uint64_t b = 0; b < interior; ++b) {
            if (mask & (std::uint64_t{1} << b)) {
                points.push_back(static_cast<std::size_t>(b + 1));
            }
        }
        points.push_back(depth);
        double cost = 0.0;
        for (std::size_t i = 1; i < points.size(); ++i) {
            cost += profile.ratio(points[i - 1]) * std::sqrt(static_cast<double>(points[i] - points[i - 1]));
        }
        if (cost < best_cost || (cost == best_cost && later_wins_tie(points, best))) {
            best_cost = cost;
            best = points;
        }
    }
    return Subsequence(std::move(best));
}

}  // namespace radbound
