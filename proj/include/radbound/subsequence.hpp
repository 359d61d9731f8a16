#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace radbound {

class NormProfile;

/// Layer breakpoints 0 = d_0 < d_1 < ... < d_k = D, k >= 1.
class Subsequence {
public:
    explicit Subsequence(std::vector<std::size_t> breakpoints);

    /// Parses "0,3,7".
    static Subsequence parse(std::string_view text);
    /// The one-step sequence (0, D).
    static Subsequence single_step(std::size_t depth);

    const std::vector<std::size_t>& breakpoints() const { return points_; }
    std::size_t steps() const { return points_.size() - 1; }
    std::size_t depth() const { return points_.back(); }

    friend bool operator==(const Subsequence&, const Subsequence&) = default;

private:
    std::vector<std::size_t> points_;
};

/// sum_{i=1}^k R(d_{i-1}) sqrt(d_i - d_{i-1}). Throws StructuralError if the
/// sequence does not end at the profile's depth.
double subsequence_cost(const NormProfile& profile, const Subsequence& seq);

/// d_i minimal with R(d_i) <= 2^{-i}, last breakpoint forced to D.
Subsequence dyadic_subsequence(const NormProfile& profile);

/// Exact minimizer of subsequence_cost by an O(D^2) dynamic program.
/// Ties go to the smallest predecessor.
Subsequence optimal_subsequence(const NormProfile& profile);

inline constexpr std::size_t kBruteForceMaxDepth = 20;

/// Enumerates all 2^{D-1} subsequences. Refuses D > kBruteForceMaxDepth.
Subsequence brute_force_subsequence(const NormProfile& profile);

}  // namespace radbound
