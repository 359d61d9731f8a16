#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "radbound/norms.hpp"
#include "radbound/subsequence.hpp"

namespace radbound {

/// Cumulative norm products P_F(d), P_op(d) and their ratio R(d), d = 0..D.
///
/// R is accumulated as a product of per-layer ratios M_op/M_F <= 1, so it is
/// exactly nonincreasing and never overflows. The products are kept both as
/// plain doubles (which may overflow for deep networks) and as log-sums.
class NormProfile {
public:
    explicit NormProfile(const NormBudget& budget);

    std::size_t depth() const { return ratio_.size() - 1; }

    double frobenius_product(std::size_t d) const { return pf_.at(d); }
    double operator_product(std::size_t d) const { return pop_.at(d); }
    double log_frobenius_product(std::size_t d) const { return log_pf_.at(d); }
    double log_operator_product(std::size_t d) const { return log_pop_.at(d); }
    double ratio(std::size_t d) const { return ratio_.at(d); }
    const std::vector<double>& ratios() const { return ratio_; }

    /// sum_{d=0}^{D-1} R(d)
    double ratio_sum() const;

private:
    std::vector<double> pf_, pop_, log_pf_, log_pop_, ratio_;
};

NormProfile norm_profile(const NormBudget& budget);

/// 5 B n^{-1/2} P_F(D) sum_i R(d_{i-1}) sqrt(d_i - d_{i-1})
double composite_bound(const NormProfile& profile, const Subsequence& seq, std::size_t n, double radius);

/// 15 B n^{-1/2} P_F(D) sqrt(sum_{d<D} R(d))
double main_bound(const NormProfile& profile, std::size_t n, double radius);

/// Composite bound for the single step (0, D).
double baseline_bound(const NormProfile& profile, std::size_t n, double radius);

enum class BoundMethod { Main, Composite, Baseline, Optimal };

std::string_view to_string(BoundMethod method);
BoundMethod parse_bound_method(std::string_view name);

struct BoundReport {
    BoundMethod method = BoundMethod::Main;
    double value = 0.0;
    std::size_t n = 0;
    double radius = 0.0;
    std::optional<Subsequence> subsequence;
};

/// Evaluates `method`. `seq` is required for Composite and ignored otherwise.
BoundReport evaluate_bound(const NormProfile& profile, BoundMethod method, std::size_t n, double radius,
                           const std::optional<Subsequence>& seq = std::nullopt);

}  // namespace radbound
