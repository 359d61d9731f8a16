#include "radbound/bounds.hpp"

#include <cmath>
#include <string>

#include "radbound/error.hpp"

namespace radbound {

NormProfile::NormProfile(const NormBudget& budget) {
    const std::size_t depth = budget.depth();
    pf_.assign(depth + 1, 1.0);
    pop_.assign(depth + 1, 1.0);
    log_pf_.assign(depth + 1, 0.0);
    log_pop_.assign(depth + 1, 0.0);
    ratio_.assign(depth + 1, 1.0);
    for (std::size_t m = 1; m <= depth; ++m) {
        const double f = budget.frobenius_cap(m);
        const double op = budget.operator_cap(m);
        pf_[m] = pf_[m - 1] * f;
        pop_[m] = pop_[m - 1] * op;
        log_pf_[m] = log_pf_[m - 1] + std::log(f);
        log_pop_[m] = log_pop_[m - 1] + std::log(op);
        ratio_[m] = ratio_[m - 1] * (op / f);
    }
}

double NormProfile::ratio_sum() const {
    double sum = 0.0;
    for (std::size_t d = 0; d < depth(); ++d) {
        sum += ratio_[d];
    }
    return sum;
}

NormProfile norm_profile(const NormBudget& budget) {
    return NormProfile(budget);
}

namespace {

double prefactor(double constant, std::size_t n, double radius) {
    if (n == 0) {
        throw StructuralError("sample count n must be positive");
    }
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        throw NumericError("input radius B must be positive and finite");
    }
    return constant * radius / std::sqrt(static_cast<double>(n));
}

// factor * P_F(D), falling back to log space when the plain product is out of range.
double times_frobenius_product(double factor, const NormProfile& profile) {
    const std::size_t depth = profile.depth();
    const double direct = factor * profile.frobenius_product(depth);
    if (std::isfinite(direct) && direct > 0.0) {
        return direct;
    }
    const double value = std::exp(std::log(factor) + profile.log_frobenius_product(depth));
    if (!std::isfinite(value)) {
        throw NumericError("bound value overflows double precision");
    }
    if (value == 0.0) {
        throw NumericError("bound value underflows double precision");
    }
    return value;
}

}  // namespace

double composite_bound(const NormProfile& profile, const Subsequence& seq, std::size_t n, double radius) {
    return times_frobenius_product(prefactor(5.0, n, radius) * subsequence_cost(profile, seq), profile);
}

double main_bound(const NormProfile& profile, std::size_t n, double radius) {
    return times_frobenius_product(prefactor(15.0, n, radius) * std::sqrt(profile.ratio_sum()), profile);
}

double baseline_bound(const NormProfile& profile, std::size_t n, double radius) {
    return composite_bound(profile, Subsequence::single_step(profile.depth()), n, radius);
}

std::string_view to_string(BoundMethod method) {
    switch (method) {
        case BoundMethod::Main: return "main";
        case BoundMethod::Composite: return "composite";
        case BoundMethod::Baseline: return "baseline";
        case BoundMethod::Optimal: return "optimal";
    }
    return "unknown";
}

BoundMethod parse_bound_method(std::string_view name) {
    if (name == "main") return BoundMethod::Main;
    if (name == "composite") return BoundMethod::Composite;
    if (name == "baseline") return BoundMethod::Baseline;
    if (name == "optimal") return BoundMethod::Optimal;
    throw StructuralError("unknown bound method '" + std::string(name) + "'");
}

BoundReport evaluate_bound(const NormProfile& profile, BoundMethod method, std::size_t n, double radius,
                           const std::optional<Subsequence>& seq) {
    BoundReport report;
    report.method = method;
    report.n = n;
    report.radius = radius;
    switch (method) {
        case BoundMethod::Main:
            report.value = main_bound(profile, n, radius);
            break;
        case BoundMethod::Baseline:
            report.value = baseline_bound(profile, n, radius);
            break;
        case BoundMethod::Composite:
            if (!seq) {
                throw StructuralError("composite bound requires a subsequence");
            }
            report.subsequence = *seq;
            report.value = composite_bound(profile, *seq, n, radius);
            break;
        case BoundMethod::Optimal:
            report.subsequence = optimal_subsequence(profile);
            report.value = composite_bound(profile, *report.subsequence, n, radius);
            break;
    }
    return report;
}

}  // namespace radbound
