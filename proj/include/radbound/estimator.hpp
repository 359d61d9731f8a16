#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "radbound/network.hpp"
#include "radbound/norms.hpp"

namespace radbound {

/// Rademacher signs, one per input point.
class SignVector {
public:
    explicit SignVector(std::vector<int> signs);

    /// The `index`-th of the 2^n sign vectors; bit i set means eps_i = -1.
    static SignVector enumerate(std::size_t n, std::uint64_t index);

    std::size_t size() const { return signs_.size(); }
    int operator[](std::size_t i) const { return signs_[i]; }
    const std::vector<int>& signs() const { return signs_; }
    SignVector negated() const;

private:
    std::vector<int> signs_;
};

enum class EstimatorMode { Exact, MonteCarlo };

std::string_view to_string(EstimatorMode mode);
EstimatorMode parse_estimator_mode(std::string_view name);

inline constexpr std::size_t kExactMaxPoints = 16;

struct EstimatorConfig {
    std::size_t restarts = 20;
    std::size_t steps = 500;
    double step_size = 0.1;
    std::vector<Eigen::Index> widths{1, 2, 4};
    std::uint64_t seed = 0;
    EstimatorMode mode = EstimatorMode::Exact;
    std::size_t mc_samples = 256;
    /// 0 picks std::thread::hardware_concurrency().
    std::size_t threads = 0;

    /// Throws StructuralError on zero restarts/steps/widths or a non-positive step size.
    void validate() const;
};

/// (1/n) sum_i eps_i f(x_i)
double correlation(const NetworkSpec& net, const InputSet& inputs, const SignVector& eps);

/// Clips each layer's singular values to M_op(m), then rescales the layer
/// onto the Frobenius ball of radius M_F(m) if it is still outside. Layers
/// already inside both caps are returned untouched.
NetworkSpec project_to_budget(const NetworkSpec& net, const NormBudget& budget);

struct SupEstimate {
    double value = 0.0;
    NetworkSpec witness;
};

/// Called with every projected iterate; used by tests to observe the ascent.
using IterateObserver = std::function<void(const NetworkSpec&)>;

/// Lower estimate of sup_{f in F_D} (1/n) sum_i eps_i f(x_i) by projected
/// gradient ascent, restarted cfg.restarts times for every width in
/// cfg.widths. The returned value is the correlation of the returned witness,
/// which is a member of the class.
SupEstimate estimate_sup(const InputSet& inputs, const SignVector& eps, const NormBudget& budget,
                         const EstimatorConfig& cfg, const IterateObserver& observer = {});

struct RademacherEstimate {
    double mean = 0.0;
    /// Standard error of the mean; Monte Carlo mode only.
    std::optional<double> standard_error;
    std::size_t sign_vectors = 0;
    EstimatorMode mode = EstimatorMode::Exact;
    /// Witness of the sign vector with the largest supremum estimate.
    std::optional<NetworkSpec> best_witness;
};

/// Averages estimate_sup over all 2^n sign vectors (exact) or over
/// cfg.mc_samples seeded draws (Monte Carlo). Deterministic in (cfg, inputs,
/// budget) irrespective of cfg.threads.
RademacherEstimate empirical_rademacher(const InputSet& inputs, const NormBudget& budget,
                                        const EstimatorConfig& cfg);

}  // namespace radbound
