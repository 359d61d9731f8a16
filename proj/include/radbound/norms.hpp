#pragma once

#include <vector>

#include "radbound/network.hpp"

namespace radbound {

/// Per-layer Frobenius and operator-norm caps plus the input radius B.
///
/// Together these define the class F_D of depth-D ReLU networks whose layers
/// satisfy ||W_m||_F <= M_F(m) and ||W_m||_op <= M_op(m). Since the operator
/// norm never exceeds the Frobenius norm, an operator cap above the Frobenius
/// cap does not change the class; such caps are lowered to M_F(m).
class NormBudget {
public:
    NormBudget(std::vector<double> frobenius_caps, std::vector<double> operator_caps, double radius);

    std::size_t depth() const { return frobenius_.size(); }
    double radius() const { return radius_; }
    const std::vector<double>& frobenius_caps() const { return frobenius_; }
    const std::vector<double>& operator_caps() const { return operator_; }

    /// 1-based like the layer index m.
    double frobenius_cap(std::size_t m) const { return frobenius_.at(m - 1); }
    double operator_cap(std::size_t m) const { return operator_.at(m - 1); }

    /// Copy with layer m's two caps multiplied by `factor` (m is 1-based).
    NormBudget scaled_layer(std::size_t m, double factor) const;
    NormBudget with_radius(double radius) const;

private:
    std::vector<double> frobenius_;
    std::vector<double> operator_;
    double radius_;
};

double frobenius_norm(const Eigen::Ref<const Matrix>& m);

inline constexpr double kDefaultOperatorTolerance = 1e-10;
inline constexpr int kOperatorMaxIterations = 10000;

/// Largest singular value by power iteration on the Gram matrix.
///
/// Deterministic: starts from the normalized all-ones vector (and, as a
/// second opinion, the basis vector of the heaviest column). Stops once the
/// Gram eigen-residual ||Gv - lv|| drops below rel_tol * l, which bounds the
/// relative error of l. If 64 iterations pass without convergence the
/// iteration operator is squared. Throws ConvergenceError after
/// kOperatorMaxIterations iterations.
double operator_norm(const Eigen::Ref<const Matrix>& m, double rel_tol = kDefaultOperatorTolerance);

/// Tight budget for `net`: caps are (1 + slack) times the layer norms.
NormBudget budget_from_network(const NetworkSpec& net, double slack, double radius);

}  // namespace radbound
