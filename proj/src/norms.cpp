#include "radbound/norms.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "radbound/error.hpp"

namespace radbound {

NormBudget::NormBudget(std::vector<double> frobenius_caps, std::vector<double> operator_caps, double radius)
    : frobenius_(std::move(frobenius_caps)), operator_(std::move(operator_caps)), radius_(radius) {
    if (frobenius_.empty()) {
        throw StructuralError("budget must cover at least one layer");
    }
    if (frobenius_.size() != operator_.size()) {
        throw StructuralError("budget has " + std::to_string(frobenius_.size()) + " Frobenius caps but " +
                              std::to_string(operator_.size()) + " operator caps");
    }
    if (!(radius_ > 0.0) || !std::isfinite(radius_)) {
        throw NumericError("input radius B must be positive and finite");
    }
    for (std::size_t m = 0; m < frobenius_.size(); ++m) {
        const double f = frobenius_[m];
        const double op = operator_[m];
        if (!(f > 0.0) || !std::isfinite(f) || !(op > 0.0) || !std::isfinite(op)) {
            throw NumericError("caps of layer " + std::to_string(m + 1) + " must be positive and finite");
        }
        operator_[m] = std::min(op, f);
    }
}

NormBudget NormBudget::scaled_layer(std::size_t m, double factor) const {
    auto f = frobenius_;
    auto op = operator_;
    f.at(m - 1) *= factor;
    op.at(m - 1) *= factor;
    return NormBudget(std::move(f), std::move(op), radius_);
}

NormBudget NormBudget::with_radius(double radius) const {
    return NormBudget(frobenius_, operator_, radius);
}

double frobenius_norm(const Eigen::Ref<const Matrix>& m) {
    if (!m.allFinite()) {
        throw NumericError("frobenius_norm: non-finite entries");
    }
    return m.norm();
}

namespace {

struct PowerRun {
    double eigenvalue = 0.0;
    Vector iterate;
    bool converged = false;
};

constexpr int kSquareEvery = 64;
constexpr Eigen::Index kMaxSquaredDim = 2048;

// Top eigenvalue of the symmetric PSD matrix `gram` from start vector `v`.
PowerRun gram_power_iteration(const Matrix& gram, Vector v, double rel_tol) {
    Matrix op = gram;
    int stalled = 0;
    double eigenvalue = 0.0;
    for (int it = 0; it < kOperatorMaxIterations; ++it) {
        Vector w = op * v;
        const double w_norm = w.norm();
        if (w_norm == 0.0) {
            // v lies in the kernel of the Gram matrix.
            return {0.0, v, true};
        }
        v = w / w_norm;
        const Vector gv = gram * v;
        eigenvalue = v.dot(gv);
        if ((gv - eigenvalue * v).norm() <= rel_tol * eigenvalue) {
            return {eigenvalue, v, true};
        }
        if (++stalled == kSquareEvery && op.rows() <= kMaxSquaredDim) {
            op = op * op;
            const double scale = op.cwiseAbs().maxCoeff();
            if (scale > 0.0) {
                op /= scale;
            }
            stalled = 0;
        }
    }
    return {eigenvalue, v, false};
}

}  // namespace

double operator_norm(const Eigen::Ref<const Matrix>& m, double rel_tol) {
    if (!(rel_tol > 0.0) || rel_tol > 1e-3) {
        throw StructuralError("operator_norm: rel_tol must lie in (0, 1e-3]");
    }
    if (!m.allFinite()) {
        throw NumericError("operator_norm: non-finite entries");
    }
    if (m.size() == 0 || m.isZero(0.0)) {
        return 0.0;
    }
    const Matrix gram = m.cols() <= m.rows() ? Matrix(m.transpose() * m) : Matrix(m * m.transpose());
    const Eigen::Index dim = gram.rows();

    const Vector ones = Vector::Ones(dim) / std::sqrt(static_cast<double>(dim));
    Eigen::Index heaviest = 0;
    gram.diagonal().maxCoeff(&heaviest);
    const Vector basis = Vector::Unit(dim, heaviest);

    double best = 0.0;
    for (const Vector* start : {&ones, &basis}) {
        PowerRun run = gram_power_iteration(gram, *start, rel_tol);
        if (!run.converged) {
            throw ConvergenceError("operator_norm: power iteration did not converge in " +
                                       std::to_string(kOperatorMaxIterations) + " iterations",
                                   std::sqrt(std::max(run.eigenvalue, 0.0)), std::move(run.iterate));
        }
        best = std::max(best, run.eigenvalue);
    }
    return std::sqrt(best);
}

NormBudget budget_from_network(const NetworkSpec& net, double slack, double radius) {
    if (!(slack >= 0.0) || !std::isfinite(slack)) {
        throw NumericError("slack must be nonnegative and finite");
    }
    std::vector<double> f_caps;
    std::vector<double> op_caps;
    for (std::size_t m = 0; m < net.depth(); ++m) {
        const double f = frobenius_norm(net.layer(m));
        if (f == 0.0) {
            throw DegenerateBudgetError("layer " + std::to_string(m + 1) +
                                        " is all zeros; its norm ratio is undefined");
        }
        const double op = operator_norm(net.layer(m));
        f_caps.push_back((1.0 + slack) * f);
        op_caps.push_back(std::min((1.0 + slack) * op, f_caps.back()));
    }
    return NormBudget(std::move(f_caps), std::move(op_caps), radius);
}

}  // namespace radbound
