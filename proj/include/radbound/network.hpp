#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace radbound {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// A bias-free ReLU network x -> W_D relu(W_{D-1} relu(... W_1 x)).
///
/// Layer m has shape w_m x w_{m-1}; the last layer has a single row. The
/// constructor enforces the shape chain and finiteness, so every instance is
/// a valid network.
class NetworkSpec {
public:
    explicit NetworkSpec(std::vector<Matrix> layers);

    std::size_t depth() const { return layers_.size(); }
    Eigen::Index input_dim() const { return layers_.front().cols(); }
    const std::vector<Matrix>& layers() const { return layers_; }
    const Matrix& layer(std::size_t m) const { return layers_.at(m); }

    /// w_0, w_1, ..., w_D (w_D == 1).
    std::vector<Eigen::Index> widths() const;

private:
    std::vector<Matrix> layers_;
};

/// n input points (stored as the columns of a w_0 x n matrix) inside the
/// radius-B ball.
class InputSet {
public:
    InputSet(Matrix points, double radius);
    InputSet(const std::vector<std::vector<double>>& points, double radius);

    Eigen::Index size() const { return points_.cols(); }
    Eigen::Index dim() const { return points_.rows(); }
    double radius() const { return radius_; }
    const Matrix& points() const { return points_; }
    Eigen::Ref<const Vector> point(Eigen::Index i) const { return points_.col(i); }

private:
    Matrix points_;
    double radius_;
};

double forward(const NetworkSpec& net, const Eigen::Ref<const Vector>& x);

/// Evaluates the network on every column of `points`; returns one output per column.
Eigen::RowVectorXd forward_batch(const NetworkSpec& net, const Eigen::Ref<const Matrix>& points);

class NormBudget;

struct LayerDiagnostic {
    double frobenius = 0.0;
    double operator_norm = 0.0;
    double frobenius_cap = 0.0;
    double operator_cap = 0.0;
    bool frobenius_ok = true;
    bool operator_ok = true;
};

struct MembershipReport {
    bool member = true;
    std::vector<LayerDiagnostic> layers;

    explicit operator bool() const { return member; }
};

inline constexpr double kMembershipTolerance = 1e-9;

MembershipReport validate_membership(const NetworkSpec& net, const NormBudget& budget);

}  // namespace radbound
