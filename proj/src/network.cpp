#include "radbound/network.hpp"

#include <cmath>
#include <string>

#include "radbound/error.hpp"
#include "radbound/norms.hpp"

namespace radbound {

NetworkSpec::NetworkSpec(std::vector<Matrix> layers) : layers_(std::move(layers)) {
    if (layers_.empty()) {
        throw StructuralError("network must have at least one layer");
    }
    for (std::size_t m = 0; m < layers_.size(); ++m) {
        const Matrix& w = layers_[m];
        if (w.rows() == 0 || w.cols() == 0) {
            throw ShapeError("layer " + std::to_string(m + 1) + " is empty");
        }
        if (!w.allFinite()) {
            throw NumericError("layer " + std::to_string(m + 1) + " has non-finite entries");
        }
        if (m > 0 && w.cols() != layers_[m - 1].rows()) {
            throw ShapeError("layer " + std::to_string(m + 1) + " has " + std::to_string(w.cols()) +
                             " columns but layer " + std::to_string(m) + " has " +
                             std::to_string(layers_[m - 1].rows()) + " rows");
        }
    }
    if (layers_.back().rows() != 1) {
        throw ShapeError("output layer must have exactly one row, got " + std::to_string(layers_.back().rows()));
    }
}

std::vector<Eigen::Index> NetworkSpec::widths() const {
    std::vector<Eigen::Index> w{input_dim()};
    for (const auto& layer : layers_) {
        w.push_back(layer.rows());
    }
    return w;
}

InputSet::InputSet(Matrix points, double radius) : points_(std::move(points)), radius_(radius) {
    if (!(radius_ > 0.0) || !std::isfinite(radius_)) {
        throw NumericError("input radius B must be positive and finite");
    }
    if (points_.cols() < 1 || points_.rows() < 1) {
        throw StructuralError("input set needs at least one point of positive dimension");
    }
    if (!points_.allFinite()) {
        throw NumericError("input points must be finite");
    }
    const double limit = radius_ * (1.0 + kMembershipTolerance);
    for (Eigen::Index i = 0; i < points_.cols(); ++i) {
        if (points_.col(i).norm() > limit) {
            throw StructuralError("point " + std::to_string(i) + " lies outside the radius-B ball");
        }
    }
}

namespace {

Matrix columns_from_rows(const std::vector<std::vector<double>>& points) {
    if (points.empty()) {
        throw StructuralError("input set needs at least one point");
    }
    const auto dim = static_cast<Eigen::Index>(points.front().size());
    Matrix out(dim, static_cast<Eigen::Index>(points.size()));
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (static_cast<Eigen::Index>(points[i].size()) != dim) {
            throw ShapeError("point " + std::to_string(i) + " has dimension " + std::to_string(points[i].size()) +
                             ", expected " + std::to_string(dim));
        }
        for (Eigen::Index j = 0; j < dim; ++j) {
            out(j, static_cast<Eigen::Index>(i)) = points[i][static_cast<std::size_t>(j)];
        }
    }
    return out;
}

}  // namespace

InputSet::InputSet(const std::vector<std::vector<double>>& points, double radius)
    : InputSet(columns_from_rows(points), radius) {}

Eigen::RowVectorXd forward_batch(const NetworkSpec& net, const Eigen::Ref<const Matrix>& points) {
    if (points.rows() != net.input_dim()) {
        throw ShapeError("layer 1 expects inputs of dimension " + std::to_string(net.input_dim()) + ", got " +
                         std::to_string(points.rows()));
    }
    Matrix act = points;
    const auto& layers = net.layers();
    for (std::size_t m = 0; m + 1 < layers.size(); ++m) {
        act = (layers[m] * act).cwiseMax(0.0);
    }
    return layers.back() * act;
}

double forward(const NetworkSpec& net, const Eigen::Ref<const Vector>& x) {
    return forward_batch(net, x)(0);
}

MembershipReport validate_membership(const NetworkSpec& net, const NormBudget& budget) {
    if (net.depth() != budget.depth()) {
        throw StructuralError("network depth " + std::to_string(net.depth()) + " does not match budget depth " +
                              std::to_string(budget.depth()));
    }
    MembershipReport report;
    for (std::size_t m = 1; m <= net.depth(); ++m) {
        LayerDiagnostic diag;
        diag.frobenius = frobenius_norm(net.layer(m - 1));
        diag.operator_norm = operator_norm(net.layer(m - 1));
        diag.frobenius_cap = budget.frobenius_cap(m);
        diag.operator_cap = budget.operator_cap(m);
        diag.frobenius_ok = diag.frobenius <= diag.frobenius_cap * (1.0 + kMembershipTolerance);
        diag.operator_ok = diag.operator_norm <= diag.operator_cap * (1.0 + kMembershipTolerance);
        report.member = report.member && diag.frobenius_ok && diag.operator_ok;
        report.layers.push_back(diag);
    }
    return report;
}

}  // namespace radbound
