#pragma once

// Random generators shared by the unit tests and the acceptance suite.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "radbound/network.hpp"
#include "radbound/norms.hpp"

namespace radbound::testing {

inline Matrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng, double scale = 1.0) {
    std::normal_distribution<double> normal(0.0, scale);
    Matrix m(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c) {
        for (Eigen::Index r = 0; r < rows; ++r) {
            m(r, c) = normal(rng);
        }
    }
    return m;
}

/// Random network with hidden widths in [1, max_width].
inline NetworkSpec random_network(std::size_t depth, Eigen::Index input_dim, std::mt19937_64& rng,
                                  Eigen::Index max_width = 5) {
    std::uniform_int_distribution<Eigen::Index> width(1, max_width);
    std::vector<Matrix> layers;
    Eigen::Index prev = input_dim;
    for (std::size_t m = 1; m <= depth; ++m) {
        const Eigen::Index rows = m == depth ? 1 : width(rng);
        layers.push_back(random_matrix(rows, prev, rng));
        prev = rows;
    }
    return NetworkSpec(std::move(layers));
}

/// Random budget; about a fifth of the layers get M_op == M_F exactly.
inline NormBudget random_budget(std::size_t depth, std::mt19937_64& rng, double radius = 1.0) {
    std::uniform_real_distribution<double> frob(0.2, 4.0);
    std::uniform_real_distribution<double> ratio(0.01, 1.0);
    std::bernoulli_distribution tight(0.2);
    std::vector<double> f(depth), op(depth);
    for (std::size_t m = 0; m < depth; ++m) {
        f[m] = frob(rng);
        op[m] = tight(rng) ? f[m] : f[m] * ratio(rng);
    }
    return NormBudget(f, op, radius);
}

inline Vector random_unit_vector(Eigen::Index dim, std::mt19937_64& rng) {
    Vector v = random_matrix(dim, 1, rng);
    return v / v.norm();
}

/// Points drawn inside the radius ball, one per column.
inline Matrix random_points(Eigen::Index dim, Eigen::Index n, double radius, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Matrix pts(dim, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        pts.col(i) = random_unit_vector(dim, rng) * (radius * u(rng));
    }
    return pts;
}

inline bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

inline std::filesystem::path scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("radbound_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace radbound::testing
