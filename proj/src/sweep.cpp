#include "radbound/sweep.hpp"

#include <cmath>
#include <ostream>
#include <random>
#include <string>

#include "radbound/bounds.hpp"
#include "radbound/error.hpp"
#include "radbound/io.hpp"
#include "radbound/norms.hpp"
#include "seed.hpp"

namespace radbound {

std::string_view to_string(FamilyKind kind) {
    return kind == FamilyKind::Rank1 ? "rank1" : "gaussian";
}

FamilyKind parse_family(std::string_view name) {
    if (name == "rank1") return FamilyKind::Rank1;
    if (name == "gaussian") return FamilyKind::Gaussian;
    throw StructuralError("unknown network family '" + std::string(name) + "'");
}

namespace {

constexpr std::uint64_t kOutputLayerStream = ~std::uint64_t{0};

Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix w(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c) {
        for (Eigen::Index r = 0; r < rows; ++r) {
            w(r, c) = normal(rng);
        }
    }
    return w;
}

Matrix family_layer(const SweepFamily& family, Eigen::Index rows, Eigen::Index cols, std::uint64_t stream) {
    std::mt19937_64 rng(detail::mix_seed(family.seed, stream));
    Matrix w;
    if (family.kind == FamilyKind::Rank1) {
        const Matrix u = gaussian_matrix(rows, 1, rng);
        const Matrix v = gaussian_matrix(cols, 1, rng);
        w = u * v.transpose();
    } else {
        w = gaussian_matrix(rows, cols, rng);
    }
    return w * (family.per_layer_frobenius / w.norm());
}

}  // namespace

NetworkSpec make_family_network(const SweepFamily& family) {
    if (family.depth < 1 || family.width < 1) {
        throw StructuralError("sweep family needs depth >= 1 and width >= 1");
    }
    if (!(family.per_layer_frobenius > 0.0) || !std::isfinite(family.per_layer_frobenius)) {
        throw NumericError("per-layer Frobenius norm must be positive and finite");
    }
    std::vector<Matrix> layers;
    for (std::size_t m = 1; m < family.depth; ++m) {
        layers.push_back(family_layer(family, family.width, family.width, m));
    }
    layers.push_back(family_layer(family, 1, family.width, kOutputLayerStream));
    return NetworkSpec(std::move(layers));
}

std::vector<SweepRow> run_sweep(SweepFamily family, std::size_t depth_min, std::size_t depth_max, std::size_t n,
                                double radius) {
    if (depth_min < 1 || depth_min > depth_max) {
        throw StructuralError("depth range must satisfy 1 <= min <= max");
    }
    std::vector<SweepRow> rows;
    for (std::size_t depth = depth_min; depth <= depth_max; ++depth) {
        family.depth = depth;
        const NetworkSpec net = make_family_network(family);
        const NormProfile profile(budget_from_network(net, 0.0, radius));
        SweepRow row;
        row.depth = depth;
        row.frobenius_product = profile.frobenius_product(depth);
        row.operator_product = profile.operator_product(depth);
        row.ratio_sum = profile.ratio_sum();
        row.bound_main = main_bound(profile, n, radius);
        row.bound_baseline = baseline_bound(profile, n, radius);
        row.bound_optimal = composite_bound(profile, optimal_subsequence(profile), n, radius);
        rows.push_back(row);
    }
    return rows;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
    out << "depth,P_F,P_op,sum_R,bound_main,bound_baseline,bound_optimal\n";
    for (const auto& r : rows) {
        out << r.depth << ',' << format_double(r.frobenius_product) << ',' << format_double(r.operator_product)
            << ',' << format_double(r.ratio_sum) << ',' << format_double(r.bound_main) << ','
            << format_double(r.bound_baseline) << ',' << format_double(r.bound_optimal) << '\n';
    }
}

}  // namespace radbound
