#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "radbound/network.hpp"

namespace radbound {

enum class FamilyKind { Rank1, Gaussian };

std::string_view to_string(FamilyKind kind);
FamilyKind parse_family(std::string_view name);

/// Synthetic network family used to exhibit how sum_d R(d) behaves with depth.
struct SweepFamily {
    FamilyKind kind = FamilyKind::Gaussian;
    std::size_t depth = 1;
    Eigen::Index width = 16;
    double per_layer_frobenius = 1.0;
    std::uint64_t seed = 0;
};

/// Depth-`family.depth` network of square width x width hidden layers and a
/// 1 x width output layer, each scaled to Frobenius norm per_layer_frobenius.
/// Layer m depends only on (seed, m), so shallower members are prefixes of
/// deeper ones apart from the output layer.
NetworkSpec make_family_network(const SweepFamily& family);

struct SweepRow {
    std::size_t depth = 0;
    double frobenius_product = 0.0;
    double operator_product = 0.0;
    double ratio_sum = 0.0;
    double bound_main = 0.0;
    double bound_baseline = 0.0;
    double bound_optimal = 0.0;
};

std::vector<SweepRow> run_sweep(SweepFamily family, std::size_t depth_min, std::size_t depth_max,
                                std::size_t n, double radius);

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out);

}  // namespace radbound
