#include <doctest.h>

#include <cmath>
#include <limits>

#include "radbound/bounds.hpp"
#include "radbound/error.hpp"
#include "radbound/network.hpp"
#include "radbound/norms.hpp"
#include "support.hpp"

using namespace radbound;
using radbound::testing::close_rel;

namespace {

Matrix mat(std::initializer_list<std::initializer_list<double>> rows) {
    Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
    Eigen::Index r = 0;
    for (const auto& row : rows) {
        Eigen::Index c = 0;
        for (double v : row) m(r, c++) = v;
        ++r;
    }
    return m;
}

Vector vec(std::initializer_list<double> xs) {
    Vector v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v(i++) = x;
    return v;
}

}  // namespace

TEST_CASE("forward evaluates the layer composition") {
    CHECK(forward(NetworkSpec({mat({{1, -1}})}), vec({3, 1})) == 2.0);
    CHECK(forward(NetworkSpec({mat({{-1, 0}, {0, -1}}), mat({{1, 1}})}), vec({1, 1})) == 0.0);
    CHECK(forward(NetworkSpec({mat({{2, 0}, {0, 2}}), mat({{1, 1}})}), vec({1, 2})) == 6.0);
}

TEST_CASE("relu is not applied to the output") {
    NetworkSpec net({mat({{1, 0}, {0, 1}}), mat({{-1, -1}})});
    CHECK(forward(net, vec({1, 2})) == -3.0);
}

TEST_CASE("forward rejects inputs of the wrong dimension") {
    NetworkSpec net({mat({{1, 0, 0}, {0, 1, 0}}), mat({{1, 1}})});
    CHECK_THROWS_WITH_AS(forward(net, vec({1, 2})), doctest::Contains("layer 1"), ShapeError);
}

TEST_CASE("network construction enforces its invariants") {
    CHECK_THROWS_AS(NetworkSpec({}), StructuralError);
    CHECK_THROWS_AS(NetworkSpec({mat({{1, 1}, {1, 1}})}), ShapeError);
    CHECK_THROWS_WITH_AS(NetworkSpec({mat({{1, 1}, {1, 1}}), mat({{1, 1, 1}})}), doctest::Contains("layer 2"),
                         ShapeError);
    Matrix bad = mat({{1, 2}});
    bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(NetworkSpec({bad}), NumericError);

    NetworkSpec net({mat({{1, 0, 0}, {0, 1, 0}}), mat({{1, 1}})});
    CHECK(net.widths() == std::vector<Eigen::Index>{3, 2, 1});
}

TEST_CASE("input sets live in the radius-B ball") {
    using Rows = std::vector<std::vector<double>>;
    InputSet ok(Rows{{3.0, 4.0}, {0.0, 0.0}}, 5.0);
    CHECK(ok.size() == 2);
    CHECK(ok.dim() == 2);
    InputSet slack(Rows{{3.0, 4.0 + 1e-12}}, 5.0);
    CHECK(slack.size() == 1);
    CHECK_THROWS_AS(InputSet(Rows{{3.0, 4.1}}, 5.0), StructuralError);
    CHECK_THROWS_AS(InputSet(Rows{{1.0}, {1.0, 0.0}}, 5.0), ShapeError);
    CHECK_THROWS_AS(InputSet(Rows{}, 1.0), StructuralError);
    CHECK_THROWS_AS(InputSet(Rows{{0.0}}, 0.0), NumericError);
}

TEST_CASE("membership checks both caps per layer") {
    const NetworkSpec zero({Matrix::Zero(3, 2), Matrix::Zero(1, 3)});
    CHECK(validate_membership(zero, NormBudget({1.0, 1.0}, {1.0, 1.0}, 1.0)).member);

    // The output layer must have one row, so the diagonal matrix is layer 1.
    const NetworkSpec net({mat({{3, 0}, {0, 4}}), mat({{1e-3, 0}})});
    const auto ok = validate_membership(net, NormBudget({5.0, 1.0}, {4.0, 1.0}, 1.0));
    CHECK(ok.member);
    CHECK(ok.layers[0].frobenius == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(ok.layers[0].operator_norm == doctest::Approx(4.0).epsilon(1e-12));

    const auto bad = validate_membership(net, NormBudget({5.0, 1.0}, {3.9, 1.0}, 1.0));
    CHECK_FALSE(bad.member);
    CHECK(bad.layers[0].frobenius_ok);
    CHECK_FALSE(bad.layers[0].operator_ok);
    CHECK(bad.layers[1].operator_ok);

    CHECK_THROWS_AS(validate_membership(net, NormBudget({5.0}, {4.0}, 1.0)), StructuralError);
}

TEST_CASE("membership tolerates 1e-9 relative slack only") {
    const NetworkSpec net({mat({{1.0, 0.0}})});
    CHECK(validate_membership(net, NormBudget({1.0 - 5e-10}, {1.0 - 5e-10}, 1.0)).member);
    CHECK_FALSE(validate_membership(net, NormBudget({1.0 - 1e-8}, {1.0 - 1e-8}, 1.0)).member);
}

TEST_CASE("property: forward is positively homogeneous in the input") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> scale(0.0, 10.0);
    for (int trial = 0; trial < 200; ++trial) {
        const NetworkSpec net = testing::random_network(1 + trial % 5, 3, rng);
        const Vector x = testing::random_matrix(3, 1, rng);
        const double c = trial == 0 ? 0.0 : scale(rng);
        const double base = forward(net, x);
        const double scaled = forward(net, c * x);
        CHECK(std::abs(scaled - c * base) <= 1e-9 * std::max(1.0, std::abs(c * base)));
    }
}

TEST_CASE("property: outputs on the unit ball are bounded by P_op(D)") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 200; ++trial) {
        const NetworkSpec net = testing::random_network(1 + trial % 6, 4, rng);
        const NormProfile profile(budget_from_network(net, 0.0, 1.0));
        const double cap = profile.operator_product(net.depth());
        for (int k = 0; k < 10; ++k) {
            const Vector x = testing::random_unit_vector(4, rng);
            CHECK(std::abs(forward(net, x)) <= cap * (1.0 + 1e-9));
        }
    }
}

TEST_CASE("property: scaling one layer by c >= 0 scales the output by c") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> scale(0.0, 5.0);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t depth = 1 + trial % 4;
        const NetworkSpec net = testing::random_network(depth, 3, rng);
        const Vector x = testing::random_matrix(3, 1, rng);
        const double c = scale(rng);
        auto layers = net.layers();
        layers[static_cast<std::size_t>(trial) % depth] *= c;
        const double expected = c * forward(net, x);
        CHECK(std::abs(forward(NetworkSpec(layers), x) - expected) <= 1e-9 * std::max(1.0, std::abs(expected)));
    }
}
