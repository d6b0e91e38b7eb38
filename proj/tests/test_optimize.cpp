#include <doctest.h>

#include <cmath>

#include "losrnet/fidelity.hpp"
#include "losrnet/optimize.hpp"

using namespace losrnet;

namespace {

const SchmidtObjective kRecursive2 = [](const SchmidtVector& lambda) {
    return fidelity_recursive(lambda, 2);
};

}  // namespace

TEST_CASE("the two-dimensional optimum is found from random starts") {
    const OptimizationReport report = maximize_schmidt(kRecursive2, 2, 16, 1);
    CHECK(std::abs(report.best_value - 0.5170401751642) <= 1e-7);
    const double p0 = std::max(report.argmax[0], report.argmax[1]);
    CHECK(std::abs(p0 - 0.8346811596) <= 1e-5);
}

TEST_CASE("reports are deterministic given the seed") {
    const OptimizationReport first = maximize_schmidt(kRecursive2, 2, 8, 42);
    const OptimizationReport second = maximize_schmidt(kRecursive2, 2, 8, 42);
    CHECK(first.best_value == second.best_value);
    CHECK(first.iterations == second.iterations);
    CHECK((first.argmax.values() - second.argmax.values()).cwiseAbs().maxCoeff() == 0.0);

    const OptimizationReport other = maximize_schmidt(kRecursive2, 2, 8, 43);
    CHECK(std::abs(other.best_value - first.best_value) <= 1e-7);  // same optimum either way
}

TEST_CASE("argmax lies on the simplex and re-evaluates to the reported value") {
    const OptimizationReport report = maximize_schmidt(
        [](const SchmidtVector& lambda) { return fidelity_recursive(lambda, 3); }, 3, 12, 7);
    CHECK(std::abs(report.argmax.values().sum() - 1.0) <= 1e-10);
    CHECK(report.argmax.values().minCoeff() >= 0.0);
    CHECK(std::abs(fidelity_recursive(report.argmax.to_schmidt(), 3) - report.best_value) <=
          1e-12);
    CHECK(std::abs(report.best_value - 0.54009112) <= 1e-5);
}

TEST_CASE("the odd construction peaks at the uniform point") {
    const OptimizationReport report = maximize_schmidt(
        [](const SchmidtVector& lambda) { return fidelity_odd(lambda, 3); }, 3, 12, 5);
    CHECK(std::abs(report.best_value - 4.0 / 9.0) <= 1e-8);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(report.argmax[i] - 1.0 / 3.0) <= 1e-4);
}

TEST_CASE("non-finite objectives raise a numerical error") {
    const SchmidtObjective bad = [](const SchmidtVector&) {
        return std::numeric_limits<double>::quiet_NaN();
    };
    CHECK_THROWS_AS(maximize_schmidt(bad, 2, 1, 0), NumericalError);
}

TEST_CASE("warm starts must match the dimension") {
    RealVector p(3);
    p << 0.5, 0.25, 0.25;
    CHECK_THROWS_AS(maximize_schmidt(kRecursive2, 2, 4, 0, {SimplexPoint(p)}),
                    std::invalid_argument);
}

TEST_CASE("the short table chain reproduces the printed rows") {
    const auto rows = optimal_schmidt_table(4, 12, 0);
    REQUIRE(rows.size() == 3);
    CHECK(std::abs(rows[0].fidelity - 0.51704017) <= 1e-5);
    CHECK(std::abs(rows[1].fidelity - 0.54009112) <= 1e-5);
    CHECK(std::abs(rows[2].fidelity - 0.54595881) <= 1e-5);
    CHECK(std::abs(rows[2].schmidt_coefficients(0) - 0.79959) <= 1e-3);
}

TEST_CASE("negative-branch bound and its algebraic identity") {
    const double value = ghz3_bound_negative_branch();
    CHECK(std::abs(value - (49.0 - 5.0 * std::sqrt(42.0)) / 28.0) <= 1e-15);
    CHECK(std::abs(value - 0.5927) <= 1e-4);
    const double z2_star = (42.0 - 5.0 * std::sqrt(42.0)) / 21.0;
    CHECK(std::abs((1.0 + 3.0 * z2_star) / 4.0 - value) <= 1e-15);
}

TEST_CASE("the sextic root pins the positive-branch optimum") {
    const double root = ghz3_bound_sextic_root();
    CHECK(std::abs(root - 0.6172445703873906) <= 1e-10);

    const auto& poly = ghz3_bound_polynomial();
    CHECK(std::abs(evaluate_polynomial(poly, root)) <= 1e-6 * std::abs(poly.back()));

    const auto roots_inside = real_roots_in_interval(poly, 0.0, 1.0);
    CHECK(roots_inside.size() == 1);
}

TEST_CASE("positive-branch scan approaches the sextic root and dominates the other branch") {
    const CorrelatorBoundResult bound = ghz3_bound_positive_branch(1e-2, 1e-8);
    CHECK(std::abs(bound.value - ghz3_bound_sextic_root()) <= 1e-3);
    CHECK(bound.value > ghz3_bound_negative_branch());
    // the returned point is feasible: both constraints hold
    CHECK(3.0 * std::pow(1.0 + 2.0 * bound.z1 + bound.z2, 2) <=
          6.0 * std::pow(1.0 + bound.z1, 3));
    const double finner = 1.0 - 3.0 * bound.z1 + 3.0 * bound.z2 - bound.z3;
    CHECK(finner >= 0.0);
    CHECK(finner <= std::sqrt(8.0 * std::pow(1.0 - bound.z1, 3)));
}

TEST_CASE("restricting the scan to the z1 = 1 face caps the objective at 1/2") {
    // There the lower Finner branch forces z3 = 3 z2 - 2, so the second
    // radicand vanishes and the objective reduces to (2 + 6 z2)/16.
    for (double z2 = -1.0; z2 <= 1.0; z2 += 0.05) {
        const double z3 = 3.0 * z2 - 2.0;
        if (z3 < -1.0 || z3 > 1.0) continue;
        const double r1 = std::max(0.0, 1.0 + 3.0 + 3.0 * z2 + z3);
        const double value = r1 / 16.0;
        CHECK(value <= 0.5 + 1e-12);
    }
}

TEST_CASE("without constraints the objective alone can reach 1") {
    const double r1 = 1.0 + 3.0 * 0.0 + 3.0 * 1.0 + 0.0;
    const double r2 = 1.0 - 3.0 * 0.0 + 3.0 * 1.0 - 0.0;
    const double ceiling = std::pow(std::sqrt(r1) + std::sqrt(r2), 2) / 16.0;
    CHECK(std::abs(ceiling - 1.0) <= 1e-15);
}
