#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "losrnet/network.hpp"
#include "losrnet/tensor.hpp"

namespace losrnet {

/// A point of the probability simplex: squared Schmidt coefficients,
/// nonnegative, summing to 1 within 1e-12.
class SimplexPoint {
public:
    explicit SimplexPoint(RealVector p);

    int size() const { return static_cast<int>(p_.size()); }
    double operator[](int i) const { return p_(i); }
    const RealVector& values() const { return p_; }

    SchmidtVector to_schmidt() const;

private:
    RealVector p_;
};

struct OptimizationReport {
    double best_value = 0.0;
    SimplexPoint argmax;
    int restarts = 0;
    std::int64_t iterations = 0;
    bool converged = false;
    std::uint64_t seed = 0;
};

using SchmidtObjective = std::function<double(const SchmidtVector&)>;

/// Multi-start projected gradient ascent over the simplex of squared
/// Schmidt coefficients: flat-simplex seeded starts, central finite
/// differences with step 1e-6, clip-and-renormalize projection, and a
/// deterministic merge (best value, then lexicographically smallest
/// argmax). Non-finite objective values abort with NumericalError.
/// `warm_starts` adds deterministic starting points ahead of the seeded
/// ones; the dominant-coefficient optima of the higher-dimensional
/// constructions are found reliably when warm-started from the optimum
/// one dimension below.
OptimizationReport maximize_schmidt(const SchmidtObjective& objective, int d_in, int restarts,
                                    std::uint64_t seed,
                                    const std::vector<SimplexPoint>& warm_starts = {});

/// One row of the optimal-source table for the d_in -> 2 construction.
struct SchmidtTableRow {
    int d_in = 0;
    double fidelity = 0.0;
    RealVector schmidt_coefficients;  // descending
};

/// Best fidelity and Schmidt coefficients of the d_in -> 2 construction
/// for d_in = 2..d_max. Each dimension is warm-started from the optimum
/// one dimension below (plus flat and seeded random restarts), which pins
/// down the small trailing coefficients reliably.
std::vector<SchmidtTableRow> optimal_schmidt_table(int d_max, int restarts = 32,
                                                   std::uint64_t seed = 0);

/// Result of the correlator-space upper-bound maximization.
struct CorrelatorBoundResult {
    double value = 0.0;
    double z1 = 0.0, z2 = 0.0, z3 = 0.0;
};

/// Upper bound on the three-qubit GHZ fidelity of triangle-network states
/// for nonnegative single-party Z correlators: maximizes
/// (sqrt(1+3z1+3z2+z3) + sqrt(1-3z1+3z2-z3))^2 / 16 subject to the
/// symmetric Gisin constraint 3(1+2z1+z2)^2 <= 6(1+z1)^3 and the Finner
/// constraint 0 <= 1-3z1+3z2-z3 <= sqrt(8 (1-z1)^3), by grid scan at
/// `grid_step` followed by coordinate-wise refinement to `refine_tol`.
/// The returned point is always feasible.
CorrelatorBoundResult ghz3_bound_positive_branch(double grid_step = 1e-2,
                                                 double refine_tol = 1e-8);

/// Closed-form bound for the branch with one negative single-party
/// correlator: (49 - 5 sqrt(42)) / 28, via the pair-correlator bound
/// F <= (1 + 3 z2)/4 at z2 = (42 - 5 sqrt(42))/21. Dominated by the
/// positive branch.
double ghz3_bound_negative_branch();

/// The optimal value of the positive branch is the largest real root of a
/// degree-6 polynomial; these are its coefficients, ascending order.
const std::vector<double>& ghz3_bound_polynomial();

/// All real roots of a polynomial inside [lo, hi], found by sign-change
/// bracketing on a fine grid plus bisection to 1e-12.
std::vector<double> real_roots_in_interval(const std::vector<double>& ascending_coeffs, double lo,
                                           double hi);

/// Largest real root of the bound polynomial.
double ghz3_bound_sextic_root();

double evaluate_polynomial(const std::vector<double>& ascending_coeffs, double x);

}  // namespace losrnet
