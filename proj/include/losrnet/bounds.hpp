#pragma once

#include <optional>
#include <string>
#include <vector>

#include "losrnet/tensor.hpp"

namespace losrnet {

/// Symmetrized Pauli-Z expectations of a 3-qubit state:
/// z1 = (<Z_A> + <Z_B> + <Z_C>)/3, z2 the pair average, z3 = <Z_A Z_B Z_C>.
struct ZCorrelators {
    double z1 = 0.0, z2 = 0.0, z3 = 0.0;
};

/// A fidelity window for one target family: lower <= upper, both in [0, 1].
struct BoundRecord {
    int parties = 0;
    int dimension = 0;
    double lower = 0.0;
    double upper = 0.0;
    std::string provenance;
};

/// Worst slack of p(i,j,k) <= sqrt(p_A(i) p_B(j) p_C(k)) over all outcomes;
/// nonnegative means the inequality holds. The marginals are validated
/// against p (within 1e-9) before use. Reports the witnessing outcome.
struct FinnerReport {
    double slack = 0.0;
    int worst_i = 0, worst_j = 0, worst_k = 0;

    bool satisfied(double tol = kPsdTol) const { return slack >= -tol; }
};

FinnerReport finner_check(const std::vector<double>& joint, int d,
                          const std::vector<double>& marginal_a,
                          const std::vector<double>& marginal_b,
                          const std::vector<double>& marginal_c);

/// Z-basis outcome distribution and marginals of a 3-qudit state.
std::vector<double> z_basis_distribution(const ComplexMatrix& rho, int d);
std::vector<double> z_basis_marginal(const std::vector<double>& joint, int d, int party);

/// Finner check of a state's computational-basis statistics.
FinnerReport finner_check_state(const ComplexMatrix& rho, int d);

ZCorrelators z_correlators(const ComplexMatrix& rho);

/// Slacks of the two Gisin inequalities after the sign-normalization
/// relabeling (bit flips on the Z statistics until the two largest
/// single-party correlators are nonnegative). Exactly the case selected
/// by the sign of the remaining correlator is evaluated; the other slot
/// stays empty.
struct GisinReport {
    std::optional<double> positive_case;
    std::optional<double> negative_case;

    double applicable() const { return positive_case ? *positive_case : *negative_case; }
    bool satisfied(double tol = kPsdTol) const { return applicable() >= -tol; }
};

GisinReport gisin_check(const ComplexMatrix& rho);

/// (1/16) (sqrt(1+3z1+3z2+z3) + sqrt(1-3z1+3z2-z3))^2, radicands clipped
/// at zero (tolerating -1e-12 noise).
double fidelity_bound_from_z(const ZCorrelators& z);

/// The catalog of GHZ fidelity windows:
///   N = 3, d = 2: (0.548, 0.618)
///   N = 3, d >= 3: ((1/d)(3/2 - floor(d/2)/(d(d-1))), 1/sqrt(d))
///   N >= 4: (1/d, 1/d)
BoundRecord ghz_bound_catalog(int parties, int dimension);

/// Cluster-state window: lower 2^-floor(mn/2), upper 2^(-floor(mn/3)/2).
BoundRecord cluster_bound(int m, int n);

/// Matusita fidelity sum_x (prod_i p_i(x))^(1/r) of r distributions over a
/// common finite set.
double matusita(const std::vector<std::vector<double>>& distributions);

/// The GHZ-diagonal symmetric 3-qubit state with the given correlators and
/// the largest |000><111| coherence compatible with positivity; at the
/// positive-branch optimizer this is the extremal state that saturates the
/// 0.618 bound.
ComplexMatrix ghz_symmetric_extremal_state(const ZCorrelators& z);

}  // namespace losrnet
