#pragma once

#include <array>

#include "losrnet/channels.hpp"
#include "losrnet/network.hpp"

namespace losrnet {

/// GHZ fidelity of a symmetric grid-channel triangle, with its per-(k,l)
/// breakdown: value = (1/d_out) * sum of contributions.
struct FidelityPolynomialResult {
    double value = 0.0;
    Eigen::MatrixXd contributions;  // d_target x d_target, indexed (k, l)
};

/// Closed form for the 2 -> 2 construction:
/// (lambda0^6 + lambda1^6 + 3 lambda0^4 lambda1^2 + 2 lambda0^3 lambda1^3) / 2.
double fidelity_22(const SchmidtVector& lambda);

/// Recursive closed form for the d_in -> 2 construction, with separate
/// even/odd increments down to the d_in = 2 base case.
double fidelity_recursive(const SchmidtVector& lambda, int d_in);

/// Closed form for the odd d -> d construction:
/// (1/d) sum_{k,l} (l_k^3 l_l^3 + 3 l_k^2 l_l^2 sum_{i=1}^{(d-1)/2} l_{k+i} l_{l+i}),
/// indices mod d.
double fidelity_odd(const SchmidtVector& lambda, int d);

/// Fidelity reached in even dimension d by running the (d-1)-dimensional
/// odd construction at its uniform optimum and dismissing the extra
/// dimension: (1/d) (3/2 - 1/(2(d-1))).
double fidelity_even_lifted(int d);

/// Generic cycle evaluator: the same grid channel at all three nodes,
/// possibly different sources per edge. Sums, for each (k, l), the ordered
/// arrow triples whose slot cells satisfy the a<->b', b<->c', c<->a'
/// matching. Agrees with the structured assembly's GHZ fidelity.
FidelityPolynomialResult fidelity_cycles(const GridSpec& spec,
                                         const std::array<SchmidtVector, 3>& lambdas,
                                         int d_target);

/// Convenience overload with the same source on every edge.
FidelityPolynomialResult fidelity_cycles(const GridSpec& spec, const SchmidtVector& lambda,
                                         int d_target);

}  // namespace losrnet
