#pragma once

#include <array>

#include "losrnet/channels.hpp"
#include "losrnet/tensor.hpp"

namespace losrnet {

/// Nonnegative Schmidt coefficients of a bipartite pure source
/// sum_i lambda_i |ii>, with sum lambda_i^2 = 1 within 1e-12.
class SchmidtVector {
public:
    explicit SchmidtVector(RealVector coefficients);
    SchmidtVector(std::initializer_list<double> coefficients);

    static SchmidtVector uniform(int d);

    int size() const { return static_cast<int>(coefficients_.size()); }
    double operator[](int i) const { return coefficients_(i); }
    const RealVector& coefficients() const { return coefficients_; }

    /// Coefficients reordered nonincreasing; never applied silently.
    SchmidtVector sorted_descending() const;

private:
    RealVector coefficients_;
};

/// A triangle network instance: one Choi matrix per party and one Schmidt
/// source per edge. All Choi matrices must share d_in and d_out, and every
/// Schmidt vector must have length d_in.
struct TriangleConfig {
    ChoiMatrix choi_a, choi_b, choi_c;
    SchmidtVector lambda_ab, lambda_bc, lambda_ca;

    TriangleConfig(ChoiMatrix a, ChoiMatrix b, ChoiMatrix c, SchmidtVector ab, SchmidtVector bc,
                   SchmidtVector ca);

    /// Same channel everywhere, same source on every edge.
    static TriangleConfig symmetric(const ChoiMatrix& choi, const SchmidtVector& lambda);

    int d_in() const { return choi_a.d_in; }
    int d_out() const { return choi_a.d_out; }
};

/// (sum_i |i>^(x)n) / sqrt(d)
StateVector ghz_state(int n, int d);

/// Brute-force assembly of the triangle output state: source pair states
/// contracted against all three channels via their Kraus decompositions.
/// Feasible for d_in <= 3 and d_out <= 3; beyond that throws CapacityError
/// pointing at the structured path. Party X's first input pairs with the
/// second input of its cyclic successor (a<->b', b<->c', c<->a').
ComplexMatrix assemble_triangle_dense(const TriangleConfig& cfg);

/// Arrow-triple assembly for grid channels. Identical output to the dense
/// path where both are feasible; cost scales with (number of arrows)^3 and
/// d_out, never with d_in^6. Requires grid provenance on all three Chois.
ComplexMatrix assemble_triangle_structured(const TriangleConfig& cfg);

/// Relabeling under which k copies of the 3-party qubit GHZ state equal a
/// single 3-party GHZ state of dimension 2^k: qubit q of copy-ordered
/// position 3q+p moves to grouped position p*k+q of party p.
struct QuditGroupingWitness {
    int copies;
    /// grouped position -> copy-ordered position, length 3k
    std::vector<int> qubit_of_grouped_position;

    SystemLayout copies_layout() const;
    SystemLayout grouped_layout() const;
};

QuditGroupingWitness ghz_copies_to_qudit(int k);

/// Groups the parties of a GHZ state into three sets and applies, per set,
/// the unitary sending |i>^(x)m to |i>(x)|0>^(x)(m-1) on the set's
/// lowest-index party. The result is GHZ_{3,d} on the three representatives
/// tensored with |0...0>, in the original party order. Inputs that are not
/// of GHZ form are rejected.
StateVector group_parties_reduce(const StateVector& psi,
                                 const std::array<std::vector<int>, 3>& partition);

}  // namespace losrnet
