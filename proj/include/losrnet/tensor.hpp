#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "losrnet/errors.hpp"

namespace losrnet {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Global tolerances. Hermiticity/PSD checks run at 1e-9, equality assertions
// at 1e-10, normalization at 1e-12; the contraction depth of the assemblies
// loses at most ~3 digits of double precision.
inline constexpr double kPsdTol = 1e-9;
inline constexpr double kEqTol = 1e-10;
inline constexpr double kNormTol = 1e-12;

/// Dense objects larger than this many entries are refused.
inline constexpr std::int64_t kDenseEntryCap = std::int64_t{1} << 24;

/// Ordered list of (label, dimension) pairs identifying the tensor factors
/// of a multi-system operator. The leftmost label is the most significant
/// digit of a basis index, matching ket notation |i j k>.
class SystemLayout {
public:
    SystemLayout() = default;
    SystemLayout(std::initializer_list<std::pair<std::string, int>> systems);
    explicit SystemLayout(std::vector<std::pair<std::string, int>> systems);

    int size() const { return static_cast<int>(systems_.size()); }
    const std::string& label(int i) const { return systems_[i].first; }
    int dim(int i) const { return systems_[i].second; }

    /// Product of all dimensions.
    std::int64_t total_dimension() const;

    /// Position of a label; throws std::invalid_argument if unknown.
    int position_of(const std::string& label) const;
    bool has_label(const std::string& label) const;

    /// True when `other` lists exactly the same (label, dim) pairs,
    /// possibly reordered.
    bool is_permutation_of(const SystemLayout& other) const;

    /// Sub-layout of the given labels, in this layout's order.
    SystemLayout keep(const std::set<std::string>& labels) const;

    bool operator==(const SystemLayout& other) const { return systems_ == other.systems_; }

private:
    std::vector<std::pair<std::string, int>> systems_;
};

/// A pure multi-system state: per-system dimensions plus amplitudes of
/// length prod(dims), normalized to 1 within 1e-12 on construction.
struct StateVector {
    std::vector<int> dims;
    ComplexVector amplitudes;

    StateVector(std::vector<int> dims, ComplexVector amplitudes);

    std::int64_t dimension() const { return amplitudes.size(); }
};

/// Tensor (Kronecker) product. Refuses results above the dense entry cap.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Trace out every system whose label is not in `keep`. The result keeps
/// the surviving systems in their original order; the trace is preserved.
ComplexMatrix partial_trace(const ComplexMatrix& m, const SystemLayout& layout,
                            const std::set<std::string>& keep);

/// Rearrange the tensor factors of `m` from `layout` order to `target`
/// order. `target` must be a permutation of `layout`.
ComplexMatrix permute_systems(const ComplexMatrix& m, const SystemLayout& layout,
                              const SystemLayout& target);

/// Vector variant of permute_systems, for pure states.
ComplexVector permute_systems(const ComplexVector& v, const SystemLayout& layout,
                              const SystemLayout& target);

/// <psi|rho|psi> for a density matrix rho and a normalized pure state.
/// Checks hermiticity, unit trace and normalization before evaluating.
double fidelity_with_pure(const ComplexMatrix& rho, const StateVector& psi);

/// Reduced density matrix of a pure state, keeping the systems at the
/// given positions (in the order they appear in `keep_positions`).
ComplexMatrix reduced_density(const StateVector& psi, const std::vector<int>& keep_positions);

/// op (rho) op^dagger where op acts on the leading block of dimension
/// `front_dim` of a matrix of dimension front_dim * rest. op may be
/// rectangular (out x front_dim); the result has dimension out * rest.
ComplexMatrix conjugate_front(const ComplexMatrix& op, const ComplexMatrix& m, int front_dim);

bool is_hermitian(const ComplexMatrix& m, double tol = kPsdTol);
bool is_positive_semidefinite(const ComplexMatrix& m, double tol = kPsdTol);

/// max_ij |a_ij - b_ij|
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace losrnet
