#include "losrnet/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace losrnet {

SystemLayout::SystemLayout(std::initializer_list<std::pair<std::string, int>> systems)
    : SystemLayout(std::vector<std::pair<std::string, int>>(systems)) {}

SystemLayout::SystemLayout(std::vector<std::pair<std::string, int>> systems)
    : systems_(std::move(systems)) {
    for (std::size_t i = 0; i < systems_.size(); ++i) {
        if (systems_[i].second < 1) {
            throw std::invalid_argument("SystemLayout: dimension of '" + systems_[i].first +
                                        "' must be positive");
        }
        for (std::size_t j = i + 1; j < systems_.size(); ++j) {
            if (systems_[i].first == systems_[j].first) {
                throw std::invalid_argument("SystemLayout: duplicate label '" +
                                            systems_[i].first + "'");
            }
        }
    }
}

std::int64_t SystemLayout::total_dimension() const {
    std::int64_t d = 1;
    for (const auto& [label, dim] : systems_) d *= dim;
    return d;
}

int SystemLayout::position_of(const std::string& label) const {
    for (int i = 0; i < size(); ++i) {
        if (systems_[i].first == label) return i;
    }
    throw std::invalid_argument("SystemLayout: unknown label '" + label + "'");
}

bool SystemLayout::has_label(const std::string& label) const {
    return std::any_of(systems_.begin(), systems_.end(),
                       [&](const auto& s) { return s.first == label; });
}

bool SystemLayout::is_permutation_of(const SystemLayout& other) const {
    if (size() != other.size()) return false;
    auto a = systems_;
    auto b = other.systems_;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

SystemLayout SystemLayout::keep(const std::set<std::string>& labels) const {
    std::vector<std::pair<std::string, int>> kept;
    for (const auto& s : systems_) {
        if (labels.count(s.first)) kept.push_back(s);
    }
    if (kept.size() != labels.size()) {
        throw std::invalid_argument("SystemLayout::keep: label set contains unknown labels");
    }
    return SystemLayout(std::move(kept));
}

StateVector::StateVector(std::vector<int> dims_in, ComplexVector amplitudes_in)
    : dims(std::move(dims_in)), amplitudes(std::move(amplitudes_in)) {
    std::int64_t d = 1;
    for (int di : dims) {
        if (di < 1) throw std::invalid_argument("StateVector: dimensions must be positive");
        d *= di;
    }
    if (d != amplitudes.size()) {
        throw std::invalid_argument("StateVector: amplitude count does not match dims product");
    }
    if (std::abs(amplitudes.norm() - 1.0) > kNormTol) {
        throw std::invalid_argument("StateVector: amplitudes are not normalized");
    }
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::int64_t rows = static_cast<std::int64_t>(a.rows()) * b.rows();
    const std::int64_t cols = static_cast<std::int64_t>(a.cols()) * b.cols();
    if (rows * cols > kDenseEntryCap) {
        std::ostringstream msg;
        msg << "kron: result would hold " << rows * cols << " entries, cap is " << kDenseEntryCap;
        throw CapacityError(msg.str());
    }
    ComplexMatrix out(rows, cols);
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

namespace {

// Row-major strides: stride of system i is the product of dimensions
// to its right (leftmost label = most significant digit).
std::vector<std::int64_t> strides_of(const SystemLayout& layout) {
    std::vector<std::int64_t> s(layout.size());
    std::int64_t acc = 1;
    for (int i = layout.size() - 1; i >= 0; --i) {
        s[i] = acc;
        acc *= layout.dim(i);
    }
    return s;
}

}  // namespace

ComplexMatrix partial_trace(const ComplexMatrix& m, const SystemLayout& layout,
                            const std::set<std::string>& keep) {
    const std::int64_t total = layout.total_dimension();
    if (m.rows() != total || m.cols() != total) {
        throw std::invalid_argument("partial_trace: matrix dimension does not match layout");
    }
    for (const auto& label : keep) {
        if (!layout.has_label(label)) {
            throw std::invalid_argument("partial_trace: unknown label '" + label + "'");
        }
    }

    const auto strides = strides_of(layout);
    std::vector<int> kept_pos, traced_pos;
    for (int i = 0; i < layout.size(); ++i) {
        (keep.count(layout.label(i)) ? kept_pos : traced_pos).push_back(i);
    }

    std::int64_t kept_dim = 1;
    for (int p : kept_pos) kept_dim *= layout.dim(p);
    std::int64_t traced_dim = 1;
    for (int p : traced_pos) traced_dim *= layout.dim(p);

    // Flat offsets of every kept multi-index and every traced multi-index.
    auto offsets = [&](const std::vector<int>& positions, std::int64_t count) {
        std::vector<std::int64_t> off(count, 0);
        for (std::int64_t flat = 0; flat < count; ++flat) {
            std::int64_t rest = flat;
            for (int k = static_cast<int>(positions.size()) - 1; k >= 0; --k) {
                const int p = positions[k];
                off[flat] += (rest % layout.dim(p)) * strides[p];
                rest /= layout.dim(p);
            }
        }
        return off;
    };
    const auto kept_off = offsets(kept_pos, kept_dim);
    const auto traced_off = offsets(traced_pos, traced_dim);

    ComplexMatrix out = ComplexMatrix::Zero(kept_dim, kept_dim);
    for (std::int64_t r = 0; r < kept_dim; ++r) {
        for (std::int64_t c = 0; c < kept_dim; ++c) {
            Complex acc = 0.0;
            for (std::int64_t t = 0; t < traced_dim; ++t) {
                acc += m(kept_off[r] + traced_off[t], kept_off[c] + traced_off[t]);
            }
            out(r, c) = acc;
        }
    }
    return out;
}

namespace {

// target flat index -> source flat index
std::vector<std::int64_t> permutation_table(const SystemLayout& layout,
                                            const SystemLayout& target) {
    if (!target.is_permutation_of(layout)) {
        throw std::invalid_argument("permute_systems: target is not a permutation of layout");
    }
    const auto src_strides = strides_of(layout);
    std::vector<std::int64_t> src_stride_of_target(target.size());
    for (int i = 0; i < target.size(); ++i) {
        src_stride_of_target[i] = src_strides[layout.position_of(target.label(i))];
    }
    const std::int64_t total = layout.total_dimension();
    std::vector<std::int64_t> table(total, 0);
    for (std::int64_t flat = 0; flat < total; ++flat) {
        std::int64_t rest = flat;
        std::int64_t src = 0;
        for (int i = target.size() - 1; i >= 0; --i) {
            src += (rest % target.dim(i)) * src_stride_of_target[i];
            rest /= target.dim(i);
        }
        table[flat] = src;
    }
    return table;
}

}  // namespace

ComplexMatrix permute_systems(const ComplexMatrix& m, const SystemLayout& layout,
                              const SystemLayout& target) {
    const std::int64_t total = layout.total_dimension();
    if (m.rows() != total || m.cols() != total) {
        throw std::invalid_argument("permute_systems: matrix dimension does not match layout");
    }
    const auto table = permutation_table(layout, target);
    ComplexMatrix out(total, total);
    for (std::int64_t r = 0; r < total; ++r) {
        for (std::int64_t c = 0; c < total; ++c) {
            out(r, c) = m(table[r], table[c]);
        }
    }
    return out;
}

ComplexVector permute_systems(const ComplexVector& v, const SystemLayout& layout,
                              const SystemLayout& target) {
    const std::int64_t total = layout.total_dimension();
    if (v.size() != total) {
        throw std::invalid_argument("permute_systems: vector dimension does not match layout");
    }
    const auto table = permutation_table(layout, target);
    ComplexVector out(total);
    for (std::int64_t i = 0; i < total; ++i) out(i) = v(table[i]);
    return out;
}

double fidelity_with_pure(const ComplexMatrix& rho, const StateVector& psi) {
    if (rho.rows() != rho.cols() || rho.rows() != psi.dimension()) {
        throw std::invalid_argument("fidelity_with_pure: dimension mismatch");
    }
    if (!is_hermitian(rho)) {
        throw std::invalid_argument("fidelity_with_pure: rho is not hermitian");
    }
    if (std::abs(rho.trace().real() - 1.0) > kPsdTol) {
        throw std::invalid_argument("fidelity_with_pure: rho does not have unit trace");
    }
    const Complex val = psi.amplitudes.dot(rho * psi.amplitudes);
    if (std::abs(val.imag()) > 1e-10) {
        throw NumericalError("fidelity_with_pure: imaginary residue above 1e-10");
    }
    return val.real();
}

ComplexMatrix reduced_density(const StateVector& psi, const std::vector<int>& keep_positions) {
    const int n = static_cast<int>(psi.dims.size());
    for (int p : keep_positions) {
        if (p < 0 || p >= n) throw std::invalid_argument("reduced_density: position out of range");
    }
    std::vector<std::int64_t> strides(n);
    std::int64_t acc = 1;
    for (int i = n - 1; i >= 0; --i) {
        strides[i] = acc;
        acc *= psi.dims[i];
    }
    std::vector<int> rest_pos;
    for (int i = 0; i < n; ++i) {
        if (std::find(keep_positions.begin(), keep_positions.end(), i) == keep_positions.end()) {
            rest_pos.push_back(i);
        }
    }
    std::int64_t kept_dim = 1;
    for (int p : keep_positions) kept_dim *= psi.dims[p];
    std::int64_t rest_dim = 1;
    for (int p : rest_pos) rest_dim *= psi.dims[p];

    auto offsets = [&](const std::vector<int>& positions, std::int64_t count) {
        std::vector<std::int64_t> off(count, 0);
        for (std::int64_t flat = 0; flat < count; ++flat) {
            std::int64_t rest = flat;
            for (int k = static_cast<int>(positions.size()) - 1; k >= 0; --k) {
                off[flat] += (rest % psi.dims[positions[k]]) * strides[positions[k]];
                rest /= psi.dims[positions[k]];
            }
        }
        return off;
    };
    const auto kept_off = offsets(keep_positions, kept_dim);
    const auto rest_off = offsets(rest_pos, rest_dim);

    ComplexMatrix out = ComplexMatrix::Zero(kept_dim, kept_dim);
    for (std::int64_t t = 0; t < rest_dim; ++t) {
        for (std::int64_t r = 0; r < kept_dim; ++r) {
            const Complex ar = psi.amplitudes(kept_off[r] + rest_off[t]);
            if (ar == Complex{0.0, 0.0}) continue;
            for (std::int64_t c = 0; c < kept_dim; ++c) {
                out(r, c) += ar * std::conj(psi.amplitudes(kept_off[c] + rest_off[t]));
            }
        }
    }
    return out;
}

ComplexMatrix conjugate_front(const ComplexMatrix& op, const ComplexMatrix& m, int front_dim) {
    if (m.rows() != m.cols() || m.rows() % front_dim != 0) {
        throw std::invalid_argument("conjugate_front: matrix not divisible by front dimension");
    }
    if (op.cols() != front_dim) {
        throw std::invalid_argument("conjugate_front: operator input dimension mismatch");
    }
    const Eigen::Index rest = m.rows() / front_dim;
    const Eigen::Index out_front = op.rows();

    // Left-multiply by op (x) 1_rest, one column at a time: a column of m,
    // viewed column-major as (rest x front), right-multiplied by op^T.
    auto left_apply = [&](const ComplexMatrix& x) {
        ComplexMatrix y(out_front * rest, x.cols());
        for (Eigen::Index c = 0; c < x.cols(); ++c) {
            Eigen::Map<const ComplexMatrix> col(x.col(c).data(), rest, front_dim);
            Eigen::Map<ComplexMatrix> out_col(y.col(c).data(), rest, out_front);
            out_col = col * op.transpose();
        }
        return y;
    };

    const ComplexMatrix half = left_apply(m);
    // (op (x) 1) m (op (x) 1)^dagger == conj over the transposed half.
    const ComplexMatrix full = left_apply(half.adjoint());
    return full.adjoint();
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_positive_semidefinite(const ComplexMatrix& m, double tol) {
    if (!is_hermitian(m, tol)) return false;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff() >= -tol;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    }
    if (a.size() == 0) return 0.0;
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace losrnet
