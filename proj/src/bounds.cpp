#include "losrnet/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace losrnet {

namespace {

void check_distribution(const std::vector<double>& p, const char* who) {
    double sum = 0.0;
    for (double x : p) {
        if (x < -kPsdTol) throw std::invalid_argument(std::string(who) + ": negative probability");
        sum += x;
    }
    if (std::abs(sum - 1.0) > kPsdTol) {
        throw std::invalid_argument(std::string(who) + ": probabilities must sum to 1");
    }
}

}  // namespace

FinnerReport finner_check(const std::vector<double>& joint, int d,
                          const std::vector<double>& marginal_a,
                          const std::vector<double>& marginal_b,
                          const std::vector<double>& marginal_c) {
    if (d < 2 || static_cast<int>(joint.size()) != d * d * d) {
        throw std::invalid_argument("finner_check: joint must have d^3 outcomes");
    }
    check_distribution(joint, "finner_check");
    const std::array<const std::vector<double>*, 3> marginals{&marginal_a, &marginal_b,
                                                              &marginal_c};
    for (int party = 0; party < 3; ++party) {
        if (static_cast<int>(marginals[party]->size()) != d) {
            throw std::invalid_argument("finner_check: marginal has wrong size");
        }
        const auto computed = z_basis_marginal(joint, d, party);
        for (int i = 0; i < d; ++i) {
            if (std::abs(computed[i] - (*marginals[party])[i]) > kPsdTol) {
                throw std::invalid_argument("finner_check: marginals inconsistent with joint");
            }
        }
    }

    FinnerReport report;
    report.slack = std::numeric_limits<double>::infinity();
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            for (int k = 0; k < d; ++k) {
                const double bound = std::sqrt(std::max(
                    0.0, marginal_a[i] * marginal_b[j] * marginal_c[k]));
                const double slack = bound - joint[(i * d + j) * d + k];
                if (slack < report.slack) report = {slack, i, j, k};
            }
        }
    }
    return report;
}

std::vector<double> z_basis_distribution(const ComplexMatrix& rho, int d) {
    const int total = d * d * d;
    if (rho.rows() != total || rho.cols() != total) {
        throw std::invalid_argument("z_basis_distribution: rho must be d^3-dimensional");
    }
    std::vector<double> p(total);
    for (int x = 0; x < total; ++x) p[x] = rho(x, x).real();
    return p;
}

std::vector<double> z_basis_marginal(const std::vector<double>& joint, int d, int party) {
    if (party < 0 || party > 2) throw std::invalid_argument("z_basis_marginal: party in 0..2");
    std::vector<double> m(d, 0.0);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            for (int k = 0; k < d; ++k) {
                m[party == 0 ? i : (party == 1 ? j : k)] += joint[(i * d + j) * d + k];
            }
        }
    }
    return m;
}

FinnerReport finner_check_state(const ComplexMatrix& rho, int d) {
    const auto joint = z_basis_distribution(rho, d);
    return finner_check(joint, d, z_basis_marginal(joint, d, 0), z_basis_marginal(joint, d, 1),
                        z_basis_marginal(joint, d, 2));
}

ZCorrelators z_correlators(const ComplexMatrix& rho) {
    if (rho.rows() != 8 || rho.cols() != 8) {
        throw std::invalid_argument("z_correlators: needs a 3-qubit state");
    }
    double single[3] = {0, 0, 0};
    double pair[3] = {0, 0, 0};  // AB, AC, BC
    double triple = 0.0;
    for (int x = 0; x < 8; ++x) {
        const double p = rho(x, x).real();
        const int sa = (x & 4) ? -1 : 1;
        const int sb = (x & 2) ? -1 : 1;
        const int sc = (x & 1) ? -1 : 1;
        single[0] += sa * p;
        single[1] += sb * p;
        single[2] += sc * p;
        pair[0] += sa * sb * p;
        pair[1] += sa * sc * p;
        pair[2] += sb * sc * p;
        triple += sa * sb * sc * p;
    }
    return ZCorrelators{(single[0] + single[1] + single[2]) / 3.0,
                        (pair[0] + pair[1] + pair[2]) / 3.0, triple};
}

GisinReport gisin_check(const ComplexMatrix& rho) {
    if (rho.rows() != 8 || rho.cols() != 8) {
        throw std::invalid_argument("gisin_check: needs a 3-qubit state");
    }
    double z[3] = {0, 0, 0};
    double zz[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
    for (int x = 0; x < 8; ++x) {
        const double p = rho(x, x).real();
        const int sign[3] = {(x & 4) ? -1 : 1, (x & 2) ? -1 : 1, (x & 1) ? -1 : 1};
        for (int i = 0; i < 3; ++i) {
            z[i] += sign[i] * p;
            for (int j = i + 1; j < 3; ++j) zz[i][j] += sign[i] * sign[j] * p;
        }
    }
    auto pair_of = [&](int i, int j) { return (i < j) ? zz[i][j] : zz[j][i]; };

    // Relabeling by X (x) X (x) X flips every single-party correlator and
    // keeps the pairs; do it on the Z data when fewer than two singles are
    // nonnegative, then route the possibly-negative party to slot C.
    int nonneg = (z[0] >= 0) + (z[1] >= 0) + (z[2] >= 0);
    if (nonneg < 2) {
        for (double& zi : z) zi = -zi;
    }
    int order[3] = {0, 1, 2};
    std::sort(order, order + 3, [&](int i, int j) { return z[i] > z[j]; });
    const double za = z[order[0]], zb = z[order[1]], zc = z[order[2]];
    const double zab = pair_of(order[0], order[1]);
    const double zac = pair_of(order[0], order[2]);
    const double zbc = pair_of(order[1], order[2]);

    GisinReport report;
    if (zc >= 0.0) {
        const double lhs = std::pow(1 + za + zb + zab, 2) + std::pow(1 + za + zc + zac, 2) +
                           std::pow(1 + zb + zc + zbc, 2);
        report.positive_case = 6.0 * (1 + za) * (1 + zb) * (1 + zc) - lhs;
    } else {
        const double lhs = std::pow(1 + za + zb + zab, 2) + std::pow(1 + za - zc + zac, 2) +
                           std::pow(1 + zb - zc + zbc, 2);
        report.negative_case =
            6.0 * (1 + za) * (1 + zb) * (1 - zc) + 8.0 * zc * (za + zb + za * zb) - lhs;
    }
    return report;
}

double fidelity_bound_from_z(const ZCorrelators& z) {
    auto radicand = [](double r) {
        if (r < -1e-12) {
            throw std::invalid_argument("fidelity_bound_from_z: radicand below -1e-12");
        }
        return std::max(0.0, r);
    };
    const double r1 = radicand(1 + 3 * z.z1 + 3 * z.z2 + z.z3);
    const double r2 = radicand(1 - 3 * z.z1 + 3 * z.z2 - z.z3);
    const double s = std::sqrt(r1) + std::sqrt(r2);
    return s * s / 16.0;
}

BoundRecord ghz_bound_catalog(int parties, int dimension) {
    if (parties < 3 || dimension < 2) {
        throw std::invalid_argument("ghz_bound_catalog: need N >= 3 and d >= 2");
    }
    const double d = dimension;
    if (parties == 3 && dimension == 2) {
        return BoundRecord{3, 2, 0.548, 0.618, "ghz3-qubit-window"};
    }
    if (parties == 3) {
        const double lower = (1.5 - (dimension / 2) / (d * (d - 1.0))) / d;
        return BoundRecord{3, dimension, lower, 1.0 / std::sqrt(d), "ghz3-qudit-window"};
    }
    return BoundRecord{parties, dimension, 1.0 / d, 1.0 / d, "ghz-multiparty-tight"};
}

BoundRecord cluster_bound(int m, int n) {
    if (m < 1 || n < 1 || m * n < 3) {
        throw std::invalid_argument("cluster_bound: need m*n >= 3");
    }
    const int qubits = m * n;
    return BoundRecord{qubits, 2, std::exp2(-static_cast<double>(qubits / 2)),
                       std::exp2(-0.5 * (qubits / 3)), "cluster-striping-window"};
}

double matusita(const std::vector<std::vector<double>>& distributions) {
    if (distributions.empty()) throw std::invalid_argument("matusita: no distributions");
    const std::size_t support = distributions.front().size();
    for (const auto& p : distributions) {
        if (p.size() != support) {
            throw std::invalid_argument("matusita: distributions must share one support");
        }
        check_distribution(p, "matusita");
    }
    const double r = static_cast<double>(distributions.size());
    double total = 0.0;
    for (std::size_t x = 0; x < support; ++x) {
        double product = 1.0;
        for (const auto& p : distributions) product *= std::max(0.0, p[x]);
        total += std::pow(product, 1.0 / r);
    }
    return total;
}

ComplexMatrix ghz_symmetric_extremal_state(const ZCorrelators& z) {
    const double p000 = (1 + 3 * z.z1 + 3 * z.z2 + z.z3) / 8.0;
    const double p_weight1 = (1 + z.z1 - z.z2 - z.z3) / 8.0;
    const double p_weight2 = (1 - z.z1 - z.z2 + z.z3) / 8.0;
    const double p111 = (1 - 3 * z.z1 + 3 * z.z2 - z.z3) / 8.0;
    for (double p : {p000, p_weight1, p_weight2, p111}) {
        if (p < -kPsdTol) {
            throw std::invalid_argument("ghz_symmetric_extremal_state: infeasible correlators");
        }
    }
    ComplexMatrix rho = ComplexMatrix::Zero(8, 8);
    rho(0, 0) = std::max(0.0, p000);
    rho(7, 7) = std::max(0.0, p111);
    for (int x : {1, 2, 4}) rho(x, x) = std::max(0.0, p_weight1);
    for (int x : {3, 5, 6}) rho(x, x) = std::max(0.0, p_weight2);
    const double corner = std::sqrt(std::max(0.0, p000) * std::max(0.0, p111));
    rho(0, 7) = corner;
    rho(7, 0) = corner;
    return rho;
}

}  // namespace losrnet
