#include "losrnet/fidelity.hpp"

#include <cmath>

namespace losrnet {

double fidelity_22(const SchmidtVector& lambda) {
    if (lambda.size() != 2) throw std::invalid_argument("fidelity_22: needs exactly 2 coefficients");
    const double l0 = lambda[0], l1 = lambda[1];
    return 0.5 * (std::pow(l0, 6) + std::pow(l1, 6) + 3.0 * std::pow(l0, 4) * l1 * l1 +
                  2.0 * std::pow(l0, 3) * std::pow(l1, 3));
}

namespace {

double pow6(double x) { return x * x * x * x * x * x; }

// Increment picked up when extending the d_in -> 2 construction from
// dimension d-1 to d. The double sums factor into products of single sums.
double recursion_increment(const RealVector& lam, int d) {
    const double ln = lam(d - 1);
    const double lm = lam(d - 2);
    auto sum_sq = [&](int first, int last) {  // lam_r^2 over r = first, first+2, ..., <= last
        double s = 0.0;
        for (int r = first; r <= last; r += 2) s += lam(r) * lam(r);
        return s;
    };
    auto sum_pair = [&](int first, int last) {  // lam_r * lam_{r-1}, same stride
        double s = 0.0;
        for (int r = first; r <= last; r += 2) s += lam(r) * lam(r - 1);
        return s;
    };
    if (d % 2 == 0) {
        const double even_sq = sum_sq(0, d - 2);
        const double odd_sq_low = sum_sq(1, d - 3);
        const double odd_sq_all = sum_sq(1, d - 1);
        const double pair_low = sum_pair(1, d - 3);
        const double pair_all = sum_pair(1, d - 1);
        return pow6(ln) + 2.0 * std::pow(ln, 3) * std::pow(lm, 3) +
               3.0 * ln * ln * (even_sq * even_sq + odd_sq_low * odd_sq_all) +
               6.0 * ln * lm * pair_low * pair_all;
    }
    const double even_sq_low = sum_sq(0, d - 3);
    const double even_sq_all = sum_sq(0, d - 1);
    const double odd_sq = sum_sq(1, d - 2);
    const double pair = sum_pair(1, d - 2);
    return pow6(ln) + 3.0 * ln * ln * (even_sq_low * even_sq_all + odd_sq * odd_sq) +
           6.0 * ln * lm * pair * pair;
}

}  // namespace

double fidelity_recursive(const SchmidtVector& lambda, int d_in) {
    if (d_in < 2) throw std::invalid_argument("fidelity_recursive: d_in must be >= 2");
    if (lambda.size() != d_in) {
        throw std::invalid_argument("fidelity_recursive: lambda length must equal d_in");
    }
    const RealVector& lam = lambda.coefficients();
    double f = 0.5 * (pow6(lam(0)) + pow6(lam(1)) + 3.0 * std::pow(lam(0), 4) * lam(1) * lam(1) +
                      2.0 * std::pow(lam(0), 3) * std::pow(lam(1), 3));
    for (int d = 3; d <= d_in; ++d) f += 0.5 * recursion_increment(lam, d);
    return f;
}

double fidelity_odd(const SchmidtVector& lambda, int d) {
    if (d < 3 || d % 2 == 0) throw std::invalid_argument("fidelity_odd: d must be odd and >= 3");
    if (lambda.size() != d) {
        throw std::invalid_argument("fidelity_odd: lambda length must equal d");
    }
    double total = 0.0;
    for (int k = 0; k < d; ++k) {
        for (int l = 0; l < d; ++l) {
            double shifts = 0.0;
            for (int i = 1; i <= (d - 1) / 2; ++i) {
                shifts += lambda[(k + i) % d] * lambda[(l + i) % d];
            }
            const double kk = lambda[k], ll = lambda[l];
            total += kk * kk * kk * ll * ll * ll + 3.0 * kk * kk * ll * ll * shifts;
        }
    }
    return total / d;
}

double fidelity_even_lifted(int d) {
    if (d < 4 || d % 2 != 0) {
        throw std::invalid_argument("fidelity_even_lifted: d must be even and >= 4");
    }
    return (1.5 - 0.5 / (d - 1)) / d;
}

FidelityPolynomialResult fidelity_cycles(const GridSpec& spec,
                                         const std::array<SchmidtVector, 3>& lambdas,
                                         int d_target) {
    if (spec.d_out != d_target) {
        throw std::invalid_argument("fidelity_cycles: spec.d_out must equal d_target");
    }
    validate_grid(spec);
    for (const auto& lambda : lambdas) {
        if (lambda.size() != spec.d_in) {
            throw std::invalid_argument("fidelity_cycles: lambda length must equal d_in");
        }
    }

    FidelityPolynomialResult result;
    result.contributions = Eigen::MatrixXd::Zero(d_target, d_target);

    // Weight of the slot-o cells of an ordered arrow triple under the
    // source matching, or 0 when the matching fails.
    auto slot_weight = [&](const GridArrow& ma, const GridArrow& mb, const GridArrow& mc, int o) {
        const auto [ia, ja] = ma.cells[o];
        const auto [ib, jb] = mb.cells[o];
        const auto [ic, jc] = mc.cells[o];
        if (ia != jb || ib != jc || ic != ja) return 0.0;
        return lambdas[0][ia] * lambdas[1][ib] * lambdas[2][ic];
    };

    for (const auto& ma : spec.arrows) {
        for (const auto& mb : spec.arrows) {
            for (const auto& mc : spec.arrows) {
                const int len = std::min({ma.length(), mb.length(), mc.length()});
                for (int k = 0; k < len; ++k) {
                    const double ket = slot_weight(ma, mb, mc, k);
                    if (ket == 0.0) continue;
                    for (int l = 0; l < len; ++l) {
                        const double bra = slot_weight(ma, mb, mc, l);
                        if (bra != 0.0) result.contributions(k, l) += ket * bra;
                    }
                }
            }
        }
    }
    result.value = result.contributions.sum() / d_target;
    return result;
}

FidelityPolynomialResult fidelity_cycles(const GridSpec& spec, const SchmidtVector& lambda,
                                         int d_target) {
    return fidelity_cycles(spec, std::array<SchmidtVector, 3>{lambda, lambda, lambda}, d_target);
}

}  // namespace losrnet
