#include "losrnet/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "losrnet/fidelity.hpp"

namespace losrnet {

SimplexPoint::SimplexPoint(RealVector p) : p_(std::move(p)) {
    if (p_.size() < 1) throw std::invalid_argument("SimplexPoint: empty");
    if (p_.minCoeff() < 0.0) throw std::invalid_argument("SimplexPoint: negative entry");
    if (std::abs(p_.sum() - 1.0) > kNormTol) {
        throw std::invalid_argument("SimplexPoint: entries must sum to 1");
    }
}

SchmidtVector SimplexPoint::to_schmidt() const { return SchmidtVector(p_.cwiseSqrt()); }

namespace {

RealVector project_to_simplex(RealVector p) {
    for (Eigen::Index i = 0; i < p.size(); ++i) p(i) = std::max(p(i), 0.0);
    const double total = p.sum();
    if (total <= 0.0) return RealVector::Constant(p.size(), 1.0 / static_cast<double>(p.size()));
    return p / total;
}

struct AscentResult {
    RealVector p;
    double value;
    std::int64_t iterations;
    bool converged;
};

AscentResult ascend(const SchmidtObjective& objective, RealVector start) {
    const double fd_step = 1e-6;
    const int max_iterations = 4000;

    auto eval = [&](const RealVector& p) {
        const RealVector proj = project_to_simplex(p);
        const double value = objective(SchmidtVector(proj.cwiseSqrt()));
        if (!std::isfinite(value)) {
            std::ostringstream msg;
            msg << "maximize_schmidt: non-finite objective at point (";
            for (Eigen::Index i = 0; i < proj.size(); ++i) msg << (i ? ", " : "") << proj(i);
            msg << ")";
            throw NumericalError(msg.str());
        }
        return value;
    };

    RealVector p = project_to_simplex(std::move(start));
    double value = eval(p);
    double step = 0.1;
    std::int64_t iterations = 0;
    bool converged = false;

    for (int it = 0; it < max_iterations; ++it) {
        ++iterations;
        RealVector grad(p.size());
        for (Eigen::Index i = 0; i < p.size(); ++i) {
            RealVector plus = p, minus = p;
            plus(i) += fd_step;
            minus(i) -= fd_step;
            grad(i) = (eval(plus) - eval(minus)) / (2.0 * fd_step);
        }

        bool improved = false;
        while (step > 1e-13) {
            const RealVector candidate = project_to_simplex(p + step * grad);
            const double candidate_value = eval(candidate);
            if (candidate_value > value) {
                p = candidate;
                value = candidate_value;
                step *= 1.3;
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if (!improved) {
            converged = true;
            break;
        }
    }
    return {project_to_simplex(p), value, iterations, converged};
}

bool lexicographically_before(const RealVector& a, const RealVector& b) {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (a(i) != b(i)) return a(i) < b(i);
    }
    return false;
}

}  // namespace

OptimizationReport maximize_schmidt(const SchmidtObjective& objective, int d_in, int restarts,
                                    std::uint64_t seed,
                                    const std::vector<SimplexPoint>& warm_starts) {
    if (d_in < 1) throw std::invalid_argument("maximize_schmidt: d_in must be positive");
    if (restarts < 1) throw std::invalid_argument("maximize_schmidt: need at least one restart");

    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> exponential(1.0);

    std::vector<RealVector> starts;
    for (const SimplexPoint& warm : warm_starts) {
        if (warm.size() != d_in) {
            throw std::invalid_argument("maximize_schmidt: warm start has wrong dimension");
        }
        starts.push_back(warm.values());
    }
    starts.push_back(RealVector::Constant(d_in, 1.0 / d_in));  // flat start, then random ones
    for (int r = 1; r < restarts; ++r) {
        RealVector p(d_in);
        for (int i = 0; i < d_in; ++i) p(i) = exponential(rng);
        starts.push_back(p / p.sum());
    }

    AscentResult best{RealVector(), -1.0, 0, false};
    std::int64_t total_iterations = 0;
    for (const RealVector& start : starts) {
        AscentResult result = ascend(objective, start);
        total_iterations += result.iterations;
        if (best.p.size() == 0 || result.value > best.value ||
            (result.value == best.value && lexicographically_before(result.p, best.p))) {
            best = std::move(result);
        }
    }
    return OptimizationReport{best.value, SimplexPoint(best.p), restarts, total_iterations,
                              best.converged, seed};
}

std::vector<SchmidtTableRow> optimal_schmidt_table(int d_max, int restarts, std::uint64_t seed) {
    if (d_max < 2) throw std::invalid_argument("optimal_schmidt_table: d_max must be >= 2");
    std::vector<SchmidtTableRow> rows;
    std::vector<SimplexPoint> warm;
    for (int d = 2; d <= d_max; ++d) {
        const auto objective = [d](const SchmidtVector& lambda) {
            return fidelity_recursive(lambda, d);
        };
        const OptimizationReport report =
            maximize_schmidt(objective, d, restarts, seed + static_cast<std::uint64_t>(d), warm);
        RealVector lambda = report.argmax.values().cwiseSqrt();
        std::sort(lambda.data(), lambda.data() + lambda.size(), std::greater<double>());
        rows.push_back({d, report.best_value, lambda});

        // Seed the next dimension with this optimum plus a small tail.
        RealVector extended(d + 1);
        extended.head(d) = report.argmax.values();
        extended(d) = 1e-4;
        warm = {SimplexPoint(extended / extended.sum())};
    }
    return rows;
}

namespace {

double positive_branch_objective(double z1, double z2, double z3) {
    const double r1 = std::max(0.0, 1.0 + 3.0 * z1 + 3.0 * z2 + z3);
    const double r2 = std::max(0.0, 1.0 - 3.0 * z1 + 3.0 * z2 - z3);
    const double s = std::sqrt(r1) + std::sqrt(r2);
    return s * s / 16.0;
}

bool positive_branch_feasible(double z1, double z2, double z3) {
    if (z1 < 0.0 || z1 > 1.0 || z2 < -1.0 || z2 > 1.0 || z3 < -1.0 || z3 > 1.0) return false;
    const double gisin_lhs = 3.0 * std::pow(1.0 + 2.0 * z1 + z2, 2);
    if (gisin_lhs > 6.0 * std::pow(1.0 + z1, 3)) return false;
    const double finner_lhs = 1.0 - 3.0 * z1 + 3.0 * z2 - z3;
    if (finner_lhs < 0.0) return false;
    return finner_lhs <= std::sqrt(8.0 * std::pow(1.0 - z1, 3));
}

}  // namespace

CorrelatorBoundResult ghz3_bound_positive_branch(double grid_step, double refine_tol) {
    if (grid_step <= 0.0 || grid_step > 1e-2) {
        throw std::invalid_argument("ghz3_bound_positive_branch: grid_step must be in (0, 0.01]");
    }
    if (refine_tol <= 0.0) {
        throw std::invalid_argument("ghz3_bound_positive_branch: refine_tol must be positive");
    }

    CorrelatorBoundResult best{-1.0, 0.0, 0.0, 0.0};
    const auto consider = [&](double z1, double z2, double z3) {
        if (!positive_branch_feasible(z1, z2, z3)) return;
        const double value = positive_branch_objective(z1, z2, z3);
        if (value > best.value) best = {value, z1, z2, z3};
    };

    const int n1 = static_cast<int>(std::llround(1.0 / grid_step));
    const int n2 = static_cast<int>(std::llround(2.0 / grid_step));
    for (int i = 0; i <= n1; ++i) {
        const double z1 = i * grid_step;
        for (int j = 0; j <= n2; ++j) {
            const double z2 = -1.0 + j * grid_step;
            // Gisin does not involve z3; skip whole rows early.
            if (3.0 * std::pow(1.0 + 2.0 * z1 + z2, 2) > 6.0 * std::pow(1.0 + z1, 3)) continue;
            for (int k = 0; k <= n2; ++k) consider(z1, z2, -1.0 + k * grid_step);
        }
    }
    if (best.value < 0.0) throw NumericalError("ghz3_bound_positive_branch: empty feasible set");

    // Coordinate-wise golden-section refinement in a shrinking window.
    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    double window = grid_step;
    while (window > refine_tol) {
        for (int coord = 0; coord < 3; ++coord) {
            auto value_at = [&](double x) {
                double z[3] = {best.z1, best.z2, best.z3};
                z[coord] = x;
                return positive_branch_feasible(z[0], z[1], z[2])
                           ? positive_branch_objective(z[0], z[1], z[2])
                           : -1.0;
            };
            double z[3] = {best.z1, best.z2, best.z3};
            double lo = z[coord] - window, hi = z[coord] + window;
            double x1 = hi - golden * (hi - lo), x2 = lo + golden * (hi - lo);
            double f1 = value_at(x1), f2 = value_at(x2);
            for (int it = 0; it < 80 && hi - lo > refine_tol * 1e-2; ++it) {
                if (f1 < f2) {
                    lo = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = lo + golden * (hi - lo);
                    f2 = value_at(x2);
                } else {
                    hi = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = hi - golden * (hi - lo);
                    f1 = value_at(x1);
                }
            }
            const double x = (f1 > f2) ? x1 : x2;
            const double fx = std::max(f1, f2);
            if (fx > best.value) {
                best.value = fx;
                if (coord == 0) best.z1 = x;
                if (coord == 1) best.z2 = x;
                if (coord == 2) best.z3 = x;
            }
        }
        window *= 0.5;
    }
    return best;
}

double ghz3_bound_negative_branch() {
    const double z2_star = (42.0 - 5.0 * std::sqrt(42.0)) / 21.0;
    return (1.0 + 3.0 * z2_star) / 4.0;  // == (49 - 5 sqrt(42)) / 28
}

const std::vector<double>& ghz3_bound_polynomial() {
    static const std::vector<double> coeffs{-120125.0, 889800.0,  -2743640.0, 4210624.0,
                                            -2964416.0, 114944.0, 832000.0};
    return coeffs;
}

double evaluate_polynomial(const std::vector<double>& ascending_coeffs, double x) {
    double value = 0.0;
    for (auto it = ascending_coeffs.rbegin(); it != ascending_coeffs.rend(); ++it) {
        value = value * x + *it;
    }
    return value;
}

std::vector<double> real_roots_in_interval(const std::vector<double>& ascending_coeffs, double lo,
                                           double hi) {
    if (ascending_coeffs.empty() || lo >= hi) {
        throw std::invalid_argument("real_roots_in_interval: bad input");
    }
    auto f = [&](double x) { return evaluate_polynomial(ascending_coeffs, x); };

    const int cells = 200000;
    const double h = (hi - lo) / cells;
    std::vector<double> roots;
    double x0 = lo, f0 = f(lo);
    for (int i = 1; i <= cells; ++i) {
        const double x1 = lo + i * h;
        const double f1 = f(x1);
        if (f0 == 0.0) {
            roots.push_back(x0);
        } else if (f0 * f1 < 0.0) {
            double a = x0, b = x1;
            while (b - a > 1e-12) {
                const double mid = 0.5 * (a + b);
                const double fm = f(mid);
                if (fm == 0.0) {
                    a = b = mid;
                } else if (f0 * fm < 0.0) {
                    b = mid;
                } else {
                    a = mid;
                }
            }
            roots.push_back(0.5 * (a + b));
        }
        x0 = x1;
        f0 = f1;
    }
    if (f0 == 0.0) roots.push_back(x0);
    return roots;
}

double ghz3_bound_sextic_root() {
    const auto& coeffs = ghz3_bound_polynomial();
    // Cauchy bound on root magnitude.
    double bound = 0.0;
    for (std::size_t i = 0; i + 1 < coeffs.size(); ++i) {
        bound = std::max(bound, std::abs(coeffs[i] / coeffs.back()));
    }
    const auto roots = real_roots_in_interval(coeffs, -(1.0 + bound), 1.0 + bound);
    if (roots.empty()) throw NumericalError("ghz3_bound_sextic_root: no real roots found");
    return roots.back();
}

}  // namespace losrnet
