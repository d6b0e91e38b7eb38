#include "losrnet/network.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace losrnet {

SchmidtVector::SchmidtVector(RealVector coefficients) : coefficients_(std::move(coefficients)) {
    if (coefficients_.size() < 1) {
        throw std::invalid_argument("SchmidtVector: needs at least one coefficient");
    }
    if (coefficients_.minCoeff() < 0.0) {
        throw std::invalid_argument("SchmidtVector: coefficients must be nonnegative");
    }
    if (std::abs(coefficients_.squaredNorm() - 1.0) > kNormTol) {
        throw std::invalid_argument("SchmidtVector: squared coefficients must sum to 1");
    }
}

SchmidtVector::SchmidtVector(std::initializer_list<double> coefficients)
    : SchmidtVector(Eigen::Map<const RealVector>(coefficients.begin(),
                                                 static_cast<Eigen::Index>(coefficients.size()))) {
}

SchmidtVector SchmidtVector::uniform(int d) {
    return SchmidtVector(RealVector::Constant(d, 1.0 / std::sqrt(static_cast<double>(d))));
}

SchmidtVector SchmidtVector::sorted_descending() const {
    RealVector sorted = coefficients_;
    std::sort(sorted.data(), sorted.data() + sorted.size(), std::greater<double>());
    return SchmidtVector(sorted);
}

TriangleConfig::TriangleConfig(ChoiMatrix a, ChoiMatrix b, ChoiMatrix c, SchmidtVector ab,
                               SchmidtVector bc, SchmidtVector ca)
    : choi_a(std::move(a)),
      choi_b(std::move(b)),
      choi_c(std::move(c)),
      lambda_ab(std::move(ab)),
      lambda_bc(std::move(bc)),
      lambda_ca(std::move(ca)) {
    if (choi_b.d_in != choi_a.d_in || choi_c.d_in != choi_a.d_in ||
        choi_b.d_out != choi_a.d_out || choi_c.d_out != choi_a.d_out) {
        throw std::invalid_argument("TriangleConfig: Choi matrices must share d_in and d_out");
    }
    for (const SchmidtVector* lambda : {&lambda_ab, &lambda_bc, &lambda_ca}) {
        if (lambda->size() != choi_a.d_in) {
            throw std::invalid_argument("TriangleConfig: Schmidt vector length must equal d_in");
        }
    }
}

TriangleConfig TriangleConfig::symmetric(const ChoiMatrix& choi, const SchmidtVector& lambda) {
    return TriangleConfig(choi, choi, choi, lambda, lambda, lambda);
}

StateVector ghz_state(int n, int d) {
    if (n < 2 || d < 2) throw std::invalid_argument("ghz_state: need n >= 2 and d >= 2");
    std::int64_t total = 1;
    for (int i = 0; i < n; ++i) {
        total *= d;
        if (total > kDenseEntryCap) throw CapacityError("ghz_state: state too large");
    }
    ComplexVector amp = ComplexVector::Zero(total);
    // |i...i> has flat index i * (d^n - 1) / (d - 1)
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    std::int64_t stride = (total - 1) / (d - 1);
    for (int i = 0; i < d; ++i) amp(i * stride) = norm;
    return StateVector(std::vector<int>(n, d), std::move(amp));
}

ComplexMatrix assemble_triangle_dense(const TriangleConfig& cfg) {
    const int d = cfg.d_in();
    const int dout = cfg.d_out();
    if (d > 3 || dout > 3) {
        throw CapacityError(
            "assemble_triangle_dense: feasible only for d_in <= 3 and d_out <= 3; use "
            "assemble_triangle_structured for larger grids");
    }

    // Pair sources in the order (a,b')(b,c')(c,a').
    std::int64_t dim6 = 1;
    for (int i = 0; i < 6; ++i) dim6 *= d;
    ComplexVector psi = ComplexVector::Zero(dim6);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            for (int k = 0; k < d; ++k) {
                const double w = cfg.lambda_ab[i] * cfg.lambda_bc[j] * cfg.lambda_ca[k];
                // index over (a, b', b, c', c, a') = (i, i, j, j, k, k)
                const std::int64_t idx = ((((i * static_cast<std::int64_t>(d) + i) * d + j) * d + j) * d + k) * d + k;
                psi(idx) = w;
            }
        }
    }
    ComplexMatrix rho = psi * psi.adjoint();

    const SystemLayout source_order{{"a", d}, {"b'", d}, {"b", d}, {"c'", d}, {"c", d}, {"a'", d}};
    const SystemLayout channel_order{{"a", d}, {"a'", d}, {"b", d}, {"b'", d}, {"c", d}, {"c'", d}};
    rho = permute_systems(rho, source_order, channel_order);

    // Apply each channel to the two leading systems, then rotate its output
    // to the back so the next channel's inputs are leading again.
    auto apply_front_channel = [&](const ComplexMatrix& state, const ChoiMatrix& choi,
                                   const SystemLayout& layout_in, const std::string& out_label) {
        ComplexMatrix out = ComplexMatrix::Zero(dout * (state.rows() / (d * d)),
                                                dout * (state.cols() / (d * d)));
        for (const ComplexMatrix& op : kraus_operators(choi)) {
            out += conjugate_front(op, state, d * d);
        }
        // output system replaces the two leading inputs
        std::vector<std::pair<std::string, int>> systems{{out_label, dout}};
        for (int i = 2; i < layout_in.size(); ++i) {
            systems.push_back({layout_in.label(i), layout_in.dim(i)});
        }
        SystemLayout layout_out{systems};
        // rotate: move the fresh output system to the back
        systems.erase(systems.begin());
        systems.push_back({out_label, dout});
        SystemLayout rotated{systems};
        return std::make_pair(permute_systems(out, layout_out, rotated), rotated);
    };

    auto [rho_a, layout_a] = apply_front_channel(rho, cfg.choi_a, channel_order, "alpha");
    auto [rho_b, layout_b] = apply_front_channel(rho_a, cfg.choi_b, layout_a, "beta");
    auto [rho_c, layout_c] = apply_front_channel(rho_b, cfg.choi_c, layout_b, "gamma");

    const SystemLayout target{{"alpha", dout}, {"beta", dout}, {"gamma", dout}};
    return permute_systems(rho_c, layout_c, target);
}

ComplexMatrix assemble_triangle_structured(const TriangleConfig& cfg) {
    if (!cfg.choi_a.grid || !cfg.choi_b.grid || !cfg.choi_c.grid) {
        throw std::invalid_argument(
            "assemble_triangle_structured: all three Choi matrices must be grid channels");
    }
    const int dout = cfg.d_out();
    const auto& arrows_a = cfg.choi_a.grid->arrows;
    const auto& arrows_b = cfg.choi_b.grid->arrows;
    const auto& arrows_c = cfg.choi_c.grid->arrows;

    ComplexMatrix rho = ComplexMatrix::Zero(dout * dout * dout, dout * dout * dout);

    // One ordered arrow triple at a time: collect the output triples whose
    // slot cells satisfy the source matching a<->b', b<->c', c<->a', then
    // accumulate ket x bra combinations.
    struct Term {
        int flat;
        double weight;
    };
    std::vector<Term> terms;
    for (const auto& ma : arrows_a) {
        for (const auto& mb : arrows_b) {
            for (const auto& mc : arrows_c) {
                terms.clear();
                for (int oa = 0; oa < ma.length(); ++oa) {
                    for (int ob = 0; ob < mb.length(); ++ob) {
                        const auto [ia, ja] = ma.cells[oa];
                        const auto [ib, jb] = mb.cells[ob];
                        if (ia != jb) continue;
                        for (int oc = 0; oc < mc.length(); ++oc) {
                            const auto [ic, jc] = mc.cells[oc];
                            if (ib != jc || ic != ja) continue;
                            terms.push_back(
                                {(oa * dout + ob) * dout + oc,
                                 cfg.lambda_ab[ia] * cfg.lambda_bc[ib] * cfg.lambda_ca[ic]});
                        }
                    }
                }
                for (const Term& ket : terms) {
                    for (const Term& bra : terms) {
                        rho(ket.flat, bra.flat) += ket.weight * bra.weight;
                    }
                }
            }
        }
    }
    return rho;
}

SystemLayout QuditGroupingWitness::copies_layout() const {
    std::vector<std::pair<std::string, int>> systems;
    const char* party = "abc";
    for (int q = 0; q < copies; ++q) {
        for (int p = 0; p < 3; ++p) {
            systems.push_back({std::string(1, party[p]) + std::to_string(q), 2});
        }
    }
    return SystemLayout{systems};
}

SystemLayout QuditGroupingWitness::grouped_layout() const {
    std::vector<std::pair<std::string, int>> systems;
    const char* party = "abc";
    for (int p = 0; p < 3; ++p) {
        for (int q = 0; q < copies; ++q) {
            systems.push_back({std::string(1, party[p]) + std::to_string(q), 2});
        }
    }
    return SystemLayout{systems};
}

QuditGroupingWitness ghz_copies_to_qudit(int k) {
    if (k < 1) throw std::invalid_argument("ghz_copies_to_qudit: k must be >= 1");
    QuditGroupingWitness witness{k, {}};
    witness.qubit_of_grouped_position.resize(3 * k);
    for (int p = 0; p < 3; ++p) {
        for (int q = 0; q < k; ++q) {
            witness.qubit_of_grouped_position[p * k + q] = 3 * q + p;
        }
    }
    return witness;
}

StateVector group_parties_reduce(const StateVector& psi,
                                 const std::array<std::vector<int>, 3>& partition) {
    const int n = static_cast<int>(psi.dims.size());
    if (n < 3) throw std::invalid_argument("group_parties_reduce: need at least three parties");
    const int d = psi.dims[0];
    for (int dim : psi.dims) {
        if (dim != d) {
            throw std::invalid_argument("group_parties_reduce: parties must share one dimension");
        }
    }
    std::set<int> seen;
    for (const auto& group : partition) {
        if (group.empty()) {
            throw std::invalid_argument("group_parties_reduce: partition sets must be nonempty");
        }
        for (int p : group) {
            if (p < 0 || p >= n || !seen.insert(p).second) {
                throw std::invalid_argument(
                    "group_parties_reduce: partition must consist of disjoint valid parties");
            }
        }
    }
    if (static_cast<int>(seen.size()) != n) {
        throw std::invalid_argument("group_parties_reduce: partition must cover all parties");
    }

    // Accept only GHZ-form inputs: uniform weight on |i...i>, nothing else.
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    const std::int64_t total = psi.dimension();
    const std::int64_t stride = (total - 1) / (d - 1);
    for (std::int64_t idx = 0; idx < total; ++idx) {
        const bool diagonal = (idx % stride == 0) && (idx / stride < d);
        const double expected = diagonal ? norm : 0.0;
        if (std::abs(psi.amplitudes(idx) - Complex{expected, 0.0}) > 1e-9) {
            throw std::invalid_argument(
                "group_parties_reduce: input is not a GHZ state (general states unsupported)");
        }
    }

    std::array<int, 3> reps{};
    for (int g = 0; g < 3; ++g) {
        reps[g] = *std::min_element(partition[g].begin(), partition[g].end());
    }

    std::vector<std::int64_t> strides(n);
    std::int64_t acc = 1;
    for (int i = n - 1; i >= 0; --i) {
        strides[i] = acc;
        acc *= d;
    }
    ComplexVector out = ComplexVector::Zero(total);
    for (int i = 0; i < d; ++i) {
        std::int64_t idx = 0;
        for (int rep : reps) idx += i * strides[rep];
        out(idx) = norm;
    }
    return StateVector(psi.dims, std::move(out));
}

}  // namespace losrnet
