#pragma once

// Shared test-only machinery: the literal-contraction assembly oracle,
// exhaustive small-graph enumeration, and random inputs. Everything here
// stays independent of the library paths it is used to check.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "losrnet/channels.hpp"
#include "losrnet/graphs.hpp"
#include "losrnet/network.hpp"
#include "losrnet/tensor.hpp"

namespace losrnet::testing {

// Assembles the triangle output state by the verbatim contraction: the
// threefold Choi tensor product against the transposed pair sources and an
// output identity, traced over all inputs. Exponential in d_in; keep to
// d_in = 2.
inline ComplexMatrix assemble_literal_equation(const ChoiMatrix& choi,
                                               const SchmidtVector& lambda) {
    const int d = choi.d_in;
    const int dout = choi.d_out;

    ComplexVector pair = ComplexVector::Zero(d * d);
    for (int i = 0; i < d; ++i) pair(i * d + i) = lambda[i];
    const ComplexMatrix rho_pair = pair * pair.adjoint();

    const ComplexMatrix big_eta = kron(kron(choi.matrix, choi.matrix), choi.matrix);
    const SystemLayout eta_order{{"a", d},     {"a'", d},    {"alpha", dout},
                                 {"b", d},     {"b'", d},    {"beta", dout},
                                 {"c", d},     {"c'", d},    {"gamma", dout}};
    const SystemLayout source_order{{"a", d},     {"b'", d},    {"b", d},
                                    {"c'", d},    {"c", d},     {"a'", d},
                                    {"alpha", dout}, {"beta", dout}, {"gamma", dout}};
    const ComplexMatrix eta_aligned = permute_systems(big_eta, eta_order, source_order);

    const ComplexMatrix sources =
        kron(kron(rho_pair.transpose(), rho_pair.transpose()), rho_pair.transpose());
    const ComplexMatrix lifted =
        kron(sources, ComplexMatrix::Identity(dout * dout * dout, dout * dout * dout));

    return partial_trace(eta_aligned * lifted, source_order, {"alpha", "beta", "gamma"});
}

inline double ghz_fidelity(const ComplexMatrix& rho, int d) {
    return fidelity_with_pure(rho, ghz_state(3, d));
}

// --- random inputs -------------------------------------------------------

inline SchmidtVector random_schmidt(std::mt19937_64& rng, int d) {
    std::exponential_distribution<double> exponential(1.0);
    RealVector p(d);
    for (int i = 0; i < d; ++i) p(i) = exponential(rng);
    return SchmidtVector((p / p.sum()).cwiseSqrt());
}

inline ComplexMatrix random_density_matrix(std::mt19937_64& rng, int dim) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix g(dim, dim);
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) g(r, c) = Complex{normal(rng), normal(rng)};
    }
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace();
    // scrub numerical asymmetry so hermiticity checks are exact
    return 0.5 * (rho + ComplexMatrix(rho.adjoint()));
}

inline StateVector random_pure_state(std::mt19937_64& rng, const std::vector<int>& dims) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::int64_t total = 1;
    for (int d : dims) total *= d;
    ComplexVector amp(total);
    for (std::int64_t i = 0; i < total; ++i) amp(i) = Complex{normal(rng), normal(rng)};
    amp /= amp.norm();
    return StateVector(dims, std::move(amp));
}

inline Graph random_connected_graph(std::mt19937_64& rng, int n, double edge_probability = 0.4) {
    std::bernoulli_distribution coin(edge_probability);
    for (;;) {
        Graph g(n);
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                if (coin(rng)) g.toggle_edge(i, j);
            }
        }
        if (is_connected(g)) return g;
    }
}

// --- exhaustive enumeration of small graphs ------------------------------

// Edge bit of the pair (i, j), i < j, within an n-vertex edge mask.
inline int edge_bit(int n, int i, int j) {
    if (i > j) std::swap(i, j);
    int bit = 0;
    for (int a = 0; a < i; ++a) bit += n - 1 - a;
    return bit + (j - i - 1);
}

inline Graph graph_from_mask(int n, std::uint32_t mask) {
    Graph g(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if ((mask >> edge_bit(n, i, j)) & 1u) g.toggle_edge(i, j);
        }
    }
    return g;
}

inline std::uint32_t canonical_mask(int n, std::uint32_t mask) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::uint32_t best = ~std::uint32_t{0};
    do {
        std::uint32_t relabeled = 0;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                if ((mask >> edge_bit(n, i, j)) & 1u) {
                    relabeled |= std::uint32_t{1} << edge_bit(n, perm[i], perm[j]);
                }
            }
        }
        best = std::min(best, relabeled);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

// Every isomorphism class of connected graphs on n vertices, as canonical
// edge masks, built by attaching one vertex at a time to smaller classes.
inline std::vector<std::uint32_t> connected_graph_classes(int n) {
    if (n < 1 || n > 7) throw std::invalid_argument("connected_graph_classes: n in 1..7");
    std::vector<std::uint32_t> classes{0};  // the 1-vertex graph
    for (int size = 2; size <= n; ++size) {
        std::set<std::uint32_t> next;
        for (std::uint32_t base : classes) {
            // re-embed the (size-1)-vertex mask into size-vertex indexing
            std::uint32_t embedded = 0;
            for (int i = 0; i < size - 1; ++i) {
                for (int j = i + 1; j < size - 1; ++j) {
                    if ((base >> edge_bit(size - 1, i, j)) & 1u) {
                        embedded |= std::uint32_t{1} << edge_bit(size, i, j);
                    }
                }
            }
            for (std::uint32_t attach = 1; attach < (std::uint32_t{1} << (size - 1)); ++attach) {
                std::uint32_t candidate = embedded;
                for (int i = 0; i < size - 1; ++i) {
                    if ((attach >> i) & 1u) {
                        candidate |= std::uint32_t{1} << edge_bit(size, i, size - 1);
                    }
                }
                next.insert(canonical_mask(size, candidate));
            }
        }
        classes.assign(next.begin(), next.end());
    }
    return classes;
}

}  // namespace losrnet::testing
