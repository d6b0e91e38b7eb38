#include "losrnet/graphs.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <numeric>
#include <random>
#include <sstream>

namespace losrnet {

Graph::Graph(int n) : n_(n), adj_(n, 0) {
    if (n < 1 || n > 64) throw std::invalid_argument("Graph: vertex count must be in 1..64");
}

Graph Graph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    Graph g(n);
    for (const auto& [i, j] : edges) g.toggle_edge(i, j);
    return g;
}

void Graph::check_vertex(int v) const {
    if (v < 0 || v >= n_) throw std::invalid_argument("Graph: vertex out of range");
}

int Graph::edge_count() const {
    int total = 0;
    for (std::uint64_t row : adj_) total += std::popcount(row);
    return total / 2;
}

bool Graph::has_edge(int i, int j) const {
    check_vertex(i);
    check_vertex(j);
    return (adj_[i] >> j) & 1u;
}

void Graph::toggle_edge(int i, int j) {
    check_vertex(i);
    check_vertex(j);
    if (i == j) throw std::invalid_argument("Graph: self-loops are not allowed");
    adj_[i] ^= (std::uint64_t{1} << j);
    adj_[j] ^= (std::uint64_t{1} << i);
}

int Graph::degree(int v) const {
    check_vertex(v);
    return std::popcount(adj_[v]);
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < n_; ++i) {
        for (int j = i + 1; j < n_; ++j) {
            if ((adj_[i] >> j) & 1u) out.push_back({i, j});
        }
    }
    return out;
}

Graph local_complement(const Graph& g, int v) {
    Graph out = g;
    const std::uint64_t nb = g.neighbors(v);
    for (int i = 0; i < g.vertex_count(); ++i) {
        if (!((nb >> i) & 1u)) continue;
        for (int j = i + 1; j < g.vertex_count(); ++j) {
            if ((nb >> j) & 1u) out.toggle_edge(i, j);
        }
    }
    return out;
}

Graph cz_toggle(const Graph& g, int i, int j) {
    Graph out = g;
    out.toggle_edge(i, j);
    return out;
}

namespace {

// Connectivity restricted to the vertices in `mask`.
bool connected_on(const Graph& g, std::uint64_t mask) {
    if (mask == 0) return true;
    const std::uint64_t start = mask & (~mask + 1);
    std::uint64_t reached = start;
    std::uint64_t frontier = start;
    while (frontier != 0) {
        std::uint64_t next = 0;
        for (int v = 0; v < g.vertex_count(); ++v) {
            if ((frontier >> v) & 1u) next |= g.neighbors(v) & mask;
        }
        frontier = next & ~reached;
        reached |= frontier;
    }
    return reached == mask;
}

std::uint64_t all_vertices(const Graph& g) {
    return (g.vertex_count() == 64) ? ~std::uint64_t{0}
                                    : ((std::uint64_t{1} << g.vertex_count()) - 1);
}

bool articulation_on(const Graph& g, std::uint64_t mask, int v) {
    return !connected_on(g, mask & ~(std::uint64_t{1} << v));
}

}  // namespace

bool is_connected(const Graph& g) { return connected_on(g, all_vertices(g)); }

bool is_articulation(const Graph& g, int v) {
    if (v < 0 || v >= g.vertex_count()) throw std::invalid_argument("is_articulation: bad vertex");
    if (!is_connected(g)) throw std::invalid_argument("is_articulation: graph must be connected");
    return articulation_on(g, all_vertices(g), v);
}

int Tripartition::set_of(int v) const {
    for (int s = 0; s < 3; ++s) {
        if (std::find(sets[s].begin(), sets[s].end(), v) != sets[s].end()) return s;
    }
    throw std::invalid_argument("Tripartition: vertex not in any set");
}

namespace {

Graph apply_op(const Graph& g, const ExtractionOp& op) {
    if (op.kind == ExtractionOp::Kind::LocalComplement) return local_complement(g, op.v1);
    return cz_toggle(g, op.v1, op.v2);
}

// Recursive step of the extraction: eliminate remaining[pos], recurse on
// the rest, then reattach by the case rules on the replayed neighborhood.
// Eliminated vertices stay in the working graph as isolated vertices.
void extract_rec(const Graph& g, const std::vector<int>& remaining, std::size_t pos, int a, int b,
                 int c, std::uint64_t active, std::vector<ExtractionOp>& ops,
                 std::vector<int>& set_of) {
    if (pos == remaining.size()) {
        // Base: connected graph on {a, b, c} alone. Either already a
        // triangle, or a path whose middle vertex completes it.
        set_of[a] = 0;
        set_of[b] = 1;
        set_of[c] = 2;
        const int present = static_cast<int>(g.has_edge(a, b)) + g.has_edge(a, c) + g.has_edge(b, c);
        if (present == 3) return;
        if (present != 2) {
            throw std::logic_error("extract_ghz: base graph is not connected (must never fire)");
        }
        int middle = a;
        if (!g.has_edge(a, c)) middle = b;  // b is opposite the missing edge a-c
        if (!g.has_edge(a, b)) middle = c;
        ops.push_back({ExtractionOp::Kind::LocalComplement, middle, 0, set_of[middle]});
        return;
    }

    const int v = remaining[pos];
    Graph current = g;

    std::size_t pre_op_index = ops.size();
    bool pre_complemented = false;
    if (articulation_on(current, active, v)) {
        current = local_complement(current, v);
        // v's set is only known after the case analysis; patch the tag below.
        ops.push_back({ExtractionOp::Kind::LocalComplement, v, 0, -1});
        pre_complemented = true;
    }

    // Remove v: delete its edges, keep it as an isolated vertex.
    Graph shrunk = current;
    for (int u = 0; u < shrunk.vertex_count(); ++u) {
        if ((shrunk.neighbors(v) >> u) & 1u) shrunk.toggle_edge(v, u);
    }

    const std::size_t inner_begin = ops.size();
    extract_rec(shrunk, remaining, pos + 1, a, b, c, active & ~(std::uint64_t{1} << v), ops,
                set_of);

    // Replay the inner operations on the graph that still carries v's
    // edges; they commute with v's removal, so the neighborhood of v in
    // the replayed graph is the one the case rules need.
    Graph replayed = current;
    for (std::size_t i = inner_begin; i < ops.size(); ++i) replayed = apply_op(replayed, ops[i]);

    const bool na = replayed.has_edge(v, a);
    const bool nb = replayed.has_edge(v, b);
    const bool nc = replayed.has_edge(v, c);
    const int links = static_cast<int>(na) + nb + nc;

    if (links == 0) {
        set_of[v] = 0;
    } else if (links == 1) {
        const int x = na ? a : (nb ? b : c);
        set_of[v] = set_of[x];
        ops.push_back({ExtractionOp::Kind::ControlledZ, x, v, set_of[x]});
    } else if (links == 2) {
        const int m = !na ? a : (!nb ? b : c);  // the triangle vertex not linked to v
        set_of[v] = set_of[m];
        ops.push_back({ExtractionOp::Kind::ControlledZ, m, v, set_of[m]});
        ops.push_back({ExtractionOp::Kind::LocalComplement, m, 0, set_of[m]});
        ops.push_back({ExtractionOp::Kind::ControlledZ, m, v, set_of[m]});
        ops.push_back({ExtractionOp::Kind::LocalComplement, m, 0, set_of[m]});
    } else {
        set_of[v] = set_of[c];
        ops.push_back({ExtractionOp::Kind::LocalComplement, c, 0, set_of[c]});
        ops.push_back({ExtractionOp::Kind::ControlledZ, c, v, set_of[c]});
        ops.push_back({ExtractionOp::Kind::LocalComplement, c, 0, set_of[c]});
    }
    if (pre_complemented) ops[pre_op_index].set = set_of[v];
}

}  // namespace

ExtractionCertificate extract_ghz(const Graph& g, int a, int b, int c, std::uint64_t seed) {
    const int n = g.vertex_count();
    if (n < 3) throw std::invalid_argument("extract_ghz: need at least three vertices");
    for (int v : {a, b, c}) {
        if (v < 0 || v >= n) throw std::invalid_argument("extract_ghz: target vertex out of range");
    }
    if (a == b || a == c || b == c) {
        throw std::invalid_argument("extract_ghz: target vertices must be distinct");
    }
    if (!is_connected(g)) throw std::invalid_argument("extract_ghz: graph must be connected");

    std::vector<int> remaining;
    for (int v = 0; v < n; ++v) {
        if (v != a && v != b && v != c) remaining.push_back(v);
    }
    if (seed != 0) {
        std::mt19937_64 rng(seed);
        std::shuffle(remaining.begin(), remaining.end(), rng);
    }

    ExtractionCertificate cert;
    cert.a = a;
    cert.b = b;
    cert.c = c;
    std::vector<int> set_of(n, -1);
    extract_rec(g, remaining, 0, a, b, c, all_vertices(g), cert.ops, set_of);
    for (int v = 0; v < n; ++v) cert.partition.sets[set_of[v]].push_back(v);

    if (!certificate_isolates_triangle(g, cert)) {
        throw std::logic_error("extract_ghz: case rules failed to isolate the triangle "
                               "(must never fire)");
    }
    return cert;
}

Graph replay_certificate(const Graph& g, const ExtractionCertificate& cert) {
    Graph out = g;
    for (const ExtractionOp& op : cert.ops) out = apply_op(out, op);
    return out;
}

bool certificate_isolates_triangle(const Graph& g, const ExtractionCertificate& cert) {
    // Set-locality of every recorded op.
    for (const ExtractionOp& op : cert.ops) {
        if (cert.partition.set_of(op.v1) != op.set) return false;
        if (op.kind == ExtractionOp::Kind::ControlledZ &&
            cert.partition.set_of(op.v2) != op.set) {
            return false;
        }
    }
    const Graph final_graph = replay_certificate(g, cert);
    if (!final_graph.has_edge(cert.a, cert.b) || !final_graph.has_edge(cert.a, cert.c) ||
        !final_graph.has_edge(cert.b, cert.c)) {
        return false;
    }
    const std::uint64_t triangle = (std::uint64_t{1} << cert.a) | (std::uint64_t{1} << cert.b) |
                                   (std::uint64_t{1} << cert.c);
    for (int v : {cert.a, cert.b, cert.c}) {
        if ((final_graph.neighbors(v) & ~triangle) != 0) return false;
    }
    return true;
}

namespace {

ComplexVector graph_state_amplitudes(const Graph& g) {
    const int n = g.vertex_count();
    const std::int64_t dim = std::int64_t{1} << n;
    ComplexVector amp =
        ComplexVector::Constant(dim, Complex{1.0 / std::sqrt(static_cast<double>(dim)), 0.0});
    // Qubit v corresponds to bit (n-1-v): leftmost label most significant.
    for (const auto& [i, j] : g.edges()) {
        const std::int64_t bi = std::int64_t{1} << (n - 1 - i);
        const std::int64_t bj = std::int64_t{1} << (n - 1 - j);
        for (std::int64_t x = 0; x < dim; ++x) {
            if ((x & bi) && (x & bj)) amp(x) = -amp(x);
        }
    }
    return amp;
}

void apply_cz(ComplexVector& amp, int n, int i, int j) {
    const std::int64_t bi = std::int64_t{1} << (n - 1 - i);
    const std::int64_t bj = std::int64_t{1} << (n - 1 - j);
    for (std::int64_t x = 0; x < amp.size(); ++x) {
        if ((x & bi) && (x & bj)) amp(x) = -amp(x);
    }
}

// sqrt(-iX) on v and sqrt(iZ) on each current neighbor realize a local
// complementation at v on the graph state.
void apply_local_complement_unitary(ComplexVector& amp, const Graph& g, int v) {
    const int n = g.vertex_count();
    const std::int64_t bv = std::int64_t{1} << (n - 1 - v);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const Complex minus_i{0.0, -1.0};
    for (std::int64_t x = 0; x < amp.size(); ++x) {
        if (x & bv) continue;
        const Complex a0 = amp(x);
        const Complex a1 = amp(x | bv);
        amp(x) = (a0 + minus_i * a1) * inv_sqrt2;
        amp(x | bv) = (a1 + minus_i * a0) * inv_sqrt2;
    }
    const Complex phase_plus = std::polar(1.0, M_PI / 4.0);
    const Complex phase_minus = std::conj(phase_plus);
    for (int u = 0; u < n; ++u) {
        if (!((g.neighbors(v) >> u) & 1u)) continue;
        const std::int64_t bu = std::int64_t{1} << (n - 1 - u);
        for (std::int64_t x = 0; x < amp.size(); ++x) {
            amp(x) *= (x & bu) ? phase_minus : phase_plus;
        }
    }
}

}  // namespace

double verify_certificate_statevector(const Graph& g, const ExtractionCertificate& cert) {
    const int n = g.vertex_count();
    if (n > 12) {
        throw CapacityError("verify_certificate_statevector: feasible only for n <= 12");
    }
    ComplexVector amp = graph_state_amplitudes(g);
    Graph track = g;
    for (const ExtractionOp& op : cert.ops) {
        if (op.kind == ExtractionOp::Kind::ControlledZ) {
            apply_cz(amp, n, op.v1, op.v2);
        } else {
            apply_local_complement_unitary(amp, track, op.v1);
        }
        track = apply_op(track, op);
    }

    const StateVector state(std::vector<int>(n, 2), std::move(amp));
    const ComplexMatrix rho = reduced_density(state, {cert.a, cert.b, cert.c});

    const Graph triangle = Graph::from_edges(3, {{0, 1}, {0, 2}, {1, 2}});
    const StateVector target({2, 2, 2}, graph_state_amplitudes(triangle));
    return fidelity_with_pure(rho, target);
}

Graph grid_graph(int m, int n) {
    if (m < 1 || n < 1) throw std::invalid_argument("grid_graph: dimensions must be positive");
    Graph g(m * n);
    for (int r = 0; r < m; ++r) {
        for (int c = 0; c < n; ++c) {
            if (c + 1 < n) g.toggle_edge(r * n + c, r * n + c + 1);
            if (r + 1 < m) g.toggle_edge(r * n + c, (r + 1) * n + c);
        }
    }
    return g;
}

namespace {

// Set pattern along the striped axis: A B C C B A A B C ..., so that the
// boundary between consecutive blocks of three joins equal sets; lines
// past the last full block repeat the final set.
int stripe_set(int line, int block_count) {
    if (line >= 3 * block_count) line = 3 * block_count - 1;
    static const int pattern[6] = {0, 1, 2, 2, 1, 0};
    return pattern[line % 6];
}

}  // namespace

ClusterExtractionResult cluster_tripartition(int m, int n) {
    if (m < 1 || n < 1 || m * n < 3) {
        throw std::invalid_argument("cluster_tripartition: need m, n >= 1 and m*n >= 3");
    }
    const Graph g = grid_graph(m, n);
    const int total = m * n;

    const int copies_striping_rows = n * (m / 3);  // sets assigned per row
    const int copies_striping_cols = m * (n / 3);  // sets assigned per column
    const int copies = std::max(copies_striping_rows, copies_striping_cols);

    ClusterExtractionResult result;
    result.met_floor = false;

    if (copies == 0) {
        // Only the 2x2 grid reaches here; a single generic extraction
        // still guarantees one copy.
        ExtractionCertificate cert = extract_ghz(g, 0, 1, 2);
        result.partition = cert.partition;
        result.certificates.push_back(std::move(cert));
        result.copies = 1;
        result.met_floor = (1 == total / 3);
        return result;
    }

    const bool stripe_rows = copies_striping_rows >= copies_striping_cols;
    const int blocks = (stripe_rows ? m : n) / 3;
    auto set_of_vertex = [&](int v) {
        const int line = stripe_rows ? (v / n) : (v % n);
        return stripe_set(line, blocks);
    };

    for (int v = 0; v < total; ++v) result.partition.sets[set_of_vertex(v)].push_back(v);

    // Every same-set edge is removed by a set-local CZ.
    std::vector<ExtractionOp> removals;
    for (const auto& [i, j] : g.edges()) {
        if (set_of_vertex(i) == set_of_vertex(j)) {
            removals.push_back({ExtractionOp::Kind::ControlledZ, i, j, set_of_vertex(i)});
        }
    }

    // One copy per cross-line and block: a path of three with one vertex
    // per set; a local complementation at its middle closes the triangle.
    for (int block = 0; block < blocks; ++block) {
        const int lines = stripe_rows ? n : m;
        for (int line = 0; line < lines; ++line) {
            std::array<int, 3> path{};
            for (int s = 0; s < 3; ++s) {
                const int stripe_line = 3 * block + s;
                path[s] = stripe_rows ? (stripe_line * n + line) : (line * n + stripe_line);
            }
            ExtractionCertificate cert;
            cert.partition = result.partition;
            // path[1] is always the middle; orientation may swap A and C.
            const bool forward = set_of_vertex(path[0]) == 0;
            cert.a = forward ? path[0] : path[2];
            cert.b = path[1];
            cert.c = forward ? path[2] : path[0];
            cert.ops = removals;
            cert.ops.push_back(
                {ExtractionOp::Kind::LocalComplement, path[1], 0, set_of_vertex(path[1])});
            result.certificates.push_back(std::move(cert));
        }
    }
    result.copies = static_cast<int>(result.certificates.size());
    result.met_floor = (result.copies == total / 3);
    return result;
}

std::string to_text(const Graph& g) {
    std::ostringstream out;
    out << g.vertex_count() << "\n";
    for (const auto& [i, j] : g.edges()) out << i << " " << j << "\n";
    return out.str();
}

Graph parse_edge_list(std::istream& in) {
    int n = 0;
    if (!(in >> n)) throw ValidationError("edge list: missing vertex count header");
    if (n < 1 || n > 64) throw ValidationError("edge list: vertex count must be in 1..64");
    Graph g(n);
    int i = 0, j = 0;
    while (in >> i >> j) {
        if (i < 0 || i >= n || j < 0 || j >= n || i == j) {
            throw ValidationError("edge list: bad edge " + std::to_string(i) + " " +
                                  std::to_string(j));
        }
        if (g.has_edge(i, j)) throw ValidationError("edge list: duplicate edge");
        g.toggle_edge(i, j);
    }
    return g;
}

Graph parse_edge_list(const std::string& text) {
    std::istringstream in(text);
    return parse_edge_list(in);
}

std::string to_text(const ExtractionCertificate& cert) {
    std::ostringstream out;
    out << "triangle " << cert.a << " " << cert.b << " " << cert.c << "\n";
    const char* names = "ABC";
    for (int s = 0; s < 3; ++s) {
        out << "set " << names[s];
        for (int v : cert.partition.sets[s]) out << " " << v;
        out << "\n";
    }
    for (const ExtractionOp& op : cert.ops) {
        if (op.kind == ExtractionOp::Kind::LocalComplement) {
            out << "LC " << op.v1 << " " << names[op.set] << "\n";
        } else {
            out << "CZ " << op.v1 << " " << op.v2 << " " << names[op.set] << "\n";
        }
    }
    return out.str();
}

}  // namespace losrnet
