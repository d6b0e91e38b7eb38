#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "losrnet/tensor.hpp"

namespace losrnet {

/// Simple undirected graph on vertices 0..n-1, adjacency kept as bitmask
/// rows (at most 64 vertices). No self-loops.
class Graph {
public:
    explicit Graph(int n);
    static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges);

    int vertex_count() const { return n_; }
    int edge_count() const;
    bool has_edge(int i, int j) const;
    void toggle_edge(int i, int j);
    std::uint64_t neighbors(int v) const { return adj_[v]; }
    int degree(int v) const;
    std::vector<std::pair<int, int>> edges() const;

    bool operator==(const Graph& other) const = default;

private:
    int n_;
    std::vector<std::uint64_t> adj_;

    void check_vertex(int v) const;
};

/// Toggle every edge inside the neighborhood of v.
Graph local_complement(const Graph& g, int v);

/// Toggle the single edge (i, j).
Graph cz_toggle(const Graph& g, int i, int j);

bool is_connected(const Graph& g);

/// True iff removing v increases the component count. Requires a
/// connected input.
bool is_articulation(const Graph& g, int v);

/// One recorded operation of an extraction, local to one partition set.
struct ExtractionOp {
    enum class Kind { LocalComplement, ControlledZ };
    Kind kind;
    int v1 = 0;
    int v2 = 0;   // second vertex for ControlledZ, unused otherwise
    int set = 0;  // 0 = A, 1 = B, 2 = C
};

/// Three disjoint nonempty vertex sets covering the whole graph.
struct Tripartition {
    std::array<std::vector<int>, 3> sets;

    int set_of(int v) const;
};

/// Witness that a triangle on {a, b, c} can be isolated from a graph by
/// set-local operations: replaying `ops` on the input graph leaves
/// {a, b, c} fully connected and disconnected from every other vertex.
struct ExtractionCertificate {
    int a = 0, b = 0, c = 0;
    Tripartition partition;
    std::vector<ExtractionOp> ops;
};

/// Constructs an extraction certificate for any connected graph with
/// n >= 3 and distinct targets a, b, c. Vertices outside {a, b, c} are
/// eliminated in ascending index order; a nonzero seed shuffles that order
/// (randomized testing only). The result is replay-verified before
/// returning.
ExtractionCertificate extract_ghz(const Graph& g, int a, int b, int c, std::uint64_t seed = 0);

/// Applies the certificate's operations to a graph, in order.
Graph replay_certificate(const Graph& g, const ExtractionCertificate& cert);

/// True when replaying the certificate isolates a complete triangle on
/// {a, b, c}, and every op is local to one partition set.
bool certificate_isolates_triangle(const Graph& g, const ExtractionCertificate& cert);

/// Builds the graph state of g on |+>^n, replays the certificate's
/// operations as unitaries (CZ gates; a local complementation as the
/// standard local Clifford on the vertex and its current neighbors),
/// reduces to {a, b, c} and returns the overlap with the triangle graph
/// state. Feasible for n <= 12.
double verify_certificate_statevector(const Graph& g, const ExtractionCertificate& cert);

/// m x n grid graph; vertex (r, c) has index r*n + c.
Graph grid_graph(int m, int n);

/// Striping tripartition of the m x n cluster: sets assigned along one
/// axis in the block pattern A B C C B A ..., every same-set edge removed
/// by a CZ, leaving one path-of-three copy per cross-line and block.
struct ClusterExtractionResult {
    Tripartition partition;
    std::vector<ExtractionCertificate> certificates;
    int copies = 0;
    bool met_floor = false;  // copies == floor(mn/3)
};

ClusterExtractionResult cluster_tripartition(int m, int n);

/// Edge-list text format: "n" header line, then one "i j" line per edge.
std::string to_text(const Graph& g);
Graph parse_edge_list(std::istream& in);
Graph parse_edge_list(const std::string& text);

/// Line-oriented certificate format, replayable by external tools.
std::string to_text(const ExtractionCertificate& cert);

}  // namespace losrnet
