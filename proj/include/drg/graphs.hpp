#pragma once

#include "drg/params.hpp"

#include <Eigen/Dense>

#include <array>
#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace drg {

/// Simple undirected graph on 0..n-1.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n);
    /// Throws PreconditionError on loops, repeated edges or out-of-range ends.
    static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges);

    int order() const { return n_; }
    std::int64_t edge_count() const { return edges_; }
    const std::vector<int>& neighbors(int v) const { return adj_[static_cast<size_t>(v)]; }
    int degree(int v) const { return static_cast<int>(neighbors(v).size()); }
    bool adjacent(int u, int v) const { return matrix_[static_cast<size_t>(u) * static_cast<size_t>(n_) + static_cast<size_t>(v)] != 0; }
    std::vector<std::pair<int, int>> edges() const;
    Eigen::MatrixXd adjacency_matrix() const;
    /// Subgraph induced on `vertices`, relabelled in the given order.
    Graph induced(const std::vector<int>& vertices) const;

    bool operator==(const Graph& o) const { return n_ == o.n_ && adj_ == o.adj_; }

private:
    int n_ = 0;
    std::int64_t edges_ = 0;
    std::vector<std::vector<int>> adj_;
    std::vector<std::uint8_t> matrix_;
};

enum class GraphFormat { EdgeList, Graph6 };
GraphFormat parse_graph_format(std::string_view s);

/// Edge list: one "u v" per line, optional leading "n <count>", '#' comments.
/// graph6: the standard printable encoding (optional ">>graph6<<" header).
Graph parse_graph(std::string_view text, GraphFormat format);
std::string to_graph6(const Graph& g);
std::string to_edge_list(const Graph& g);

/// Families: cycle(n), complete(n), complete_bipartite(m,n), kneser(v,k),
/// hamming(d,q), petersen, bowtie.
/// Vertex orders: cycle 0..n-1 around; kneser k-subsets in colex order
/// (increasing bitmask); hamming base-q strings in lexicographic order;
/// bowtie has centre 0 with triangles 0-1-2 and 0-3-4.
Graph build_named(std::string_view name, const std::vector<int>& params);
/// Same, from text like "kneser(7,3)" or "petersen".
Graph build_named(std::string_view spec);

struct DistanceData {
    static constexpr int kUnreachable = std::numeric_limits<int>::max();

    int n = 0;
    std::vector<int> dist;  // row-major n x n
    int diameter = 0;       // over reachable pairs
    bool connected = true;

    int at(int u, int v) const { return dist[static_cast<size_t>(u) * static_cast<size_t>(n) + static_cast<size_t>(v)]; }
};

DistanceData distances(const Graph& g);

/// The intersection array when g is distance-regular. Throws
/// PreconditionError for disconnected input. K1 yields the empty array.
std::optional<IntersectionArray> recognize_drg(const Graph& g);

struct NumericSpectral {
    std::vector<double> eigenvalues;          // descending, one per eigenspace
    std::vector<int> multiplicities;
    std::vector<Eigen::MatrixXd> idempotents;
    double tolerance = 1e-9;
    /// Max deviation from (m_r/n) sum_i w(i,r) A_i when g is distance-regular.
    std::optional<double> cosine_residual;
};

/// Throws InternalError when the cosine cross-check exceeds 1e-8.
NumericSpectral numeric_idempotents(const Graph& g);

using VertexMap = std::vector<int>;

bool is_homomorphism(const Graph& x, const Graph& y, const VertexMap& phi);

/// Entry (u,v) = (m_r/n) w(d_Y(phi u, phi v), r). Requires x and y
/// distance-regular with one array and phi a homomorphism.
Eigen::MatrixXd hom_matrix(const Graph& x, const Graph& y, const VertexMap& phi, int r);

struct IdentityCheck {
    int r = 0;
    double theta = 0;
    double min_eigenvalue = 0;
    double trace_residual = 0;  // |tr(M_r (A - theta_r I))|
    bool ok = false;
};

struct IdentityReport {
    std::vector<IdentityCheck> per_eigenvalue;
    double kernel_residual = 0;  // max |M_d (A - theta_d I)|
    int spot_checks = 0;
    int spot_failures = 0;
    double spot_max_residual = 0;
    bool ok = false;
};

IdentityReport verify_identities(const Graph& x, const Graph& y, const VertexMap& phi);

/// Neighbours w of v grouped by (d_X(u,w), d_Y(phi u, phi w)), both offsets
/// from e in {-1, 0, +1}.
struct PhiPartition {
    int e = 0;
    std::int64_t cells[3][3] = {};
    double residual = 0;

    /// |C_{a,b}| for a, b in e-1..e+1.
    std::int64_t cell(int a, int b) const { return cells[a - e + 1][b - e + 1]; }
    /// (|C_{e,e-1}|, |C_{e+1,e-1}|, |C_{e+1,e}|)
    std::array<std::int64_t, 3> triple() const;
};

/// phi an endomorphism of x, and d(u,v) = d(phi u, phi v).
PhiPartition phi_partition(const Graph& x, const VertexMap& phi, int u, int v);

struct FarComponents {
    int count = 0;
    std::vector<int> sizes;
    std::vector<std::vector<int>> components;
};

/// Components of the subgraph induced on the vertices at maximum distance
/// (the graph's diameter) from u.
FarComponents far_components(const Graph& x, int u);

/// Diameter of the subgraph of x induced on the image of phi.
int image_diameter(const Graph& x, const VertexMap& phi);

enum class HomStatus { Found, None, Unknown };
std::string_view to_string(HomStatus s);

struct HomOptions {
    std::vector<std::pair<int, int>> fixed;
    /// y lives on a subset S of V(x) (its non-isolated vertices), must be
    /// induced there, and every vertex of S is fixed.
    bool retraction = false;
    /// Every vertex of y must be hit.
    bool surjective = false;
    std::optional<std::chrono::milliseconds> timeout;
};

struct HomResult {
    HomStatus status = HomStatus::Unknown;
    VertexMap map;
    std::uint64_t nodes = 0;
};

HomResult search_hom(const Graph& x, const Graph& y, const HomOptions& opt = {});

}  // namespace drg
