#include "drg/graphs.hpp"

#include "drg/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <bit>
#include <functional>
#include <array>
#include <cctype>
#include <charconv>
#include <deque>
#include <random>
#include <sstream>

namespace drg {

Graph::Graph(int n) : n_(n), adj_(static_cast<size_t>(n)), matrix_(static_cast<size_t>(n) * static_cast<size_t>(n), 0)
{
    if (n < 0)
        throw PreconditionError("negative vertex count");
}

Graph Graph::from_edges(int n, const std::vector<std::pair<int, int>>& edges)
{
    Graph g(n);
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw PreconditionError("edge " + std::to_string(u) + "-" + std::to_string(v) + " outside 0.." +
                                    std::to_string(n - 1));
        if (u == v)
            throw PreconditionError("loop at vertex " + std::to_string(u));
        size_t uv = static_cast<size_t>(u) * static_cast<size_t>(n) + static_cast<size_t>(v);
        if (g.matrix_[uv])
            throw PreconditionError("repeated edge " + std::to_string(u) + "-" + std::to_string(v));
        g.matrix_[uv] = 1;
        g.matrix_[static_cast<size_t>(v) * static_cast<size_t>(n) + static_cast<size_t>(u)] = 1;
        g.adj_[static_cast<size_t>(u)].push_back(v);
        g.adj_[static_cast<size_t>(v)].push_back(u);
        ++g.edges_;
    }
    for (auto& a : g.adj_)
        std::sort(a.begin(), a.end());
    return g;
}

std::vector<std::pair<int, int>> Graph::edges() const
{
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < n_; ++u)
        for (int v : neighbors(u))
            if (u < v)
                out.emplace_back(u, v);
    return out;
}

Eigen::MatrixXd Graph::adjacency_matrix() const
{
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_, n_);
    for (int u = 0; u < n_; ++u)
        for (int v : neighbors(u))
            a(u, v) = 1.0;
    return a;
}

Graph Graph::induced(const std::vector<int>& vertices) const
{
    std::vector<std::pair<int, int>> es;
    const int m = static_cast<int>(vertices.size());
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (adjacent(vertices[static_cast<size_t>(i)], vertices[static_cast<size_t>(j)]))
                es.emplace_back(i, j);
    return from_edges(m, es);
}

GraphFormat parse_graph_format(std::string_view s)
{
    if (s == "edge-list")
        return GraphFormat::EdgeList;
    if (s == "graph6")
        return GraphFormat::Graph6;
    throw ParseError("unknown graph format '" + std::string(s) + "'");
}

namespace {

long parse_int(std::string_view tok, std::string_view what)
{
    long v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError("bad " + std::string(what) + " '" + std::string(tok) + "'");
    return v;
}

Graph parse_edge_list(std::string_view text)
{
    std::istringstream in{std::string(text)};
    std::string line;
    std::optional<long> declared;
    std::vector<std::pair<int, int>> edges;
    long max_vertex = -1;
    int lineno = 0;
    bool seen_content = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;)
            tok.push_back(t);
        if (tok.empty())
            continue;
        if (tok[0] == "n") {
            if (seen_content || declared || tok.size() != 2)
                throw ParseError("line " + std::to_string(lineno) + ": 'n <count>' must be the first entry");
            declared = parse_int(tok[1], "vertex count");
            if (*declared < 0)
                throw ParseError("negative vertex count");
            seen_content = true;
            continue;
        }
        seen_content = true;
        if (tok.size() != 2)
            throw ParseError("line " + std::to_string(lineno) + ": expected 'u v'");
        long u = parse_int(tok[0], "vertex"), v = parse_int(tok[1], "vertex");
        if (u < 0 || v < 0)
            throw ParseError("line " + std::to_string(lineno) + ": negative vertex");
        if (u > 1'000'000 || v > 1'000'000)
            throw ParseError("line " + std::to_string(lineno) + ": vertex index too large");
        max_vertex = std::max({max_vertex, u, v});
        edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    }
    long n = declared ? *declared : max_vertex + 1;
    if (n <= 0)
        throw ParseError("graph has no vertices");
    if (max_vertex >= n)
        throw ParseError("vertex " + std::to_string(max_vertex) + " exceeds declared count " + std::to_string(n));
    try {
        return Graph::from_edges(static_cast<int>(n), edges);
    } catch (const PreconditionError& e) {
        throw ParseError(e.what());
    }
}

Graph parse_graph6(std::string_view text)
{
    std::string s(text);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.pop_back();
    size_t pos = 0;
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
        ++pos;
    if (s.compare(pos, 10, ">>graph6<<") == 0)
        pos += 10;
    if (s.find('\n', pos) != std::string::npos)
        throw ParseError("graph6 input must hold a single graph");
    auto byte = [&](size_t i) -> int {
        if (i >= s.size())
            throw ParseError("graph6 data truncated");
        int c = static_cast<unsigned char>(s[i]);
        if (c < 63 || c > 126)
            throw ParseError("invalid graph6 character");
        return c - 63;
    };
    long n = 0;
    if (pos >= s.size())
        throw ParseError("empty graph6 string");
    if (byte(pos) < 63) {
        n = byte(pos);
        pos += 1;
    } else if (byte(pos + 1) < 63) {
        for (int i = 1; i <= 3; ++i)
            n = (n << 6) | byte(pos + static_cast<size_t>(i));
        pos += 4;
    } else {
        for (int i = 2; i <= 7; ++i)
            n = (n << 6) | byte(pos + static_cast<size_t>(i));
        pos += 8;
    }
    if (n > 100000)
        throw ParseError("graph6 graph too large");
    const long bits = n * (n - 1) / 2;
    const size_t need = static_cast<size_t>((bits + 5) / 6);
    if (s.size() - pos != need)
        throw ParseError("graph6 length does not match vertex count " + std::to_string(n));
    std::vector<std::pair<int, int>> edges;
    long k = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i, ++k) {
            int b = byte(pos + static_cast<size_t>(k / 6));
            if ((b >> (5 - k % 6)) & 1)
                edges.emplace_back(i, j);
        }
    return Graph::from_edges(static_cast<int>(n), edges);
}

}  // namespace

Graph parse_graph(std::string_view text, GraphFormat format)
{
    return format == GraphFormat::EdgeList ? parse_edge_list(text) : parse_graph6(text);
}

std::string to_graph6(const Graph& g)
{
    const long n = g.order();
    std::string out;
    if (n < 63) {
        out.push_back(static_cast<char>(n + 63));
    } else if (n < 258048) {
        out.push_back(126);
        for (int sh = 12; sh >= 0; sh -= 6)
            out.push_back(static_cast<char>(((n >> sh) & 63) + 63));
    } else {
        out.push_back(126);
        out.push_back(126);
        for (int sh = 30; sh >= 0; sh -= 6)
            out.push_back(static_cast<char>(((n >> sh) & 63) + 63));
    }
    int acc = 0, used = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) {
            acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
            if (++used == 6) {
                out.push_back(static_cast<char>(acc + 63));
                acc = used = 0;
            }
        }
    if (used > 0)
        out.push_back(static_cast<char>((acc << (6 - used)) + 63));
    return out;
}

std::string to_edge_list(const Graph& g)
{
    std::string out = "n " + std::to_string(g.order()) + "\n";
    for (auto [u, v] : g.edges())
        out += std::to_string(u) + " " + std::to_string(v) + "\n";
    return out;
}

Graph build_named(std::string_view name, const std::vector<int>& p)
{
    auto need = [&](size_t count) {
        if (p.size() != count)
            throw PreconditionError(std::string(name) + " takes " + std::to_string(count) + " parameter(s)");
    };
    std::vector<std::pair<int, int>> es;
    if (name == "cycle") {
        need(1);
        if (p[0] < 3)
            throw PreconditionError("cycle needs n >= 3");
        for (int i = 0; i < p[0]; ++i)
            es.emplace_back(std::min(i, (i + 1) % p[0]), std::max(i, (i + 1) % p[0]));
        return Graph::from_edges(p[0], es);
    }
    if (name == "complete") {
        need(1);
        if (p[0] < 1)
            throw PreconditionError("complete needs n >= 1");
        for (int i = 0; i < p[0]; ++i)
            for (int j = i + 1; j < p[0]; ++j)
                es.emplace_back(i, j);
        return Graph::from_edges(p[0], es);
    }
    if (name == "complete_bipartite") {
        need(2);
        if (p[0] < 1 || p[1] < 1)
            throw PreconditionError("complete_bipartite needs positive part sizes");
        for (int i = 0; i < p[0]; ++i)
            for (int j = 0; j < p[1]; ++j)
                es.emplace_back(i, p[0] + j);
        return Graph::from_edges(p[0] + p[1], es);
    }
    if (name == "kneser") {
        need(2);
        const int v = p[0], k = p[1];
        if (k < 1 || v < 2 * k || v > 30)
            throw PreconditionError("kneser needs 1 <= k, 2k <= v <= 30");
        std::vector<std::uint32_t> sets;
        for (std::uint32_t m = 0; m < (1u << v); ++m)
            if (std::popcount(m) == k)
                sets.push_back(m);
        const int n = static_cast<int>(sets.size());
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if ((sets[static_cast<size_t>(i)] & sets[static_cast<size_t>(j)]) == 0)
                    es.emplace_back(i, j);
        return Graph::from_edges(n, es);
    }
    if (name == "hamming") {
        need(2);
        const int d = p[0], q = p[1];
        if (d < 1 || q < 2)
            throw PreconditionError("hamming needs d >= 1 and q >= 2");
        long n = 1;
        for (int i = 0; i < d; ++i) {
            n *= q;
            if (n > 100000)
                throw PreconditionError("hamming graph too large");
        }
        for (long x = 0; x < n; ++x) {
            long place = 1;
            for (int i = 0; i < d; ++i, place *= q) {
                long digit = (x / place) % q;
                for (long c = digit + 1; c < q; ++c)
                    es.emplace_back(static_cast<int>(x), static_cast<int>(x + (c - digit) * place));
            }
        }
        return Graph::from_edges(static_cast<int>(n), es);
    }
    if (name == "petersen") {
        need(0);
        return build_named("kneser", {5, 2});
    }
    if (name == "bowtie") {
        need(0);
        return Graph::from_edges(5, {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {0, 4}, {3, 4}});
    }
    throw PreconditionError("unknown graph family '" + std::string(name) + "'");
}

Graph build_named(std::string_view spec)
{
    auto open = spec.find('(');
    if (open == std::string_view::npos)
        return build_named(spec, {});
    if (spec.back() != ')')
        throw ParseError("expected ')' in '" + std::string(spec) + "'");
    std::string_view name = spec.substr(0, open);
    std::string_view body = spec.substr(open + 1, spec.size() - open - 2);
    std::vector<int> params;
    while (!body.empty()) {
        auto comma = body.find(',');
        std::string_view tok = body.substr(0, comma);
        while (!tok.empty() && tok.front() == ' ')
            tok.remove_prefix(1);
        while (!tok.empty() && tok.back() == ' ')
            tok.remove_suffix(1);
        params.push_back(static_cast<int>(parse_int(tok, "parameter")));
        if (comma == std::string_view::npos)
            break;
        body.remove_prefix(comma + 1);
    }
    return build_named(name, params);
}

DistanceData distances(const Graph& g)
{
    DistanceData dd;
    const int n = g.order();
    dd.n = n;
    dd.dist.assign(static_cast<size_t>(n) * static_cast<size_t>(n), DistanceData::kUnreachable);
    std::vector<int> queue(static_cast<size_t>(n));
    for (int s = 0; s < n; ++s) {
        int* row = &dd.dist[static_cast<size_t>(s) * static_cast<size_t>(n)];
        row[s] = 0;
        size_t head = 0, tail = 0;
        queue[tail++] = s;
        while (head < tail) {
            int u = queue[head++];
            for (int w : g.neighbors(u))
                if (row[w] == DistanceData::kUnreachable) {
                    row[w] = row[u] + 1;
                    queue[tail++] = w;
                }
        }
        if (static_cast<int>(tail) != n)
            dd.connected = false;
        for (size_t i = 0; i < tail; ++i)
            dd.diameter = std::max(dd.diameter, row[queue[i]]);
    }
    return dd;
}

std::optional<IntersectionArray> recognize_drg(const Graph& g)
{
    const DistanceData dd = distances(g);
    if (!dd.connected)
        throw PreconditionError("graph is disconnected");
    const int n = g.order(), d = dd.diameter;
    // counts[i] = (c_i, a_i, b_i) seen for pairs at distance i, -1 if unset.
    std::vector<std::array<long, 3>> counts(static_cast<size_t>(d + 1), {-1, -1, -1});
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            const int i = dd.at(u, v);
            std::array<long, 3> seen{0, 0, 0};
            for (int w : g.neighbors(v))
                ++seen[static_cast<size_t>(dd.at(u, w) - i + 1)];
            auto& ref = counts[static_cast<size_t>(i)];
            if (ref[0] < 0)
                ref = seen;
            else if (ref != seen)
                return std::nullopt;
        }
    IntersectionArray arr;
    for (int i = 0; i < d; ++i)
        arr.b.push_back(counts[static_cast<size_t>(i)][2]);
    for (int i = 1; i <= d; ++i)
        arr.c.push_back(counts[static_cast<size_t>(i)][0]);
    return arr;
}

namespace {

struct ExactCosines {
    ParameterSet ps;
    SpectralData sd;
    std::vector<double> theta;
    std::vector<std::vector<double>> w;  // w[r][i]
};

ExactCosines exact_cosines(const IntersectionArray& arr)
{
    ExactCosines ec;
    ec.ps = derive_parameters(arr);
    ec.sd = spectral_data(ec.ps, false);
    for (size_t r = 0; r < ec.sd.theta.size(); ++r) {
        ec.theta.push_back(ec.sd.theta[r].to_double());
        std::vector<double> row;
        for (const auto& x : ec.sd.w[r])
            row.push_back(x.to_double());
        ec.w.push_back(std::move(row));
    }
    return ec;
}

Eigen::MatrixXd cosine_matrix(const DistanceData& dd, const ExactCosines& ec, int r,
                              const std::function<int(int, int)>& dist)
{
    const int n = dd.n;
    const double scale = static_cast<double>(ec.sd.m[static_cast<size_t>(r)]) / static_cast<double>(ec.ps.n);
    Eigen::MatrixXd m(n, n);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            m(u, v) = scale * ec.w[static_cast<size_t>(r)][static_cast<size_t>(dist(u, v))];
    return m;
}

}  // namespace

NumericSpectral numeric_idempotents(const Graph& g)
{
    const DistanceData dd = distances(g);
    if (!dd.connected)
        throw PreconditionError("graph is disconnected");
    NumericSpectral ns;
    const int n = g.order();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g.adjacency_matrix());
    const Eigen::VectorXd& vals = es.eigenvalues();  // ascending
    const Eigen::MatrixXd& vecs = es.eigenvectors();
    int hi = n - 1;
    while (hi >= 0) {
        int lo = hi;
        while (lo > 0 && std::abs(vals(lo - 1) - vals(hi)) < ns.tolerance)
            --lo;
        const int count = hi - lo + 1;
        Eigen::MatrixXd v = vecs.middleCols(lo, count);
        ns.eigenvalues.push_back(vals.segment(lo, count).mean());
        ns.multiplicities.push_back(count);
        ns.idempotents.push_back(v * v.transpose());
        hi = lo - 1;
    }

    if (auto arr = recognize_drg(g); arr && !arr->b.empty()) {
        ExactCosines ec = exact_cosines(*arr);
        if (ec.theta.size() != ns.eigenvalues.size())
            throw InternalError("numeric and exact spectra differ in size");
        double worst = 0;
        for (size_t r = 0; r < ec.theta.size(); ++r) {
            Eigen::MatrixXd e = cosine_matrix(dd, ec, static_cast<int>(r), [&](int u, int v) { return dd.at(u, v); });
            worst = std::max(worst, (e - ns.idempotents[r]).cwiseAbs().maxCoeff());
            worst = std::max(worst, std::abs(ec.theta[r] - ns.eigenvalues[r]));
        }
        ns.cosine_residual = worst;
        if (worst > 1e-8)
            throw InternalError("idempotents disagree with the cosine formula by " + std::to_string(worst));
    }
    return ns;
}

bool is_homomorphism(const Graph& x, const Graph& y, const VertexMap& phi)
{
    if (static_cast<int>(phi.size()) != x.order())
        return false;
    for (int img : phi)
        if (img < 0 || img >= y.order())
            return false;
    for (auto [u, v] : x.edges())
        if (!y.adjacent(phi[static_cast<size_t>(u)], phi[static_cast<size_t>(v)]))
            return false;
    return true;
}

namespace {

IntersectionArray common_array(const Graph& x, const Graph& y, const VertexMap& phi)
{
    auto ax = recognize_drg(x);
    auto ay = recognize_drg(y);
    if (!ax || !ay)
        throw PreconditionError("homomorphism matrices need distance-regular graphs");
    if (*ax != *ay)
        throw PreconditionError("graphs have different intersection arrays: " + ax->to_string() + " vs " +
                                ay->to_string());
    if (ax->b.empty())
        throw PreconditionError("homomorphism matrices need diameter >= 1");
    if (!is_homomorphism(x, y, phi))
        throw PreconditionError("map is not a homomorphism");
    return *ax;
}

Eigen::MatrixXd hom_matrix_impl(const DistanceData& dy, const ExactCosines& ec, const VertexMap& phi, int r)
{
    DistanceData dx;
    dx.n = static_cast<int>(phi.size());
    return cosine_matrix(dx, ec, r,
                         [&](int u, int v) { return dy.at(phi[static_cast<size_t>(u)], phi[static_cast<size_t>(v)]); });
}

}  // namespace

Eigen::MatrixXd hom_matrix(const Graph& x, const Graph& y, const VertexMap& phi, int r)
{
    const IntersectionArray arr = common_array(x, y, phi);
    if (r < 0 || r > arr.diameter())
        throw PreconditionError("eigenvalue index out of range");
    return hom_matrix_impl(distances(y), exact_cosines(arr), phi, r);
}

IdentityReport verify_identities(const Graph& x, const Graph& y, const VertexMap& phi)
{
    const IntersectionArray arr = common_array(x, y, phi);
    const ExactCosines ec = exact_cosines(arr);
    const DistanceData dx = distances(x), dy = distances(y);
    const int n = x.order(), d = arr.diameter();
    const Eigen::MatrixXd a = x.adjacency_matrix();
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);

    IdentityReport rep;
    rep.ok = true;
    Eigen::MatrixXd md;
    for (int r = 0; r <= d; ++r) {
        Eigen::MatrixXd m = hom_matrix_impl(dy, ec, phi, r);
        IdentityCheck c;
        c.r = r;
        c.theta = ec.theta[static_cast<size_t>(r)];
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
        c.min_eigenvalue = es.eigenvalues().minCoeff();
        c.trace_residual = std::abs((m * (a - c.theta * id)).trace());
        c.ok = c.min_eigenvalue >= -1e-8 && c.trace_residual <= 1e-8 * n;
        rep.ok = rep.ok && c.ok;
        rep.per_eigenvalue.push_back(c);
        if (r == d)
            md = std::move(m);
    }
    const double theta_d = ec.theta[static_cast<size_t>(d)];
    rep.kernel_residual = (md * (a - theta_d * id)).cwiseAbs().maxCoeff();
    rep.ok = rep.ok && rep.kernel_residual <= 1e-8;

    // theta_d (M_d - E_d)(u,v) = sum over w ~ v of (M_d - E_d)(u,w)
    const Eigen::MatrixXd diff =
        md - cosine_matrix(dx, ec, d, [&](int u, int v) { return dx.at(u, v); });
    std::mt19937 rng(20240611u);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int t = 0; t < 100; ++t) {
        const int u = pick(rng), v = pick(rng);
        double rhs = 0;
        for (int w : x.neighbors(v))
            rhs += diff(u, w);
        const double res = std::abs(theta_d * diff(u, v) - rhs);
        rep.spot_max_residual = std::max(rep.spot_max_residual, res);
        ++rep.spot_checks;
        if (res > 1e-8)
            ++rep.spot_failures;
    }
    rep.ok = rep.ok && rep.spot_failures == 0;
    return rep;
}

std::array<std::int64_t, 3> PhiPartition::triple() const
{
    return {cell(e, e - 1), cell(e + 1, e - 1), cell(e + 1, e)};
}

PhiPartition phi_partition(const Graph& x, const VertexMap& phi, int u, int v)
{
    if (!is_homomorphism(x, x, phi))
        throw PreconditionError("map is not an endomorphism");
    const int n = x.order();
    if (u < 0 || v < 0 || u >= n || v >= n)
        throw PreconditionError("vertex out of range");
    const DistanceData dd = distances(x);
    if (!dd.connected)
        throw PreconditionError("graph is disconnected");
    const auto img = [&](int w) { return phi[static_cast<size_t>(w)]; };
    PhiPartition p;
    p.e = dd.at(u, v);
    if (dd.at(img(u), img(v)) != p.e)
        throw PreconditionError("pair is not geodetic under the map");

    std::optional<ExactCosines> ec;
    if (auto arr = recognize_drg(x); arr && !arr->b.empty())
        ec = exact_cosines(*arr);
    const int d = dd.diameter;
    for (int w : x.neighbors(v)) {
        const int a = dd.at(u, w), b = dd.at(img(u), img(w));
        p.cells[a - p.e + 1][b - p.e + 1] += 1;
        if (ec)
            p.residual += ec->w[static_cast<size_t>(d)][static_cast<size_t>(b)] -
                          ec->w[static_cast<size_t>(d)][static_cast<size_t>(a)];
    }
    p.residual = std::abs(p.residual);
    return p;
}

FarComponents far_components(const Graph& x, int u)
{
    const DistanceData dd = distances(x);
    if (!dd.connected)
        throw PreconditionError("graph is disconnected");
    if (u < 0 || u >= x.order())
        throw PreconditionError("vertex out of range");
    const int n = x.order(), d = dd.diameter;
    std::vector<int> comp(static_cast<size_t>(n), -1);
    FarComponents fc;
    for (int s = 0; s < n; ++s) {
        if (dd.at(u, s) != d || comp[static_cast<size_t>(s)] >= 0)
            continue;
        std::vector<int> members{s};
        comp[static_cast<size_t>(s)] = fc.count;
        for (size_t i = 0; i < members.size(); ++i)
            for (int w : x.neighbors(members[i]))
                if (dd.at(u, w) == d && comp[static_cast<size_t>(w)] < 0) {
                    comp[static_cast<size_t>(w)] = fc.count;
                    members.push_back(w);
                }
        std::sort(members.begin(), members.end());
        fc.sizes.push_back(static_cast<int>(members.size()));
        fc.components.push_back(std::move(members));
        ++fc.count;
    }
    return fc;
}

int image_diameter(const Graph& x, const VertexMap& phi)
{
    if (!is_homomorphism(x, x, phi))
        throw PreconditionError("map is not an endomorphism");
    std::vector<int> image(phi.begin(), phi.end());
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    const DistanceData dd = distances(x.induced(image));
    if (!dd.connected)
        throw PreconditionError("image is disconnected");
    return dd.diameter;
}

std::string_view to_string(HomStatus s)
{
    switch (s) {
    case HomStatus::Found:
        return "FOUND";
    case HomStatus::None:
        return "NONE";
    case HomStatus::Unknown:
        return "UNKNOWN";
    }
    return "?";
}

namespace {

// Backtracking with forward checking over bitset domains. The next vertex
// is the unassigned one with the fewest candidates (ties: larger degree,
// then lower index); candidates are tried in increasing order.
class HomSearch {
public:
    HomSearch(const Graph& x, const Graph& y, const HomOptions& opt)
        : x_(x), y_(y), words_((static_cast<size_t>(y.order()) + 63) / 64), opt_(opt)
    {
        const int m = y.order();
        yadj_.assign(static_cast<size_t>(m) * words_, 0);
        for (int a = 0; a < m; ++a)
            for (int b : y.neighbors(a))
                yadj_[static_cast<size_t>(a) * words_ + static_cast<size_t>(b) / 64] |= bit(b);
        if (opt.timeout)
            deadline_ = std::chrono::steady_clock::now() + *opt.timeout;
    }

    HomResult run(const std::vector<std::pair<int, int>>& fixed)
    {
        HomResult res;
        const int n = x_.order(), m = y_.order();
        if (n == 0) {
            res.status = HomStatus::Found;
            return res;
        }
        if (m == 0) {
            res.status = HomStatus::None;
            return res;
        }
        dom_.assign(static_cast<size_t>(n) * words_, 0);
        for (int v = 0; v < n; ++v)
            for (int a = 0; a < m; ++a)
                dom_[static_cast<size_t>(v) * words_ + static_cast<size_t>(a) / 64] |= bit(a);
        assign_.assign(static_cast<size_t>(n), -1);

        for (auto [v, a] : fixed) {
            if (v < 0 || v >= n || a < 0 || a >= m)
                throw PreconditionError("fixed assignment out of range");
            if (assign_[static_cast<size_t>(v)] >= 0 && assign_[static_cast<size_t>(v)] != a)
                throw PreconditionError("conflicting fixed assignments for vertex " + std::to_string(v));
            if (!has(v, a)) {
                res.status = HomStatus::None;
                return res;
            }
            std::vector<std::pair<int, std::vector<std::uint64_t>>> trail;
            if (!place(v, a, trail)) {
                res.status = HomStatus::None;
                return res;
            }
        }
        try {
            bool found = solve();
            res.status = found ? HomStatus::Found : HomStatus::None;
            if (found)
                res.map = assign_;
        } catch (const Timeout&) {
            res.status = HomStatus::Unknown;
        }
        res.nodes = nodes_;
        return res;
    }

private:
    struct Timeout {};

    static std::uint64_t bit(int a) { return std::uint64_t{1} << (a % 64); }
    std::uint64_t* dom(int v) { return &dom_[static_cast<size_t>(v) * words_]; }
    bool has(int v, int a) { return (dom(v)[a / 64] & bit(a)) != 0; }
    int count(int v)
    {
        int c = 0;
        for (size_t i = 0; i < words_; ++i)
            c += std::popcount(dom(v)[i]);
        return c;
    }

    // Assigns v -> a and narrows the neighbours' domains; false on a wipe-out.
    bool place(int v, int a, std::vector<std::pair<int, std::vector<std::uint64_t>>>& trail)
    {
        assign_[static_cast<size_t>(v)] = a;
        trail.emplace_back(v, std::vector<std::uint64_t>(dom(v), dom(v) + words_));
        std::fill(dom(v), dom(v) + words_, 0);
        dom(v)[a / 64] = bit(a);
        const std::uint64_t* allowed = &yadj_[static_cast<size_t>(a) * words_];
        for (int u : x_.neighbors(v)) {
            if (assign_[static_cast<size_t>(u)] >= 0) {
                if (!y_.adjacent(assign_[static_cast<size_t>(u)], a))
                    return false;
                continue;
            }
            std::uint64_t* du = dom(u);
            bool changed = false, empty = true;
            for (size_t i = 0; i < words_; ++i) {
                if ((du[i] & ~allowed[i]) != 0)
                    changed = true;
            }
            if (changed) {
                trail.emplace_back(u, std::vector<std::uint64_t>(du, du + words_));
                for (size_t i = 0; i < words_; ++i)
                    du[i] &= allowed[i];
            }
            for (size_t i = 0; i < words_; ++i)
                if (du[i])
                    empty = false;
            if (empty)
                return false;
        }
        return true;
    }

    void undo(int v, std::vector<std::pair<int, std::vector<std::uint64_t>>>& trail)
    {
        for (auto it = trail.rbegin(); it != trail.rend(); ++it)
            std::copy(it->second.begin(), it->second.end(), dom(it->first));
        trail.clear();
        assign_[static_cast<size_t>(v)] = -1;
    }

    bool solve()
    {
        ++nodes_;
        if (deadline_ && (nodes_ & 1023) == 0 && std::chrono::steady_clock::now() > *deadline_)
            throw Timeout{};
        int best = -1, best_count = 0;
        for (int v = 0; v < x_.order(); ++v) {
            if (assign_[static_cast<size_t>(v)] >= 0)
                continue;
            int c = count(v);
            if (best < 0 || c < best_count || (c == best_count && x_.degree(v) > x_.degree(best))) {
                best = v;
                best_count = c;
            }
        }
        if (best < 0)
            return !opt_.surjective || covers_target();
        if (opt_.surjective && !covers_target())
            return false;
        std::vector<std::uint64_t> candidates(dom(best), dom(best) + words_);
        std::vector<std::pair<int, std::vector<std::uint64_t>>> trail;
        for (size_t w = 0; w < words_; ++w) {
            for (std::uint64_t bits = candidates[w]; bits; bits &= bits - 1) {
                const int a = static_cast<int>(w * 64) + std::countr_zero(bits);
                if (place(best, a, trail) && solve())
                    return true;
                undo(best, trail);
            }
        }
        return false;
    }

    // Union of all domains (assigned vertices hold singletons) spans V(y).
    bool covers_target()
    {
        std::vector<std::uint64_t> seen(words_, 0);
        for (int v = 0; v < x_.order(); ++v)
            for (size_t i = 0; i < words_; ++i)
                seen[i] |= dom(v)[i];
        for (int a = 0; a < y_.order(); ++a)
            if ((seen[static_cast<size_t>(a) / 64] & bit(a)) == 0)
                return false;
        return true;
    }

    const Graph& x_;
    const Graph& y_;
    size_t words_;
    const HomOptions& opt_;
    std::vector<std::uint64_t> yadj_;
    std::vector<std::uint64_t> dom_;
    std::vector<int> assign_;
    std::uint64_t nodes_ = 0;
    std::optional<std::chrono::steady_clock::time_point> deadline_;
};

}  // namespace

HomResult search_hom(const Graph& x, const Graph& y, const HomOptions& opt)
{
    std::vector<std::pair<int, int>> fixed = opt.fixed;
    if (opt.retraction) {
        if (y.order() > x.order())
            throw PreconditionError("retraction target has more vertices than the source");
        std::vector<int> s;
        for (int v = 0; v < y.order(); ++v)
            if (y.degree(v) > 0)
                s.push_back(v);
        if (x.induced(s) != y.induced(s))
            throw PreconditionError("retraction target is not an induced subgraph of the source");
        for (int v : s)
            fixed.emplace_back(v, v);
    }
    return HomSearch(x, y, opt).run(fixed);
}

}  // namespace drg
