#include "drg/enumerate.hpp"
#include "drg/errors.hpp"
#include "drg/feasibility.hpp"
#include "drg/graphs.hpp"
#include "drg/homtheory.hpp"
#include "drg/params.hpp"
#include "drg/report.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

namespace {

using namespace drg;
using nlohmann::json;

enum Exit { kOk = 0, kUsage = 2, kInternal = 3, kUnknown = 4 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_text(const std::string& path)
{
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// "named:hamming(3,3)" builds a family member; anything else is a file.
Graph load_graph(const std::string& source, const std::string& format)
{
    if (source.rfind("named:", 0) == 0)
        return build_named(source.substr(6));
    return parse_graph(read_text(source), parse_graph_format(format));
}

json array_json(const std::vector<std::int64_t>& v) { return json(v); }

json spectral_json(const ParameterSet& ps, const SpectralData& sd)
{
    const int d = ps.diameter();
    json eig = json::array();
    for (int j = 0; j <= d; ++j) {
        const auto& th = sd.theta[static_cast<size_t>(j)];
        FieldElement gen = FieldElement::generator(sd.context[static_cast<size_t>(j)]);
        json cos = json::array();
        for (int i = 0; i <= d; ++i) {
            const auto& w = sd.cosine(i, j);
            cos.push_back({{"exact", radical_form(w).value_or(w.to_string("theta"))}, {"decimal", to_decimal(w, 15)}});
        }
        eig.push_back({{"j", j},
                       {"theta", radical_form(gen).value_or(th.to_string())},
                       {"decimal", to_decimal(th, 15)},
                       {"minpoly", th.minpoly().to_string()},
                       {"multiplicity", sd.m[static_cast<size_t>(j)]},
                       {"sign_changes", sign_change_count(std::span(sd.w[static_cast<size_t>(j)]).first(static_cast<size_t>(d + 1)))},
                       {"cosines", std::move(cos)}});
    }
    json out = {{"eigenvalues", std::move(eig)}};
    if (sd.q) {
        json krein = json::array();
        for (int i = 0; i <= d; ++i)
            for (int j = i; j <= d; ++j)
                for (int h = 0; h <= d; ++h) {
                    const auto& e = sd.q->at(i, j, h);
                    json entry = {{"i", i}, {"j", j}, {"h", h}, {"sign", std::string(to_string(e.sign))},
                                  {"approx", e.enclosure.midpoint().get_d()}};
                    if (e.heuristic_zero)
                        entry["heuristic_zero"] = true;
                    krein.push_back(std::move(entry));
                }
        out["krein"] = std::move(krein);
    }
    return out;
}

json analyze_json(const IntersectionArray& arr, AlphaRange alpha)
{
    auto outcome = run_battery_detailed(arr);
    json out = {{"array", arr.to_string()}, {"feasibility", to_json(outcome.report)}};
    if (!outcome.params)
        return out;
    const auto& ps = *outcome.params;
    out["parameters"] = {{"diameter", ps.diameter()}, {"n", ps.n}, {"k", array_json(ps.k)}, {"a", array_json(ps.a)},
                         {"b", array_json(arr.b)}, {"c", array_json(arr.c)}};
    if (!outcome.spectral)
        return out;
    const auto& sd = *outcome.spectral;
    out["spectral"] = spectral_json(ps, sd);
    if (ps.diameter() >= 2) {
        auto cc = complete_core_test(ps, sd);
        json c = {{"theta_d_vs_minus2", std::string(to_string(cc.theta_d_vs_minus2))}};
        if (cc.bound)
            c["bound"] = to_string(*cc.bound);
        out["complete_core"] = std::move(c);
    }
    if (!outcome.report.overall)
        return out;
    if (ps.array.valency() <= 2) {
        out["verdict_note"] = "polygon: family classification needs valency >= 3";
        return out;
    }
    auto fc = classify_family(ps, sd);
    out["family"] = {{"bipartite", fc.bipartite}, {"antipodal", fc.antipodal}, {"primitive", fc.primitive}};
    out["verdict"] = to_json(classify(ps, sd, fc, alpha));
    return out;
}

void print_analysis_text(const json& j, std::ostream& os)
{
    os << "array " << j["array"].get<std::string>() << '\n';
    for (const auto& c : j["feasibility"]["checks"]) {
        os << "  " << c["id"].get<std::string>() << ' ' << c["verdict"].get<std::string>();
        if (!c["detail"].get<std::string>().empty())
            os << "  " << c["detail"].get<std::string>();
        os << '\n';
    }
    os << "feasible " << (j["feasibility"]["feasible"].get<bool>() ? "yes" : "no") << '\n';
    if (j.contains("parameters")) {
        const auto& p = j["parameters"];
        os << "n " << p["n"] << "  k " << p["k"].dump() << "  a " << p["a"].dump() << '\n';
    }
    if (j.contains("spectral")) {
        for (const auto& e : j["spectral"]["eigenvalues"]) {
            os << "theta_" << e["j"] << " = " << e["theta"].get<std::string>() << " ~ " << e["decimal"].get<std::string>()
               << "  m = " << e["multiplicity"] << "\n    w:";
            for (const auto& w : e["cosines"])
                os << "  " << w["exact"].get<std::string>();
            os << '\n';
        }
    }
    if (j.contains("complete_core")) {
        os << "theta_d vs -2: " << j["complete_core"]["theta_d_vs_minus2"].get<std::string>();
        if (j["complete_core"].contains("bound"))
            os << "  (bound " << j["complete_core"]["bound"].get<std::string>() << ")";
        os << '\n';
    }
    if (j.contains("verdict")) {
        os << "verdict " << j["verdict"]["tag"].get<std::string>() << '\n';
        for (const auto& [e, ws] : j["verdict"]["witnesses"].items())
            for (const auto& w : ws)
                os << "  witness e=" << e << " " << w.dump() << '\n';
        for (const auto& n : j["verdict"]["notes"])
            os << "  note: " << n.get<std::string>() << '\n';
    } else if (j.contains("verdict_note")) {
        os << "verdict none (" << j["verdict_note"].get<std::string>() << ")\n";
    }
}

int cmd_analyze(const std::string& text, bool as_json, bool as_markdown, AlphaRange alpha)
{
    const auto arr = parse_array(text);
    if (as_markdown) {
        auto rec = analyze_record(arr, alpha);
        if (!rec) {
            std::cout << "infeasible: " << run_battery(arr).first_failure().value_or("?") << '\n';
            return kOk;
        }
        std::cout << emit_table({*rec}, TableFormat::Markdown);
        return kOk;
    }
    json j = analyze_json(arr, alpha);
    if (as_json)
        std::cout << j.dump(2) << '\n';
    else
        print_analysis_text(j, std::cout);
    return kOk;
}

int cmd_triples(const std::string& text, int e, AlphaRange alpha, bool as_json)
{
    const auto arr = parse_array(text);
    auto outcome = run_battery_detailed(arr);
    if (!outcome.report.overall || !outcome.spectral) {
        std::cout << "infeasible (" << outcome.report.first_failure().value_or("?") << ")\n";
        return kOk;
    }
    auto ws = search_triples(*outcome.params, *outcome.spectral, e, alpha);
    if (as_json) {
        json out = json::array();
        for (const auto& w : ws)
            out.push_back({w.alpha, w.beta, w.gamma});
        std::cout << out.dump() << '\n';
        return kOk;
    }
    std::cout << ws.size() << " triple(s) for e = " << e << '\n';
    for (const auto& w : ws)
        std::cout << "(" << w.alpha << ", " << w.beta << ", " << w.gamma << ")\n";
    return kOk;
}

int cmd_enumerate(int diameter, std::int64_t k_max, const std::string& family, const std::string& format,
                  unsigned jobs, AlphaRange alpha)
{
    EnumerationOptions opt;
    opt.diameter = diameter;
    opt.k_max = k_max;
    opt.filter = parse_family_filter(family);
    opt.jobs = jobs;
    opt.alpha = alpha;
    const auto fmt = parse_table_format(format);
    if (k_max < 3)
        throw UsageError("--max-k must be at least 3");

    std::vector<EnumerationRecord> kept;
    auto stats = enumerate_arrays(opt, [&](const EnumerationRecord& r) {
        if (fmt == TableFormat::JsonLines)
            std::cout << to_json(r).dump() << '\n' << std::flush;
        else
            kept.push_back(r);
    });
    if (fmt != TableFormat::JsonLines)
        std::cout << emit_table(std::move(kept), fmt);
    std::cerr << "examined " << stats.examined << ", emitted " << stats.emitted << '\n';
    for (const auto& [arr, why] : stats.unsupported)
        std::cerr << "unsupported " << arr.to_string() << ": " << why << '\n';
    return kOk;
}

int cmd_recognize(const std::string& source, const std::string& format, bool as_json)
{
    Graph g = load_graph(source, format);
    auto arr = recognize_drg(g);
    json out = {{"order", g.order()}, {"edges", g.edge_count()}};
    if (arr) {
        out["array"] = arr->to_string();
        if (g.order() > 1) {
            auto fcomp = far_components(g, 0);
            out["far_components"] = {{"vertex", 0}, {"count", fcomp.count}, {"sizes", fcomp.sizes}};
        }
    } else {
        out["array"] = nullptr;
    }
    if (as_json) {
        std::cout << out.dump() << '\n';
        return kOk;
    }
    if (!arr) {
        std::cout << "not distance-regular\n";
        return kOk;
    }
    std::cout << arr->to_string() << '\n';
    if (out.contains("far_components")) {
        std::cout << "far layer of vertex 0: " << out["far_components"]["count"] << " component(s), sizes";
        for (int s : out["far_components"]["sizes"])
            std::cout << ' ' << s;
        std::cout << '\n';
    }
    return kOk;
}

// Diameter of the target's subgraph induced on the image.
int target_image_diameter(const Graph& y, const VertexMap& phi)
{
    std::vector<int> img(phi.begin(), phi.end());
    std::sort(img.begin(), img.end());
    img.erase(std::unique(img.begin(), img.end()), img.end());
    auto dd = distances(y.induced(img));
    return dd.connected ? dd.diameter : -1;
}

int cmd_hom(const std::string& fx, const std::string& fy, const std::string& format, bool retraction, bool onto,
            const std::vector<std::string>& fixes, std::optional<double> timeout_s, const std::string& output)
{
    Graph x = load_graph(fx, format);
    Graph y = load_graph(fy, format);
    HomOptions opt;
    opt.retraction = retraction;
    opt.surjective = onto;
    for (const auto& f : fixes) {
        auto eq = f.find('=');
        if (eq == std::string::npos)
            throw UsageError("--fix expects u=v, got '" + f + "'");
        try {
            opt.fixed.emplace_back(std::stoi(f.substr(0, eq)), std::stoi(f.substr(eq + 1)));
        } catch (const std::logic_error&) {
            throw UsageError("--fix expects integers, got '" + f + "'");
        }
    }
    if (timeout_s)
        opt.timeout = std::chrono::milliseconds(static_cast<std::int64_t>(*timeout_s * 1000));

    auto res = search_hom(x, y, opt);
    std::cout << to_string(res.status) << '\n';
    std::cerr << "search nodes " << res.nodes << '\n';
    if (res.status == HomStatus::Found) {
        std::cout << json(res.map).dump() << '\n';
        std::cout << "image diameter " << target_image_diameter(y, res.map) << '\n';
        if (!output.empty()) {
            std::ofstream out(output);
            if (!out)
                throw UsageError("cannot write '" + output + "'");
            out << json(res.map).dump() << '\n';
        }
    }
    return res.status == HomStatus::Unknown ? kUnknown : kOk;
}

int cmd_verify(const std::string& fx, const std::string& map_path, const std::string& fy, const std::string& format,
               int sample_cap)
{
    Graph x = load_graph(fx, format);
    Graph y = fy.empty() ? x : load_graph(fy, format);
    VertexMap phi;
    try {
        phi = json::parse(read_text(map_path)).get<VertexMap>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("map: ") + e.what());
    }
    if (static_cast<int>(phi.size()) != x.order())
        throw PreconditionError("map has " + std::to_string(phi.size()) + " entries for " + std::to_string(x.order()) +
                                " vertices");

    auto rep = verify_identities(x, y, phi);
    std::cout << "identities " << (rep.ok ? "ok" : "FAILED") << '\n';
    for (const auto& c : rep.per_eigenvalue)
        std::cout << "  r=" << c.r << " theta=" << c.theta << " min_eig=" << c.min_eigenvalue
                  << " trace_residual=" << c.trace_residual << (c.ok ? "" : "  FAIL") << '\n';
    std::cout << "  kernel_residual=" << rep.kernel_residual << '\n';
    std::cout << "  neighbour-sum spot checks " << rep.spot_checks - rep.spot_failures << "/" << rep.spot_checks
              << " (max residual " << rep.spot_max_residual << ")\n";

    // Partitions need an endomorphism.
    if (!fy.empty() && !(y == x)) {
        std::cout << "phi-partitions skipped: target differs from source\n";
        return kOk;
    }
    std::cout << "image diameter " << image_diameter(x, phi) << '\n';
    auto dd = distances(x);
    std::map<std::pair<int, std::array<std::int64_t, 3>>, int> histogram;
    int dumped = 0;
    double worst = 0;
    for (int u = 0; u < x.order(); ++u)
        for (int v = 0; v < x.order(); ++v) {
            const int e = dd.at(u, v);
            if (u == v || e != dd.at(phi[static_cast<size_t>(u)], phi[static_cast<size_t>(v)]))
                continue;
            auto p = phi_partition(x, phi, u, v);
            ++histogram[{e, p.triple()}];
            worst = std::max(worst, p.residual);
            if (dumped < sample_cap) {
                auto t = p.triple();
                std::cout << "  pair " << u << ' ' << v << " e=" << e << " triple (" << t[0] << ", " << t[1] << ", "
                          << t[2] << ") residual " << p.residual << '\n';
                ++dumped;
            }
        }
    std::cout << "geodetic pairs by (e, triple):\n";
    for (const auto& [key, count] : histogram)
        std::cout << "  e=" << key.first << " (" << key.second[0] << ", " << key.second[1] << ", " << key.second[2]
                  << "): " << count << '\n';
    std::cout << "max partition residual " << worst << '\n';
    return kOk;
}

int cmd_table(const std::string& path, const std::string& format)
{
    auto records = parse_json_lines(read_text(path));
    std::cout << emit_table(std::move(records), parse_table_format(format));
    return kOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Intersection-array analysis for distance-regular graphs"};
    app.require_subcommand(1);

    std::string alpha_text = "exclusive";
    auto add_alpha = [&](CLI::App* sub) {
        sub->add_option("--alpha-range", alpha_text, "Triple search alpha range: exclusive or inclusive")
            ->check(CLI::IsMember({"exclusive", "inclusive"}));
    };

    std::string array_text;
    bool as_json = false, as_markdown = false;
    auto* analyze = app.add_subcommand("analyze", "Parameters, spectrum, feasibility and core verdict");
    analyze->add_option("array", array_text, "Intersection array, e.g. {6,5,2;1,1,3}")->required();
    auto* jflag = analyze->add_flag("--json", as_json);
    analyze->add_flag("--markdown", as_markdown)->excludes(jflag);
    add_alpha(analyze);

    int e = 2;
    bool triples_json = false;
    auto* triples = app.add_subcommand("triples", "Feasible phi-partition triples");
    triples->add_option("array", array_text)->required();
    triples->add_option("--e", e, "Image diameter")->required();
    triples->add_flag("--json", triples_json);
    add_alpha(triples);

    int diameter = 3;
    std::int64_t k_max = 0;
    std::string family = "all", format = "json-lines";
    unsigned jobs = 0;
    auto* enumerate = app.add_subcommand("enumerate", "Feasible arrays up to a valency bound");
    enumerate->add_option("--diameter", diameter)->check(CLI::Range(1, 8));
    enumerate->add_option("--max-k", k_max)->required();
    enumerate->add_option("--family", family)->check(CLI::IsMember({"primitive", "antipodal", "bipartite", "all"}));
    enumerate->add_option("--format", format)->check(CLI::IsMember({"json-lines", "jsonl", "markdown", "csv"}));
    enumerate->add_option("--jobs", jobs, "Worker threads (default: all cores)");
    add_alpha(enumerate);

    auto* graph = app.add_subcommand("graph", "Explicit graphs");
    graph->require_subcommand(1);
    std::string gformat = "edge-list", fx, fy, map_path, out_path;
    bool retraction = false, onto = false, g_json = false;
    std::vector<std::string> fixes;
    std::optional<double> timeout_s;
    int sample_cap = 50;
    const std::string graph_help = "Graph file, '-' for stdin, or named:<family>(params)";

    auto* recognize = graph->add_subcommand("recognize", "Intersection array of a distance-regular graph");
    recognize->add_option("graph", fx, graph_help)->required();
    recognize->add_option("--format", gformat)->check(CLI::IsMember({"edge-list", "graph6"}));
    recognize->add_flag("--json", g_json);

    auto* hom = graph->add_subcommand("hom", "Search for a homomorphism X -> Y");
    hom->add_option("x", fx, graph_help)->required();
    hom->add_option("y", fy, graph_help)->required();
    hom->add_option("--format", gformat)->check(CLI::IsMember({"edge-list", "graph6"}));
    hom->add_flag("--retraction", retraction, "Y lives on vertices of X and is fixed pointwise");
    hom->add_flag("--onto", onto, "Require every vertex of Y to be hit");
    hom->add_option("--fix", fixes, "Fixed assignment u=v (repeatable)");
    hom->add_option("--timeout", timeout_s, "Seconds");
    hom->add_option("--output", out_path, "Write the map as JSON");

    auto* verify = graph->add_subcommand("verify", "Homomorphism-matrix identities and phi-partitions");
    verify->add_option("x", fx, graph_help)->required();
    verify->add_option("map", map_path, "JSON array image[i]")->required();
    verify->add_option("--target", fy, "Target graph (default: X itself)");
    verify->add_option("--format", gformat)->check(CLI::IsMember({"edge-list", "graph6"}));
    verify->add_option("--sample-cap", sample_cap, "Partitions printed individually")->check(CLI::NonNegativeNumber);

    std::string records_path, table_format = "markdown";
    auto* table = app.add_subcommand("table", "Render enumeration records");
    table->add_option("records", records_path, "JSON-lines file or '-'")->required();
    table->add_option("--format", table_format)->check(CLI::IsMember({"markdown", "csv", "json-lines"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& ex) {
        return app.exit(ex);
    } catch (const CLI::ParseError& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return kUsage;
    }

    try {
        const AlphaRange alpha = parse_alpha_range(alpha_text);
        if (*analyze)
            return cmd_analyze(array_text, as_json, as_markdown, alpha);
        if (*triples)
            return cmd_triples(array_text, e, alpha, triples_json);
        if (*enumerate)
            return cmd_enumerate(diameter, k_max, family, format, jobs, alpha);
        if (*recognize)
            return cmd_recognize(fx, gformat, g_json);
        if (*hom)
            return cmd_hom(fx, fy, gformat, retraction, onto, fixes, timeout_s, out_path);
        if (*verify)
            return cmd_verify(fx, map_path, fy, gformat, sample_cap);
        if (*table)
            return cmd_table(records_path, table_format);
    } catch (const UsageError& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return kUsage;
    } catch (const ParseError& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return kUsage;
    } catch (const PreconditionError& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return kUsage;
    } catch (const InternalError& ex) {
        std::cerr << "internal error: " << ex.what() << '\n';
        return kInternal;
    } catch (const std::exception& ex) {
        std::cerr << "internal error: " << ex.what() << '\n';
        return kInternal;
    }
    return kUsage;
}
