#include "drg/enumerate.hpp"
#include "drg/errors.hpp"
#include "drg/graphs.hpp"
#include "drg/homtheory.hpp"
#include "drg/report.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <chrono>

namespace py = pybind11;
using namespace drg;

namespace {

// Structured results cross the boundary as JSON text; the Python side
// decodes them.
std::string analyze(const std::string& array, const std::string& alpha)
{
    auto arr = parse_array(array);
    auto rec = analyze_record(arr, parse_alpha_range(alpha));
    if (rec)
        return to_json(*rec).dump();
    return nlohmann::json{{"array", arr.to_string()}, {"feasibility", to_json(run_battery(arr))}}.dump();
}

std::vector<std::tuple<std::int64_t, std::int64_t, std::int64_t>> triples(const std::string& array, int e,
                                                                          const std::string& alpha)
{
    auto ps = derive_parameters(parse_array(array));
    auto sd = spectral_data(ps, false);
    std::vector<std::tuple<std::int64_t, std::int64_t, std::int64_t>> out;
    for (const auto& t : search_triples(ps, sd, e, parse_alpha_range(alpha)))
        out.emplace_back(t.alpha, t.beta, t.gamma);
    return out;
}

std::vector<std::string> enumerate(int diameter, std::int64_t max_k, const std::string& family, unsigned jobs,
                                   const std::string& alpha)
{
    EnumerationOptions opt;
    opt.diameter = diameter;
    opt.k_max = max_k;
    opt.filter = parse_family_filter(family);
    opt.jobs = jobs;
    opt.alpha = parse_alpha_range(alpha);
    std::vector<std::string> out;
    {
        py::gil_scoped_release release;
        enumerate_arrays(opt, [&](const EnumerationRecord& r) { out.push_back(to_json(r).dump()); });
    }
    return out;
}

Graph load(const std::string& text, const std::string& format)
{
    if (text.rfind("named:", 0) == 0)
        return build_named(text.substr(6));
    return parse_graph(text, parse_graph_format(format));
}

std::optional<std::string> recognize(const std::string& graph, const std::string& format)
{
    auto arr = recognize_drg(load(graph, format));
    if (!arr)
        return std::nullopt;
    return arr->to_string();
}

std::pair<std::string, VertexMap> hom(const std::string& x, const std::string& y, const std::string& format,
                                      bool retraction, bool onto, std::optional<double> timeout)
{
    const Graph gx = load(x, format), gy = load(y, format);
    HomOptions opt;
    opt.retraction = retraction;
    opt.surjective = onto;
    if (timeout)
        opt.timeout = std::chrono::milliseconds(static_cast<std::int64_t>(*timeout * 1000));
    HomResult r;
    {
        py::gil_scoped_release release;
        r = search_hom(gx, gy, opt);
    }
    return {std::string(to_string(r.status)), r.map};
}

std::string table(const std::string& json_lines, const std::string& format)
{
    return emit_table(parse_json_lines(json_lines), parse_table_format(format));
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Exact intersection-array engine";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<InfeasibleError>(m, "InfeasibleError", PyExc_ValueError);
    py::register_exception<UnsupportedError>(m, "UnsupportedError", PyExc_RuntimeError);
    py::register_exception<InternalError>(m, "InternalError", PyExc_RuntimeError);

    m.def("analyze", &analyze, py::arg("array"), py::arg("alpha_range") = "exclusive");
    m.def("triples", &triples, py::arg("array"), py::arg("e"), py::arg("alpha_range") = "exclusive");
    m.def("enumerate", &enumerate, py::arg("diameter"), py::arg("max_k"), py::arg("family") = "all",
          py::arg("jobs") = 0, py::arg("alpha_range") = "exclusive");
    m.def("build_named", [](const std::string& spec) { return to_graph6(build_named(spec)); }, py::arg("spec"));
    m.def("recognize", &recognize, py::arg("graph"), py::arg("format") = "graph6");
    m.def("hom", &hom, py::arg("x"), py::arg("y"), py::arg("format") = "graph6", py::arg("retraction") = false,
          py::arg("onto") = false, py::arg("timeout") = py::none());
    m.def("table", &table, py::arg("json_lines"), py::arg("format") = "markdown");
}
