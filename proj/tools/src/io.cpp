#include "io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "openmult/error.hpp"

namespace openmult::io {

namespace {

[[noreturn]] void bad_input(const std::string& what) {
  throw Error(ErrorCode::InvalidArgument, what);
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad_input(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::vector<Complex> values_from_json(const json& j) {
  if (!j.is_array()) bad_input("values must be an array");
  std::vector<Complex> v;
  v.reserve(j.size());
  for (const auto& x : j) v.push_back(complex_from_json(x));
  return v;
}

json values_to_json(std::span<const Complex> v) {
  json out = json::array();
  for (Complex z : v) out.push_back(to_json(z));
  return out;
}

std::size_t vertex_index(const json& j, const std::vector<std::string>& names) {
  if (j.is_number_unsigned()) {
    const auto k = j.get<std::size_t>();
    if (k >= names.size()) bad_input("vertex index out of range");
    return k;
  }
  const auto name = j.is_string() ? j.get<std::string>() : j.dump();
  for (std::size_t k = 0; k < names.size(); ++k) {
    if (names[k] == name) return k;
  }
  bad_input("unknown vertex '" + name + "'");
}

IntervalDomain domain_from_json(const json& d) {
  const double a = d.value("a", 0.0);
  const double b = d.value("b", 1.0);
  return IntervalDomain(a, b, field(d, "n").get<std::size_t>());
}

GraphDomain graph_domain_from_json(const json& d) {
  std::vector<std::string> names;
  for (const auto& v : field(d, "vertices")) {
    names.push_back(v.is_string() ? v.get<std::string>() : v.dump());
  }
  std::vector<GraphEdge> edges;
  const auto& es = field(d, "edges");
  for (std::size_t k = 0; k < es.size(); ++k) {
    const auto& e = es[k];
    GraphEdge edge{e.value("id", "e" + std::to_string(k)), vertex_index(field(e, "u"), names),
                   vertex_index(field(e, "v"), names), domain_from_json(e), {}};
    if (e.contains("junctions")) {
      for (const auto& jn : e.at("junctions")) {
        edge.junctions.push_back(
            {field(jn, "node").get<std::size_t>(), vertex_index(field(jn, "vertex"), names)});
      }
    }
    edges.push_back(std::move(edge));
  }
  return GraphDomain(std::move(names), std::move(edges));
}

std::string csv_number(double x) { return exact_decimal(x); }

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad_input("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) bad_input("cannot write '" + path + "'");
  out << text;
}

std::string exact_decimal(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  bad_input("complex value must be a number or [re, im]");
}

json to_json(const IntervalDomain& d) {
  return {{"type", "interval"}, {"a", d.a()}, {"b", d.b()}, {"n", d.n()}};
}

json to_json(const GridFunction& f) {
  return {{"domain", to_json(f.domain())}, {"values", values_to_json(f.values())}};
}

json to_json(const FiniteSpaceFunction& f) {
  return {{"domain", {{"type", "finite"}, {"n", f.size()}}},
          {"values", values_to_json(f.values())}};
}

json to_json(const GraphDomain& d) {
  json edges = json::array();
  for (const auto& e : d.edges()) {
    json je = {{"id", e.id},
               {"u", d.vertices()[e.u]},
               {"v", d.vertices()[e.v]},
               {"a", e.grid.a()},
               {"b", e.grid.b()},
               {"n", e.grid.n()}};
    if (!e.junctions.empty()) {
      json js = json::array();
      for (const auto& jn : e.junctions) {
        js.push_back({{"node", jn.node}, {"vertex", d.vertices()[jn.vertex]}});
      }
      je["junctions"] = std::move(js);
    }
    edges.push_back(std::move(je));
  }
  return {{"type", "graph"}, {"vertices", d.vertices()}, {"edges", std::move(edges)}};
}

json to_json(const GraphFunction& f) {
  json values = json::object();
  for (std::size_t k = 0; k < f.edges().size(); ++k) {
    values[f.domain().edges()[k].id] = values_to_json(f.edge(k).values());
  }
  return {{"domain", to_json(f.domain())}, {"values", std::move(values)}};
}

std::string domain_type(const json& j) {
  const auto& d = field(j, "domain");
  return d.value("type", "interval");
}

GridFunction grid_from_json(const json& j) {
  const auto& d = field(j, "domain");
  if (d.value("type", "interval") != "interval") bad_input("expected an interval function");
  return GridFunction(domain_from_json(d), values_from_json(field(j, "values")));
}

FiniteSpaceFunction finite_from_json(const json& j) {
  if (j.contains("domain") && domain_type(j) != "finite") {
    bad_input("expected a finite-space function");
  }
  auto v = values_from_json(field(j, "values"));
  if (j.contains("domain") && j.at("domain").contains("n") &&
      j.at("domain").at("n").get<std::size_t>() != v.size()) {
    bad_input("finite-space size does not match the number of values");
  }
  return FiniteSpaceFunction(std::move(v));
}

GraphFunction graph_from_json(const json& j) {
  const auto& d = field(j, "domain");
  if (d.value("type", "") != "graph") bad_input("expected a graph function");
  GraphDomain domain = graph_domain_from_json(d);
  const auto& values = field(j, "values");
  std::vector<GridFunction> edges;
  for (std::size_t k = 0; k < domain.edges().size(); ++k) {
    const auto& e = domain.edges()[k];
    const json& v = values.is_array() ? values.at(k) : field(values, e.id.c_str());
    edges.emplace_back(e.grid, values_from_json(v));
  }
  return GraphFunction(std::move(domain), std::move(edges));
}

GridFunction grid_from_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<double> t;
  std::vector<Complex> v;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell[3];
    for (auto& c : cell) {
      if (!std::getline(row, c, ',')) c.clear();
    }
    try {
      std::size_t used = 0;
      const double tk = std::stod(cell[0], &used);
      const double re = std::stod(cell[1]);
      const double im = cell[2].empty() ? 0.0 : std::stod(cell[2]);
      t.push_back(tk);
      v.emplace_back(re, im);
    } catch (const std::exception&) {
      if (t.empty()) continue;  // header
      bad_input("malformed CSV row '" + line + "'");
    }
  }
  if (t.size() < 2) bad_input("CSV needs at least two rows");
  IntervalDomain dom(t.front(), t.back(), t.size());
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (std::abs(t[k] - dom.node(k)) > 1e-9 * (1.0 + std::abs(dom.b() - dom.a()))) {
      bad_input("CSV abscissae are not uniformly spaced");
    }
  }
  return GridFunction(dom, std::move(v));
}

json to_json(const IntervalCover& c) {
  json out = json::array();
  for (const auto& r : c.intervals) out.push_back({r.first, r.last});
  return out;
}

json to_json(const FactorizationResult& r) {
  return {{"d1", to_json(r.d1)},
          {"d2", to_json(r.d2)},
          {"residual", exact_decimal(r.residual)},
          {"bound1", exact_decimal(r.bound1)},
          {"bound2", exact_decimal(r.bound2)},
          {"cover", to_json(r.cover)}};
}

json to_json(const GraphFactorization& r) {
  json edges = json::object();
  const auto& dom = r.d1.domain();
  for (std::size_t k = 0; k < r.edges.size(); ++k) {
    const auto& e = r.edges[k];
    edges[dom.edges()[k].id] = {{"d1", values_to_json(e.d1.values())},
                                {"d2", values_to_json(e.d2.values())},
                                {"residual", exact_decimal(e.residual)},
                                {"bound1", exact_decimal(e.bound1)},
                                {"bound2", exact_decimal(e.bound2)},
                                {"cover", to_json(e.cover)}};
  }
  json vertices = json::array();
  for (const auto& v : r.vertices) {
    vertices.push_back({{"vertex", v.vertex},
                        {"degenerate", v.degenerate},
                        {"d1", to_json(v.d1)},
                        {"d2", to_json(v.d2)},
                        {"disagreement", exact_decimal(v.disagreement)}});
  }
  return {{"domain", to_json(dom)},
          {"edges", std::move(edges)},
          {"vertices", std::move(vertices)},
          {"max_residual", exact_decimal(r.max_residual)},
          {"max_disagreement", exact_decimal(r.max_disagreement)}};
}

json to_json(const DiagonalAlgebraElement& a) {
  return {{"scalar", to_json(a.scalar)}, {"coords", values_to_json(a.coords)}};
}

DiagonalAlgebraElement diagonal_from_json(const json& j) {
  return {complex_from_json(j.value("scalar", json(0.0))),
          values_from_json(j.value("coords", json::array()))};
}

DiagonalModel diagonal_model_from_json(const json& j) {
  if (j.contains("unital") && !j.at("unital").get<bool>()) {
    bad_input("only the unitised diagonal algebra is supported");
  }
  return DiagonalModel(field(j, "weights").get<std::vector<double>>());
}

json to_json(const SchemeParams& p) {
  return {{"epsilon", exact_decimal(p.epsilon)}, {"C", exact_decimal(p.C)},
          {"gamma", exact_decimal(p.gamma)},     {"K", exact_decimal(p.K)},
          {"That", exact_decimal(p.That)},       {"T", exact_decimal(p.T)},
          {"delta", exact_decimal(p.delta)}};
}

json to_json(const SchemeStep& s, const ClaimCheck& c) {
  return {{"n", s.n},
          {"norm_F", s.norm_F},
          {"norm_G", s.norm_G},
          {"norm_H", s.norm_H},
          {"inf_sum", s.inf_sum},
          {"identity_residual", s.identity_residual},
          {"step_F", s.step_F},
          {"step_G", s.step_G},
          {"claims",
           {{"identity", c.identity},
            {"bounded", c.bounded},
            {"nondegenerate", c.nondegenerate},
            {"decay", c.decay}}},
          {"slack",
           {{"identity", c.identity_slack},
            {"bounded", c.bounded_slack},
            {"nondegenerate", c.nondegenerate_slack},
            {"decay", c.decay_slack}}}};
}

std::string trace_to_json_lines(const SchemeTrace& trace, const ClaimReport& claims) {
  std::string out;
  for (std::size_t k = 0; k < trace.steps.size(); ++k) {
    out += to_json(trace.steps[k], claims.checks.at(k)).dump();
    out += '\n';
  }
  return out;
}

std::string trace_to_csv(const SchemeTrace& trace, const ClaimReport& claims) {
  std::string out =
      "n,norm_F,norm_G,norm_H,inf_sum,identity_residual,step_F,step_G,identity,bounded,"
      "nondegenerate,decay\n";
  for (std::size_t k = 0; k < trace.steps.size(); ++k) {
    const auto& s = trace.steps[k];
    const auto& c = claims.checks.at(k);
    out += std::to_string(s.n) + ',' + csv_number(s.norm_F) + ',' + csv_number(s.norm_G) + ',' +
           csv_number(s.norm_H) + ',' + csv_number(s.inf_sum) + ',' +
           csv_number(s.identity_residual) + ',' + csv_number(s.step_F) + ',' +
           csv_number(s.step_G) + ',' + (c.identity ? "1" : "0") + ',' +
           (c.bounded ? "1" : "0") + ',' + (c.nondegenerate ? "1" : "0") + ',' +
           (c.decay ? "1" : "0") + '\n';
  }
  return out;
}

json to_json(const ProbeReport& r) {
  json curve = json::array();
  for (const auto& p : r.curve) {
    curve.push_back({{"r", exact_decimal(p.radius)}, {"success_rate", p.success_rate}});
  }
  return {{"eps", exact_decimal(r.eps)},
          {"delta_constructive", exact_decimal(r.delta_constructive)},
          {"delta_empirical", exact_decimal(r.delta_empirical)},
          {"samples", r.samples},
          {"seed", r.seed},
          {"curve", std::move(curve)}};
}

std::string probe_curve_csv(const ProbeReport& r) {
  std::string out = "r,success_rate\n";
  for (const auto& p : r.curve) {
    out += csv_number(p.radius) + ',' + csv_number(p.success_rate) + '\n';
  }
  return out;
}

std::string result_csv(const FactorizationResult& r) {
  std::string out = "t,d1_re,d1_im,d2_re,d2_im\n";
  const auto& dom = r.d1.domain();
  for (std::size_t k = 0; k < dom.n(); ++k) {
    out += csv_number(dom.node(k)) + ',' + csv_number(r.d1[k].real()) + ',' +
           csv_number(r.d1[k].imag()) + ',' + csv_number(r.d2[k].real()) + ',' +
           csv_number(r.d2[k].imag()) + '\n';
  }
  return out;
}

}  // namespace openmult::io
