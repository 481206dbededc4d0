#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "io.hpp"
#include "openmult/error.hpp"

namespace openmult::cli {

namespace {

using io::json;

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  std::size_t grid = 0;
  std::string output;
  std::string format = "json";
  bool audit = false;
};

// An input rejected before any algorithm runs; reported like a precondition
// error.
struct Rejection {
  std::string message;
  std::string bound;
  double value;
  double limit;
};

struct Bundle {
  json f;
  json g;
  json d;
  json extra;  // remaining top-level keys of a single-file bundle
};

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

json load_function(const std::string& path) {
  const std::string text = io::read_file(path);
  if (ends_with(path, ".csv")) return io::to_json(io::grid_from_csv(text));
  return json::parse(text);
}

const json* pick(const json& j, std::initializer_list<const char*> keys) {
  for (const char* k : keys) {
    if (j.contains(k)) return &j.at(k);
  }
  return nullptr;
}

Bundle load_bundle(const RunConfig& cfg, std::size_t needed) {
  Bundle b;
  if (cfg.inputs.size() == 1) {
    const json j = load_function(cfg.inputs[0]);
    const json* f = pick(j, {"f", "F", "a"});
    const json* g = pick(j, {"g", "G", "b"});
    const json* d = pick(j, {"d", "H"});
    if (!f || !g || (needed == 3 && !d)) {
      throw Error(ErrorCode::InvalidArgument, "input bundle must contain f, g and d");
    }
    b.f = *f;
    b.g = *g;
    if (d) b.d = *d;
    b.extra = j;
    return b;
  }
  if (cfg.inputs.size() != needed) {
    throw Error(ErrorCode::InvalidArgument,
                "expected one bundle or " + std::to_string(needed) + " input files");
  }
  b.f = load_function(cfg.inputs[0]);
  b.g = load_function(cfg.inputs[1]);
  if (needed == 3) b.d = load_function(cfg.inputs[2]);
  b.extra = json::object();
  return b;
}

GridFunction load_grid(const json& j, const RunConfig& cfg) {
  GridFunction f = io::grid_from_json(j);
  if (cfg.grid != 0 && cfg.grid != f.size()) f = resample(f, cfg.grid);
  return f;
}

void require_epsilon(const RunConfig& cfg) {
  if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "--epsilon must lie in (0, 1)");
  }
}

std::string timestamp() {
  std::time_t now = std::time(nullptr);
  if (const char* fixed = std::getenv("SOURCE_DATE_EPOCH")) {
    now = static_cast<std::time_t>(std::strtoll(fixed, nullptr, 10));
  }
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

json constants(std::optional<PipelineConfig> pipeline, std::optional<SchemeParams> scheme) {
  auto num = [](std::optional<double> x) { return x ? json(io::exact_decimal(*x)) : json(); };
  json c;
  c["epsilon0"] = num(pipeline ? std::optional(pipeline->epsilon0) : std::nullopt);
  c["epsilon1"] = num(pipeline ? std::optional(pipeline->epsilon1) : std::nullopt);
  c["delta0"] = num(pipeline ? std::optional(pipeline->delta0) : std::nullopt);
  c["gamma"] = num(scheme ? std::optional(scheme->gamma) : std::nullopt);
  c["K"] = num(scheme ? std::optional(scheme->K) : std::nullopt);
  c["That"] = num(scheme ? std::optional(scheme->That) : std::nullopt);
  c["T"] = num(scheme ? std::optional(scheme->T) : std::nullopt);
  c["delta"] = num(scheme ? std::optional(scheme->delta) : std::nullopt);
  return c;
}

json report(const RunConfig& cfg, json consts, json result) {
  return {{"command", cfg.command},
          {"epsilon", io::exact_decimal(cfg.epsilon)},
          {"seed", cfg.seed},
          {"constants", std::move(consts)},
          {"result", std::move(result)},
          {"timestamp", timestamp()}};
}

std::string factor_interval(const RunConfig& cfg) {
  require_epsilon(cfg);
  const Bundle b = load_bundle(cfg, 3);
  const GridFunction f = load_grid(b.f, cfg);
  const GridFunction g = load_grid(b.g, cfg);
  const GridFunction d = load_grid(b.d, cfg);
  const PipelineConfig pc(cfg.epsilon);
  const double size = sup_norm(d);
  if (size > pc.delta0) throw Rejection{"perturbation exceeds delta0", "delta0", size, pc.delta0};
  const FactorizationResult r = open_mult_interval(f, g, d, cfg.epsilon);
  if (cfg.format == "csv") return io::result_csv(r);
  return report(cfg, constants(pc, std::nullopt), io::to_json(r)).dump(2) + '\n';
}

std::string factor_graph(const RunConfig& cfg) {
  require_epsilon(cfg);
  const Bundle b = load_bundle(cfg, 3);
  const GraphFunction f = io::graph_from_json(b.f);
  const GraphFunction g = io::graph_from_json(b.g);
  const GraphFunction d = io::graph_from_json(b.d);
  const PipelineConfig pc(cfg.epsilon);
  const double size = sup_norm(d);
  if (size > pc.delta0) throw Rejection{"perturbation exceeds delta0", "delta0", size, pc.delta0};
  const GraphFactorization r = open_mult_graph(f, g, d, cfg.epsilon);
  if (cfg.format == "csv") {
    std::string out = "edge,t,d1_re,d1_im,d2_re,d2_im\n";
    for (std::size_t k = 0; k < r.edges.size(); ++k) {
      const std::string csv = io::result_csv(r.edges[k]);
      const std::string id = r.d1.domain().edges()[k].id;
      std::istringstream lines(csv.substr(csv.find('\n') + 1));
      for (std::string line; std::getline(lines, line);) out += id + ',' + line + '\n';
    }
    return out;
  }
  return report(cfg, constants(pc, std::nullopt), io::to_json(r)).dump(2) + '\n';
}

std::string factor_finite(const RunConfig& cfg) {
  require_epsilon(cfg);
  const Bundle b = load_bundle(cfg, 3);
  const FiniteSpaceFunction f = io::finite_from_json(b.f);
  const FiniteSpaceFunction g = io::finite_from_json(b.g);
  const FiniteSpaceFunction d = io::finite_from_json(b.d);
  const double limit = cfg.epsilon * cfg.epsilon / 4.0;
  const double size = sup_norm(d);
  if (size > limit) throw Rejection{"perturbation exceeds eps^2/4", "eps^2/4", size, limit};
  const auto [a, c] = open_mult_finite(f, g, d, cfg.epsilon);
  const json result = {{"f", io::to_json(a)},
                       {"g", io::to_json(c)},
                       {"bound1", io::exact_decimal(sup_norm(a - f))},
                       {"bound2", io::exact_decimal(sup_norm(c - g))}};
  if (cfg.format == "csv") {
    std::string out = "x,f_re,f_im,g_re,g_im\n";
    for (std::size_t k = 0; k < a.size(); ++k) {
      out += std::to_string(k) + ',' + io::exact_decimal(a[k].real()) + ',' +
             io::exact_decimal(a[k].imag()) + ',' + io::exact_decimal(c[k].real()) + ',' +
             io::exact_decimal(c[k].imag()) + '\n';
    }
    return out;
  }
  return report(cfg, constants(std::nullopt, std::nullopt), result).dump(2) + '\n';
}

std::string nondeg(const RunConfig& cfg) {
  if (!(cfg.epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "--epsilon must be positive");
  const Bundle b = load_bundle(cfg, 2);
  const FiniteSpaceFunction f = io::finite_from_json(b.f);
  const FiniteSpaceFunction g = io::finite_from_json(b.g);
  const auto [a, c] = nondeg_approx(f, g, cfg.epsilon);
  const json result = {{"f", io::to_json(a)},
                       {"g", io::to_json(c)},
                       {"min_squared_modulus_sum",
                        io::exact_decimal(min_modulus_sum(a, c, ModulusSum::Squared))}};
  return report(cfg, constants(std::nullopt, std::nullopt), result).dump(2) + '\n';
}

std::string scheme(const RunConfig& cfg) {
  require_epsilon(cfg);
  const Bundle b = load_bundle(cfg, 3);
  std::unique_ptr<AlgebraModel> model;
  AlgebraElement F;
  AlgebraElement G;
  AlgebraElement H;
  if (b.extra.contains("algebra")) {
    model = std::make_unique<DiagonalModel>(io::diagonal_model_from_json(b.extra.at("algebra")));
    F = to_algebra_element(io::diagonal_from_json(b.f));
    G = to_algebra_element(io::diagonal_from_json(b.g));
    H = to_algebra_element(io::diagonal_from_json(b.d));
  } else {
    const FiniteSpaceFunction f = io::finite_from_json(b.f);
    model = std::make_unique<SupNormModel>(f.size());
    F.coords.assign(f.values().begin(), f.values().end());
    G.coords = [&] {
      const auto g = io::finite_from_json(b.g);
      return std::vector<Complex>(g.values().begin(), g.values().end());
    }();
    H.coords = [&] {
      const auto h = io::finite_from_json(b.d);
      return std::vector<Complex>(h.values().begin(), h.values().end());
    }();
  }
  const SchemeParams params = scheme_params(F, G, cfg.epsilon, *model);
  const double size = model->norm(H);
  if (!(size < params.delta)) {
    throw Rejection{"perturbation exceeds delta", "delta", size, params.delta};
  }
  SchemeOptions opts;
  opts.audit = cfg.audit;
  const SchemeRun run = run_scheme(F, G, H, params, *model, opts);
  const ClaimReport claims = audit_claims(run.trace, params);
  if (cfg.format == "csv") return io::trace_to_csv(run.trace, claims);

  auto element = [&](const AlgebraElement& a) {
    if (model->name() == "diagonal") return io::to_json(to_diagonal_element(a));
    return io::to_json(FiniteSpaceFunction(a.coords));
  };
  json trace = json::array();
  for (std::size_t k = 0; k < run.trace.steps.size(); ++k) {
    trace.push_back(io::to_json(run.trace.steps[k], claims.checks[k]));
  }
  const json result = {{"model", model->name()},
                       {"f", element(run.f)},
                       {"g", element(run.g)},
                       {"iterations", run.trace.steps.size() - 1},
                       {"product_residual", io::exact_decimal(run.product_residual)},
                       {"distance_f", io::exact_decimal(model->norm(model->difference(run.f, F)))},
                       {"distance_g", io::exact_decimal(model->norm(model->difference(run.g, G)))},
                       {"claims_passed", claims.passed},
                       {"trace", std::move(trace)}};
  return report(cfg, constants(std::nullopt, params), result).dump(2) + '\n';
}

std::string probe(const RunConfig& cfg) {
  require_epsilon(cfg);
  const Bundle b = load_bundle(cfg, 2);
  const GridFunction f = load_grid(b.f, cfg);
  const GridFunction g = load_grid(b.g, cfg);
  const int trials = b.extra.value("trials", 20);
  const ProbeReport r = probe_pipeline(f, g, cfg.epsilon, trials, cfg.seed);
  if (cfg.format == "csv") return io::probe_curve_csv(r);
  return report(cfg, constants(PipelineConfig(cfg.epsilon), std::nullopt), io::to_json(r))
             .dump(2) +
         '\n';
}

void diagnose(std::ostream& err, std::string_view code, const std::string& message,
              json extra = json::object()) {
  json j = {{"error", code}, {"message", message}};
  for (auto& [k, v] : extra.items()) j[k] = v;
  err << j.dump() << '\n';
}

// Commands whose results rest on non-constructive arguments.
constexpr const char* kRefused[][2] = {
    {"factor-convolution", "openness in convolution algebras is not uniform and is not computed"},
    {"inverse-limit", "inverse-limit spaces are not representable at finite scale"},
    {"factor-compactum", "only graphs, intervals and finite spaces are supported"},
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Perturbed-product factorization for sampled function algebras", "openmult"};
  app.require_subcommand(1);

  auto add = [&](const char* name, const char* help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--input", cfg.inputs, "JSON bundle or one file per function")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--epsilon", cfg.epsilon, "Distance budget")->required();
    sub->add_option("--seed", cfg.seed, "Random seed");
    sub->add_option("--grid", cfg.grid, "Resample interval inputs to this many nodes");
    sub->add_option("--output", cfg.output, "Output path (default: standard output)");
    sub->add_option("--format", cfg.format, "Report format")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_flag("--audit", cfg.audit, "Check the scheme's claims at every iteration");
    return sub;
  };
  add("factor-interval", "Factor a perturbed product on an interval");
  add("factor-graph", "Factor a perturbed product on a finite graph");
  add("factor-finite", "Factor a perturbed product on a finite space");
  add("scheme", "Run the iterative correction scheme");
  add("probe", "Estimate the openness modulus empirically");
  add("nondeg-approx", "Approximate a pair by a non-degenerate pair with the same product");
  for (const auto& r : kRefused) {
    app.add_subcommand(r[0], "Not supported")->allow_extras();
  }

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    diagnose(err, "UsageError", e.what());
    return 2;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  for (const auto& r : kRefused) {
    if (cfg.command == r[0]) {
      diagnose(err, "Unsupported", r[1], {{"command", cfg.command}});
      return 2;
    }
  }

  try {
    std::string text;
    if (cfg.command == "factor-interval") text = factor_interval(cfg);
    else if (cfg.command == "factor-graph") text = factor_graph(cfg);
    else if (cfg.command == "factor-finite") text = factor_finite(cfg);
    else if (cfg.command == "scheme") text = scheme(cfg);
    else if (cfg.command == "probe") text = probe(cfg);
    else text = nondeg(cfg);
    if (cfg.output.empty()) {
      out << text;
    } else {
      io::write_file(cfg.output, text);
    }
    return 0;
  } catch (const Rejection& r) {
    diagnose(err, "PerturbationTooLarge", r.message,
             {{"bound", r.bound},
              {"value", io::exact_decimal(r.value)},
              {"limit", io::exact_decimal(r.limit)}});
    return 2;
  } catch (const Error& e) {
    diagnose(err, to_string(e.code()), e.what());
    return is_precondition_error(e.code()) ? 2 : 1;
  } catch (const json::exception& e) {
    diagnose(err, "InvalidInput", e.what());
    return 2;
  } catch (const std::exception& e) {
    diagnose(err, "InternalError", e.what());
    return 1;
  }
}

}  // namespace openmult::cli
