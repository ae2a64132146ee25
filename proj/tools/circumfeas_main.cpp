// Command-line front end: run scenarios, sweep generated instances, plot
// traces. Exit codes: 0 expected outcome, 1 expectation violated, 2 error
// (with a one-line JSON record on stderr).

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "circumfeas/crm.hpp"
#include "circumfeas/scenario.hpp"
#include "circumfeas/serialize.hpp"
#include "circumfeas/sphere.hpp"
#include "circumfeas/svg.hpp"
#include "circumfeas/trace_io.hpp"

namespace fs = std::filesystem;
using namespace circumfeas;

namespace {

[[noreturn]] void die(const std::string& kind, const std::string& msg) {
  std::cerr << json{{"error", kind}, {"message", msg}}.dump() << '\n';
  std::exit(2);
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read scenario file: " + path);
  json j;
  in >> j;
  return scenario_from_json(j);
}

// name resolution: explicit file path, then CIRCUMFEAS_SCENARIO_DIR, then
// the builtin registry (seed applies to generator families only)
Scenario resolve_scenario(const std::string& ref, std::uint64_t seed) {
  if (fs::exists(ref) && fs::is_regular_file(ref)) return load_scenario_file(ref);
  if (const char* dir = std::getenv("CIRCUMFEAS_SCENARIO_DIR")) {
    fs::path p = fs::path(dir) / (ref + ".json");
    if (fs::exists(p)) return load_scenario_file(p.string());
  }
  if (auto s = find_scenario(ref, seed)) return *s;
  throw std::runtime_error("unknown scenario: " + ref);
}

// spherical runner; trace distances are geodesic distances to the two
// spherical polytopes, so the feasibility rule reads the same as the
// Euclidean methods
IterationTrace run_srm(const ConeV& a, const ConeV& b, const Vec& x0, const Tolerance& tol,
                       int max_iters) {
  SphericalPolytope ap = build_spherical_polytope(a, tol);
  SphericalPolytope bp = build_spherical_polytope(b, tol);
  IterationTrace tr;
  if (norm(x0) <= tol.eps_degen)
    fail(ErrKind::OperatorUndefined, "spherical method undefined at the origin");
  Vec x = normalized(x0);
  for (int k = 0;; ++k) {
    double da = distance_to_polytope(ap, x);
    double db = distance_to_polytope(bp, x);
    if (da <= tol.eps_feas && db <= tol.eps_feas) {
      tr.terminated = Terminated::Feasible;
      tr.iterations_used = k;
      tr.final_point = x; tr.final_dist_a = da; tr.final_dist_b = db;
      return tr;
    }
    if (k >= max_iters) {
      tr.terminated = Terminated::MaxIters;
      tr.iterations_used = k;
      tr.final_point = x; tr.final_dist_a = da; tr.final_dist_b = db;
      return tr;
    }
    CrmStep s;
    s.x = x; s.dist_a = da; s.dist_b = db;
    try {
      s.y = spherical_reflect(a, x, tol);
      s.z = spherical_reflect(b, s.y, tol);
      s.next = sphere_center(x, s.y, s.z, tol);
    } catch (const Error& e) {
      tr.terminated = Terminated::OperatorUndefined;
      tr.iterations_used = k;
      tr.final_point = x; tr.final_dist_a = da; tr.final_dist_b = db;
      tr.error_message = e.what();
      return tr;
    }
    s.cardinality_case = classify_case(s.x, s.y, s.z, tol.eps_degen);
    x = s.next;
    tr.steps.push_back(std::move(s));
  }
}

IterationTrace dispatch(const std::string& method, const Scenario& s, const Vec& x0) {
  if (method == "crm") return run_crm(s.set_a, s.set_b, x0, s.tol, s.max_iters);
  if (method == "crm_product")
    return run_crm_product_space(s.set_a, s.set_b, x0, s.tol, s.max_iters);
  if (method == "map") return run_map(s.set_a, s.set_b, x0, s.tol, s.max_iters);
  if (method == "dr") return run_dr(s.set_a, s.set_b, x0, s.tol, s.max_iters);
  if (method == "srm") {
    const auto* a = std::get_if<ConeV>(&s.set_a);
    const auto* b = std::get_if<ConeV>(&s.set_b);
    if (!a || !b || set_dim(s.set_a) != 3)
      fail(ErrKind::DimensionMismatch, "srm needs a pair of cones in R3");
    return run_srm(*a, *b, x0, s.tol, s.max_iters);
  }
  throw std::runtime_error("unknown method: " + method);
}

// ok means the run matched the scenario's expectation
bool outcome_ok(const Scenario& s, const IterationTrace& t) {
  bool want_finite = !s.expected || s.expected->finite;
  if (t.terminated == Terminated::OperatorUndefined) return false;
  if (want_finite) {
    if (t.terminated != Terminated::Feasible) return false;
    if (s.expected && s.expected->max_steps && t.iterations_used > *s.expected->max_steps)
      return false;
    return true;
  }
  return true;  // non-finite expectation: MaxIters and Feasible both acceptable
}

int cmd_run(const std::string& ref, const std::string& method, const std::string& out_dir,
            std::uint64_t seed, int max_iters_override, double eps_feas_override,
            double eps_degen_override) {
  Scenario s = resolve_scenario(ref, seed);
  if (max_iters_override > 0) s.max_iters = max_iters_override;
  if (eps_feas_override > 0) s.tol.eps_feas = eps_feas_override;
  if (eps_degen_override > 0) s.tol.eps_degen = eps_degen_override;
  validate_scenario(s);
  if (s.initial_points.empty()) throw std::runtime_error("scenario has no initial points");

  fs::create_directories(out_dir);
  bool all_ok = true;
  bool any_error = false;
  for (size_t i = 0; i < s.initial_points.size(); ++i) {
    IterationTrace t = dispatch(method, s, s.initial_points[i]);
    if (t.terminated == Terminated::OperatorUndefined) any_error = true;
    if (!outcome_ok(s, t)) all_ok = false;
    if (i == 0) {
      std::optional<bool> zone;
      const auto* ca = std::get_if<ConeV>(&s.set_a);
      const auto* cb = std::get_if<ConeV>(&s.set_b);
      if (ca && cb && set_dim(s.set_a) == 3) {
        try {
          zone = in_zone(*ca, *cb, s.initial_points[0], s.tol);
        } catch (const Error&) {
          // improper pair: zone undefined, summary omits the field
        }
      }
      write_trace_csv((fs::path(out_dir) / "trace.csv").string(), t);
      write_trace_json((fs::path(out_dir) / "trace.json").string(), s, method, t);
      write_summary_json((fs::path(out_dir) / "summary.json").string(), s, method, t, zone);
    }
    std::cout << s.name << " start " << i << ": " << terminated_name(t.terminated) << " in "
              << t.iterations_used << " iterations (dist_a " << t.final_dist_a << ", dist_b "
              << t.final_dist_b << ")\n";
  }
  if (any_error) die("OperatorUndefined", "iteration operator was undefined during a run");
  return all_ok ? 0 : 1;
}

int cmd_sweep(const std::string& generator, int count, std::uint64_t seed,
              const std::string& method_flag, const std::string& out_dir) {
  fs::create_directories(out_dir);
  std::ofstream agg(fs::path(out_dir) / "sweep.csv", std::ios::binary);
  agg << "# circumfeas-sweep-v1\nseed,name,starts,feasible,max_iterations_used,within_expected\n";
  std::string method = method_flag;
  if (method.empty())
    method = generator == "random-polyhedra-r2" ? "crm_product" : "crm";
  int violations = 0;
  int global_max_iters = 0;
  for (int i = 0; i < count; ++i) {
    std::uint64_t sd = seed + static_cast<std::uint64_t>(i);
    auto s = find_scenario(generator, sd);
    if (!s) throw std::runtime_error("unknown generator: " + generator);
    int feas = 0, maxit = 0;
    bool within = true;
    for (const Vec& x0 : s->initial_points) {
      IterationTrace t = dispatch(method, *s, x0);
      if (t.terminated == Terminated::Feasible) ++feas;
      maxit = std::max(maxit, t.iterations_used);
      if (!outcome_ok(*s, t)) within = false;
    }
    global_max_iters = std::max(global_max_iters, maxit);
    if (!within) ++violations;
    agg << sd << ',' << s->name << ',' << s->initial_points.size() << ',' << feas << ',' << maxit
        << ',' << (within ? 1 : 0) << '\n';
  }
  std::cout << "sweep " << generator << " count " << count << " method " << method << ": "
            << (count - violations) << "/" << count << " within expectation, max iterations "
            << global_max_iters << (violations == 0 ? " [PASS]" : " [FAIL]") << '\n';
  return violations == 0 ? 0 : 1;
}

int cmd_plot(const std::string& trace_path, const std::string& style, const std::string& out_svg) {
  std::ifstream in(trace_path);
  if (!in) throw std::runtime_error("cannot read trace file: " + trace_path);
  json j;
  in >> j;
  Scenario s = scenario_from_json(j.at("scenario"));
  std::string method = j.value("method", "crm");
  const json& jt = j.at("trace");
  IterationTrace t;
  t.iterations_used = jt.at("iterations_used").get<int>();
  t.final_point = jt.at("final_point").get<Vec>();
  t.final_dist_a = jt.at("final_dist_a").get<double>();
  t.final_dist_b = jt.at("final_dist_b").get<double>();
  std::string term = jt.at("terminated").get<std::string>();
  t.terminated = term == "Feasible"          ? Terminated::Feasible
                 : term == "MaxIters"        ? Terminated::MaxIters
                                             : Terminated::OperatorUndefined;
  for (const json& js : jt.at("steps")) {
    CrmStep st;
    st.x = js.at("x").get<Vec>();
    st.y = js.at("y").get<Vec>();
    st.z = js.at("z").get<Vec>();
    st.next = js.at("next").get<Vec>();
    st.dist_a = js.at("dist_a").get<double>();
    st.dist_b = js.at("dist_b").get<double>();
    t.steps.push_back(std::move(st));
  }
  std::string out;
  if (style == "plane") {
    if (t.final_point.size() != 2)
      fail(ErrKind::DimensionMismatch, "plane style needs a planar trace");
    out = svg::render_plane(s, t, method);
  } else if (style == "sphere_orthographic") {
    if (t.final_point.size() != 3)
      fail(ErrKind::DimensionMismatch, "sphere_orthographic needs a trace in R3");
    out = svg::render_sphere_orthographic(s, t, method);
  } else {
    throw std::runtime_error("unknown style: " + style);
  }
  std::ofstream o(out_svg, std::ios::binary);
  if (!o) throw std::runtime_error("cannot open for writing: " + out_svg);
  o << out;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"circumcentered reflection methods for convex feasibility"};
  app.require_subcommand(1);

  std::string scenario_ref, method = "crm", out_dir = ".", generator, trace_path,
              style = "plane", out_svg = "trace.svg", sweep_method;
  std::uint64_t seed = 0;
  int max_iters = 0, count = 10;
  double eps_feas = 0.0, eps_degen = 0.0;

  CLI::App* run = app.add_subcommand("run", "run one scenario and write trace files");
  run->add_option("--scenario", scenario_ref, "scenario name or JSON path")->required();
  run->add_option("--method", method, "crm|crm_product|map|dr|srm");
  run->add_option("--max-iters", max_iters, "override iteration cap");
  run->add_option("--eps-feas", eps_feas, "override feasibility tolerance");
  run->add_option("--eps-degen", eps_degen, "override degeneracy tolerance");
  run->add_option("--seed", seed, "seed for generator scenarios");
  run->add_option("--out", out_dir, "output directory");

  CLI::App* sweep = app.add_subcommand("sweep", "run many generated scenarios");
  sweep->add_option("--generator", generator, "scenario generator name")->required();
  sweep->add_option("--count", count, "number of scenarios");
  sweep->add_option("--seed", seed, "base seed");
  sweep->add_option("--method", sweep_method, "override the generator's default method");
  sweep->add_option("--out", out_dir, "output directory");

  CLI::App* plot = app.add_subcommand("plot", "render a trace.json to SVG");
  plot->add_option("--trace", trace_path, "trace.json path")->required();
  plot->add_option("--style", style, "plane|sphere_orthographic");
  plot->add_option("--out", out_svg, "output SVG path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed())
      return cmd_run(scenario_ref, method, out_dir, seed, max_iters, eps_feas, eps_degen);
    if (sweep->parsed()) return cmd_sweep(generator, count, seed, sweep_method, out_dir);
    return cmd_plot(trace_path, style, out_svg);
  } catch (const Error& e) {
    die(err_name(e.kind), e.what());
  } catch (const std::exception& e) {
    die("Runtime", e.what());
  }
}
