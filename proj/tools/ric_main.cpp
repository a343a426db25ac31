// Command-line front end: generates seeded instances, runs the comparison
// harnesses, and emits CSV / JSON / SVG artifacts plus a run manifest.
// Same seed + same config produces byte-identical CSV/JSON; SVG additionally
// carries a timestamp comment unless --no-timestamp is given.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ric/cost.hpp"
#include "ric/extremizer.hpp"
#include "ric/flow.hpp"
#include "ric/grid.hpp"
#include "ric/infconv.hpp"
#include "ric/measure.hpp"
#include "ric/profile.hpp"
#include "ric/random.hpp"
#include "ric/rearrange.hpp"
#include "ric/serialize.hpp"
#include "ric/suites.hpp"
#include "ric/transforms.hpp"
#include "ric/xreal.hpp"

namespace {

constexpr const char* kToolVersion = "0.1.0";
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

using ordered_json = nlohmann::ordered_json;

std::string text(const char* fmt, ...) {
  char buf[320];
  va_list ap;
  va_start(ap, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, ap);
  va_end(ap);
  return buf;
}

struct Common {
  unsigned long long seed = 7;
  std::string out = "ric-out";
  bool fast = false;
  bool no_timestamp = false;
  std::string config_path;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--seed", c.seed, "Deterministic seed")->capture_default_str();
  sub->add_option("--out", c.out, "Output directory")
      ->envname("RIC_OUT_DIR")
      ->capture_default_str();
  sub->add_flag("--fast", c.fast, "Scale batch budgets by 1/8");
  sub->add_flag("--no-timestamp", c.no_timestamp, "Omit the SVG timestamp comment");
  sub->add_option("--config", c.config_path, "key=value config file (command-line flags win)");
}

// Reads a flat key=value config file (blank lines and # comments allowed) and
// appends --key=value for every key not already present on the command line,
// so explicit flags always win.  Later duplicate keys in the file replace
// earlier ones.  Returns false (after printing a message) on a bad file.
bool inject_config_args(std::vector<std::string>& args) {
  std::string file;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a == "--config" && i + 1 < args.size())
      file = args[i + 1];
    else if (a.rfind("--config=", 0) == 0)
      file = a.substr(9);
  }
  if (file.empty()) return true;
  std::ifstream in(file);
  if (!in) {
    std::fprintf(stderr, "cannot read config file %s\n", file.c_str());
    return false;
  }
  auto trim = [](const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  std::vector<std::string> extra;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::size_t eq = t.find('=');
    std::string key = (eq == std::string::npos) ? "" : trim(t.substr(0, eq));
    if (key.empty()) {
      std::fprintf(stderr, "%s:%d: expected key=value\n", file.c_str(), lineno);
      return false;
    }
    std::string flag = "--" + key;
    bool given = false;
    for (const std::string& a : args)
      if (a == flag || a.rfind(flag + "=", 0) == 0) {
        given = true;
        break;
      }
    if (given) continue;
    std::string entry = flag + "=" + trim(t.substr(eq + 1));
    bool replaced = false;
    for (std::string& e : extra)
      if (e.rfind(flag + "=", 0) == 0) {
        e = entry;
        replaced = true;
        break;
      }
    if (!replaced) extra.push_back(entry);
  }
  args.insert(args.end(), extra.begin(), extra.end());
  return true;
}

struct Verdict {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct RunContext {
  std::string command;
  Common c;
  ordered_json config = ordered_json::object();
  std::vector<Verdict> verdicts;
  std::vector<std::string> artifacts;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
  std::string path(const std::string& name) const { return c.out + "/" + name; }
  void emit(const std::string& name, const std::string& content) {
    ric::write_text_file(path(name), content);
    artifacts.push_back(name);
  }
  void verdict(const std::string& name, bool pass, const std::string& detail, double secs = 0.0) {
    verdicts.push_back({name, pass, detail, secs});
  }

  int finish() {
    bool all = !verdicts.empty();
    for (const Verdict& v : verdicts) all = all && v.pass;

    ordered_json m;
    m["command"] = command;
    m["tool_version"] = kToolVersion;
    m["seed"] = c.seed;
    m["config"] = config;
    ordered_json vs = ordered_json::array();
    for (const Verdict& v : verdicts) {
      ordered_json j;
      j["name"] = v.name;
      j["pass"] = v.pass;
      j["detail"] = v.detail;
      j["seconds"] = v.seconds;
      vs.push_back(j);
    }
    m["verdicts"] = vs;
    m["timings"] = ordered_json{{"total_seconds", elapsed()}};
    m["artifacts"] = artifacts;
    m["pass"] = all;
    ric::write_text_file(path("manifest.json"), m.dump(2) + "\n");

    for (const Verdict& v : verdicts)
      std::printf("[%s] %-26s %s\n", v.pass ? "PASS" : "FAIL", v.name.c_str(),
                  v.detail.c_str());
    std::printf("%s: %s (%.2fs), manifest %s\n", command.c_str(), all ? "pass" : "FAIL",
                elapsed(), path("manifest.json").c_str());
    return all ? 0 : 1;
  }
};

template <typename Body>
int execute(const std::string& command, const Common& c, ordered_json config, Body body) {
  RunContext ctx;
  ctx.command = command;
  ctx.c = c;
  ctx.config = std::move(config);
  ctx.config["seed"] = c.seed;
  ctx.config["fast"] = c.fast;
  ctx.config["out"] = c.out;
  std::error_code ec;
  std::filesystem::create_directories(c.out, ec);
  if (ec) {
    std::fprintf(stderr, "cannot create output directory %s: %s\n", c.out.c_str(),
                 ec.message().c_str());
    return 2;
  }
  try {
    body(ctx);
  } catch (const std::exception& e) {
    ctx.verdict("run", false, e.what());
  }
  return ctx.finish();
}

// Shared 1D instance family for the line commands.
struct Instance1D {
  int knots = 6;
  double slope_scale = 1.5;
  double asymmetry = 0.4;
  double translation = 0.5;
};

void add_instance_flags(CLI::App* sub, Instance1D& inst) {
  sub->add_option("--knots", inst.knots, "Supporting lines in the instance")
      ->capture_default_str();
  sub->add_option("--slope-scale", inst.slope_scale, "Slope scale")->capture_default_str();
  sub->add_option("--asymmetry", inst.asymmetry, "Slope asymmetry in [0,1]")
      ->capture_default_str();
  sub->add_option("--translation", inst.translation, "Instance translation")
      ->capture_default_str();
}

ordered_json instance_config(const Instance1D& inst) {
  ordered_json j;
  j["knots"] = inst.knots;
  j["slope-scale"] = inst.slope_scale;
  j["asymmetry"] = inst.asymmetry;
  j["translation"] = inst.translation;
  return j;
}

ric::GridFunction1D make_instance(const Common& c, const Instance1D& inst,
                                  const ric::Axis& axis) {
  ric::RandomConvexSpec spec;
  spec.seed = c.seed;
  spec.knot_count = inst.knots;
  spec.slope_scale = inst.slope_scale;
  spec.asymmetry = inst.asymmetry;
  spec.translation = inst.translation;
  return ric::random_convex_1d(spec, axis);
}

ric::Series grid_series(const std::string& name, const ric::GridFunction1D& g) {
  ric::Series s;
  s.name = name;
  for (int i = 0; i < g.size(); ++i) {
    s.x.push_back(g.x(i));
    s.y.push_back(g[i]);
  }
  return s;
}

// ---- rearrange --------------------------------------------------------------

int run_rearrange(const Common& c, const Instance1D& inst, const std::string& measure,
                  int lambda_count) {
  ordered_json cfg = instance_config(inst);
  cfg["measure"] = measure;
  cfg["lambda-grid"] = lambda_count;
  return execute("rearrange", c, std::move(cfg), [&](RunContext& ctx) {
    ric::Axis axis{-5.0, 5.0, 201};
    ric::GridFunction1D f = make_instance(c, inst, axis);
    ric::MeasureSpec mu = measure == "gaussian" ? ric::MeasureSpec::gaussian1d()
                                                : ric::MeasureSpec::lebesgue(1);
    ric::GridFunction1D fs = ric::increasing_rearrangement(f, mu);
    std::vector<double> lambdas = ric::lambda_span(f, fs, lambda_count);
    std::vector<double> mass_f, mass_r, err;
    std::vector<bool> verd;
    bool all_ok = true;
    for (double lam : lambdas) {
      ric::LevelSetMass a = ric::superlevel_mass(f, lam, mu);
      ric::LevelSetMass b = ric::superlevel_mass(fs, lam, mu);
      bool ok = std::fabs(a.mass - b.mass) <= a.error_bound + b.error_bound;
      mass_f.push_back(a.mass);
      mass_r.push_back(b.mass);
      err.push_back(a.error_bound + b.error_bound);
      verd.push_back(ok);
      all_ok = all_ok && ok;
    }
    ctx.emit("rearrange.csv", ric::to_csv(ric::rearrange_csv(lambdas, mass_f, mass_r, err, verd)));
    ctx.emit("f.json", ric::grid1d_json(f));
    ctx.emit("f_star.json", ric::grid1d_json(fs));
    ctx.emit("rearrange.svg",
             ric::svg_line_plot("Increasing rearrangement", "x", "value",
                                {grid_series("f", f), grid_series("f_*", fs)},
                                !c.no_timestamp));
    ctx.verdict("equimeasurable", all_ok,
                text("%d lambdas against the %s measure", lambda_count, measure.c_str()),
                ctx.elapsed());
  });
}

// ---- infconv ----------------------------------------------------------------

int run_infconv(const Common& c, const Instance1D& inst, const std::string& cost_name, double t,
                double lambda_q, int budget) {
  ordered_json cfg = instance_config(inst);
  cfg["cost"] = cost_name;
  cfg["t"] = t;
  cfg["lambda-q"] = lambda_q;
  cfg["denominator-budget"] = budget;
  return execute("infconv", c, std::move(cfg), [&](RunContext& ctx) {
    ric::Axis axis{-5.0, 5.0, 201};
    ric::GridFunction1D f = make_instance(c, inst, axis);
    ric::CostSpec cost = cost_name == "distance"
                             ? ric::CostSpec::distance(ric::MonotoneMap::identity())
                             : ric::CostSpec::hopf_lax(ric::RadialKernel::quadratic(), t);
    ric::GridFunction1D q = ric::inf_convolution(f, cost, axis);
    double lam = q.min_finite() + lambda_q * (q.max_finite() - q.min_finite());
    ric::DecompositionReport rep = ric::decomposition_check(f, cost, lam, budget);

    ric::CsvTable tb;
    tb.header = {"denominator", "residual"};
    for (std::size_t i = 0; i < rep.denominators.size(); ++i)
      tb.rows.push_back({std::to_string(rep.denominators[i]),
                         std::to_string(rep.residual[i])});
    ctx.emit("infconv.csv", ric::to_csv(tb));
    ctx.emit("q.json", ric::grid1d_json(q));
    ctx.emit("infconv.svg",
             ric::svg_line_plot("Infimum convolution", "x", "value",
                                {grid_series("f", f), grid_series("Qf", q)}, !c.no_timestamp));
    ctx.verdict("union-subset", rep.union_subset_ok,
                text("rational unions stay inside {Qf < %.5g}", lam), ctx.elapsed());
    ctx.verdict("residual-monotone", rep.residual_monotone,
                text("residual %zu -> %zu over denominators %d..%d",
                     rep.residual.empty() ? (std::size_t)0 : rep.residual.front(),
                     rep.residual.empty() ? (std::size_t)0 : rep.residual.back(),
                     rep.denominators.empty() ? 0 : rep.denominators.front(),
                     rep.denominators.empty() ? 0 : rep.denominators.back()));
  });
}

// ---- hj-compare -------------------------------------------------------------

int run_hj_compare(const Common& c, const Instance1D& inst, double t, int lambda_count) {
  ordered_json cfg = instance_config(inst);
  cfg["t"] = t;
  cfg["lambda-grid"] = lambda_count;
  return execute("hj-compare", c, std::move(cfg), [&](RunContext& ctx) {
    ric::Axis axis{-5.0, 5.0, 201};
    ric::GridFunction1D f = make_instance(c, inst, axis);
    ric::CostSpec cost = ric::CostSpec::hopf_lax(ric::RadialKernel::quadratic(), t);
    ric::MeasureSpec mu = ric::MeasureSpec::lebesgue(1);
    ric::GridFunction1D u = ric::hopf_lax(f, ric::RadialKernel::quadratic(), t);
    ric::GridFunction1D v =
        ric::hopf_lax(ric::increasing_rearrangement(f, mu), ric::RadialKernel::quadratic(), t);
    // Compare only below the boundary values of both evolutions; past that
    // cap the box clips the sublevel sets being measured.
    std::vector<double> lambdas = ric::evolution_lambda_window(u, v, lambda_count);
    if (lambdas.empty()) {
      ctx.verdict("hj-compare", false,
                  "lambda window collapsed: instance is monotone across the box "
                  "(vary --seed, --translation, or --asymmetry)",
                  ctx.elapsed());
      return;
    }
    ric::ComparisonReport rep = ric::comparison_theorem_check(f, cost, mu, lambdas);

    ctx.emit("compare.csv", ric::to_csv(ric::comparison_csv(rep)));
    ctx.emit("compare.json", ric::comparison_summary_json(rep));
    ctx.emit("compare.svg",
             ric::svg_line_plot("Evolution vs rearranged evolution", "x", "value",
                                {grid_series("f", f), grid_series("u_t", u),
                                 grid_series("v_t", v)},
                                !c.no_timestamp));
    long bad = 0;
    for (const ric::ComparisonRow& row : rep.rows)
      if (!row.pass) ++bad;
    ctx.verdict("hj-compare", rep.pass,
                text("t=%.3g, %zu lambdas, %ld failing (slack %.4g)", t, rep.rows.size(), bad,
                     rep.delta),
                ctx.elapsed());
  });
}

// ---- legendre / polar / transform-compare ------------------------------------

int run_transforms(const std::string& command, const Common& c, int n, int lambda_count,
                   bool want_legendre, bool want_polar) {
  ordered_json cfg;
  cfg["n"] = n;
  cfg["lambda-grid"] = lambda_count;
  return execute(command, c, std::move(cfg), [&](RunContext& ctx) {
    std::array<ric::Axis, 3> axes{};
    for (int d = 0; d < n; ++d) axes[(std::size_t)d] = ric::Axis{-4.0, 4.0, 129};
    ric::RandomConvexSpec spec;
    spec.seed = c.seed;
    spec.knot_count = 6;
    spec.slope_scale = 0.6;
    ric::GridFunctionND f = ric::random_convex_even_nd(spec, n, axes);
    ric::GridFunctionND fstar = ric::increasing_rearrangement(f, ric::MeasureSpec::lebesgue(n));

    std::vector<ric::Axis> out_leg((std::size_t)n, ric::Axis{-2.0, 2.0, 65});
    std::vector<ric::Axis> out_pol((std::size_t)n, ric::Axis{-0.75, 0.75, 33});
    ric::TransformWindows wins =
        ric::transform_lambda_windows(f, fstar, out_leg, out_pol, lambda_count);

    if (want_legendre) {
      if (wins.legendre.empty()) {
        ctx.verdict("legendre", false, "lambda window collapsed", ctx.elapsed());
      } else {
        ric::TransformReport rep = ric::transform_comparison_check(
            f, ric::TransformKind::Legendre, nullptr, out_leg, wins.legendre);
        ctx.emit("legendre.csv", ric::to_csv(ric::transform_csv(rep)));
        ctx.emit("legendre.json", ric::transform_summary_json(rep));
        ctx.verdict("legendre", rep.pass,
                    text("%zu lambdas in [%.4g, %.4g]", rep.rows.size(), wins.legendre.front(),
                         wins.legendre.back()),
                    ctx.elapsed());
      }
    }
    if (want_polar) {
      if (wins.polar.empty()) {
        ctx.verdict("polar", false, "lambda window collapsed", ctx.elapsed());
      } else {
        ric::TransformReport rep = ric::transform_comparison_check(
            f, ric::TransformKind::Polar, nullptr, out_pol, wins.polar);
        ctx.emit("polar.csv", ric::to_csv(ric::transform_csv(rep)));
        ctx.emit("polar.json", ric::transform_summary_json(rep));
        ctx.verdict("polar", rep.pass,
                    text("%zu lambdas in [%.4g, %.4g]", rep.rows.size(), wins.polar.front(),
                         wins.polar.back()),
                    ctx.elapsed());
        double lam = 0.5 * wins.polar.back();
        ric::ScalingIdentityReport id = ric::polar_legendre_identity_check(f, out_pol, lam);
        ctx.verdict("scaling-identity", id.pass,
                    text("lambda=%.4g, %zu mismatched cells", lam, id.mismatched_cells));
      }
    }
  });
}

// ---- santalo-flow -----------------------------------------------------------

int run_santalo_flow(const Common& c, const std::string& profile, int n, bool residuals) {
  ordered_json cfg;
  cfg["profile"] = profile;
  cfg["n"] = n;
  cfg["residuals"] = residuals;
  return execute("santalo-flow", c, std::move(cfg), [&](RunContext& ctx) {
    ric::PLProfile psi;
    if (profile == "gaussian") {
      psi = ric::gaussian_profile(12.0, 16384);
    } else {
      ric::RandomConvexSpec spec;
      spec.seed = c.seed;
      spec.knot_count = 5;
      spec.slope_scale = 2.0;
      psi = ric::random_profile(spec);
    }
    std::vector<double> t_grid = {0.0, 0.1, 0.25, 0.5, 1.0, 2.0, 5.0};
    ric::FlowTrace trace =
        ric::flow_trace(psi, n, t_grid, ric::TransformKind::Legendre, residuals);

    ctx.emit("flow.csv", ric::to_csv(ric::flow_csv(trace)));
    ctx.emit("flow.json", ric::flow_summary_json(trace));
    ric::Series alpha{"alpha(t)", {}, {}}, mass{"mass(t)", {}, {}}, prod{"product(t)", {}, {}};
    for (const ric::FlowState& st : trace.states) {
      alpha.x.push_back(st.t);
      alpha.y.push_back(st.alpha);
      mass.x.push_back(st.t);
      mass.y.push_back(st.mass);
      prod.x.push_back(st.t);
      prod.y.push_back(st.product);
    }
    ctx.emit("flow.svg", ric::svg_line_plot("Evolution trace", "t", "value",
                                            {alpha, mass, prod}, !c.no_timestamp));

    ctx.verdict("mass-conserved", trace.mass_ok,
                text("relative drift %.3g (tol %.0e)", trace.mass_rel_drift, ric::kFlowMassTol),
                ctx.elapsed());
    ctx.verdict("alpha-monotone", trace.alpha_ok,
                text("min alpha step %.3g (tol %.0e)", trace.alpha_min_step,
                     ric::kFlowAlphaTol));
    bool convex_all = true;
    for (const ric::FlowState& st : trace.states) convex_all = convex_all && st.convex_ok;
    ctx.verdict("convexity", convex_all, "evolved profiles stay convex");
    double bound = std::pow(kTwoPi, n);
    bool product_ok = true;
    double worst = -ric::kInf;
    for (const ric::FlowState& st : trace.states) {
      worst = std::max(worst, st.product - bound);
      if (st.product > bound + 1e-5) product_ok = false;
    }
    ctx.verdict("product-bound", product_ok,
                text("max product excess over (2pi)^%d: %.3g", n, worst));

    if (profile == "gaussian") {
      double dev = 0.0;
      for (double t : t_grid) {
        if (t == 0.0) continue;
        ric::BesselEvaluator ev(psi, n, t, {});
        double s = 1.0 + 2.0 * t;
        for (int i = 0; i <= 80; ++i) {
          double r = 0.05 * i;
          double want = r * r / (2.0 * s) + 0.5 * n * std::log(s);
          dev = std::max(dev, std::fabs(ev.value(r) - want));
        }
      }
      ctx.verdict("closed-form", dev <= 1e-6, text("max deviation %.3g (tol 1e-6)", dev));
    }
    if (residuals) {
      double worst_res = 0.0;
      for (double r : trace.residuals) worst_res = std::max(worst_res, r);
      ctx.verdict("stationary-residual", worst_res < 1e-4,
                  text("max residual %.3g (tol 1e-4)", worst_res));
    }
  });
}

// ---- extremize ----------------------------------------------------------------

int run_extremize(const Common& c, int n, const std::string& transform, int budget, int restarts,
                  int knots, double r_max) {
  ordered_json cfg;
  cfg["n"] = n;
  cfg["transform"] = transform;
  cfg["budget"] = budget;
  cfg["restarts"] = restarts;
  cfg["knots"] = knots;
  cfg["r-max"] = r_max;
  return execute("extremize", c, std::move(cfg), [&](RunContext& ctx) {
    ric::SearchConfig scfg;
    scfg.n = n;
    scfg.transform = ric::transform_kind_from_name(transform);
    scfg.budget = c.fast ? budget / 8 : budget;
    scfg.restarts = c.fast ? std::max(2, restarts / 8) : restarts;
    scfg.knots = knots;
    scfg.r_max = r_max;
    scfg.seed = c.seed;
    ric::SearchResult res = ric::search_extremizer(scfg);

    ctx.emit("search.json", ric::search_result_json(res));

    // Rescale the normalized best profile to the quadratic's own scale and
    // plot it against r^2/2.
    ric::PLProfile qp;
    qp.r.resize((std::size_t)knots + 1);
    qp.v.resize((std::size_t)knots + 1);
    for (int j = 0; j <= knots; ++j) {
      double rr = r_max * j / knots;
      qp.r[(std::size_t)j] = rr;
      qp.v[(std::size_t)j] = 0.5 * rr * rr;
    }
    qp.tail_slope = r_max;
    double lam_star = std::pow(ric::moment_integral(qp, n), 1.0 / n);
    ric::PLProfile cand = ric::scale_arg(res.best, 1.0 / lam_star);
    ric::Series found{"found", {}, {}}, quad{"r^2/2", {}, {}};
    for (int i = 0; i <= 120; ++i) {
      double r = 3.0 * i / 120.0;
      found.x.push_back(r);
      found.y.push_back(cand.eval(r));
      quad.x.push_back(r);
      quad.y.push_back(0.5 * r * r);
    }
    ctx.emit("search.svg", ric::svg_line_plot("Extremizer search", "r", "profile",
                                              {found, quad}, !c.no_timestamp));

    bool monotone = true;
    for (std::size_t i = 1; i < res.history.size(); ++i)
      if (res.history[i] < res.history[i - 1] - 1e-12 * (1.0 + std::fabs(res.history[i - 1])))
        monotone = false;
    ctx.verdict("history-monotone", monotone,
                text("%zu improvements over %ld evaluations", res.history.size(),
                     res.evaluations),
                ctx.elapsed());
    if (scfg.transform == ric::TransformKind::Legendre && n <= 2) {
      double bound = std::pow(kTwoPi, n);
      double frac = n == 1 ? 0.99 : 0.98;
      ctx.verdict("value-threshold", res.best_value >= frac * bound,
                  text("reached %.8g of %.8g (need %.0f%%)", res.best_value, bound,
                       100.0 * frac));
    } else if (scfg.transform == ric::TransformKind::Polar) {
      double baseline = ric::product_functional(qp, n, ric::TransformKind::Polar);
      ctx.verdict("quadratic-baseline", res.best_value >= baseline - 1e-9,
                  text("value %.8g vs quadratic profile %.8g", res.best_value, baseline));
    } else {
      ctx.verdict("value-reported", true, text("value %.8g", res.best_value));
    }
  });
}

// ---- verify-all ---------------------------------------------------------------

int run_verify_all(const Common& c) {
  ordered_json cfg;
  return execute("verify-all", c, std::move(cfg), [&](RunContext& ctx) {
    ric::SuiteBudget b;
    b.seed = c.seed;
    if (c.fast) {
      b.scale_num = 1;
      b.scale_den = 8;
    }
    std::vector<ric::SuiteResult> results = ric::run_all_suites(b);
    ric::CsvTable tb;
    tb.header = {"suite", "instances", "failures", "worst", "verdict"};
    for (const ric::SuiteResult& r : results) {
      tb.rows.push_back({r.name, std::to_string(r.instances), std::to_string(r.failures),
                         ric::format_double(r.worst), r.pass ? "pass" : "fail"});
      ctx.verdict(r.name, r.pass, r.detail, r.seconds);
    }
    ctx.emit("verify.csv", ric::to_csv(tb));
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rearrangement and infimum-convolution comparison toolkit"};
  app.require_subcommand(1);

  // rearrange
  Common c_re;
  Instance1D i_re;
  std::string re_measure = "lebesgue";
  int re_lambdas = 64;
  CLI::App* s_re = app.add_subcommand("rearrange", "Rearrange a random instance, check masses");
  add_common(s_re, c_re);
  add_instance_flags(s_re, i_re);
  s_re->add_option("--measure", re_measure, "lebesgue|gaussian")
      ->check(CLI::IsMember({"lebesgue", "gaussian"}))
      ->capture_default_str();
  s_re->add_option("--lambda-grid", re_lambdas, "Lambda count")->capture_default_str();

  // infconv
  Common c_ic;
  Instance1D i_ic;
  std::string ic_cost = "distance";
  double ic_t = 1.0, ic_q = 0.5;
  int ic_budget = 32;
  CLI::App* s_ic = app.add_subcommand("infconv", "Infimum convolution and its decomposition");
  add_common(s_ic, c_ic);
  add_instance_flags(s_ic, i_ic);
  s_ic->add_option("--cost", ic_cost, "distance|hopflax")
      ->check(CLI::IsMember({"distance", "hopflax"}))
      ->capture_default_str();
  s_ic->add_option("--t", ic_t, "Hopf-Lax time")->capture_default_str();
  s_ic->add_option("--lambda-q", ic_q, "Level quantile in (0,1)")->capture_default_str();
  s_ic->add_option("--denominator-budget", ic_budget, "Max denominator")->capture_default_str();

  // hj-compare
  Common c_hj;
  Instance1D i_hj;
  double hj_t = 0.5;
  int hj_lambdas = 64;
  CLI::App* s_hj = app.add_subcommand("hj-compare", "Evolution vs rearranged evolution");
  add_common(s_hj, c_hj);
  add_instance_flags(s_hj, i_hj);
  s_hj->add_option("--t", hj_t, "Evolution time")->capture_default_str();
  s_hj->add_option("--lambda-grid", hj_lambdas, "Lambda count")->capture_default_str();

  // legendre / polar / transform-compare
  Common c_lg, c_po, c_tc;
  int lg_n = 2, po_n = 2, tc_n = 2;
  int lg_lambdas = 64, po_lambdas = 64, tc_lambdas = 64;
  CLI::App* s_lg = app.add_subcommand("legendre", "Legendre sublevel comparison");
  add_common(s_lg, c_lg);
  s_lg->add_option("--n", lg_n, "Dimension (1 or 2)")->check(CLI::Range(1, 2))
      ->capture_default_str();
  s_lg->add_option("--lambda-grid", lg_lambdas, "Lambda count")->capture_default_str();
  CLI::App* s_po = app.add_subcommand("polar", "Polar sublevel comparison");
  add_common(s_po, c_po);
  s_po->add_option("--n", po_n, "Dimension (1 or 2)")->check(CLI::Range(1, 2))
      ->capture_default_str();
  s_po->add_option("--lambda-grid", po_lambdas, "Lambda count")->capture_default_str();
  CLI::App* s_tc = app.add_subcommand("transform-compare", "Both transform comparisons");
  add_common(s_tc, c_tc);
  s_tc->add_option("--n", tc_n, "Dimension (1 or 2)")->check(CLI::Range(1, 2))
      ->capture_default_str();
  s_tc->add_option("--lambda-grid", tc_lambdas, "Lambda count")->capture_default_str();

  // santalo-flow
  Common c_fl;
  std::string fl_profile = "gaussian";
  int fl_n = 1;
  bool fl_res = false;
  CLI::App* s_fl = app.add_subcommand("santalo-flow", "Evolve a profile, trace the product");
  add_common(s_fl, c_fl);
  s_fl->add_option("--profile", fl_profile, "gaussian|random")
      ->check(CLI::IsMember({"gaussian", "random"}))
      ->capture_default_str();
  s_fl->add_option("--n", fl_n, "Dimension (1..3)")->check(CLI::Range(1, 3))
      ->capture_default_str();
  s_fl->add_flag("--residuals", fl_res, "Also compute stationary-point residuals");

  // extremize
  Common c_ex;
  int ex_n = 1, ex_budget = 5000, ex_restarts = 8, ex_knots = 48;
  double ex_rmax = 6.0;
  std::string ex_transform = "legendre";
  CLI::App* s_ex = app.add_subcommand("extremize", "Search for the product maximizer");
  add_common(s_ex, c_ex);
  s_ex->add_option("--n", ex_n, "Dimension (1..3)")->check(CLI::Range(1, 3))
      ->capture_default_str();
  s_ex->add_option("--transform", ex_transform, "legendre|polar")
      ->check(CLI::IsMember({"legendre", "polar"}))
      ->capture_default_str();
  s_ex->add_option("--budget", ex_budget, "Objective evaluations per restart")
      ->capture_default_str();
  s_ex->add_option("--restarts", ex_restarts, "Restart count")->capture_default_str();
  s_ex->add_option("--knots", ex_knots, "Profile knots")->capture_default_str();
  s_ex->add_option("--r-max", ex_rmax, "Profile extent")->capture_default_str();

  // verify-all
  Common c_va;
  CLI::App* s_va = app.add_subcommand("verify-all", "Run every batch suite");
  add_common(s_va, c_va);

  std::vector<std::string> args(argv + 1, argv + argc);
  if (!inject_config_args(args)) return 2;
  std::reverse(args.begin(), args.end());  // CLI11's vector overload wants reversed args
  try {
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  if (s_re->parsed()) return run_rearrange(c_re, i_re, re_measure, re_lambdas);
  if (s_ic->parsed()) return run_infconv(c_ic, i_ic, ic_cost, ic_t, ic_q, ic_budget);
  if (s_hj->parsed()) return run_hj_compare(c_hj, i_hj, hj_t, hj_lambdas);
  if (s_lg->parsed()) return run_transforms("legendre", c_lg, lg_n, lg_lambdas, true, false);
  if (s_po->parsed()) return run_transforms("polar", c_po, po_n, po_lambdas, false, true);
  if (s_tc->parsed()) return run_transforms("transform-compare", c_tc, tc_n, tc_lambdas, true, true);
  if (s_fl->parsed()) return run_santalo_flow(c_fl, fl_profile, fl_n, fl_res);
  if (s_ex->parsed())
    return run_extremize(c_ex, ex_n, ex_transform, ex_budget, ex_restarts, ex_knots, ex_rmax);
  if (s_va->parsed()) return run_verify_all(c_va);
  return 2;
}
