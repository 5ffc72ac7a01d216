#pragma once

#include "chreach/baselines/discrete.hpp"
#include "chreach/baselines/monte_carlo.hpp"
#include "chreach/baselines/randup.hpp"
#include "chreach/baselines/tube.hpp"
#include "chreach/cli/config.hpp"
#include "chreach/io/emit.hpp"
#include "chreach/io/manifest.hpp"
#include "chreach/mpc/closed_loop.hpp"
#include "chreach/reach/error_bounds.hpp"
#include "chreach/relax/eps_extension.hpp"
#include "chreach/relax/rect.hpp"
#include "chreach/systems/benchmarks.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

namespace chreach::cli {

namespace fs = std::filesystem;

struct RunOptions {
  std::string out_dir;  // overrides the config when nonempty
  int threads = 0;      // overrides CHREACH_THREADS when > 0
  int seeds = 0;        // run count override for seeded experiments
};

namespace detail {

inline SystemDef parse_system(const json& j, const fs::path& config_dir,
                              double horizon_tf) {
  const std::string type = j.at("type");
  if (type == "attraction-repulsion") {
    Vec xa(2), xr(2);
    xa << 1.0, 0.0;
    xr << -1.0, 0.0;
    if (j.contains("x_attract")) xa = to_vec(j.at("x_attract"));
    if (j.contains("x_repel")) xr = to_vec(j.at("x_repel"));
    return make_attraction_repulsion(xa, xr, j.value("cutoff", 0.2));
  }
  if (type == "single-integrator") {
    const int n = j.at("n");
    SystemDef sys;
    sys.n = n;
    sys.m = n;
    sys.label = "single-integrator";
    sys.f = [n](double, const Vec&) { return Vec(Vec::Zero(n)); };
    sys.g = [n](double, const Vec&) { return Mat(Mat::Identity(n, n)); };
    sys.jac_f = [n](double, const Vec&) { return Mat(Mat::Zero(n, n)); };
    sys.jac_g_times = [n](double, const Vec&, const Vec&) {
      return Mat(Mat::Zero(n, n));
    };
    return sys;
  }
  if (type == "dubins") {
    const Mat G = j.contains("G") ? to_mat(j.at("G")) : Mat(Mat::Identity(3, 3));
    return make_dubins(j.value("speed", 0.5), j.value("turn_rate", 0.5), G);
  }
  if (type == "neural-loop") {
    fs::path policy_path = j.at("policy_file").get<std::string>();
    if (policy_path.is_relative()) policy_path = config_dir / policy_path;
    auto policy = std::make_shared<MlpPolicy>(MlpPolicy::load(policy_path.string()));
    return make_neural_loop(to_mat(j.at("A")), to_mat(j.at("B")), policy);
  }
  // spacecraft-omega
  Vec jd(3);
  jd << 5.0, 2.0, 1.0;
  if (j.contains("J")) jd = to_vec(j.at("J"));
  Vec kd = -jd;
  if (j.contains("K")) kd = to_vec(j.at("K"));
  Vec ubar = Vec::Zero(3);
  if (j.contains("ubar")) ubar = to_vec(j.at("ubar"));
  return make_spacecraft_omega(jd, Mat(kd.asDiagonal()),
                               PiecewiseControl::constant(ubar, 0.0, horizon_tf));
}

inline std::string hash_config_and_inputs(const json& cfg,
                                          const fs::path& config_dir) {
  std::string bytes = cfg.dump();
  if (cfg.contains("system") && cfg.at("system").is_object() &&
      cfg.at("system").contains("policy_file")) {
    fs::path p = cfg.at("system").at("policy_file").get<std::string>();
    if (p.is_relative()) p = config_dir / p;
    std::ifstream in(p, std::ios::binary);
    if (in) {
      std::stringstream ss;
      ss << in.rdbuf();
      bytes += ss.str();
    }
  }
  return content_hash(bytes);
}

struct Context {
  json cfg;
  fs::path config_dir;
  fs::path out;
  int threads = 0;
  std::uint64_t seed = 0;
  RunManifest manifest;
};

inline int run_reach_like(Context& ctx, bool validate_mode) {
  const json& cfg = ctx.cfg;
  const TimeGrid grid = parse_grid(cfg.at("grid"));
  const SystemDef sys = parse_system(cfg.at("system"), ctx.config_dir, grid.tf);
  const auto W = parse_set(cfg.at("disturbance_set"));
  const auto X0 = parse_initial_set(cfg.at("initial_set"));
  const auto dirs = parse_directions(cfg.at("directions"), sys.n, ctx.seed);

  ctx.manifest.start_phase("hulls");
  auto est = estimate_hulls(sys, W, X0, dirs, grid, ctx.threads);
  est.scheme = cfg.at("directions").at("scheme");
  est.seed = ctx.seed;
  ctx.manifest.end_phase();

  ctx.manifest.start_phase("error_bounds");
  const int probes = cfg.value("lipschitz_probes", 1000);
  const auto lip = lipschitz_estimates(sys, W, X0, grid, probes,
                                       Rng::derive(ctx.seed, 101), ctx.threads);
  const double delta = covering_radius(dirs, 100000, Rng::derive(ctx.seed, 102));
  const auto bounds = error_bounds(lip, delta);
  for (int k = 0; k < grid.nodes(); ++k) {
    est.eps[k] = std::min(bounds.eps_naive[k], bounds.eps_quad[k]);
  }
  ctx.manifest.end_phase();

  ctx.manifest.start_phase("emit");
  emit_hull_csvs(est, ctx.out / "hulls");
  json metrics = hull_metrics_json(est, bounds.eps_naive, bounds.eps_quad);
  metrics["covering_radius"] = delta;
  metrics["covering_probes"] = 100000;
  metrics["lipschitz_probes"] = probes;
  ctx.manifest.end_phase();

  int exit_code = 0;
  if (validate_mode) {
    ctx.manifest.start_phase("mc_validation");
    const int count = cfg.value("mc_rollouts", 1000);
    const double slack = cfg.value("slack", 3e-3);
    const auto rollouts = monte_carlo_rollouts(sys, W, X0, count,
                                               Rng::derive(ctx.seed, 103), grid,
                                               ctx.threads);
    std::vector<int> viol_per(rollouts.size(), 0);
    std::vector<double> worst_per(rollouts.size(), 0.0);
    parallel_for(
        int(rollouts.size()),
        [&](int r) {
          for (int k = 0; k < grid.nodes(); ++k) {
            const double excess =
                distance_to_hull(rollouts[r][k], est.hulls[k], 1e-6) -
                (bounds.eps_quad[k] + slack);
            worst_per[r] = std::max(worst_per[r], excess);
            if (excess > 0.0) ++viol_per[r];
          }
        },
        ctx.threads);
    int violations = 0;
    double worst = 0.0;
    for (std::size_t r = 0; r < rollouts.size(); ++r) {
      violations += viol_per[r];
      worst = std::max(worst, worst_per[r]);
    }
    metrics["mc_rollouts"] = count;
    metrics["containment_violations"] = violations;
    metrics["worst_excess"] = worst;
    ctx.manifest.end_phase();
    if (violations > 0) {
      std::cerr << "validate: " << violations
                << " containment violations (worst excess " << worst << ")\n";
      exit_code = 1;
    }
  }
  emit_json(metrics, ctx.out / "metrics.json");
  return exit_code;
}

inline int run_dubins_rect(Context& ctx) {
  const json& cfg = ctx.cfg;
  const TimeGrid grid = parse_grid(cfg.at("grid"));
  const SystemDef sys = make_dubins(cfg.value("speed", 0.5),
                                    cfg.value("turn_rate", 0.5),
                                    Mat::Identity(3, 3));
  const RectSpec spec{to_vec(cfg.at("delta_w")), to_vec(cfg.at("x0bar")),
                      to_vec(cfg.at("delta_x0"))};
  const auto dirs = parse_directions(cfg.at("directions"), 3, ctx.seed);

  json metrics;
  int exit_code = 0;
  double prev_gap = std::numeric_limits<double>::infinity();
  for (const double lambda : cfg.at("lambdas").get<std::vector<double>>()) {
    ctx.manifest.start_phase("lambda_" + std::to_string(lambda));
    const auto under = estimate_hulls_rect(sys, spec, lambda,
                                           sets::BoxSide::Under, dirs, grid,
                                           ctx.threads);
    const auto over = estimate_hulls_rect(sys, spec, lambda,
                                          sets::BoxSide::Over, dirs, grid,
                                          ctx.threads);
    const std::string tag = "lambda_" + format_double(lambda);
    emit_hull_csvs(under, ctx.out / tag / "under");
    emit_hull_csvs(over, ctx.out / tag / "over");
    int sandwich_violations = 0;
    for (int k = 0; k < grid.nodes(); ++k) {
      for (const auto& v : under.hulls[k].points) {
        if (distance_to_hull(v, over.hulls[k]) > 1e-9) ++sandwich_violations;
      }
    }
    const double gap = hausdorff(under.hulls.back(), over.hulls.back());
    metrics["lambdas"].push_back(lambda);
    metrics["hausdorff"].push_back(gap);
    metrics["sandwich_violations"].push_back(sandwich_violations);
    metrics["gap_decreasing"].push_back(gap < prev_gap);
    if (sandwich_violations > 0) exit_code = 1;
    prev_gap = gap;
    ctx.manifest.end_phase();
  }
  emit_json(metrics, ctx.out / "metrics.json");
  return exit_code;
}

inline int run_dubins_lift(Context& ctx) {
  const json& cfg = ctx.cfg;
  const TimeGrid grid = parse_grid(cfg.at("grid"));
  Mat G(3, 2);
  G << 1, 0, 0, 0, 0, 1;
  if (cfg.contains("G")) G = to_mat(cfg.at("G"));
  const SystemDef base = make_dubins(cfg.value("speed", 0.5),
                                     cfg.value("turn_rate", 0.5), G);
  const double w_radius = cfg.value("w_radius", 1e-2);
  const auto W_base = SmoothConvexSet::ball(Vec::Zero(2), w_radius);
  const auto liftedW = lift_set(W_base, 3);
  Vec g3(3);
  g3 << 0.0, 1.0, 0.0;
  if (cfg.contains("g_extra")) g3 = to_vec(cfg.at("g_extra"));
  const auto X0 = parse_initial_set(cfg.at("initial_set"));
  const auto dirs = parse_directions(cfg.at("directions"), 3, ctx.seed);

  ctx.manifest.start_phase("mc_rollouts");
  const int count = cfg.value("mc_rollouts", 1000);
  const auto rollouts = monte_carlo_rollouts(base, W_base, X0, count,
                                             Rng::derive(ctx.seed, 7), grid,
                                             ctx.threads);
  ctx.manifest.end_phase();

  json metrics;
  int exit_code = 0;
  HullEstimate prev;
  bool have_prev = false;
  for (const double eps : cfg.at("epsilons").get<std::vector<double>>()) {
    ctx.manifest.start_phase("epsilon_" + format_double(eps));
    EpsExtensionSpec spec{base,
                          {[g3](double, const Vec&) { return g3; }},
                          eps,
                          liftedW};
    const auto hulls =
        estimate_hulls_fullrank_relax(spec, X0, dirs, grid, ctx.threads);
    emit_hull_csvs(hulls, ctx.out / ("epsilon_" + format_double(eps)));
    std::vector<int> viol_per(rollouts.size(), 0);
    parallel_for(
        int(rollouts.size()),
        [&](int r) {
          for (int k = 0; k < grid.nodes(); ++k) {
            if (distance_to_hull(rollouts[r][k], hulls.hulls[k], 1e-6) > 3e-3) {
              ++viol_per[r];
            }
          }
        },
        ctx.threads);
    int violations = 0;
    for (const int v : viol_per) violations += v;
    metrics["epsilons"].push_back(eps);
    metrics["containment_violations"].push_back(violations);
    if (violations > 0) exit_code = 1;
    if (have_prev) {
      metrics["hausdorff"].push_back(
          hausdorff(prev.hulls.back(), hulls.hulls.back()));
    }
    prev = hulls;
    have_prev = true;
    ctx.manifest.end_phase();
  }
  emit_json(metrics, ctx.out / "metrics.json");
  return exit_code;
}

inline int run_nn_loop(Context& ctx) {
  const json& cfg = ctx.cfg;
  const TimeGrid grid = parse_grid(cfg.at("grid"));
  const SystemDef sys = parse_system(cfg.at("system"), ctx.config_dir, grid.tf);
  const auto W = parse_set(cfg.at("disturbance_set"));
  const auto X0 = parse_initial_set(cfg.at("initial_set"));
  const int M = cfg.value("M", 100);
  const int M_truth = cfg.value("M_truth", 4096);
  const int randup_samples = cfg.value("randup_samples", M);

  ctx.manifest.start_phase("hulls");
  const auto alg = estimate_hulls(
      sys, W, X0, sample_sphere(2, M, SphereScheme::UniformAngle), grid,
      ctx.threads);
  const auto truth = estimate_hulls(
      sys, W, X0, sample_sphere(2, M_truth, SphereScheme::UniformAngle), grid,
      ctx.threads);
  ctx.manifest.end_phase();

  ctx.manifest.start_phase("randup");
  const auto dsys = discretize(sys, grid.t0, grid.h(), grid.steps, 1);
  const auto rand_est = randup_hulls(dsys, W, X0, randup_samples,
                                     Rng::derive(ctx.seed, 5));
  ctx.manifest.end_phase();

  ctx.manifest.start_phase("emit");
  emit_hull_csvs(alg, ctx.out / "alg1");
  emit_hull_csvs(rand_est, ctx.out / "randup");
  emit_hull_csvs(truth, ctx.out / "truth");
  json metrics;
  const double err_alg = hausdorff(alg.hulls.back(), truth.hulls.back());
  const double err_rand = hausdorff(rand_est.hulls.back(), truth.hulls.back());
  metrics["hausdorff"] = {{"alg1_vs_truth", err_alg},
                          {"randup_vs_truth", err_rand}};
  metrics["M"] = M;
  metrics["M_truth"] = M_truth;
  metrics["randup_samples"] = randup_samples;
  emit_json(metrics, ctx.out / "metrics.json");
  ctx.manifest.end_phase();
  return 0;
}

inline int run_compare(Context& ctx) {
  const json& cfg = ctx.cfg;
  const int steps = cfg.value("steps", 10);
  const double dt = cfg.value("dt", 1.0);
  const int substeps = cfg.value("substeps", 5);
  const double w_radius = cfg.value("w_radius", 1e-2);
  Vec omega0(3);
  omega0 << 0.05, -0.02, 0.03;
  if (cfg.contains("omega0")) omega0 = to_vec(cfg.at("omega0"));
  const int M = cfg.value("M", 100);
  const int M_truth = cfg.value("M_truth", 1024);
  const int randup_samples = cfg.value("randup_samples", M);

  Vec jd(3);
  jd << 5.0, 2.0, 1.0;
  const SystemDef sys = make_spacecraft_omega(
      jd, Mat(Vec(-jd).asDiagonal()),
      PiecewiseControl::constant(Vec::Zero(3), 0.0, dt * steps));
  const auto W = SmoothConvexSet::ball(Vec::Zero(3), w_radius);
  const auto X0 = InitialSetSpec::singleton(omega0);
  const TimeGrid grid(0.0, dt * steps, steps * substeps);

  ctx.manifest.start_phase("hulls");
  const auto alg = estimate_hulls(
      sys, W, X0, sample_sphere(3, M, SphereScheme::Fibonacci), grid,
      ctx.threads);
  const auto truth = estimate_hulls(
      sys, W, X0, sample_sphere(3, M_truth, SphereScheme::Fibonacci), grid,
      ctx.threads);
  ctx.manifest.end_phase();

  ctx.manifest.start_phase("baselines");
  const auto dsys = discretize(sys, 0.0, dt, steps, substeps);
  const auto rand_est =
      randup_hulls(dsys, W, X0, randup_samples, Rng::derive(ctx.seed, 5));
  std::vector<Vec> nominal = {omega0};
  for (int k = 0; k < steps; ++k) {
    nominal.push_back(dsys.step_nominal(k, nominal.back()));
  }
  const double hbar = estimate_step_hessian_bound(dsys, nominal, 0.05, 1000,
                                                  Rng::derive(ctx.seed, 6));
  const auto tube = lipschitz_tube(dsys, omega0, w_radius, hbar);
  int tube_violations = 0;
  for (int s = 0; s < 1000; ++s) {
    Rng rng(Rng::derive(ctx.seed, 1000 + s));
    Vec x = omega0;
    for (int k = 0; k < steps; ++k) {
      x = dsys.step_nominal(k, x) + W.sample_uniform(rng);
      if (!tube_contains(tube, k + 1, x)) ++tube_violations;
    }
  }
  // Boundary cloud of the final tube ellipsoid for Hausdorff comparison.
  const auto tube_set = SmoothConvexSet::ellipsoid(tube.centers.back(),
                                                   tube.shapes.back());
  std::vector<Vec> tube_cloud;
  for (const auto& d : sample_sphere(3, 512, SphereScheme::Fibonacci)) {
    tube_cloud.push_back(tube_set.inverse_gauss_map(d));
  }
  ctx.manifest.end_phase();

  ctx.manifest.start_phase("emit");
  const auto& truth_T = truth.hulls.back();
  const double err_alg = hausdorff(alg.hulls.back(), truth_T);
  const double err_rand = hausdorff(rand_est.hulls.back(), truth_T);
  const double err_tube = hausdorff(HullVertices{tube_cloud, false}, truth_T);
  json metrics;
  metrics["hausdorff"] = {{"alg1_vs_truth", err_alg},
                          {"randup_vs_truth", err_rand},
                          {"lipschitz_tube_vs_truth", err_tube}};
  metrics["tube_soundness_violations"] = tube_violations;
  metrics["ordering_alg1_best"] = err_alg < err_rand && err_alg < err_tube;
  emit_hull_csvs(alg, ctx.out / "alg1");
  emit_hull_csvs(rand_est, ctx.out / "randup");
  emit_hull_csvs(truth, ctx.out / "truth");
  emit_json(metrics, ctx.out / "metrics.json");
  ctx.manifest.end_phase();
  return tube_violations > 0 ? 1 : 0;
}

inline int run_spacecraft_mpc(Context& ctx, int seeds_override) {
  const json& cfg = ctx.cfg;
  const int M = cfg.value("M", 50);
  const int mpc_steps = cfg.value("mpc_steps", 15);
  const int runs = seeds_override > 0 ? seeds_override : cfg.value("runs", 20);
  OcpSpec spec = make_spacecraft_ocp(M);
  spec.substeps = cfg.value("substeps", 5);

  int lip_probes = 300, ubar_probes = 10;
  if (cfg.contains("tightening")) {
    lip_probes = cfg.at("tightening").value("lipschitz_probes", 300);
    ubar_probes = cfg.at("tightening").value("ubar_probes", 10);
  }
  ScpConfig cold, warm;
  cold.max_iterations = 8;
  warm.max_iterations = 2;
  if (cfg.contains("scp")) {
    cold.max_iterations = cfg.at("scp").value("cold_iterations", 8);
    warm.max_iterations = cfg.at("scp").value("warm_iterations", 2);
    cold.trust_radius = warm.trust_radius =
        cfg.at("scp").value("trust_radius", 0.05);
    cold.tol = warm.tol = cfg.at("scp").value("tol", 1e-4);
  }

  ctx.manifest.start_phase("tightening");
  Vec x_probe = Vec::Zero(7);
  x_probe[0] = 1.0;
  const auto tightening = compute_tightenings(spec, x_probe, lip_probes,
                                              ubar_probes,
                                              Rng::derive(ctx.seed, 11),
                                              ctx.threads);
  spec.eps = tightening.eps;
  spec.validate();
  ctx.manifest.end_phase();

  json metrics;
  metrics["tightening"] = {{"eps", tightening.eps},
                           {"eps_naive", tightening.eps_naive},
                           {"eps_quad", tightening.eps_quad},
                           {"covering_radius", tightening.delta},
                           {"L_drift", tightening.max_L_drift}};
  int total_violations = 0;
  ctx.manifest.start_phase("closed_loop");
  for (int r = 0; r < runs; ++r) {
    Rng rng(Rng::derive(ctx.seed, 200 + r));
    // Random feasible start: axis-angle tilt up to 60 deg, small rates.
    Vec axis = rng.normal_vec(3);
    while (axis.norm() < 1e-9) axis = rng.normal_vec(3);
    axis.normalize();
    const double angle = rng.uniform(0.0, M_PI / 3.0);
    Vec x0 = Vec::Zero(7);
    x0[0] = std::cos(0.5 * angle);
    x0.segment<3>(1) = std::sin(0.5 * angle) * axis;
    for (int i = 0; i < 3; ++i) x0[4 + i] = rng.uniform(-0.05, 0.05);

    const auto trace = mpc_closed_loop(spec, x0, mpc_steps,
                                       Rng::derive(ctx.seed, 300 + r), cold,
                                       warm, ctx.threads);
    total_violations += trace.omega_violations + trace.control_violations;

    std::string csv = "t,q0,q1,q2,q3,w1,w2,w3\n";
    const double h = spec.dt / spec.substeps;
    for (int k = 0; k < int(trace.states.size()); ++k) {
      csv += format_double(k * h);
      for (int c = 0; c < 7; ++c) csv += "," + format_double(trace.states[k][c]);
      csv += "\n";
    }
    fs::create_directories(ctx.out / "runs");
    write_file_atomic(ctx.out / "runs" / ("run" + std::to_string(r) + ".csv"),
                      csv);

    const Vec xf = trace.states.back();
    json run_report;
    run_report["omega_violations"] = trace.omega_violations;
    run_report["control_violations"] = trace.control_violations;
    run_report["final_omega_inf"] = xf.tail(3).cwiseAbs().maxCoeff();
    Vec qr = Vec::Zero(4);
    qr[0] = 1.0;
    run_report["final_quaternion_error"] =
        std::min((xf.head(4) - qr).norm(), (xf.head(4) + qr).norm());
    int solves_with_trace = 0, monotone = 0;
    for (const auto& step : trace.steps) {
      if (step.scp_trace.size() >= 3) {
        ++solves_with_trace;
        bool ok = true;
        for (std::size_t i = 2; i < step.scp_trace.size(); ++i) {
          if (step.scp_trace[i].step_norm >
              step.scp_trace[i - 1].step_norm + 1e-15) {
            ok = false;
          }
        }
        if (ok) ++monotone;
      }
    }
    run_report["scp_solves_with_long_trace"] = solves_with_trace;
    run_report["scp_monotone_after_iter2"] = monotone;
    metrics["runs"].push_back(run_report);
  }
  ctx.manifest.end_phase();
  metrics["total_violations"] = total_violations;
  emit_json(metrics, ctx.out / "metrics.json");
  if (total_violations > 0) {
    std::cerr << "spacecraft-mpc: " << total_violations
              << " constraint violations\n";
    return 1;
  }
  return 0;
}

}  // namespace detail

/// Runs one experiment config. Exit code contract: 0 success, 1 numerical or
/// invariant failure, 2 config error.
inline int run(const std::string& config_path, const RunOptions& opts = {}) {
  json cfg;
  try {
    cfg = load_config(config_path);
  } catch (const SchemaError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  const fs::path config_dir = fs::absolute(config_path).parent_path();
  const std::string experiment = cfg.at("experiment");
  fs::path out = opts.out_dir.empty()
                     ? fs::path(cfg.value("out_dir", "chreach_out")) / experiment
                     : fs::path(opts.out_dir);
  int threads = opts.threads > 0 ? opts.threads : cfg.value("threads", 0);

  detail::Context ctx{cfg,
                      config_dir,
                      out,
                      threads,
                      cfg.value("seed", 0ull),
                      RunManifest(cfg, detail::hash_config_and_inputs(cfg, config_dir))};
  try {
    fs::create_directories(out);
    int code = 0;
    if (experiment == "reach") {
      code = detail::run_reach_like(ctx, false);
    } else if (experiment == "validate") {
      code = detail::run_reach_like(ctx, true);
    } else if (experiment == "dubins-rect") {
      code = detail::run_dubins_rect(ctx);
    } else if (experiment == "dubins-lift") {
      code = detail::run_dubins_lift(ctx);
    } else if (experiment == "nn-loop") {
      code = detail::run_nn_loop(ctx);
    } else if (experiment == "compare") {
      code = detail::run_compare(ctx);
    } else {
      code = detail::run_spacecraft_mpc(ctx, opts.seeds);
    }
    ctx.manifest.write(out / "manifest.json");
    return code;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

/// Schema validation only (the `validate` subcommand).
inline int validate_only(const std::string& config_path) {
  try {
    load_config(config_path);
    std::cout << "config ok\n";
    return 0;
  } catch (const SchemaError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace chreach::cli
