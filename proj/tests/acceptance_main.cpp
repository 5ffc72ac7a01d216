// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion. Exits nonzero if any criterion fails.

#include "chreach/baselines/discrete.hpp"
#include "chreach/baselines/monte_carlo.hpp"
#include "chreach/baselines/randup.hpp"
#include "chreach/baselines/tube.hpp"
#include "chreach/geometry/sphere.hpp"
#include "chreach/mpc/closed_loop.hpp"
#include "chreach/mpc/qp.hpp"
#include "chreach/parallel.hpp"
#include "chreach/reach/error_bounds.hpp"
#include "chreach/relax/eps_extension.hpp"
#include "chreach/relax/rect.hpp"
#include "chreach/systems/benchmarks.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <memory>
#include <string>
#include <vector>

using namespace chreach;

namespace {

int failures = 0;

void report(int id, bool pass, const std::string& label,
            const std::string& detail, double seconds) {
  std::printf("[AC%02d] %s  %s (%s) [%.1f s]\n", id, pass ? "PASS" : "FAIL",
              label.c_str(), detail.c_str(), seconds);
  std::fflush(stdout);
  if (!pass) ++failures;
}

template <typename Fn>
void criterion(int id, const std::string& label, Fn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  bool pass = false;
  std::string detail;
  try {
    std::tie(pass, detail) = fn();
  } catch (const std::exception& e) {
    pass = false;
    detail = std::string("exception: ") + e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report(id, pass, label, detail, secs);
}

Vec vec2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

Vec vec3(double a, double b, double c) {
  Vec v(3);
  v << a, b, c;
  return v;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), f, a, b, c);
  return buf;
}

SystemDef attraction_benchmark() {
  return make_attraction_repulsion(vec2(1, 0), vec2(-1, 0), 0.2);
}

SystemDef single_integrator(int n) {
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

std::shared_ptr<MlpPolicy> shipped_policy() {
  return std::make_shared<MlpPolicy>(
      MlpPolicy::seeded({2, 16, 16, 1}, 1.0, 20240601));
}

SystemDef neural_benchmark() {
  Mat A(2, 2), B(2, 1);
  A << 0, 1, 0, 0;
  B << 0, 1;
  return make_neural_loop(A, B, shipped_policy());
}

SystemDef spacecraft_omega_benchmark(double horizon) {
  const Vec jd = vec3(5, 2, 1);
  return make_spacecraft_omega(
      jd, Mat(Vec(-jd).asDiagonal()),
      PiecewiseControl::constant(Vec::Zero(3), 0.0, horizon));
}

// --- criteria -------------------------------------------------------------

std::pair<bool, std::string> ac1_gauss_round_trips() {
  Mat q(2, 2);
  q << 4.0, 1.0, 1.0, 2.0;
  std::vector<SmoothConvexSet> sets;
  sets.push_back(SmoothConvexSet::ball(vec2(0.3, -0.2), 1.7));
  sets.push_back(SmoothConvexSet::ellipsoid(vec2(-1.0, 0.5), q));
  sets.push_back(SmoothConvexSet::lambda_ball(vec2(0.1, 0.0), vec2(2.0, 0.7),
                                              6.0, sets::BoxSide::Under));
  sets.push_back(SmoothConvexSet::lambda_ball(vec2(0.0, 0.4), vec2(1.0, 1.5),
                                              8.0, sets::BoxSide::Over));
  sets.push_back(lift_set(SmoothConvexSet::ball(vec2(0, 0), 0.5), 3));
  double worst = 0.0;
  for (const auto& set : sets) {
    Rng rng(1);
    for (int i = 0; i < 1000; ++i) {
      const Direction d = Direction::normalized(rng.normal_vec(set.dim()));
      const Direction back = set.gauss_map(set.inverse_gauss_map(d));
      worst = std::max(worst, (back.vec() - d.vec()).norm());
    }
  }
  return {worst <= 1e-9, fmt("max round-trip error %.2e <= 1e-9", worst)};
}

std::pair<bool, std::string> ac2_containment() {
  const auto sys = attraction_benchmark();
  const auto W = SmoothConvexSet::ball(Vec(Vec::Zero(2)), 0.1);
  const auto X0 = InitialSetSpec::singleton(vec2(0.0, -1.5));
  const TimeGrid grid(0.0, 2.0, 200);
  const auto dirs = sample_sphere(2, 512, SphereScheme::UniformAngle);
  const auto est = estimate_hulls(sys, W, X0, dirs, grid);
  const auto lip = lipschitz_estimates(sys, W, X0, grid, 512, 7);
  const double delta = covering_radius(dirs, 100000, 8);
  const auto bounds = error_bounds(lip, delta);
  const auto rollouts = monte_carlo_rollouts(sys, W, X0, 10000, 2026, grid);
  std::vector<int> viol(rollouts.size(), 0);
  parallel_for(int(rollouts.size()), [&](int r) {
    for (int k = 0; k < grid.nodes(); ++k) {
      if (distance_to_hull(rollouts[r][k], est.hulls[k], 1e-6) >
          bounds.eps_quad[k] + 3e-3) {
        ++viol[r];
      }
    }
  });
  int violations = 0;
  for (const int v : viol) violations += v;
  return {violations == 0,
          fmt("violations %g of %g point checks", violations,
              double(rollouts.size()) * grid.nodes())};
}

double rescaled_costate_deviation(const SystemDef& sys, const SmoothConvexSet& W,
                                  const InitialSetSpec& X0, const Direction& d0,
                                  const TimeGrid& grid, double c) {
  const auto base = extremal_trajectory(sys, W, X0, d0, grid);
  auto [x, p] = initial_pair(d0, X0);
  p *= c;
  double worst = (x - base.x[0]).norm();
  const double h = grid.h();
  for (int k = 0; k < grid.steps; ++k) {
    const double t = grid.t(k);
    auto rhs = [&](double ts, const Vec& xs, const Vec& ps) {
      const auto r = augmented_rhs(sys, W, ts, xs, ps);
      return std::make_pair(r.xdot, r.pdot);
    };
    const auto [x1, p1] = rhs(t, x, p);
    const auto [x2, p2] = rhs(t + 0.5 * h, x + 0.5 * h * x1, p + 0.5 * h * p1);
    const auto [x3, p3] = rhs(t + 0.5 * h, x + 0.5 * h * x2, p + 0.5 * h * p2);
    const auto [x4, p4] = rhs(t + h, x + h * x3, p + h * p3);
    x += (h / 6.0) * (x1 + 2.0 * x2 + 2.0 * x3 + x4);
    p += (h / 6.0) * (p1 + 2.0 * p2 + 2.0 * p3 + p4);
    worst = std::max(worst, (x - base.x[k + 1]).norm());
  }
  return worst;
}

std::pair<bool, std::string> ac3_scale_invariance() {
  struct Bench {
    SystemDef sys;
    SmoothConvexSet W;
    InitialSetSpec X0;
    TimeGrid grid;
  };
  std::vector<Bench> benches;
  benches.push_back({attraction_benchmark(),
                     SmoothConvexSet::ball(Vec(Vec::Zero(2)), 0.1),
                     InitialSetSpec::singleton(vec2(0, -1.5)),
                     TimeGrid(0, 2, 200)});
  benches.push_back({make_dubins(0.5, 0.5, Mat::Identity(3, 3)),
                     SmoothConvexSet::ball(Vec(Vec::Zero(3)), 1e-2),
                     InitialSetSpec::ovaloid(SmoothConvexSet::ellipsoid(
                         Vec(Vec::Zero(3)),
                         1e-3 * Mat(vec3(1, 1, 0.1).asDiagonal()))),
                     TimeGrid(0, 6, 120)});
  benches.push_back({neural_benchmark(),
                     SmoothConvexSet::ball(Vec(Vec::Zero(2)), std::sqrt(2.0) / 20),
                     InitialSetSpec::ovaloid(SmoothConvexSet::ellipsoid(
                         vec2(2.75, 0.0),
                         2.0 * Mat(vec2(0.0625, 0.01).asDiagonal()))),
                     TimeGrid(0, 4, 100)});
  benches.push_back({spacecraft_omega_benchmark(10.0),
                     SmoothConvexSet::ball(Vec(Vec::Zero(3)), 1e-2),
                     InitialSetSpec::singleton(vec3(0.05, -0.02, 0.03)),
                     TimeGrid(0, 10, 100)});
  double worst = 0.0;
  for (const auto& b : benches) {
    Rng rng(3);
    for (int rep = 0; rep < 5; ++rep) {
      const Direction d0 = Direction::normalized(rng.normal_vec(b.sys.n));
      for (const double c : {0.5, 3.0}) {
        worst = std::max(
            worst, rescaled_costate_deviation(b.sys, b.W, b.X0, d0, b.grid, c));
      }
    }
  }
  return {worst <= 1e-9, fmt("max sup-norm deviation %.2e <= 1e-9", worst)};
}

std::pair<bool, std::string> ac4_rate() {
  const auto sys = attraction_benchmark();
  const auto W = SmoothConvexSet::ball(Vec(Vec::Zero(2)), 0.1);
  const auto X0 = InitialSetSpec::singleton(vec2(0.0, -1.5));
  const TimeGrid grid(0.0, 1.5, 150);
  const auto truth = estimate_hulls(
      sys, W, X0, sample_sphere(2, 4096, SphereScheme::UniformAngle), grid);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const int M : {32, 64, 128, 256}) {
    const auto dirs = sample_sphere(2, M, SphereScheme::UniformAngle);
    const auto est = estimate_hulls(sys, W, X0, dirs, grid);
    const double d = hausdorff(est.hulls.back(), truth.hulls.back());
    const double delta = covering_radius(dirs, 100000, 3);
    sx += std::log(delta);
    sy += std::log(d);
    sxx += std::log(delta) * std::log(delta);
    sxy += std::log(delta) * std::log(d);
    ++n;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return {slope >= 1.5, fmt("fitted log-log slope %.2f >= 1.5", slope)};
}

std::pair<bool, std::string> ac5_rect_sandwich() {
  const auto sys = make_dubins(0.5, 0.5, Mat::Identity(3, 3));
  const RectSpec spec{1e-2 * Vec(vec3(1, 1, 1)), Vec(Vec::Zero(3)),
                      vec3(std::sqrt(1e-3), std::sqrt(1e-3), 1e-2)};
  const auto dirs = sample_sphere(3, 256, SphereScheme::Fibonacci);
  const TimeGrid grid(0, 6, 120);
  int sandwich_violations = 0;
  std::vector<double> gaps;
  for (const double lambda : {4.0, 8.0, 16.0}) {
    const auto under =
        estimate_hulls_rect(sys, spec, lambda, sets::BoxSide::Under, dirs, grid);
    const auto over =
        estimate_hulls_rect(sys, spec, lambda, sets::BoxSide::Over, dirs, grid);
    std::vector<int> viol(grid.nodes(), 0);
    parallel_for(grid.nodes(), [&](int k) {
      for (const auto& v : under.hulls[k].points) {
        if (distance_to_hull(v, over.hulls[k], 1e-9) > 1e-9) ++viol[k];
      }
    });
    for (const int v : viol) sandwich_violations += v;
    gaps.push_back(hausdorff(under.hulls.back(), over.hulls.back()));
  }
  const bool decreasing = gaps[1] < gaps[0] && gaps[2] < gaps[1];
  return {sandwich_violations == 0 && decreasing,
          fmt("sandwich violations %g; dH(under,over) %.2e > %.2e > ",
              double(sandwich_violations), gaps[0], gaps[1]) +
              fmt("%.2e decreasing", gaps[2])};
}

std::pair<bool, std::string> ac6_eps_extension() {
  Mat G(3, 2);
  G << 1, 0, 0, 0, 0, 1;
  const auto base = make_dubins(0.5, 0.5, G);
  const auto W2 = SmoothConvexSet::ball(Vec(Vec::Zero(2)), 1e-2);
  const auto liftedW = lift_set(W2, 3);
  const auto X0 = InitialSetSpec::ovaloid(SmoothConvexSet::ellipsoid(
      Vec(Vec::Zero(3)), 1e-3 * Mat(vec3(1, 1, 0.1).asDiagonal())));
  const auto dirs = sample_sphere(3, 256, SphereScheme::Fibonacci);
  const TimeGrid grid(0, 6, 120);
  const Vec g3 = vec3(0, 1, 0);
  const auto rollouts = monte_carlo_rollouts(base, W2, X0, 1000, 11, grid);
  int violations = 0;
  std::vector<HullEstimate> hulls;
  for (const double eps : {0.2, 0.1, 0.05}) {
    EpsExtensionSpec spec{base, {[g3](double, const Vec&) { return g3; }},
                          eps, liftedW};
    hulls.push_back(estimate_hulls_fullrank_relax(spec, X0, dirs, grid));
    const auto& est = hulls.back();
    std::vector<int> viol(rollouts.size(), 0);
    parallel_for(int(rollouts.size()), [&](int r) {
      for (int k = 0; k < grid.nodes(); ++k) {
        if (distance_to_hull(rollouts[r][k], est.hulls[k], 1e-6) > 3e-3) {
          ++viol[r];
        }
      }
    });
    for (const int v : viol) violations += v;
  }
  const double gap01 = hausdorff(hulls[0].hulls.back(), hulls[1].hulls.back());
  const double gap12 = hausdorff(hulls[1].hulls.back(), hulls[2].hulls.back());
  const double ratio = gap12 / gap01;
  const bool rate_ok = ratio >= 0.15 && ratio <= 0.6;
  return {violations == 0 && rate_ok,
          fmt("violations %g; halving ratio %.2f in [0.15, 0.6]",
              double(violations), ratio)};
}

std::pair<bool, std::string> ac7_exact_disk() {
  const auto sys = single_integrator(2);
  const auto W = SmoothConvexSet::ball(Vec(Vec::Zero(2)), 1.0);
  const auto X0 = InitialSetSpec::singleton(Vec(Vec::Zero(2)));
  const int M = 64;
  const TimeGrid grid(0, 1, 50);
  const auto est = estimate_hulls(
      sys, W, X0, sample_sphere(2, M, SphereScheme::UniformAngle), grid);
  double worst_excess = -1e300;
  for (int k = 1; k < grid.nodes(); ++k) {
    const double t = grid.t(k);
    double dh = 0.0;
    for (int i = 0; i < 5000; ++i) {
      const double a = 2.0 * M_PI * i / 5000.0;
      dh = std::max(dh, distance_to_hull(t * vec2(std::cos(a), std::sin(a)),
                                         est.hulls[k]));
    }
    for (const auto& v : est.hulls[k].points) {
      dh = std::max(dh, v.norm() - t);  // hull vertices beyond the disk
    }
    worst_excess =
        std::max(worst_excess, dh - (2.0 * std::sin(M_PI / (2.0 * M)) * t + 1e-6));
  }
  return {worst_excess <= 0.0,
          fmt("worst dH excess over bound %.2e <= 0", worst_excess)};
}

std::pair<bool, std::string> ac8_baseline_ordering() {
  // Neural feedback loop at equal budget.
  const auto nn = neural_benchmark();
  const auto W_nn =
      SmoothConvexSet::ball(Vec(Vec::Zero(2)), std::sqrt(2.0) / 20);
  const auto X0_nn = InitialSetSpec::ovaloid(SmoothConvexSet::ellipsoid(
      vec2(2.75, 0.0), 2.0 * Mat(vec2(0.0625, 0.01).asDiagonal())));
  const TimeGrid grid_nn(0, 4, 80);
  const auto alg_nn = estimate_hulls(
      nn, W_nn, X0_nn, sample_sphere(2, 100, SphereScheme::UniformAngle), grid_nn);
  const auto truth_nn = estimate_hulls(
      nn, W_nn, X0_nn, sample_sphere(2, 4096, SphereScheme::UniformAngle),
      grid_nn);
  const auto rand_nn = randup_hulls(
      discretize(nn, 0.0, grid_nn.h(), grid_nn.steps, 1), W_nn, X0_nn, 100, 5);
  const double e_alg_nn =
      hausdorff(alg_nn.hulls.back(), truth_nn.hulls.back());
  const double e_rand_nn =
      hausdorff(rand_nn.hulls.back(), truth_nn.hulls.back());

  // Spacecraft angular-velocity subsystem at equal budget.
  const auto sc = spacecraft_omega_benchmark(10.0);
  const auto W_sc = SmoothConvexSet::ball(Vec(Vec::Zero(3)), 1e-2);
  const auto X0_sc = InitialSetSpec::singleton(vec3(0.05, -0.02, 0.03));
  const TimeGrid grid_sc(0, 10, 50);
  const auto alg_sc = estimate_hulls(
      sc, W_sc, X0_sc, sample_sphere(3, 100, SphereScheme::Fibonacci), grid_sc);
  const auto truth_sc = estimate_hulls(
      sc, W_sc, X0_sc, sample_sphere(3, 2048, SphereScheme::Fibonacci), grid_sc);
  const auto dsys = discretize(sc, 0.0, 1.0, 10, 5);
  const auto rand_sc = randup_hulls(dsys, W_sc, X0_sc, 100, 9);
  const double e_alg_sc =
      hausdorff(alg_sc.hulls.back(), truth_sc.hulls.back());
  const double e_rand_sc =
      hausdorff(rand_sc.hulls.back(), truth_sc.hulls.back());

  // Lipschitz tube soundness on the discrete-time model.
  const Vec omega0 = vec3(0.05, -0.02, 0.03);
  std::vector<Vec> nominal = {omega0};
  for (int k = 0; k < 10; ++k) nominal.push_back(dsys.step_nominal(k, nominal.back()));
  const double hbar = estimate_step_hessian_bound(dsys, nominal, 0.05, 1000);
  const auto tube = lipschitz_tube(dsys, omega0, 1e-2, hbar);
  int tube_violations = 0;
  for (int s = 0; s < 1000; ++s) {
    Rng rng(Rng::derive(202, s));
    Vec x = omega0;
    for (int k = 0; k < 10; ++k) {
      x = dsys.step_nominal(k, x) + W_sc.sample_uniform(rng);
      if (!tube_contains(tube, k + 1, x)) ++tube_violations;
    }
  }
  const bool pass = e_alg_nn <= e_rand_nn / 5.0 && e_alg_sc <= e_rand_sc / 5.0 &&
                    tube_violations == 0;
  return {pass, fmt("nn ratio %.3f, omega ratio %.3f (need <= 0.2); ",
                    e_alg_nn / e_rand_nn, e_alg_sc / e_rand_sc) +
                    fmt("tube violations %g", double(tube_violations))};
}

std::pair<bool, std::string> ac9_mpc() {
  OcpSpec spec = make_spacecraft_ocp(50);
  spec.substeps = 5;
  Vec x_probe = Vec::Zero(7);
  x_probe[0] = 1.0;
  const auto tightening =
      compute_tightenings(spec, x_probe, 300, 10, Rng::derive(0, 11));
  spec.eps = tightening.eps;
  spec.validate();
  ScpConfig cold, warm;
  cold.max_iterations = 8;
  warm.max_iterations = 2;

  int total_violations = 0;
  int runs_converged = 0;
  int traces_total = 0, traces_monotone = 0;
  double worst_final_omega = 0.0;
  const int runs = 20;
  for (int r = 0; r < runs; ++r) {
    Rng rng(Rng::derive(0, 200 + r));
    Vec axis = rng.normal_vec(3);
    while (axis.norm() < 1e-9) axis = rng.normal_vec(3);
    axis.normalize();
    const double angle = rng.uniform(0.0, M_PI / 3.0);
    Vec x0 = Vec::Zero(7);
    x0[0] = std::cos(0.5 * angle);
    x0.segment<3>(1) = std::sin(0.5 * angle) * axis;
    for (int i = 0; i < 3; ++i) x0[4 + i] = rng.uniform(-0.05, 0.05);

    const auto trace =
        mpc_closed_loop(spec, x0, 20, Rng::derive(0, 300 + r), cold, warm);
    total_violations += trace.omega_violations + trace.control_violations;
    const double final_omega = trace.states.back().tail(3).cwiseAbs().maxCoeff();
    worst_final_omega = std::max(worst_final_omega, final_omega);
    if (final_omega < 0.02) ++runs_converged;
    for (const auto& step : trace.steps) {
      ++traces_total;
      bool ok = true;
      for (std::size_t i = 2; i < step.scp_trace.size(); ++i) {
        if (step.scp_trace[i].step_norm > step.scp_trace[i - 1].step_norm + 1e-15) {
          ok = false;
        }
      }
      if (ok) ++traces_monotone;
    }
  }
  const double monotone_frac = double(traces_monotone) / double(traces_total);
  const bool pass = total_violations == 0 && runs_converged == runs &&
                    monotone_frac >= 0.9;
  return {pass, fmt("violations %g; worst final |omega|_inf %.4f < 0.02; ",
                    double(total_violations), worst_final_omega) +
                    fmt("monotone SCP traces %.0f%% >= 90%%",
                        100.0 * monotone_frac)};
}

std::pair<bool, std::string> ac10_integrator_and_qp() {
  // RK4 against closed forms.
  Vec x0s(1);
  x0s << 1.0;
  const auto exp_traj = rk4_integrate(
      [](double, const Vec& x) { return Vec(-x); }, TimeGrid(0, 1, 100), x0s);
  const double exp_err = std::abs(exp_traj.back()[0] - std::exp(-1.0));
  Mat rot(2, 2);
  rot << 0, -1, 1, 0;
  const Vec xr0 = vec2(0.7, -0.3);
  const auto rot_traj = rk4_integrate(
      [&](double, const Vec& x) { return Vec(rot * x); },
      TimeGrid(0, M_PI, 200), xr0);
  const double rot_err = (rot_traj.back() + xr0).norm();

  // Random strictly convex box QPs: KKT residuals at tol 1e-6.
  Rng rng(404);
  double worst_kkt = 0.0;
  for (const int n : {5, 20, 60}) {
    Mat g(n, n);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) g(r, c) = rng.normal();
    }
    const Mat P = g * g.transpose() + 0.5 * Mat::Identity(n, n);
    Vec q(n);
    for (int i = 0; i < n; ++i) q[i] = rng.normal();
    const Mat A = Mat::Identity(n, n);
    const Vec l = Vec::Constant(n, -0.5);
    const Vec u = Vec::Constant(n, 0.5);
    const auto res = solve_qp(P, q, A, l, u);
    if (res.status != QpStatus::Solved) {
      return {false, "box QP did not converge"};
    }
    double prim = 0.0;
    const Vec ax = A * res.x;
    for (int i = 0; i < n; ++i) {
      prim = std::max(prim, std::max(l[i] - ax[i], ax[i] - u[i]));
    }
    const double dual =
        (P * res.x + q + A.transpose() * res.y).cwiseAbs().maxCoeff();
    const double scale = std::max(1.0, q.cwiseAbs().maxCoeff());
    worst_kkt = std::max(worst_kkt, std::max(prim, dual / scale));
  }

  // Tiny instances against active-set enumeration.
  double worst_gap = 0.0;
  for (int rep = 0; rep < 10; ++rep) {
    const int n = 2 + int(rng.next_u64() % 3);
    Mat g(n, n);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) g(r, c) = rng.normal();
    }
    const Mat P = g * g.transpose() + 0.5 * Mat::Identity(n, n);
    Vec q(n);
    for (int i = 0; i < n; ++i) q[i] = rng.normal();
    const Mat A = Mat::Identity(n, n);
    Vec l(n), u(n);
    for (int i = 0; i < n; ++i) {
      l[i] = rng.uniform(-1.0, 0.0);
      u[i] = rng.uniform(0.0, 1.0);
    }
    QpSettings s;
    s.tol = 1e-10;
    const auto res = solve_qp(P, q, A, l, u, s);
    // Enumerate box active sets (each variable free / at lower / at upper).
    double best = std::numeric_limits<double>::infinity();
    for (long long code = 0; code < std::llround(std::pow(3, n)); ++code) {
      long long rem = code;
      std::vector<int> state(n);
      for (int i = 0; i < n; ++i) {
        state[i] = int(rem % 3);
        rem /= 3;
      }
      std::vector<int> free;
      Vec x = Vec::Zero(n);
      for (int i = 0; i < n; ++i) {
        if (state[i] == 0) free.push_back(i);
        if (state[i] == 1) x[i] = l[i];
        if (state[i] == 2) x[i] = u[i];
      }
      if (!free.empty()) {
        Mat pf(int(free.size()), int(free.size()));
        Vec rhs(int(free.size()));
        for (std::size_t a = 0; a < free.size(); ++a) {
          rhs[a] = -q[free[a]];
          for (std::size_t b = 0; b < free.size(); ++b) {
            pf(a, b) = P(free[a], free[b]);
          }
          for (int i = 0; i < n; ++i) {
            if (state[i] != 0) rhs[a] -= P(free[a], i) * x[i];
          }
        }
        const Vec xf = pf.ldlt().solve(rhs);
        for (std::size_t a = 0; a < free.size(); ++a) x[free[a]] = xf[a];
      }
      bool feasible = true;
      for (int i = 0; i < n; ++i) {
        if (x[i] < l[i] - 1e-12 || x[i] > u[i] + 1e-12) feasible = false;
      }
      if (!feasible) continue;
      best = std::min(best, 0.5 * x.dot(P * x) + q.dot(x));
    }
    const double obj = 0.5 * res.x.dot(P * res.x) + q.dot(res.x);
    worst_gap = std::max(worst_gap, std::abs(obj - best));
  }
  const bool pass = exp_err <= 1e-7 && rot_err <= 1e-7 && worst_kkt <= 1e-6 &&
                    worst_gap <= 1e-8;
  return {pass, fmt("rk4 errs %.1e/%.1e <= 1e-7; ", exp_err, rot_err) +
                    fmt("kkt %.1e <= 1e-6; active-set gap %.1e <= 1e-8",
                        worst_kkt, worst_gap)};
}

}  // namespace

int main() {
  criterion(1, "Gauss-map round trips (1e3 directions per variant)",
            ac1_gauss_round_trips);
  criterion(2, "reachable-hull containment of 1e4 Monte Carlo rollouts",
            ac2_containment);
  criterion(3, "costate-scale invariance on all benchmark systems",
            ac3_scale_invariance);
  criterion(4, "quadratic convergence rate of the hull estimates", ac4_rate);
  criterion(5, "rectangular relaxation sandwich and lambda-convergence",
            ac5_rect_sandwich);
  criterion(6, "epsilon-extension soundness and linear rate", ac6_eps_extension);
  criterion(7, "exact-disk Hausdorff bound at M = 64", ac7_exact_disk);
  criterion(8, "baseline ordering and tube soundness at equal budget",
            ac8_baseline_ordering);
  criterion(9, "robust MPC: 20 disturbed runs without violations", ac9_mpc);
  criterion(10, "integrator closed forms and QP certificates",
            ac10_integrator_and_qp);
  if (failures == 0) {
    std::puts("acceptance: all criteria passed");
    return 0;
  }
  std::printf("acceptance: %d criteria FAILED\n", failures);
  return 1;
}
