// Benchmark harness for the accelerated-solver library.
//
//   sfgm-bench solve    one method, one problem -> trace CSV (+ certification)
//   sfgm-bench compare  several methods, same starting point -> traces,
//                       summary table/CSV, convergence SVG
//   sfgm-bench certify  re-run with the certification tracker (exit 5 on hard
//                       identity violations), or re-check a stored trace
//   sfgm-bench bounds   analytic iteration-count estimates
//
// stdout carries tables only; all logs go to stderr. Exit codes: 0 ok,
// 2 bad flags / invalid configuration, 3 input parse errors, 4 solver stall,
// 5 certification (hard) violations.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sfgm/bounds.hpp"
#include "sfgm/certify.hpp"
#include "sfgm/csv.hpp"
#include "sfgm/dataset.hpp"
#include "sfgm/generators.hpp"
#include "sfgm/ground_truth.hpp"
#include "sfgm/svg.hpp"
#include "sfgm/tracker.hpp"

namespace {

using namespace sfgm;

struct ProblemFlags {
  std::string problem = "diag";
  std::string loss = "quadratic";
  std::string data;
  int xi = 3;
  long m = 1000;
  long n = 1000;
  double tau = 0.0;
  std::uint64_t seed = 0;
};

struct RunFlags {
  long max_iters = 1000;
  double tol_grad = 0.0;
  double tol_dist = 0.0;
  std::string out;
  bool out_set = false;
  double lipschitz = 0.0;
  double step = 0.0;
  // expert knobs, only meaningful with --method sfgm
  std::string beta = "zero";
  bool beta_set = false;
  double gamma0 = 0.0;
  bool gamma0_set = false;
  int window = 0;
};

void add_problem_flags(CLI::App* cmd, ProblemFlags& pf) {
  cmd->add_option("--problem", pf.problem, "Problem family: diag|gaussian|libsvm")
      ->check(CLI::IsMember({"diag", "gaussian", "libsvm"}));
  cmd->add_option("--loss", pf.loss, "Loss: quadratic|logistic")
      ->check(CLI::IsMember({"quadratic", "logistic"}));
  cmd->add_option("--data", pf.data, "LIBSVM dataset path (tried as-is, then under $SFGM_DATA_DIR)");
  cmd->add_option("--xi", pf.xi, "Decade exponent: diag spectrum spans 1..10^-xi");
  cmd->add_option("--m", pf.m, "Rows (diag: dimension)");
  cmd->add_option("--n", pf.n, "Columns (gaussian/synthetic logistic)");
  cmd->add_option("--tau", pf.tau, "Ridge coefficient");
  cmd->add_option("--seed", pf.seed, "Generator seed (recorded in outputs)");
}

void add_run_flags(CLI::App* cmd, RunFlags& rf) {
  cmd->add_option("--max-iters", rf.max_iters, "Iteration cap");
  cmd->add_option("--tol-grad", rf.tol_grad, "Stop when |grad f(y_k)| <= this (absolute)");
  cmd->add_option("--tol-dist", rf.tol_dist, "Stop when |x_k - x*| <= this * R0 (relative)");
  cmd->add_option("--out", rf.out, "Output directory (default: $SFGM_BENCH_OUT or .)")
      ->each([&rf](const std::string&) { rf.out_set = true; });
  cmd->add_option("--lipschitz", rf.lipschitz, "Override the smoothness constant");
  cmd->add_option("--step", rf.step, "Gradient-method step size (default 1/L)");
  cmd->add_option("--beta", rf.beta, "Memory schedule for --method sfgm: zero|first|last|window")
      ->check(CLI::IsMember({"zero", "first", "last", "window"}))
      ->each([&rf](const std::string&) { rf.beta_set = true; });
  cmd->add_option("--gamma0", rf.gamma0, "Initial curvature for --method sfgm")
      ->each([&rf](const std::string&) { rf.gamma0_set = true; });
  cmd->add_option("--window", rf.window, "Window size for --beta window");
}

std::filesystem::path resolve_out_dir(const RunFlags& rf) {
  std::string dir = rf.out;
  if (!rf.out_set) {
    if (const char* env = std::getenv("SFGM_BENCH_OUT"); env && *env) dir = env;
    else dir = ".";
  }
  std::filesystem::path p(dir);
  std::filesystem::create_directories(p);
  return p;
}

struct ProblemBundle {
  std::unique_ptr<ObjectiveOracle<double>> oracle;
  std::optional<GroundTruth<double>> truth;
  std::string desc;
};

std::string resolve_data_path(const std::string& data) {
  if (std::filesystem::exists(data)) return data;
  if (const char* env = std::getenv("SFGM_DATA_DIR"); env && *env) {
    const std::filesystem::path candidate = std::filesystem::path(env) / data;
    if (std::filesystem::exists(candidate)) return candidate.string();
  }
  throw ConfigError("dataset file not found: " + data +
                    " (tried as-is and under $SFGM_DATA_DIR)");
}

// want_truth: a minimizer is required (distance-based stopping). Ground truth
// is otherwise computed only when cheap (diagonal: exact; ridge quadratic:
// one linear solve); logistic reference solves are expensive and opt-in.
ProblemBundle build_problem(const ProblemFlags& pf, bool want_truth) {
  ProblemBundle bundle;
  std::ostringstream desc;
  if (pf.problem == "diag") {
    if (pf.loss != "quadratic")
      throw ConfigError("--problem diag only supports --loss quadratic");
    auto gen = gen_diagonal_quadratic(pf.xi, pf.m, pf.seed);
    desc << "diag xi=" << pf.xi << " n=" << pf.m << " seed=" << pf.seed;
    bundle.oracle = std::make_unique<QuadraticProblem<double>>(std::move(gen.problem));
    bundle.truth = std::move(gen.truth);
  } else if (pf.problem == "gaussian") {
    if (pf.loss == "quadratic") {
      auto qp = gen_gaussian_ls(pf.m, pf.n, pf.seed, pf.tau);
      desc << "gaussian-ls m=" << pf.m << " n=" << pf.n << " tau=" << pf.tau
           << " seed=" << pf.seed;
      if (qp.strong_convexity() > 0) {
        const VecX<double> zero = VecX<double>::Zero(qp.dim());
        bundle.truth = ground_truth(qp, default_truth_tolerance<double>(qp, zero));
      }
      bundle.oracle = std::make_unique<QuadraticProblem<double>>(std::move(qp));
    } else {
      auto lp = gen_synthetic_logistic(pf.m, pf.n, pf.seed, pf.tau);
      desc << "gaussian-logistic m=" << pf.m << " n=" << pf.n << " tau=" << pf.tau
           << " seed=" << pf.seed;
      if (want_truth) {
        const VecX<double> zero = VecX<double>::Zero(lp.dim());
        bundle.truth = ground_truth(lp, default_truth_tolerance<double>(lp, zero));
      }
      bundle.oracle = std::make_unique<LogisticProblem<double>>(std::move(lp));
    }
  } else {  // libsvm
    if (pf.data.empty()) throw ConfigError("--problem libsvm requires --data");
    const std::string path = resolve_data_path(pf.data);
    Dataset ds = parse_libsvm_file(path);
    const DatasetStats stats = dataset_stats(ds);
    std::cerr << "[sfgm-bench] loaded " << path << ": m=" << stats.m << " n=" << stats.n
              << " nnz=" << stats.nnz << "\n";
    desc << std::filesystem::path(path).filename().string() << " " << pf.loss
         << " tau=" << pf.tau;
    if (pf.loss == "quadratic") {
      auto qp = quadratic_from_dataset(ds, pf.tau);
      if (qp.strong_convexity() > 0) {
        const VecX<double> zero = VecX<double>::Zero(qp.dim());
        bundle.truth = ground_truth(qp, default_truth_tolerance<double>(qp, zero));
      }
      bundle.oracle = std::make_unique<QuadraticProblem<double>>(std::move(qp));
    } else {
      normalize_labels(ds, &std::cerr);
      auto lp = logistic_from_dataset(ds, pf.tau);
      if (want_truth) {
        const VecX<double> zero = VecX<double>::Zero(lp.dim());
        bundle.truth = ground_truth(lp, default_truth_tolerance<double>(lp, zero));
      }
      bundle.oracle = std::make_unique<LogisticProblem<double>>(std::move(lp));
    }
  }
  return bundle;
}

StoppingRule make_stop(const RunFlags& rf) {
  if (rf.tol_grad > 0 && rf.tol_dist > 0)
    throw ConfigError("choose one stopping rule: --tol-grad or --tol-dist");
  if (rf.tol_grad > 0) return {StopKind::GradNorm, rf.tol_grad};
  if (rf.tol_dist > 0) return {StopKind::DistToOpt, rf.tol_dist};
  return {StopKind::MaxIters, 0.0};
}

BetaKind parse_beta(const std::string& s) {
  if (s == "zero") return BetaKind::Zero;
  if (s == "first") return BetaKind::FirstTerm;
  if (s == "last") return BetaKind::LastTerm;
  return BetaKind::Window;
}

SolverConfig<double> make_config(const std::string& method, const RunFlags& rf,
                                 const ObjectiveOracle<double>& oracle) {
  SolverConfig<double> config;
  if (method == "sfgm") {
    config.method = Method::SFGM;
    config.beta.kind = parse_beta(rf.beta);
    config.beta.window = rf.window;
    config.gamma0 = rf.gamma0;
  } else {
    const auto label = parse_method_label(method);
    if (!label)
      throw ConfigError("unknown method '" + method +
                        "' (gm|fgm-css1|fgm-css3|sfgm-memless|sfgm-last|sfgm)");
    if (rf.beta_set || rf.gamma0_set)
      throw ConfigError("--beta/--gamma0 apply only to --method sfgm; '" + method +
                        "' fixes its own schedule");
    config = preset_config<double>(*label, oracle);
  }
  config.stop = make_stop(rf);
  config.max_iters = rf.max_iters;
  config.lipschitz_override = rf.lipschitz;
  config.step = rf.step;
  return config;
}

VecX<double> draw_x0(const ProblemBundle& bundle, std::uint64_t seed) {
  auto rng = make_stream(seed, Stream::kStart);
  return random_normal_vector<double>(bundle.oracle->dim(), rng);
}

struct MethodRun {
  std::string label;
  SolverConfig<double> config;
  RunResult<double> result;
  double final_f = 0.0;
  std::optional<CertifiedRun<double>> certified;
};

MethodRun run_method(const std::string& label, const ProblemBundle& bundle,
                     const SolverConfig<double>& config, const VecX<double>& x0, bool certify) {
  MethodRun mr;
  mr.label = label;
  mr.config = config;
  const auto& oracle = *bundle.oracle;
  const GroundTruth<double>* truth = bundle.truth ? &*bundle.truth : nullptr;
  const double L =
      config.lipschitz_override > 0 ? config.lipschitz_override : oracle.lipschitz();
  const double mu = oracle.strong_convexity();
  if (certify) {
    EstimatingTracker<double> tracker(L, mu, oracle.value(x0), truth);
    StepObserver<double> observer = [&tracker](const StepInfo<double>& info) {
      tracker.observe(info);
    };
    mr.result = run<double>(oracle, config, x0, truth, &observer);
    mr.final_f = oracle.value(mr.result.state.x);
    mr.certified = certify_run<double>(mr.result.trace, tracker, truth, L, mu, config.gamma0,
                                       mr.result.r0, mr.final_f,
                                       /*lemma4_applicable=*/config.method != Method::GM);
  } else {
    mr.result = run<double>(oracle, config, x0, truth, nullptr);
    mr.final_f = oracle.value(mr.result.state.x);
  }
  return mr;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << content;
  std::cerr << "[sfgm-bench] wrote " << path.string() << "\n";
}

// First trace index at which the configured stopping quantity crosses its
// threshold; -1 when it never does (or no threshold was set).
long first_crossing(const MethodRun& mr) {
  const auto& stop = mr.config.stop;
  for (const auto& rec : mr.result.trace) {
    if (stop.kind == StopKind::GradNorm && rec.grad_norm <= stop.threshold) return rec.k;
    if (stop.kind == StopKind::DistToOpt &&
        rec.dist_to_opt <= stop.threshold * static_cast<double>(mr.result.r0))
      return rec.k;
  }
  return -1;
}

PlotSeries to_series(const MethodRun& mr, bool use_gap) {
  PlotSeries series;
  series.label = mr.label;
  const auto& trace = mr.result.trace;
  const std::size_t stride = std::max<std::size_t>(1, trace.size() / 2000);
  for (std::size_t i = 0; i < trace.size(); i += stride) {
    const auto& rec = trace[i];
    series.points.emplace_back(static_cast<double>(rec.k), use_gap ? rec.gap : rec.grad_norm);
  }
  if (!trace.empty() && (trace.size() - 1) % stride != 0) {
    const auto& rec = trace.back();
    series.points.emplace_back(static_cast<double>(rec.k), use_gap ? rec.gap : rec.grad_norm);
  }
  return series;
}

std::vector<std::string> split_methods(const std::string& csv) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(csv);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  if (out.empty()) throw ConfigError("--methods needs at least one method");
  return out;
}

int cmd_solve(const ProblemFlags& pf, const RunFlags& rf, const std::string& method,
              bool certify) {
  const auto out_dir = resolve_out_dir(rf);
  ProblemBundle bundle = build_problem(pf, rf.tol_dist > 0);
  std::cerr << "[sfgm-bench] problem: " << bundle.desc
            << " L=" << bundle.oracle->lipschitz()
            << " mu=" << bundle.oracle->strong_convexity() << "\n";
  const SolverConfig<double> config = make_config(method, rf, *bundle.oracle);
  const VecX<double> x0 = draw_x0(bundle, pf.seed);
  const MethodRun mr = run_method(method, bundle, config, x0, certify);

  write_file(out_dir / ("trace_" + method + ".csv"), trace_csv(mr.result.trace));
  if (mr.certified)
    write_file(out_dir / ("cert_" + method + ".csv"), certification_csv(mr.certified->reports));

  std::printf("%-14s %10s %10s %16s %16s\n", "method", "iters", "stopped", "final_f",
              "final_grad");
  const double final_grad =
      mr.result.trace.empty() ? std::numeric_limits<double>::quiet_NaN()
                              : mr.result.trace.back().grad_norm;
  std::printf("%-14s %10zu %10s %16.8e %16.8e\n", method.c_str(), mr.result.trace.size(),
              mr.result.stopped_early ? "yes" : "no", mr.final_f, final_grad);
  if (mr.certified) {
    const auto& s = mr.certified->summary;
    std::fprintf(stderr,
                 "[sfgm-bench] certification: hard lambda/gamma/feasibility = %ld/%ld/%ld, "
                 "descent=%ld premise=%ld gap-bound=%ld\n",
                 s.hard_lambda_violations, s.hard_gamma_violations,
                 s.hard_feasibility_violations, s.descent_violations, s.premise_failures,
                 s.gap_bound_violations);
  }
  return 0;
}

int cmd_compare(const ProblemFlags& pf, const RunFlags& rf, const std::string& methods_csv) {
  const auto out_dir = resolve_out_dir(rf);
  const std::vector<std::string> methods = split_methods(methods_csv);
  ProblemBundle bundle = build_problem(pf, rf.tol_dist > 0);
  std::cerr << "[sfgm-bench] problem: " << bundle.desc
            << " L=" << bundle.oracle->lipschitz()
            << " mu=" << bundle.oracle->strong_convexity() << "\n";

  std::vector<SolverConfig<double>> configs;
  configs.reserve(methods.size());
  for (const auto& m : methods) configs.push_back(make_config(m, rf, *bundle.oracle));
  const VecX<double> x0 = draw_x0(bundle, pf.seed);  // one start shared by all methods

  std::vector<std::future<MethodRun>> futures;
  futures.reserve(methods.size());
  for (std::size_t i = 0; i < methods.size(); ++i) {
    futures.push_back(std::async(std::launch::async, [&, i] {
      return run_method(methods[i], bundle, configs[i], x0, false);
    }));
  }
  std::vector<MethodRun> runs;
  runs.reserve(methods.size());
  for (auto& f : futures) runs.push_back(f.get());

  long baseline_k = -1;
  for (const auto& mr : runs)
    if (mr.label == "fgm-css3") baseline_k = first_crossing(mr);

  std::string summary = "method,iters_run,k_stop,final_f,final_gap,final_grad_norm,wall_ms,"
                        "ratio_vs_fgm_css3,seed\n";
  std::printf("%-14s %10s %8s %14s %14s %14s %10s %8s\n", "method", "iters_run", "k_stop",
              "final_f", "final_gap", "final_grad", "wall_ms", "ratio");
  for (const auto& mr : runs) {
    const auto& trace = mr.result.trace;
    const long k_stop = first_crossing(mr);
    const double final_gap =
        trace.empty() ? std::numeric_limits<double>::quiet_NaN() : trace.back().gap;
    const double final_grad =
        trace.empty() ? std::numeric_limits<double>::quiet_NaN() : trace.back().grad_norm;
    std::uint64_t wall_ns = 0;
    for (const auto& rec : trace) wall_ns += rec.wall_ns;
    const double wall_ms = static_cast<double>(wall_ns) / 1e6;
    const double ratio = (k_stop >= 0 && baseline_k > 0)
                             ? static_cast<double>(k_stop) / static_cast<double>(baseline_k)
                             : std::numeric_limits<double>::quiet_NaN();

    write_file(out_dir / ("trace_" + mr.label + ".csv"), trace_csv(trace));
    summary += mr.label + "," + std::to_string(trace.size()) + "," + std::to_string(k_stop) +
               "," + format_double(mr.final_f) + "," + format_double(final_gap) + "," +
               format_double(final_grad) + "," + format_double(wall_ms) + "," +
               format_double(ratio) + "," + std::to_string(pf.seed) + "\n";
    std::printf("%-14s %10zu %8ld %14.6e %14.6e %14.6e %10.2f %8.3f\n", mr.label.c_str(),
                trace.size(), k_stop, mr.final_f, final_gap, final_grad, wall_ms, ratio);
  }
  write_file(out_dir / "summary.csv", summary);

  const bool use_gap = bundle.truth.has_value();
  std::vector<PlotSeries> series;
  for (const auto& mr : runs)
    if (!mr.result.trace.empty()) series.push_back(to_series(mr, use_gap));
  if (!series.empty()) {
    PlotOptions options;
    options.title = bundle.desc;
    options.y_label = use_gap ? "f - f*" : "gradient norm";
    try {
      write_file(out_dir / "compare.svg", emit_svg(series, options));
    } catch (const Error& e) {
      std::cerr << "[sfgm-bench] skipping SVG: " << e.what() << "\n";
    }
  } else {
    std::cerr << "[sfgm-bench] skipping SVG: traces are empty\n";
  }
  return 0;
}

int cmd_certify(const ProblemFlags& pf, const RunFlags& rf, const std::string& methods_csv,
                const std::string& trace_path) {
  if (!trace_path.empty()) {
    // Offline mode: re-check the lambda column of a stored trace.
    std::ifstream in(trace_path, std::ios::binary);
    if (!in) throw ConfigError("cannot open trace: " + trace_path);
    const auto trace = read_trace_csv(in);
    long violations = 0;
    long double product = 1.0L;
    for (const auto& rec : trace) {
      const double ref = static_cast<double>(product);
      if (std::abs(rec.lambda - ref) >
          1e-12 * std::max({std::abs(ref), std::abs(rec.lambda), 1e-300}))
        violations += 1;
      product *= 1.0L - static_cast<long double>(rec.alpha);
    }
    std::printf("%-10s %12s %18s\n", "trace", "iterations", "lambda_violations");
    std::printf("%-10s %12zu %18ld\n", "offline", trace.size(), violations);
    return violations == 0 ? 0 : 5;
  }

  const auto out_dir = resolve_out_dir(rf);
  const std::vector<std::string> methods = split_methods(methods_csv);
  ProblemBundle bundle = build_problem(pf, rf.tol_dist > 0);
  std::cerr << "[sfgm-bench] problem: " << bundle.desc
            << " L=" << bundle.oracle->lipschitz()
            << " mu=" << bundle.oracle->strong_convexity() << "\n";
  const VecX<double> x0 = draw_x0(bundle, pf.seed);

  bool hard_ok = true;
  std::printf("%-14s %8s %8s %8s %8s %8s %8s %10s\n", "method", "iters", "lambda", "gamma",
              "feas", "descent", "premise", "worst_gap");
  for (const auto& method : methods) {
    const SolverConfig<double> config = make_config(method, rf, *bundle.oracle);
    const MethodRun mr = run_method(method, bundle, config, x0, true);
    const auto& s = mr.certified->summary;
    write_file(out_dir / ("cert_" + method + ".csv"),
               certification_csv(mr.certified->reports));
    std::printf("%-14s %8ld %8ld %8ld %8ld %8ld %8ld %10.3e\n", method.c_str(), s.iterations,
                s.hard_lambda_violations, s.hard_gamma_violations,
                s.hard_feasibility_violations, s.descent_violations, s.premise_failures,
                s.worst_gap_ratio);
    hard_ok = hard_ok && s.hard_ok();
  }
  return hard_ok ? 0 : 5;
}

int cmd_bounds(double L, double mu, double S, double r0, double eps) {
  const auto b = iteration_lower_bounds<double>(L, mu, S, r0, eps);
  std::printf("%-18s %18s\n", "bound", "iterations");
  std::printf("%-18s %18.6f\n", "k_sfgm", b.k_sfgm);
  std::printf("%-18s %18.6f\n", "k_sfgm_asymptotic", b.k_sfgm_asymptotic);
  std::printf("%-18s %18.6f\n", "k_fgm", b.k_fgm);
  std::printf("%-18s %18.6f\n", "k_lower", b.k_lower);
  std::printf("%-18s %18.6f\n", "fgm/sfgm_asym", b.k_fgm / b.k_sfgm_asymptotic);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Benchmark harness for the accelerated first-order solver library"};
  app.require_subcommand(1);

  ProblemFlags pf;
  RunFlags rf;

  auto* solve = app.add_subcommand("solve", "Run one method and write its trace");
  std::string method = "sfgm-last";
  bool certify_flag = false;
  add_problem_flags(solve, pf);
  add_run_flags(solve, rf);
  solve->add_option("--method", method,
                    "gm|fgm-css1|fgm-css3|sfgm-memless|sfgm-last|sfgm (expert knobs)");
  solve->add_flag("--certify", certify_flag, "Also write the certification report CSV");

  auto* compare = app.add_subcommand("compare", "Run several methods from one starting point");
  std::string methods_csv = "gm,fgm-css1,fgm-css3,sfgm-memless,sfgm-last";
  add_problem_flags(compare, pf);
  add_run_flags(compare, rf);
  compare->add_option("--methods", methods_csv, "Comma-separated method labels");

  auto* certify = app.add_subcommand("certify", "Certify runs (exit 5 on hard violations)");
  std::string trace_path;
  add_problem_flags(certify, pf);
  add_run_flags(certify, rf);
  certify->add_option("--methods", methods_csv, "Comma-separated method labels");
  certify->add_option("--trace", trace_path, "Re-check the lambda column of a stored trace CSV");

  auto* bounds = app.add_subcommand("bounds", "Analytic iteration-count estimates");
  double b_L = 0, b_mu = 0, b_S = 0, b_r0 = 0, b_eps = 0;
  bounds->add_option("--L", b_L, "Smoothness constant")->required();
  bounds->add_option("--mu", b_mu, "Strong-convexity modulus")->required();
  bounds->add_option("--S", b_S, "Memory weight sum (0 = none, mu = asymptotic)");
  bounds->add_option("--r0", b_r0, "Distance to the minimizer at the start")->required();
  bounds->add_option("--eps", b_eps, "Target accuracy (must satisfy eps <= mu*r0^2/2)")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    std::cout << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (app.got_subcommand(solve)) return cmd_solve(pf, rf, method, certify_flag);
    if (app.got_subcommand(compare)) return cmd_compare(pf, rf, methods_csv);
    if (app.got_subcommand(certify)) return cmd_certify(pf, rf, methods_csv, trace_path);
    if (app.got_subcommand(bounds)) return cmd_bounds(b_L, b_mu, b_S, b_r0, b_eps);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const StallError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
