// cpst: command-line front end for the partial-symmetric tensor library.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cpst/completion.hpp"
#include "cpst/decompose.hpp"
#include "cpst/error.hpp"
#include "cpst/experiments.hpp"
#include "cpst/instances.hpp"
#include "cpst/io.hpp"
#include "cpst/rank_one.hpp"
#include "cpst/spectral.hpp"
#include "cpst/symmetry.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

fs::path output_dir() {
  if (const char* env = std::getenv("CPST_OUT_DIR"); env && *env) return env;
  return ".";
}

fs::path resolve_out(const std::string& flag, const std::string& fallback) {
  fs::path p = flag.empty() ? output_dir() / fallback : fs::path(flag);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  return p;
}

json complex_json(cpst::Complex z) { return json::array({z.real(), z.imag()}); }

json matrix_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

json vector_json(const Eigen::VectorXcd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_json(v(i)));
  return out;
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  os << j.dump(2) << '\n';
}

struct Flags {
  int n = 3;
  int r = 1;
  std::optional<double> p;
  std::uint64_t seed = 0;
  std::optional<int> trials;
  std::optional<double> tol;
  std::optional<double> rho;
  std::optional<double> tau;
  std::optional<double> eta;
  std::optional<double> mu_end;
  std::optional<int> max_iter;
  std::optional<std::string> expect;
  bool close_mask = false;
  std::string out;
};

void add_common(CLI::App* cmd, Flags& f) { cmd->add_option("--out", f.out, "Output path (file or directory)"); }

// generate

struct GenerateArgs {
  std::string kind = "cps_orthonormal";
  std::vector<double> lambdas;
};

int cmd_generate(const Flags& f, const GenerateArgs& g) {
  cpst::InstanceSpec spec;
  spec.kind = cpst::parse_instance_kind(g.kind);
  spec.n = f.n;
  spec.r = f.r;
  spec.seed = f.seed;
  if (!g.lambdas.empty()) spec.lambdas = g.lambdas;
  const cpst::Instance inst = cpst::generate_instance(spec);

  const std::string stem = g.kind + "_n" + std::to_string(f.n) + "_r" + std::to_string(f.r) + "_s" +
                           std::to_string(f.seed);
  const fs::path path = resolve_out(f.out, stem + ".tensor");
  cpst::save_tensor(path, inst.tensor);

  json truth;
  truth["kind"] = g.kind;
  truth["n"] = f.n;
  truth["r"] = f.r;
  truth["seed"] = f.seed;
  truth["lambdas"] = inst.truth.lambdas;
  truth["matrices"] = json::array();
  for (const auto& m : inst.truth.matrices) truth["matrices"].push_back(matrix_json(m));
  truth["vectors"] = json::array();
  for (const auto& v : inst.truth.vectors) truth["vectors"].push_back(vector_json(v));
  fs::path truth_path = path;
  truth_path += ".truth.json";
  write_json(truth_path, truth);

  std::cout << "tensor: " << path.string() << "\ntruth: " << truth_path.string() << '\n';
  return 0;
}

// check

int cmd_check(const Flags& f, const std::string& in) {
  const cpst::Tensor4 t = cpst::load_tensor(in);
  const double tol = f.tol.value_or(cpst::kDefaultSymmetryTol);
  const auto cls = cpst::classify_symmetry(t, tol);
  std::cout << "class: " << cpst::to_string(cls.tag) << '\n'
            << "n: " << t.dim() << '\n'
            << "frobenius_norm: " << num(cpst::frobenius_norm(t)) << '\n'
            << "rank_m: " << cpst::rank_m(t) << '\n';
  if (cpst::satisfies(t, cpst::SymmetryTag::cps, tol))
    std::cout << "rank_one: " << (cpst::is_rank_one_tensor(t) ? "true" : "false") << '\n';
  return 0;
}

// decompose

int cmd_decompose(const Flags& f, const std::string& in, const std::string& method) {
  const cpst::Tensor4 t = cpst::load_tensor(in);
  const auto tag = f.expect ? cpst::parse_symmetry_tag(*f.expect) : cpst::SymmetryTag::cps;
  cpst::require_symmetry(t, tag, "decompose");

  cpst::MatrixDecomposition d;
  std::vector<double> residuals;
  if (method == "smroa") {
    auto res = cpst::smroa(t);
    d = std::move(res.decomposition);
    residuals = res.report.residual;
  } else {
    d = cpst::full_matrix_decomposition(t, f.tol);
  }
  const double norm = cpst::frobenius_norm(t);
  const double rebuild = cpst::frobenius_norm(cpst::reconstruct(d) - t);

  const fs::path path = resolve_out(f.out, fs::path(in).stem().string() + ".decomp");
  cpst::save_decomposition(path, d);

  std::cout << "method: " << method << "\nterms: " << d.factors.size() << '\n';
  std::cout << "index,lambda,residual\n";
  for (std::size_t i = 0; i < d.factors.size(); ++i) {
    std::cout << i + 1 << ',' << num(d.factors[i].lambda) << ',';
    if (i < residuals.size()) std::cout << num(residuals[i]);
    std::cout << '\n';
  }
  std::cout << "reconstruction_error: " << num(norm > 0.0 ? rebuild / norm : rebuild) << '\n';
  if (norm > 0.0) {
    const auto b = cpst::cp_rank_bounds(t);
    std::cout << "rank_m: " << b.rank_m << "\ncp_rank_bounds: [" << b.cp_lower << ", " << b.cp_upper << "]\n";
  } else {
    std::cout << "rank_m: 0\n";
  }
  std::cout << "output: " << path.string() << '\n';
  return 0;
}

// complete

int cmd_complete(const Flags& f, const std::string& in, const std::string& mask_path) {
  const cpst::Tensor4 truth = cpst::load_tensor(in);
  cpst::SampleMask mask;
  if (!mask_path.empty()) {
    mask = cpst::load_mask(mask_path, f.close_mask);
  } else if (f.p) {
    mask = cpst::gen_ps_mask(truth.dim(), *f.p, f.seed);
  } else {
    throw cpst::InvalidInput("complete: provide --mask or --p");
  }

  cpst::CompletionConfig cfg;
  if (f.tau) cfg.tau = *f.tau;
  if (f.eta) cfg.eta = *f.eta;
  if (f.mu_end) cfg.mu_end = *f.mu_end;
  if (f.tol) cfg.inner_tol = *f.tol;
  if (f.max_iter) cfg.max_inner = *f.max_iter;

  const auto res = cpst::complete_and_score(truth, mask, cfg);
  const fs::path path = resolve_out(f.out, fs::path(in).stem().string() + ".completed.tensor");
  cpst::save_tensor(path, res.x);

  std::cout << "n,r,p,seed,err,rank_m,iters\n"
            << truth.dim() << ',' << f.r << ',' << num(f.p.value_or(mask.sample_ratio())) << ',' << f.seed << ','
            << num(res.report.relative_error.value_or(NAN)) << ',' << res.report.rank_m_solution << ','
            << res.report.total_iterations << '\n';
  std::cout << "sample_ratio: " << num(mask.sample_ratio()) << "\noutput: " << path.string() << '\n';
  return 0;
}

// rank1

int cmd_rank1(const Flags& f, const std::string& in, const std::string& method, double lambda_nuc,
              int warm_start) {
  const cpst::Tensor4 t = cpst::load_tensor(in);
  cpst::RelaxConfig cfg;
  if (f.rho) cfg.rho = *f.rho;
  if (f.tau) cfg.tau_admm = *f.tau;
  if (f.tol) cfg.tol = *f.tol;
  if (f.max_iter) cfg.max_iter = *f.max_iter;
  cfg.lambda_nuc = lambda_nuc;
  cfg.warm_start_steps = warm_start;

  const std::string stem = fs::path(in).stem().string() + "." + method;
  json out;
  out["method"] = method;

  if (method == "plma") {
    const auto res = cpst::plma_low_rank_approx(t, cfg);
    out["alpha"] = res.alpha;
    out["X"] = matrix_json(res.x.cast<cpst::Complex>());
    out["iterations"] = res.report.iterations;
    out["termination"] = std::string(cpst::to_string(res.report.termination));
    out["objective"] = res.report.objective.empty() ? NAN : res.report.objective.back();
    std::cout << "alpha: " << num(res.alpha) << "\nrank_X: " << cpst::numerical_rank(res.x.cast<cpst::Complex>(), 1e-8)
              << '\n';
    std::cout << "iterations: " << res.report.iterations << "\ntermination: " << cpst::to_string(res.report.termination)
              << '\n';
  } else if (method == "alm") {
    const auto res = cpst::alm_nonconvex(t, cfg);
    out["lambda"] = res.solution.lambda;
    out["x"] = vector_json(res.solution.x);
    out["iterations"] = res.report.iterations;
    out["termination"] = std::string(cpst::to_string(res.report.termination));
    const fs::path tpath = resolve_out(f.out.empty() ? "" : f.out + ".tensor", stem + ".tensor");
    cpst::save_tensor(tpath, res.x);
    std::cout << "lambda: " << num(res.solution.lambda) << "\niterations: " << res.report.iterations
              << "\ntermination: " << cpst::to_string(res.report.termination) << "\ntensor: " << tpath.string()
              << '\n';
  } else {
    const auto res = cpst::admm_conv1(t, cfg);
    const auto& c = res.certification;
    out["rho"] = res.rho;
    out["iterations"] = res.report.iterations;
    out["termination"] = std::string(cpst::to_string(res.report.termination));
    out["certification"] = {{"frob_norm", c.frob_norm},
                            {"nuclear_norm_3214", c.nuclear_norm_3214},
                            {"objective", c.objective},
                            {"verdict", std::string(cpst::to_string(c.verdict))}};
    if (c.verdict == cpst::Verdict::certified_global) {
      const auto r1 = cpst::extract_rank1(res.x, 1e-6);
      out["lambda"] = r1.lambda;
      out["x"] = vector_json(r1.x);
    }
    const fs::path tpath = resolve_out(f.out.empty() ? "" : f.out + ".tensor", stem + ".tensor");
    cpst::save_tensor(tpath, res.x);
    std::cout << "rho: " << num(res.rho) << "\niterations: " << res.report.iterations
              << "\ntermination: " << cpst::to_string(res.report.termination)
              << "\nfrob_norm: " << num(c.frob_norm) << "\nnuclear_norm_3214: " << num(c.nuclear_norm_3214)
              << "\nobjective: " << num(c.objective) << "\nverdict: " << cpst::to_string(c.verdict)
              << "\ntensor: " << tpath.string() << '\n';
  }
  const fs::path jpath = resolve_out(f.out.empty() ? "" : f.out + ".json", stem + ".json");
  write_json(jpath, out);
  std::cout << "result: " << jpath.string() << '\n';
  return 0;
}

// reproduce

template <class Fn>
void write_csv(const fs::path& path, Fn&& fn) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  fn(os);
}

int cmd_reproduce(const Flags& f, const std::string& experiment, const std::vector<int>& ns) {
  const fs::path dir = f.out.empty() ? output_dir() : fs::path(f.out);
  fs::create_directories(dir);

  if (experiment == "recovery") {
    cpst::RecoveryOptions opt;
    if (f.trials) opt.trials = *f.trials;
    if (f.tol) opt.lambda_tol = *f.tol;
    const auto rows = cpst::run_recovery(opt, f.seed);
    write_csv(dir / "recovery.csv", [&](std::ostream& os) { cpst::write_recovery_csv(os, rows); });
    int ok = 0;
    for (const auto& r : rows) ok += r.success;
    std::cout << "recovery: " << ok << "/" << rows.size() << " successes\n";
  } else if (experiment == "table1") {
    cpst::Table1Options opt;
    if (!ns.empty()) opt.ns = ns;
    if (f.trials) opt.trials = *f.trials;
    if (f.tau) opt.completion.tau = *f.tau;
    if (f.eta) opt.completion.eta = *f.eta;
    if (f.mu_end) opt.completion.mu_end = *f.mu_end;
    if (f.tol) opt.completion.inner_tol = *f.tol;
    if (f.max_iter) opt.completion.max_inner = *f.max_iter;
    const auto rows = cpst::run_table1(opt, f.seed);
    const auto cells = cpst::summarize_table1(rows);
    write_csv(dir / "table1.csv", [&](std::ostream& os) { cpst::write_table1_csv(os, rows); });
    write_csv(dir / "table1_summary.csv", [&](std::ostream& os) { cpst::write_table1_summary_csv(os, cells); });
    cpst::write_table1_summary_csv(std::cout, cells);
  } else if (experiment == "rank1_admm") {
    cpst::AdmmOptions opt;
    if (f.trials) opt.trials = *f.trials;
    if (f.rho) opt.relax.rho = *f.rho;
    if (f.tau) opt.relax.tau_admm = *f.tau;
    if (f.tol) opt.relax.tol = *f.tol;
    if (f.max_iter) opt.relax.max_iter = *f.max_iter;
    const auto rows = cpst::run_rank1_admm(opt, f.seed);
    write_csv(dir / "rank1_admm.csv", [&](std::ostream& os) { cpst::write_rank1_csv(os, rows); });
    std::vector<int> iters;
    int certified = 0;
    for (const auto& r : rows) {
      iters.push_back(r.iterations);
      certified += r.certified;
    }
    std::sort(iters.begin(), iters.end());
    double mean = 0.0;
    for (int it : iters) mean += it;
    if (!iters.empty()) mean /= static_cast<double>(iters.size());
    const double median = iters.empty() ? 0.0
                          : iters.size() % 2 ? iters[iters.size() / 2]
                                             : 0.5 * (iters[iters.size() / 2 - 1] + iters[iters.size() / 2]);
    std::cout << "trials: " << rows.size() << "\nmean_iterations: " << num(mean)
              << "\nmedian_iterations: " << num(median) << "\ncertified: " << certified << "/" << rows.size()
              << '\n';
  } else {
    throw cpst::InvalidInput("unknown experiment '" + experiment + "'");
  }
  std::cout << "output: " << dir.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decomposition, completion and rank-one approximation of partial-symmetric tensors"};
  app.require_subcommand(1);
  Flags f;

  auto* gen = app.add_subcommand("generate", "Generate a random instance and its ground truth");
  GenerateArgs g;
  gen->add_option("--kind", g.kind, "ps_pairs|ps_orthonormal|cps_orthonormal|cps_vector_sum|skew_ps|rank1_cps")
      ->capture_default_str();
  gen->add_option("--n", f.n, "Dimension")->capture_default_str();
  gen->add_option("--r", f.r, "Number of terms")->capture_default_str();
  gen->add_option("--seed", f.seed, "Random seed")->capture_default_str();
  gen->add_option("--lambdas", g.lambdas, "Explicit coefficients")->delimiter(',');
  add_common(gen, f);

  std::string in;
  auto* check = app.add_subcommand("check", "Classify a tensor file");
  check->add_option("input", in, "Tensor file")->required();
  check->add_option("--tol", f.tol, "Relative symmetry tolerance");

  std::string method = "smroa";
  auto* dec = app.add_subcommand("decompose", "Matrix outer-product decomposition");
  dec->add_option("input", in, "Tensor file")->required();
  dec->add_option("--method", method, "smroa|full")
      ->check(CLI::IsMember({"smroa", "full"}))
      ->capture_default_str();
  dec->add_option("--expect", f.expect, "Required symmetry class");
  dec->add_option("--tol", f.tol, "Relative eigenvalue cutoff for --method full");
  add_common(dec, f);

  std::string mask_path;
  auto* comp = app.add_subcommand("complete", "Complete a partially observed PS tensor");
  comp->add_option("input", in, "Reference tensor file")->required();
  comp->add_option("--mask", mask_path, "Mask file");
  comp->add_option("--p", f.p, "Orbit sampling probability when no mask is given");
  comp->add_option("--seed", f.seed, "Mask sampling seed")->capture_default_str();
  comp->add_option("--r", f.r, "Term count recorded in the report");
  comp->add_flag("--close-mask", f.close_mask, "Close a non-PS-closed mask instead of rejecting it");
  comp->add_option("--tau", f.tau, "Gradient step");
  comp->add_option("--eta", f.eta, "Continuation factor");
  comp->add_option("--mu-end", f.mu_end, "Final continuation parameter");
  comp->add_option("--tol", f.tol, "Inner stopping tolerance");
  comp->add_option("--max-iter", f.max_iter, "Inner iteration cap per stage");
  add_common(comp, f);

  std::string rmethod = "admm";
  double lambda_nuc = 0.0;
  int warm_start = 5;
  auto* r1 = app.add_subcommand("rank1", "Rank-one approximation");
  r1->add_option("input", in, "Tensor file")->required();
  r1->add_option("--method", rmethod, "admm|alm|plma")
      ->check(CLI::IsMember({"admm", "alm", "plma"}))
      ->capture_default_str();
  r1->add_option("--rho", f.rho, "Regularization weight");
  r1->add_option("--tau", f.tau, "Augmented Lagrangian penalty");
  r1->add_option("--tol", f.tol, "Stopping tolerance");
  r1->add_option("--max-iter", f.max_iter, "Iteration cap");
  r1->add_option("--lambda-nuc", lambda_nuc, "Nuclear weight for plma")->capture_default_str();
  r1->add_option("--warm-start", warm_start, "ALM sweeps that set rho for admm; 0 keeps --rho")
      ->capture_default_str();
  add_common(r1, f);

  std::string experiment;
  std::vector<int> ns;
  auto* rep = app.add_subcommand("reproduce", "Regenerate experiment tables as CSV");
  rep->add_option("experiment", experiment, "recovery|table1|rank1_admm")
      ->required()
      ->check(CLI::IsMember({"recovery", "table1", "rank1_admm"}));
  rep->add_option("--trials", f.trials, "Trials (per cell for table1)");
  rep->add_option("--seed", f.seed, "Base seed")->capture_default_str();
  rep->add_option("--n", ns, "Dimensions for table1")->delimiter(',');
  rep->add_option("--tol", f.tol, "Tolerance passed to the solver");
  rep->add_option("--rho", f.rho, "Regularization weight (rank1_admm)");
  rep->add_option("--tau", f.tau, "Step or penalty parameter");
  rep->add_option("--eta", f.eta, "Continuation factor (table1)");
  rep->add_option("--mu-end", f.mu_end, "Final continuation parameter (table1)");
  rep->add_option("--max-iter", f.max_iter, "Iteration cap");
  add_common(rep, f);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) return cmd_generate(f, g);
    if (*check) return cmd_check(f, in);
    if (*dec) return cmd_decompose(f, in, method);
    if (*comp) return cmd_complete(f, in, mask_path);
    if (*r1) return cmd_rank1(f, in, rmethod, lambda_nuc, warm_start);
    if (*rep) return cmd_reproduce(f, experiment, ns);
  } catch (const cpst::InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const cpst::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
