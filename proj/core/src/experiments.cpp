#include "cpst/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>

#include "cpst/decompose.hpp"
#include "cpst/error.hpp"
#include "cpst/instances.hpp"

namespace cpst {

namespace {

// Shortest text that reads back to the same double.
std::string fmt(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn, unsigned threads) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(count);
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

double phase_aligned_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  const Complex overlap = (b.adjoint() * a).trace();
  const double mag = std::abs(overlap);
  return (a - (mag > 0.0 ? overlap / mag : Complex(1.0)) * b).norm();
}

std::vector<RecoveryTrial> run_recovery(const RecoveryOptions& options, std::uint64_t seed) {
  if (options.trials < 0) throw InvalidInput("run_recovery: trials must be nonnegative");
  if (options.n_min < 1 || options.n_max < options.n_min)
    throw InvalidInput("run_recovery: invalid dimension range");
  const int span = options.n_max - options.n_min + 1;
  std::vector<RecoveryTrial> rows(options.trials);

  parallel_for(rows.size(), [&](std::size_t t) {
    RecoveryTrial& row = rows[t];
    row.trial = static_cast<int>(t);
    row.seed = derive_seed(seed, t);
    row.n = options.n_min + static_cast<int>(t) % span;
    const Instance inst = generate_instance({InstanceKind::ps_orthonormal, row.n, options.r, row.seed, {}});

    std::vector<int> order(options.r);
    for (int i = 0; i < options.r; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return std::abs(inst.truth.lambdas[a]) > std::abs(inst.truth.lambdas[b]);
    });

    SmroaOptions smroa_options;
    smroa_options.max_terms = options.r;
    const auto factors = smroa(inst.tensor, smroa_options).decomposition.factors;
    if (static_cast<int>(factors.size()) != options.r) {
      row.max_lambda_err = row.max_factor_err = INFINITY;
      return;
    }
    row.ordered = true;
    for (int i = 0; i < options.r; ++i) {
      const int k = order[i];
      row.max_lambda_err = std::max(row.max_lambda_err, std::abs(factors[i].lambda - inst.truth.lambdas[k]));
      row.max_factor_err =
          std::max(row.max_factor_err, phase_aligned_distance(factors[i].e, inst.truth.matrices[k]));
      if (i > 0 && std::abs(factors[i].lambda) > std::abs(factors[i - 1].lambda)) row.ordered = false;
    }
    row.success = row.ordered && row.max_lambda_err <= options.lambda_tol &&
                  row.max_factor_err <= options.factor_tol;
  });
  return rows;
}

std::vector<Table1Trial> run_table1(const Table1Options& options, std::uint64_t seed) {
  options.completion.validate();
  if (options.trials < 0) throw InvalidInput("run_table1: trials must be nonnegative");
  std::vector<Table1Trial> rows;
  for (int n : options.ns)
    for (int r : options.rs)
      for (double p : options.ps)
        for (int t = 0; t < options.trials; ++t) {
          Table1Trial row;
          row.n = n;
          row.r = r;
          row.p = p;
          row.seed = derive_seed(seed, rows.size());
          rows.push_back(row);
        }

  parallel_for(rows.size(), [&](std::size_t i) {
    Table1Trial& row = rows[i];
    const Instance inst = generate_instance({InstanceKind::ps_pairs, row.n, row.r, row.seed, {}});
    const SampleMask mask = gen_ps_mask(row.n, row.p, derive_seed(row.seed, 0));
    const CompletionResult res = complete_and_score(inst.tensor, mask, options.completion);
    row.err = res.report.relative_error.value_or(NAN);
    row.rank_m = res.report.rank_m_solution;
    row.iters = res.report.total_iterations;
    row.sample_ratio = mask.sample_ratio();
  });
  return rows;
}

std::vector<Table1Cell> summarize_table1(const std::vector<Table1Trial>& trials) {
  std::vector<Table1Cell> cells;
  for (const auto& t : trials) {
    if (cells.empty() || cells.back().n != t.n || cells.back().r != t.r || cells.back().p != t.p)
      cells.push_back({t.n, t.r, t.p, 0, 0.0, 0, 0});
    Table1Cell& c = cells.back();
    ++c.trials;
    c.mean_err += t.err;
    c.max_rank_m = std::max(c.max_rank_m, t.rank_m);
    if (t.rank_m == 2 * t.r) ++c.trials_rank_2r;
  }
  for (auto& c : cells) c.mean_err /= c.trials;
  return cells;
}

std::vector<AdmmTrial> run_rank1_admm(const AdmmOptions& options, std::uint64_t seed) {
  options.relax.validate();
  if (options.trials < 0) throw InvalidInput("run_rank1_admm: trials must be nonnegative");
  std::vector<AdmmTrial> rows(options.trials);
  parallel_for(rows.size(), [&](std::size_t t) {
    AdmmTrial& row = rows[t];
    row.seed = derive_seed(seed, t);
    const Instance inst =
        generate_instance({InstanceKind::cps_vector_sum, options.n, options.terms, row.seed, {}});
    const AdmmResult res = admm_conv1(inst.tensor, options.relax);
    row.iterations = res.report.iterations;
    row.objective = res.certification.objective;
    row.certified = res.certification.verdict == Verdict::certified_global;
    row.nuclear_norm = res.certification.nuclear_norm_3214;
    row.rho = res.rho;
    row.converged = res.report.termination == Termination::converged;
  });
  return rows;
}

void write_recovery_csv(std::ostream& os, const std::vector<RecoveryTrial>& rows) {
  os << "trial,seed,n,max_lambda_err,max_factor_err,ordered,success\n";
  for (const auto& r : rows)
    os << r.trial << ',' << r.seed << ',' << r.n << ',' << fmt(r.max_lambda_err) << ','
       << fmt(r.max_factor_err) << ',' << r.ordered << ',' << r.success << '\n';
}

void write_table1_csv(std::ostream& os, const std::vector<Table1Trial>& rows) {
  os << "n,r,p,seed,err,rank_m,iters\n";
  for (const auto& r : rows)
    os << r.n << ',' << r.r << ',' << fmt(r.p) << ',' << r.seed << ',' << fmt(r.err) << ',' << r.rank_m
       << ',' << r.iters << '\n';
}

void write_table1_summary_csv(std::ostream& os, const std::vector<Table1Cell>& rows) {
  os << "n,r,p,trials,mean_err,max_rank_m,trials_rank_2r\n";
  for (const auto& c : rows)
    os << c.n << ',' << c.r << ',' << fmt(c.p) << ',' << c.trials << ',' << fmt(c.mean_err) << ','
       << c.max_rank_m << ',' << c.trials_rank_2r << '\n';
}

void write_rank1_csv(std::ostream& os, const std::vector<AdmmTrial>& rows) {
  os << "seed,method,iterations,objective,certified,nuclear_norm\n";
  for (const auto& r : rows)
    os << r.seed << ",admm," << r.iterations << ',' << fmt(r.objective) << ',' << r.certified << ','
       << fmt(r.nuclear_norm) << '\n';
}

}  // namespace cpst
