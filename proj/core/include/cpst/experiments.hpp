#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "cpst/completion.hpp"
#include "cpst/rank_one.hpp"

namespace cpst {

/// Runs fn(0..count-1) on a pool of worker threads. Each index runs exactly
/// once; exceptions are rethrown on the calling thread. threads = 0 uses the
/// hardware concurrency.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn, unsigned threads = 0);

/// min over unit complex c of ||a - c b||_F.
double phase_aligned_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

struct RecoveryTrial {
  int trial = 0;
  std::uint64_t seed = 0;
  int n = 0;
  double max_lambda_err = 0.0;
  double max_factor_err = 0.0;
  bool ordered = false;
  bool success = false;
};

struct RecoveryOptions {
  int trials = 100;
  int r = 3;
  int n_min = 3;
  int n_max = 7;
  double lambda_tol = 1e-8;
  double factor_tol = 1e-7;
};

/// SMROA on random real orthonormal-factor instances; trial t uses n = n_min + t mod (n_max - n_min + 1).
std::vector<RecoveryTrial> run_recovery(const RecoveryOptions& options, std::uint64_t seed);

struct Table1Trial {
  int n = 0;
  int r = 0;
  double p = 0.0;
  std::uint64_t seed = 0;
  double err = 0.0;
  int rank_m = 0;
  int iters = 0;
  double sample_ratio = 0.0;
};

struct Table1Cell {
  int n = 0;
  int r = 0;
  double p = 0.0;
  int trials = 0;
  double mean_err = 0.0;
  int max_rank_m = 0;
  int trials_rank_2r = 0;  // trials whose solution has rank_m = 2r
};

struct Table1Options {
  std::vector<int> ns{10, 15};
  std::vector<int> rs{1, 2, 3};
  std::vector<double> ps{0.8, 0.5};
  int trials = 20;
  CompletionConfig completion;
};

/// Completion of random pair-form instances over the (n, r, p) grid. Cells
/// are emitted in grid order (n outer, then r, then p), trials within a cell in order.
std::vector<Table1Trial> run_table1(const Table1Options& options, std::uint64_t seed);
std::vector<Table1Cell> summarize_table1(const std::vector<Table1Trial>& trials);

struct AdmmTrial {
  std::uint64_t seed = 0;
  int iterations = 0;
  double objective = 0.0;
  bool certified = false;
  double nuclear_norm = 0.0;
  double rho = 0.0;
  bool converged = false;
};

struct AdmmOptions {
  int trials = 50;
  int n = 5;
  int terms = 5;
  RelaxConfig relax;
};

/// ADMM with ALM warm start on random sums of a o a o conj(a) o conj(a).
std::vector<AdmmTrial> run_rank1_admm(const AdmmOptions& options, std::uint64_t seed);

/// CSV writers with fixed headers:
///   recovery: trial,seed,n,max_lambda_err,max_factor_err,ordered,success
///   table1:   n,r,p,seed,err,rank_m,iters
///   summary:  n,r,p,trials,mean_err,max_rank_m,trials_rank_2r
///   rank1:    seed,method,iterations,objective,certified,nuclear_norm
void write_recovery_csv(std::ostream& os, const std::vector<RecoveryTrial>& rows);
void write_table1_csv(std::ostream& os, const std::vector<Table1Trial>& rows);
void write_table1_summary_csv(std::ostream& os, const std::vector<Table1Cell>& rows);
void write_rank1_csv(std::ostream& os, const std::vector<AdmmTrial>& rows);

}  // namespace cpst
