#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <vector>

#include "btq/normal_matrix.hpp"

namespace btq {

/// Monte-Carlo matrix estimate with per-entry standard errors of the mean.
struct McEstimate {
  Matrix mean;
  Eigen::MatrixXd stderr_;  // sqrt((Var Re + Var Im) / samples), per entry
  std::uint64_t samples = 0;

  /// |mean - target| / stderr, entrywise maximum; exact entries (stderr
  /// below floor) count as z = 0 when the deviation is at roundoff level.
  double max_z(const Matrix& target, double floor = 1e-13) const;
};

struct McOptions {
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  int workers = 1;
  std::uint64_t block = 4096;  // fixed partition unit; never affects output
};

using SampleFn = std::function<Matrix(const NormalTuple&)>;

/// Entrywise sample mean and standard error of f over i.i.d. mu_sample
/// draws. Samples are partitioned into fixed-size blocks; workers pull
/// blocks and the block partials are reduced in index order, so the result
/// depends only on (seed, samples), not on the worker count.
McEstimate mc_integrate(const SampleFn& f, const DomainSpec& dom, int N, int n,
                        const McOptions& opt);

/// Same-stream evaluation of several integrands: every f sees the identical
/// sample sequence, making differences of estimates correlation-cancelled.
std::vector<McEstimate> mc_integrate_many(const std::vector<SampleFn>& fs, const DomainSpec& dom,
                                          int N, int n, const McOptions& opt);

}  // namespace btq
