#pragma once

#include <map>

#include "btq/config.hpp"

namespace btq {
namespace suites {

struct CriterionLine {
  std::string label;
  bool pass = false;
  bool informational = false;  // demo lines never gate the suite
  std::string detail;
};

struct SuiteResult {
  std::string name;
  ordered_json report;
  std::vector<CriterionLine> lines;
  std::map<std::string, std::string> tables;  // csv name -> content

  bool pass() const {
    for (const auto& l : lines)
      if (!l.informational && !l.pass) return false;
    return true;
  }
};

/// Monomial-moment identity on the domain: MC of Z^{*j} Z^k against
/// delta_{jk} k! h^k I for j, k <= 4, N in {2,3}, h in {0.5, 0.1}.
SuiteResult verify_orthogonality(const ExperimentConfig& cfg);

/// Gram matrix of e_k^# chi_j against the identity, N in {2,3}, K = 4,
/// plane and disc.
SuiteResult verify_gram_identity(const ExperimentConfig& cfg);

/// Spectral-symbol correspondence battery (phi in {1, z, z^2, z zbar}).
SuiteResult verify_spectral(const ExperimentConfig& cfg);

/// U-invariant correspondence battery (pi_h targets).
SuiteResult verify_u_invariant(const ExperimentConfig& cfg);

/// The cochain-sign discriminator: sign = -1 reproduces the exact
/// composition identity, sign = +1 leaves the 2h defect.
SuiteResult sign_probe(const ExperimentConfig& cfg);

/// Order fits for the spectral expansion batteries (plane R in {0,1},
/// disc R = 0).
SuiteResult semiclassical_spectral(const ExperimentConfig& cfg);

/// Two-track U-invariant expansion plus the polynomial upsilon-consistency
/// identity.
SuiteResult semiclassical_u_invariant(const ExperimentConfig& cfg);

/// Norm-limit tables for both domains; gate |norm - 1/e| <= 0.02 at
/// h = 0.02 on the plane.
SuiteResult sup_norm_limit_suite(const ExperimentConfig& cfg);

/// Norm-decay pathology of |det Z|^2 e^{-Tr Z*Z} I via the U-invariant
/// reduction; log-log slope gate 1.0 +- 0.2.
SuiteResult decay_demo(const ExperimentConfig& cfg);

/// Single-domain kernel checks: scalar exponential oracle, reproducing
/// property, positivity, Hermitian symmetry, non-closed-form witness.
SuiteResult kernel_single(const ExperimentConfig& cfg);

/// Product-domain kernel checks: Gram identity for both orderings, n = 1
/// reduction, ordering sensitivity, correspondence-breakdown demo.
SuiteResult kernel_product(const ExperimentConfig& cfg);

/// Dispatch by config command name ("verify-theorem" uses cfg.part,
/// "semiclassical"/"kernel-check" use cfg.mode).
SuiteResult run_suite(const ExperimentConfig& cfg);

/// Assembled report document with version and resolved config.
ordered_json report_document(const ExperimentConfig& cfg, const SuiteResult& res);

}  // namespace suites
}  // namespace btq
