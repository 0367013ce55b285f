#pragma once

#include <vector>

#include "btq/matrix_hilbert.hpp"
#include "btq/mc.hpp"

namespace btq {

/// Truncated reproducing-kernel series with an explicit tail bound: the
/// evaluation refuses (throws) rather than silently truncating when the
/// neglected tail cannot be certified below the tolerance.
struct KernelSeries {
  DomainSpec dom;
  int K_max = 64;
  double tail_tol = 1e-12;
};

/// Scalar kernel sum_{k<=K_max} x^k conj(y)^k / m_k with the certified tail
/// bound (plane: exponential-series remainder; disc: geometric bound from
/// the monotone norm ratios).
cxd scalar_kernel(cxd x, cxd y, const KernelSeries& ks);

/// Matrix kernel K(X, Y) = sum_k psi_k^#(X) psi_k^#(Y)^* for single-domain
/// points (n = 1). Hermitian in (X, Y) and positive on the diagonal.
Matrix kernel_eval(const NormalTuple& X, const NormalTuple& Y, const KernelSeries& ks);

/// Coherent state k_{Z,chi}(X) = K(X, Z) K(Z, Z)^{-1/2} chi. The Hermitian
/// square root uses an eigendecomposition with eigenvalue floor 1e-12 and
/// errors out when K(Z, Z) is rank-deficient at that floor.
class CoherentState {
 public:
  CoherentState(const NormalTuple& Z, const Eigen::VectorXcd& chi, const KernelSeries& ks);
  Eigen::VectorXcd operator()(const NormalTuple& X) const;
  const Eigen::VectorXcd& weight() const { return weight_; }  // K(Z,Z)^{-1/2} chi

 private:
  NormalTuple Z_;
  Eigen::VectorXcd weight_;
  KernelSeries ks_;
};

/// MC check of the reproducing property on the basis element e_k^# chi_j:
/// integral of K(Z, X) e_k^#(X) chi_j dmu_h(X) against e_k^#(Z) chi_j.
CompareReport reproduce_check(int k, int j, const NormalTuple& Z, const KernelSeries& ks,
                              const McOptions& opt);

/// Point of the product domain: an n-tuple of normal matrices, each with its
/// own unitary, not required to commute across slots.
struct ProductTuple {
  std::vector<NormalTuple> factors;  // each with n = 1
  int N() const { return factors.empty() ? 0 : factors.front().N; }
};

ProductTuple product_mu_sample(const DomainSpec& dom, int N, int n, std::mt19937_64& rng);

/// Product-domain kernel of the non-commuting tuple space:
///   sum_{k_1..k_n <= K_max} X_1^{k_1}...X_n^{k_n} Y_n^{*k_n}...Y_1^{*k_1}
///                            / (k_1!...k_n! h^{sum k}).
/// `reversed` evaluates the kernel of the reversed-ordering basis.
Matrix product_kernel_eval(const ProductTuple& X, const ProductTuple& Y, const KernelSeries& ks,
                           bool reversed = false);

/// MC Gram matrix of the product basis Z_1^{k_1} Z_2^{k_2} chi_j (degrees up
/// to k_max per slot); the closed-form expectation is diagonal with entries
/// k_1! k_2! h^{k_1+k_2}.
McEstimate product_gram_mc(const DomainSpec& dom, int N, int k_max, bool reversed,
                           const McOptions& opt);
Matrix product_gram_target(const DomainSpec& dom, int N, int k_max);

/// MC value of <T_phi k_{Z,chi}, k_{Z,eta}> for exploration; no asserted
/// expansion coefficients.
struct ScalarEstimate {
  cxd value;
  double stderr_ = 0.0;
  std::uint64_t samples = 0;
};
ScalarEstimate coherent_expectation(const SampleFn& phi_bar, const NormalTuple& Z,
                                    const Eigen::VectorXcd& chi, const Eigen::VectorXcd& eta,
                                    const KernelSeries& ks, const McOptions& opt);

}  // namespace btq
