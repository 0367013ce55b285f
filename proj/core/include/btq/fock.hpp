#pragma once

#include <Eigen/Dense>
#include <string>

#include "btq/domain.hpp"
#include "btq/symbol.hpp"

namespace btq {

using Matrix = Eigen::MatrixXcd;

/// Truncated orthonormal monomial basis e_k = z^k / sqrt(m_k), k = 0..K,
/// with m_k = moment(k, k, 0). Monomials are orthogonal on the radially
/// symmetric measures, so orthonormality is exact by construction.
class FockBasis {
 public:
  FockBasis(const DomainSpec& dom, int K);

  const DomainSpec& dom() const { return dom_; }
  int K() const { return K_; }
  double norm_sq(int k) const;    // m_k
  double sqrt_norm(int k) const;  // sqrt(m_k)
  cxd eval(int k, cxd z) const;   // e_k(z)

 private:
  DomainSpec dom_;
  int K_;
  std::vector<double> sqrt_norms_;
};

/// Exact finite compression of the Toeplitz operator with a one-variable
/// symbol. Entry (l, k) = <phi e_k, e_l>; for a term z^a conj(z)^b e^{-c|z|^2}
/// the inner product is nonzero only at l = a + k - b, with value
/// radial_moment(a + k, c) / sqrt(m_k m_l).
struct ToeplitzMatrix {
  Matrix entries;
  DomainSpec dom;
  int K;
  std::string symbol_id;
};

ToeplitzMatrix toeplitz_matrix(const Symbol& phi, const FockBasis& basis);

/// Spectral norm via Hermitian eigensolve of M*M (deterministic, no
/// power-iteration tie breaking).
double op_norm(const Matrix& M);

/// Top-left (dim - margin)^2 sub-matrix. On this block products of
/// compressions agree with compressions of products up to the symbols'
/// degree reach.
Matrix effective_block(const Matrix& M, int margin);

/// Grid estimate of the sup norm of a one-variable symbol over the domain.
/// The plane grid extends past the turnover radius of every Gaussian term;
/// pure polynomials on the plane have no finite sup and are rejected.
double sup_norm_grid(const Symbol& phi, const DomainSpec& dom, int radial = 400,
                     int angular = 128);

}  // namespace btq
