#pragma once

#include <string>

#include "btq/fock.hpp"
#include "btq/mc.hpp"

namespace btq {

/// Label of the matrix-space basis element e_k^#(Z) chi_j.
struct MatrixBasisIndex {
  int k = 0;  // degree 0..K
  int j = 1;  // internal slot 1..N
};

/// Flattening convention shared by the isomorphism and every Gram/Toeplitz
/// matrix here: (k, j) -> k*N + (j - 1).
int flat_index(const MatrixBasisIndex& idx, int N);
MatrixBasisIndex basis_index_from_flat(int flat, int N);

/// The unitary isomorphism between coefficient vectors over e_k^# chi_j and
/// over e_k (x) chi_j is the identity reindexing under the shared flattening.
Eigen::VectorXcd iota_forward(const Eigen::VectorXcd& coeffs, int N, int K);
Eigen::VectorXcd iota_inverse(const Eigen::VectorXcd& coeffs, int N, int K);

/// T (x) I_N in the (k, j) flattening (k is the slow index).
Matrix kron_with_identity(const Matrix& T, int N);

/// MC estimate of the N(K+1) x N(K+1) Gram matrix <e_k^# chi_j, e_l^# chi_m>;
/// expectation is the identity.
McEstimate gram_mc(const DomainSpec& dom, int N, int K, const McOptions& opt);

/// MC estimate of the matrix Toeplitz compression: entries
/// <phi_bar e_k^# chi_j, e_l^# chi_m> with the orthonormal basis above.
McEstimate matrix_toeplitz_mc(const SampleFn& phi_bar, const DomainSpec& dom, int N, int K,
                              const McOptions& opt);

/// Largest per-sample operator norm of phi_bar over the identical stream,
/// for the norm-bound check.
double sup_sample_norm(const SampleFn& phi_bar, const DomainSpec& dom, int N, int n,
                       const McOptions& opt);

struct CompareReport {
  std::string theorem_part;
  std::string symbol_id;
  int N = 0;
  int K = 0;
  double h = 0.0;
  std::uint64_t samples = 0;
  double max_z = 0.0;
  double frobenius = 0.0;
  bool pass = false;
};

/// Spectral correspondence: MC matrix Toeplitz of phi^# against
/// toeplitz_matrix(phi) (x) I. Passes when the entrywise z-score stays <= 5.
CompareReport compare_spectral(const Symbol& phi, const DomainSpec& dom, int N, int K,
                               const McOptions& opt);

/// U-invariant correspondence: MC matrix Toeplitz of the tail-symmetric
/// representative against toeplitz_matrix(pi_h(phi)) (x) I.
CompareReport compare_u_invariant(const Symbol& phi, const DomainSpec& dom, int N, int K,
                                  const McOptions& opt);

}  // namespace btq
