#include "btq/matrix_hilbert.hpp"

#include <stdexcept>

#include "btq/rng.hpp"

namespace btq {

int flat_index(const MatrixBasisIndex& idx, int N) {
  if (idx.j < 1 || idx.j > N) throw std::invalid_argument("basis index: j out of range");
  if (idx.k < 0) throw std::invalid_argument("basis index: negative degree");
  return idx.k * N + (idx.j - 1);
}

MatrixBasisIndex basis_index_from_flat(int flat, int N) {
  if (flat < 0) throw std::invalid_argument("basis index: negative flat index");
  return MatrixBasisIndex{flat / N, flat % N + 1};
}

Eigen::VectorXcd iota_forward(const Eigen::VectorXcd& coeffs, int N, int K) {
  if (coeffs.size() != static_cast<Eigen::Index>(N) * (K + 1))
    throw std::invalid_argument("iota: coefficient length mismatch");
  return coeffs;  // identity reindexing under the shared flattening
}

Eigen::VectorXcd iota_inverse(const Eigen::VectorXcd& coeffs, int N, int K) {
  return iota_forward(coeffs, N, K);
}

Matrix kron_with_identity(const Matrix& T, int N) {
  const Eigen::Index m = T.rows(), p = T.cols();
  Matrix out = Matrix::Zero(m * N, p * N);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < p; ++j)
      for (int s = 0; s < N; ++s) out(i * N + s, j * N + s) = T(i, j);
  return out;
}

namespace {

/// Per-sample matrix elements (E_l^* Phi E_k)_{mj} packed into the Gram
/// flattening; E_k = U^* diag(e_k(d_i)) U, so with B = U Phi U^* each block
/// is U^* (diag(conj e_l) B diag(e_k)) U.
Matrix basis_sandwich(const FockBasis& basis, const NormalTuple& Z, const Matrix& Phi,
                      bool phi_is_identity) {
  const int N = Z.N, K = basis.K();
  const int dim = N * (K + 1);
  Matrix B;
  if (!phi_is_identity) B = Z.U * Phi * Z.U.adjoint();

  // e_k values at the spectrum
  Matrix ev(N, K + 1);
  for (int i = 0; i < N; ++i) {
    cxd p = 1.0;
    for (int k = 0; k <= K; ++k) {
      ev(i, k) = p / basis.sqrt_norm(k);
      p *= Z.d(i, 0);
    }
  }

  Matrix out(dim, dim);
  Matrix scaled(N, N);
  for (int l = 0; l <= K; ++l) {
    for (int k = 0; k <= K; ++k) {
      if (phi_is_identity) {
        // diagonal sandwich: U^* diag(conj(e_l) e_k) U
        Eigen::VectorXcd w(N);
        for (int i = 0; i < N; ++i) w(i) = std::conj(ev(i, l)) * ev(i, k);
        scaled = Z.U.adjoint() * w.asDiagonal() * Z.U;
      } else {
        for (int a = 0; a < N; ++a)
          for (int b = 0; b < N; ++b) scaled(a, b) = std::conj(ev(a, l)) * B(a, b) * ev(b, k);
        scaled = Z.U.adjoint() * scaled * Z.U;
      }
      // entry (row (l,m), col (k,j)) = (E_l^* Phi E_k)_{m j}
      for (int m = 0; m < N; ++m)
        for (int j = 0; j < N; ++j) out(l * N + m, k * N + j) = scaled(m, j);
    }
  }
  return out;
}

}  // namespace

McEstimate gram_mc(const DomainSpec& dom, int N, int K, const McOptions& opt) {
  const FockBasis basis(dom, K);
  SampleFn f = [basis, N](const NormalTuple& Z) {
    return basis_sandwich(basis, Z, Matrix(), true);
  };
  return mc_integrate(f, dom, N, 1, opt);
}

McEstimate matrix_toeplitz_mc(const SampleFn& phi_bar, const DomainSpec& dom, int N, int K,
                              const McOptions& opt) {
  const FockBasis basis(dom, K);
  SampleFn f = [basis, N, phi_bar](const NormalTuple& Z) {
    return basis_sandwich(basis, Z, phi_bar(Z), false);
  };
  return mc_integrate(f, dom, N, 1, opt);
}

double sup_sample_norm(const SampleFn& phi_bar, const DomainSpec& dom, int N, int n,
                       const McOptions& opt) {
  double sup = 0.0;
  for (std::uint64_t i = 0; i < opt.samples; ++i) {
    std::mt19937_64 rng = sample_engine(opt.seed, i);
    const NormalTuple Z = mu_sample(dom, N, n, rng);
    sup = std::max(sup, op_norm(phi_bar(Z)));
  }
  return sup;
}

namespace {

CompareReport compare_against(const std::string& part, const Symbol& phi_id_symbol,
                              const SampleFn& phi_bar, const Matrix& scalar_target,
                              const DomainSpec& dom, int N, int K, const McOptions& opt) {
  const McEstimate est = matrix_toeplitz_mc(phi_bar, dom, N, K, opt);
  const Matrix target = kron_with_identity(scalar_target, N);
  CompareReport rep;
  rep.theorem_part = part;
  rep.symbol_id = phi_id_symbol.str();
  rep.N = N;
  rep.K = K;
  rep.h = dom.h();
  rep.samples = est.samples;
  rep.max_z = est.max_z(target);
  rep.frobenius = (est.mean - target).norm();
  rep.pass = rep.max_z <= 5.0;
  return rep;
}

}  // namespace

CompareReport compare_spectral(const Symbol& phi, const DomainSpec& dom, int N, int K,
                               const McOptions& opt) {
  if (phi.num_vars() != 1) throw std::invalid_argument("compare_spectral: one-variable symbol");
  const FockBasis basis(dom, K);
  const Matrix T = toeplitz_matrix(phi, basis).entries;
  SampleFn phi_bar = [phi](const NormalTuple& Z) { return spectral_apply(phi, Z); };
  return compare_against("ii", phi, phi_bar, T, dom, N, K, opt);
}

CompareReport compare_u_invariant(const Symbol& phi, const DomainSpec& dom, int N, int K,
                                  const McOptions& opt) {
  if (phi.num_vars() != N)
    throw std::invalid_argument("compare_u_invariant: symbol arity must equal N");
  if (N >= 2 && !check_symmetric_tail(phi))
    throw std::invalid_argument("compare_u_invariant: representative is not tail-symmetric");
  const FockBasis basis(dom, K);
  const Matrix T = toeplitz_matrix(pi_h(phi, dom), basis).entries;
  SampleFn phi_bar = [phi](const NormalTuple& Z) { return u_invariant_apply(phi, Z); };
  return compare_against("v", phi, phi_bar, T, dom, N, K, opt);
}

}  // namespace btq
