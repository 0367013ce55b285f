#include "btq/normal_matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace btq {

Matrix NormalTuple::component(int j) const {
  if (j < 1 || j > n) throw std::invalid_argument("NormalTuple: slot index out of range");
  return U.adjoint() * d.col(j - 1).asDiagonal() * U;
}

void NormalTuple::validate(const DomainSpec& dom, double tol_unitary, double tol_commute) const {
  if ((U.adjoint() * U - Matrix::Identity(N, N)).norm() > tol_unitary)
    throw std::runtime_error("NormalTuple: U is not unitary");
  for (int j = 1; j <= n; ++j) {
    const Matrix Zj = component(j);
    for (int k = 1; k <= n; ++k) {
      const Matrix Zk = component(k);
      if ((Zj * Zk.adjoint() - Zk.adjoint() * Zj).norm() > tol_commute)
        throw std::runtime_error("NormalTuple: components fail normal commutation");
    }
  }
  if (dom.kind() == Domain::disc) {
    for (int k = 0; k < N; ++k)
      for (int j = 0; j < n; ++j)
        if (std::abs(d(k, j)) >= 1.0)
          throw std::runtime_error("NormalTuple: spectrum outside the disc");
  }
}

Matrix haar_sample(int N, std::mt19937_64& rng) {
  if (N < 1) throw std::invalid_argument("haar_sample: N must be positive");
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix A(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) A(i, j) = cxd(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<Matrix> qr(A);
  Matrix Q = qr.householderQ();
  const Matrix R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < N; ++k) {
    const cxd r = R(k, k);
    Q.col(k) *= std::conj(r) / std::abs(r);
  }
  return Q;
}

cxd mu_draw(const DomainSpec& dom, std::mt19937_64& rng) {
  const double h = dom.h();
  if (dom.kind() == Domain::plane) {
    std::normal_distribution<double> gauss(0.0, std::sqrt(h / 2.0));
    return cxd(gauss(rng), gauss(rng));
  }
  // |z|^2 ~ Beta(1, 1/h - 1): inverse CDF 1 - u^{h/(1-h)}
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double u = unif(rng);
  const double r2 = 1.0 - std::pow(std::max(u, 1e-300), h / (1.0 - h));
  const double theta = 2.0 * M_PI * unif(rng);
  return std::polar(std::sqrt(r2), theta);
}

NormalTuple mu_sample(const DomainSpec& dom, int N, int n, std::mt19937_64& rng) {
  NormalTuple Z;
  Z.N = N;
  Z.n = n;
  Z.U = haar_sample(N, rng);
  Z.d.resize(N, n);
  for (int k = 0; k < N; ++k)
    for (int j = 0; j < n; ++j) Z.d(k, j) = mu_draw(dom, rng);
  return Z;
}

Matrix spectral_apply(const Symbol& f, const NormalTuple& Z) {
  if (f.num_vars() != Z.n)
    throw std::invalid_argument("spectral_apply: symbol arity must match tuple size");
  Eigen::VectorXcd diag(Z.N);
  std::vector<cxd> point(Z.n);
  for (int k = 0; k < Z.N; ++k) {
    for (int j = 0; j < Z.n; ++j) point[j] = Z.d(k, j);
    diag(k) = f.eval(point);
  }
  return Z.U.adjoint() * diag.asDiagonal() * Z.U;
}

Matrix u_invariant_apply(const Symbol& phi, const NormalTuple& Z) {
  if (Z.n != 1) throw std::invalid_argument("u_invariant_apply: defined for n = 1");
  if (phi.num_vars() != Z.N)
    throw std::invalid_argument("u_invariant_apply: symbol arity must equal N");
  if (Z.N >= 2 && !check_symmetric_tail(phi))
    throw std::invalid_argument("u_invariant_apply: representative is not tail-symmetric");
  Eigen::VectorXcd diag(Z.N);
  std::vector<cxd> point(Z.N);
  for (int k = 0; k < Z.N; ++k) {
    point[0] = Z.d(k, 0);
    int slot = 1;
    for (int i = 0; i < Z.N; ++i)
      if (i != k) point[slot++] = Z.d(i, 0);
    diag(k) = phi.eval(point);
  }
  return Z.U.adjoint() * diag.asDiagonal() * Z.U;
}

Matrix haar_conj_average(const Matrix& X) {
  if (X.rows() != X.cols()) throw std::invalid_argument("haar_conj_average: square input");
  return (X.trace() / static_cast<double>(X.rows())) * Matrix::Identity(X.rows(), X.cols());
}

}  // namespace btq
