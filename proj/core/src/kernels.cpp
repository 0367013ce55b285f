#include "btq/kernels.hpp"

#include <cmath>
#include <stdexcept>

#include "btq/rng.hpp"

namespace btq {

namespace {

double spectral_radius(const NormalTuple& Z) {
  double r = 0.0;
  for (int k = 0; k < Z.N; ++k)
    for (int j = 0; j < Z.n; ++j) r = std::max(r, std::abs(Z.d(k, j)));
  return r;
}

/// Certified bound on sum_{k > K} (rx*ry)^k / m_k.
void check_tail(double rx, double ry, const KernelSeries& ks) {
  const double h = ks.dom.h();
  const double t = rx * ry;
  const int K = ks.K_max;
  if (ks.dom.kind() == Domain::plane) {
    // terms (t/h)^k / k!; geometric bound from ratio (t/h)/(K+2)
    const double q = t / h;
    double term = 1.0;
    for (int k = 1; k <= K + 1; ++k) term *= q / k;
    const double ratio = q / (K + 2);
    if (ratio >= 1.0 || term / (1.0 - ratio) > ks.tail_tol)
      throw std::runtime_error("kernel series: tail bound violated, increase K_max");
    return;
  }
  // disc: m_{k+1}/m_k = (k+1)h/(1+kh) increases toward 1, so beyond K the
  // term ratio is bounded by t / qK with qK = (K+1)h/(1+Kh)
  if (t >= 1.0) throw std::runtime_error("kernel series: disc points must have |x||y| < 1");
  double m = 1.0, term_K = 1.0;
  for (int k = 0; k <= K; ++k) {
    if (k > 0) m *= k * h / (1.0 + (k - 1) * h);
    if (k == K) term_K = std::pow(t, K) / m;
  }
  const double qK = (K + 1) * h / (1.0 + K * h);
  const double ratio = t / qK;
  if (ratio >= 1.0 || term_K * ratio / (1.0 - ratio) > ks.tail_tol)
    throw std::runtime_error("kernel series: tail bound violated, increase K_max");
}

}  // namespace

cxd scalar_kernel(cxd x, cxd y, const KernelSeries& ks) {
  check_tail(std::abs(x), std::abs(y), ks);
  const FockBasis basis(ks.dom, ks.K_max);
  const cxd w = x * std::conj(y);
  cxd sum = 0.0, p = 1.0;
  for (int k = 0; k <= ks.K_max; ++k) {
    sum += p / basis.norm_sq(k);
    p *= w;
  }
  return sum;
}

namespace {

/// Truncated series without the pointwise tail certificate. Against basis
/// sections of degree <= K_max the truncation is exact (orthogonality kills
/// the tail), so MC estimators of such pairings may integrate this form at
/// points where the full kernel could not be certified pointwise.
Matrix kernel_eval_truncated(const NormalTuple& X, const NormalTuple& Y, const KernelSeries& ks) {
  const int N = X.N;
  const FockBasis basis(ks.dom, ks.K_max);
  // K(X,Y) = U_X^* (A .* kappa) U_Y with A = U_X U_Y^* and
  // kappa_ij = sum_k psi_k(x_i) conj(psi_k(y_j))
  Matrix kappa(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      const cxd w = X.d(i, 0) * std::conj(Y.d(j, 0));
      cxd sum = 0.0, p = 1.0;
      for (int k = 0; k <= ks.K_max; ++k) {
        sum += p / basis.norm_sq(k);
        p *= w;
      }
      kappa(i, j) = sum;
    }
  const Matrix A = X.U * Y.U.adjoint();
  return X.U.adjoint() * A.cwiseProduct(kappa) * Y.U;
}

}  // namespace

Matrix kernel_eval(const NormalTuple& X, const NormalTuple& Y, const KernelSeries& ks) {
  if (X.n != 1 || Y.n != 1)
    throw std::invalid_argument("kernel_eval: single-domain points have n = 1");
  if (X.N != Y.N) throw std::invalid_argument("kernel_eval: size mismatch");
  check_tail(spectral_radius(X), spectral_radius(Y), ks);
  return kernel_eval_truncated(X, Y, ks);
}

CoherentState::CoherentState(const NormalTuple& Z, const Eigen::VectorXcd& chi,
                             const KernelSeries& ks)
    : Z_(Z), ks_(ks) {
  const Matrix KZZ = kernel_eval(Z, Z, ks);
  const Matrix herm = 0.5 * (KZZ + KZZ.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(herm);
  if (es.eigenvalues().minCoeff() < 1e-12)
    throw std::runtime_error("coherent_state: K(Z,Z) not positive definite at floor 1e-12");
  const Eigen::VectorXd inv_sqrt = es.eigenvalues().cwiseSqrt().cwiseInverse();
  const Matrix root = es.eigenvectors() * inv_sqrt.asDiagonal() * es.eigenvectors().adjoint();
  weight_ = root * chi;
}

Eigen::VectorXcd CoherentState::operator()(const NormalTuple& X) const {
  return kernel_eval(X, Z_, ks_) * weight_;
}

CompareReport reproduce_check(int k, int j, const NormalTuple& Z, const KernelSeries& ks,
                              const McOptions& opt) {
  if (k < 0 || k > ks.K_max) throw std::invalid_argument("reproduce_check: degree out of range");
  if (j < 1 || j > Z.N) throw std::invalid_argument("reproduce_check: slot out of range");
  const FockBasis basis(ks.dom, ks.K_max);

  auto basis_fn = [&basis, k, j](const NormalTuple& X) -> Eigen::VectorXcd {
    Eigen::VectorXcd diag(X.N);
    for (int i = 0; i < X.N; ++i) diag(i) = basis.eval(k, X.d(i, 0));
    const Matrix Ek = X.U.adjoint() * diag.asDiagonal() * X.U;
    return Ek.col(j - 1);
  };

  SampleFn f = [&, Z](const NormalTuple& X) -> Matrix {
    return kernel_eval_truncated(Z, X, ks) * basis_fn(X);
  };
  const McEstimate est = mc_integrate(f, ks.dom, Z.N, 1, opt);
  const Matrix target = basis_fn(Z);

  CompareReport rep;
  rep.theorem_part = "tRE";
  rep.symbol_id = "e_" + std::to_string(k) + " chi_" + std::to_string(j);
  rep.N = Z.N;
  rep.K = ks.K_max;
  rep.h = ks.dom.h();
  rep.samples = est.samples;
  rep.max_z = est.max_z(target);
  rep.frobenius = (est.mean - target).norm();
  rep.pass = rep.max_z <= 5.0;
  return rep;
}

ProductTuple product_mu_sample(const DomainSpec& dom, int N, int n, std::mt19937_64& rng) {
  ProductTuple X;
  X.factors.reserve(n);
  for (int j = 0; j < n; ++j) X.factors.push_back(mu_sample(dom, N, 1, rng));
  return X;
}

Matrix product_kernel_eval(const ProductTuple& X, const ProductTuple& Y, const KernelSeries& ks,
                           bool reversed) {
  if (X.factors.size() != Y.factors.size() || X.factors.empty())
    throw std::invalid_argument("product_kernel_eval: tuple length mismatch");
  const int N = X.N();
  const double h = ks.dom.h();
  if (ks.dom.kind() != Domain::plane)
    throw std::invalid_argument("product_kernel_eval: plane measure only");
  for (std::size_t m = 0; m < X.factors.size(); ++m)
    check_tail(spectral_radius(X.factors[m]), spectral_radius(Y.factors[m]), ks);

  // innermost slot first: M <- sum_k X_m^k M Y_m^{*k} / (k! h^k)
  Matrix M = Matrix::Identity(N, N);
  const int n = static_cast<int>(X.factors.size());
  for (int step = 0; step < n; ++step) {
    const int m = reversed ? step : n - 1 - step;
    const Matrix Xm = X.factors[m].component(1);
    const Matrix Ym = Y.factors[m].component(1);
    Matrix acc = Matrix::Zero(N, N);
    Matrix Xp = Matrix::Identity(N, N), Yp = Matrix::Identity(N, N);
    double w = 1.0;
    for (int k = 0; k <= ks.K_max; ++k) {
      acc += w * (Xp * M * Yp.adjoint());
      Xp = Xp * Xm;
      Yp = Yp * Ym;
      w /= (k + 1) * h;
    }
    M = acc;
  }
  return M;
}

Matrix product_gram_target(const DomainSpec& dom, int N, int k_max) {
  const double h = dom.h();
  const int per = k_max + 1;
  const int dim = per * per * N;
  Matrix T = Matrix::Zero(dim, dim);
  double f1 = 1.0;
  for (int k1 = 0; k1 <= k_max; ++k1) {
    if (k1 > 0) f1 *= k1;
    double f2 = 1.0;
    for (int k2 = 0; k2 <= k_max; ++k2) {
      if (k2 > 0) f2 *= k2;
      const double v = f1 * f2 * std::pow(h, k1 + k2);
      for (int j = 0; j < N; ++j) {
        const int idx = (k1 * per + k2) * N + j;
        T(idx, idx) = v;
      }
    }
  }
  return T;
}

McEstimate product_gram_mc(const DomainSpec& dom, int N, int k_max, bool reversed,
                           const McOptions& opt) {
  if (dom.kind() != Domain::plane)
    throw std::invalid_argument("product_gram_mc: plane measure only");
  const int per = k_max + 1;
  const int dim = per * per * N;

  // product points carry independent unitaries per slot, so sampling stays
  // local here instead of going through mc_integrate's single-tuple draws
  auto run = [&](std::uint64_t samples, std::uint64_t seed) {
    Matrix s1 = Matrix::Zero(dim, dim);
    Eigen::MatrixXd s2 = Eigen::MatrixXd::Zero(dim, dim);
    for (std::uint64_t i = 0; i < samples; ++i) {
      std::mt19937_64 rng = sample_engine(seed, i);
      const ProductTuple P = product_mu_sample(dom, N, 2, rng);
      const Matrix Z1 = P.factors[reversed ? 1 : 0].component(1);
      const Matrix Z2 = P.factors[reversed ? 0 : 1].component(1);
      std::vector<Matrix> P1(per), P2(per);
      P1[0] = Matrix::Identity(N, N);
      P2[0] = Matrix::Identity(N, N);
      for (int k = 1; k <= k_max; ++k) {
        P1[k] = P1[k - 1] * Z1;
        P2[k] = P2[k - 1] * Z2;
      }
      Matrix v(dim, dim);
      for (int l1 = 0; l1 <= k_max; ++l1)
        for (int l2 = 0; l2 <= k_max; ++l2) {
          const Matrix left = P2[l2].adjoint() * P1[l1].adjoint();
          for (int k1 = 0; k1 <= k_max; ++k1)
            for (int k2 = 0; k2 <= k_max; ++k2) {
              const Matrix blk = left * P1[k1] * P2[k2];
              for (int m = 0; m < N; ++m)
                for (int j = 0; j < N; ++j)
                  v((l1 * per + l2) * N + m, (k1 * per + k2) * N + j) = blk(m, j);
            }
        }
      s1 += v;
      s2 += v.cwiseAbs2();
    }
    McEstimate est;
    est.samples = samples;
    const double nsamp = static_cast<double>(samples);
    est.mean = s1 / nsamp;
    est.stderr_.resize(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        const double var =
            std::max(0.0, (s2(i, j) / nsamp - std::norm(est.mean(i, j))) * nsamp / (nsamp - 1.0));
        est.stderr_(i, j) = std::sqrt(var / nsamp);
      }
    return est;
  };
  return run(opt.samples, opt.seed);
}

ScalarEstimate coherent_expectation(const SampleFn& phi_bar, const NormalTuple& Z,
                                    const Eigen::VectorXcd& chi, const Eigen::VectorXcd& eta,
                                    const KernelSeries& ks, const McOptions& opt) {
  const CoherentState kchi(Z, chi, ks);
  const CoherentState keta(Z, eta, ks);
  SampleFn f = [&](const NormalTuple& X) -> Matrix {
    Matrix v(1, 1);
    v(0, 0) = keta(X).dot(phi_bar(X) * kchi(X));  // Eigen dot conjugates the left factor
    return v;
  };
  const McEstimate est = mc_integrate(f, ks.dom, Z.N, 1, opt);
  return ScalarEstimate{est.mean(0, 0), est.stderr_(0, 0), est.samples};
}

}  // namespace btq
