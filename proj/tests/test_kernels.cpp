#include <doctest.h>

#include <cmath>

#include "btq/kernels.hpp"
#include "btq/rng.hpp"
#include "test_util.hpp"

using namespace btq;

namespace {

McOptions quick(std::uint64_t samples, std::uint64_t seed) {
  McOptions o;
  o.samples = samples;
  o.seed = seed;
  return o;
}

NormalTuple zero_tuple(int N) {
  NormalTuple t;
  t.N = N;
  t.n = 1;
  t.U = Matrix::Identity(N, N);
  t.d = Matrix::Zero(N, 1);
  return t;
}

NormalTuple from_hermitian(const Matrix& H) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(H);
  NormalTuple t;
  t.N = static_cast<int>(H.rows());
  t.n = 1;
  t.U = es.eigenvectors().adjoint();
  t.d = es.eigenvalues().cast<cxd>();
  return t;
}

}  // namespace

TEST_CASE("scalar kernel matches the exponential on the plane") {
  for (double h : {0.5, 0.1}) {
    const KernelSeries ks{DomainSpec::plane(h), 64};
    for (double xr : {1.0, -0.4, 0.2})
      for (double yr : {0.8, -1.0, 0.1}) {
        const cxd x(xr, 0.3), y(yr, -0.2);
        if (std::abs(x) > 1.0 || std::abs(y) > 1.0) continue;
        CHECK(std::abs(scalar_kernel(x, y, ks) - std::exp(x * std::conj(y) / h)) <= 1e-10);
      }
  }
}

TEST_CASE("kernel_eval basics") {
  const KernelSeries ks{DomainSpec::plane(0.5), 48};

  SUBCASE("zero point gives the identity") {
    const NormalTuple Z = zero_tuple(2);
    CHECK((kernel_eval(Z, Z, ks) - Matrix::Identity(2, 2)).norm() <= 1e-14);
  }
  SUBCASE("simultaneously diagonal points give diagonal exponentials") {
    NormalTuple X = zero_tuple(2), Y = zero_tuple(2);
    X.d << cxd(0.4, 0.1), cxd(-0.3, 0.2);
    Y.d << cxd(0.2, -0.5), cxd(0.1, 0.3);
    const Matrix K = kernel_eval(X, Y, ks);
    for (int i = 0; i < 2; ++i)
      CHECK(std::abs(K(i, i) - std::exp(X.d(i, 0) * std::conj(Y.d(i, 0)) / 0.5)) <= 1e-12);
    CHECK(std::abs(K(0, 1)) <= 1e-14);
  }
  SUBCASE("Hermitian symmetry and positivity on random pairs") {
    std::mt19937_64 rng = sample_engine(71, 0);
    const DomainSpec dom = DomainSpec::plane(0.5);
    for (int trial = 0; trial < 20; ++trial) {
      const NormalTuple X = mu_sample(dom, 2, 1, rng);
      const NormalTuple Y = mu_sample(dom, 2, 1, rng);
      CHECK((kernel_eval(X, Y, ks).adjoint() - kernel_eval(Y, X, ks)).norm() <= 1e-12);
      Eigen::SelfAdjointEigenSolver<Matrix> es(kernel_eval(X, X, ks));
      CHECK(es.eigenvalues().minCoeff() >= -1e-10);
    }
  }
  SUBCASE("tail bound refusal") {
    NormalTuple X = zero_tuple(2);
    X.d << cxd(40.0, 0.0), cxd(0.0, 0.0);
    const KernelSeries small{DomainSpec::plane(0.1), 8};
    CHECK_THROWS_AS(kernel_eval(X, X, small), std::runtime_error);
  }
  SUBCASE("disc kernel via the Bergman-family norms") {
    const KernelSeries dks{DomainSpec::disc(0.3), 64};
    NormalTuple X = zero_tuple(2);
    X.d << cxd(0.5, 0.0), cxd(-0.2, 0.3);
    // scalar oracle: sum (x xbar)^k / m_k accumulated directly
    const FockBasis basis(dks.dom, dks.K_max);
    for (int i = 0; i < 2; ++i) {
      cxd expect = 0.0, p = 1.0;
      for (int k = 0; k <= dks.K_max; ++k) {
        expect += p / basis.norm_sq(k);
        p *= std::norm(X.d(i, 0));
      }
      CHECK(std::abs(kernel_eval(X, X, dks)(i, i) - expect) <= 1e-12);
    }
  }
}

TEST_CASE("coherent states") {
  const DomainSpec dom = DomainSpec::plane(0.5);
  const KernelSeries ks{dom, 48};
  std::mt19937_64 rng = sample_engine(73, 0);
  const NormalTuple Z = mu_sample(dom, 2, 1, rng);
  Eigen::VectorXcd chi(2);
  chi << cxd(0.8, -0.1), cxd(0.2, 0.5);

  SUBCASE("Z = 0 gives the constant function chi") {
    const CoherentState k0(zero_tuple(2), chi, ks);
    const NormalTuple X = mu_sample(dom, 2, 1, rng);
    CHECK((k0(X) - chi).norm() <= 1e-12);
  }
  SUBCASE("MC norm equals ||chi||") {
    const CoherentState kz(Z, chi, ks);
    SampleFn f = [&kz](const NormalTuple& X) {
      Matrix v(1, 1);
      v(0, 0) = kz(X).squaredNorm();
      return v;
    };
    const McEstimate est = mc_integrate(f, dom, 2, 1, quick(60000, 75));
    CHECK(std::abs(est.mean(0, 0).real() - chi.squaredNorm()) <= 4.0 * est.stderr_(0, 0));
  }
  SUBCASE("reproducing pairing with basis sections") {
    // <k_{Z,chi}, f> = chi^* K(Z,Z)^{-1/2} f(Z) for f = e_1^# eta
    const CoherentState kz(Z, chi, ks);
    const FockBasis basis(dom, ks.K_max);
    Eigen::VectorXcd eta(2);
    eta << cxd(0.3, 0.4), cxd(-0.7, 0.1);
    SampleFn f = [&](const NormalTuple& X) {
      Eigen::VectorXcd diag(2);
      for (int i = 0; i < 2; ++i) diag(i) = basis.eval(1, X.d(i, 0));
      const Eigen::VectorXcd fx = X.U.adjoint() * diag.asDiagonal() * X.U * eta;
      Matrix v(1, 1);
      v(0, 0) = kz(X).dot(fx);  // conjugates the coherent state
      return v;
    };
    const McEstimate est = mc_integrate(f, dom, 2, 1, quick(60000, 77));
    Eigen::VectorXcd diagz(2);
    for (int i = 0; i < 2; ++i) diagz(i) = basis.eval(1, Z.d(i, 0));
    const Eigen::VectorXcd fz = Z.U.adjoint() * diagz.asDiagonal() * Z.U * eta;
    const cxd expect = kz.weight().dot(fz);
    CHECK(std::abs(est.mean(0, 0) - expect) <= 5.0 * std::max(est.stderr_(0, 0), 1e-12));
  }
  SUBCASE("coherent expectation of the identity symbol is eta^* chi") {
    Eigen::VectorXcd eta(2);
    eta << cxd(-0.2, 0.6), cxd(0.5, 0.0);
    SampleFn id = [](const NormalTuple& X) { return Matrix(Matrix::Identity(X.N, X.N)); };
    const ScalarEstimate est = coherent_expectation(id, Z, chi, eta, ks, quick(60000, 79));
    CHECK(std::abs(est.value - eta.dot(chi)) <= 5.0 * est.stderr_);
  }
}

TEST_CASE("reproduce_check passes for low degrees") {
  std::mt19937_64 rng = sample_engine(81, 0);
  SUBCASE("plane k = 0 and k = 2") {
    const DomainSpec dom = DomainSpec::plane(0.5);
    const KernelSeries ks{dom, 48};
    const NormalTuple Z = mu_sample(dom, 2, 1, rng);
    CHECK(reproduce_check(0, 1, Z, ks, quick(60000, 83)).pass);
    CHECK(reproduce_check(2, 2, Z, ks, quick(60000, 85)).pass);
  }
  SUBCASE("disc k = 1") {
    const DomainSpec dom = DomainSpec::disc(0.3);
    const KernelSeries ks{dom, 48};
    const NormalTuple Z = mu_sample(dom, 2, 1, rng);
    CHECK(reproduce_check(1, 1, Z, ks, quick(60000, 87)).pass);
  }
}

TEST_CASE("product kernels") {
  const double h = 0.5;
  const DomainSpec dom = DomainSpec::plane(h);
  const KernelSeries ks{dom, 40};

  SUBCASE("n = 1 reduction") {
    std::mt19937_64 rng = sample_engine(91, 0);
    const NormalTuple X = mu_sample(dom, 2, 1, rng);
    const NormalTuple Y = mu_sample(dom, 2, 1, rng);
    ProductTuple PX, PY;
    PX.factors.push_back(X);
    PY.factors.push_back(Y);
    CHECK((product_kernel_eval(PX, PY, ks) - kernel_eval(X, Y, ks)).norm() <= 1e-12);
  }
  SUBCASE("all-zero tuple gives the identity") {
    ProductTuple X;
    X.factors = {zero_tuple(2), zero_tuple(2)};
    CHECK((product_kernel_eval(X, X, ks) - Matrix::Identity(2, 2)).norm() <= 1e-14);
  }
  SUBCASE("commuting factors recover the two-variable exponential") {
    ProductTuple X;
    X.factors = {zero_tuple(2), zero_tuple(2)};
    X.factors[0].d << cxd(0.4, 0.0), cxd(-0.1, 0.2);
    X.factors[1].d << cxd(0.3, -0.3), cxd(0.0, 0.5);
    const Matrix K = product_kernel_eval(X, X, ks);
    for (int i = 0; i < 2; ++i) {
      const double w =
          (std::norm(X.factors[0].d(i, 0)) + std::norm(X.factors[1].d(i, 0))) / h;
      CHECK(std::abs(K(i, i) - std::exp(w)) <= 1e-12);
    }
  }
  SUBCASE("ordering matters for non-commuting factors") {
    Matrix H1(2, 2), H2(2, 2);
    H1 << 1.0, 0.0, 0.0, -0.6;
    H2 << 0.3, 0.7, 0.7, -0.5;
    ProductTuple X;
    X.factors = {from_hermitian(H1), from_hermitian(H2)};
    const Matrix fwd = product_kernel_eval(X, X, ks, false);
    const Matrix rev = product_kernel_eval(X, X, ks, true);
    CHECK((fwd - rev).norm() > 1e-3);
    // both orderings still give Hermitian PSD diagonal kernels
    for (const Matrix& K : {fwd, rev}) {
      CHECK((K - K.adjoint()).norm() <= 1e-10);
      Eigen::SelfAdjointEigenSolver<Matrix> es(K);
      CHECK(es.eigenvalues().minCoeff() >= -1e-10);
    }
  }
  SUBCASE("Gram identity under the product measure, both orderings") {
    for (bool reversed : {false, true}) {
      const McEstimate est = product_gram_mc(dom, 2, 2, reversed, quick(60000, 93));
      CHECK(est.max_z(product_gram_target(dom, 2, 2)) <= 5.0);
    }
  }
  SUBCASE("Hermitian symmetry and coherent positivity, product mode") {
    std::mt19937_64 rng = sample_engine(95, 0);
    std::vector<ProductTuple> pts;
    std::vector<Eigen::VectorXcd> chis;
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int i = 0; i < 6; ++i) {
      pts.push_back(product_mu_sample(dom, 2, 2, rng));
      Eigen::VectorXcd chi(2);
      chi << cxd(gauss(rng), gauss(rng)), cxd(gauss(rng), gauss(rng));
      chis.push_back(chi);
    }
    Matrix gram(6, 6);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) {
        const Matrix Kij = product_kernel_eval(pts[i], pts[j], ks);
        CHECK((Kij.adjoint() - product_kernel_eval(pts[j], pts[i], ks)).norm() <= 1e-12);
        gram(i, j) = chis[i].dot(Kij * chis[j]);
      }
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (gram + gram.adjoint()));
    CHECK(es.eigenvalues().minCoeff() >= -1e-8);
  }
  SUBCASE("the matrix kernel has no exponential closed form") {
    Matrix H1(2, 2), H2(2, 2);
    H1 << 1.0, 0.0, 0.0, -1.0;
    H2 << 0.0, 1.0, 1.0, 0.0;
    const NormalTuple X = from_hermitian(H1);
    const NormalTuple Y = from_hermitian(H2);
    const KernelSeries ksw{DomainSpec::plane(0.5), 64};
    const Matrix K = kernel_eval(X, Y, ksw);
    // surrogate: exponential of the commuting-case argument X Y^* / h
    const Matrix W = X.component(1) * Y.component(1).adjoint() / 0.5;
    Matrix surrogate = Matrix::Zero(2, 2);
    Matrix Wp = Matrix::Identity(2, 2);
    double f = 1.0;
    for (int k = 0; k <= 64; ++k) {
      surrogate += Wp / f;
      Wp = Wp * W;
      f *= (k + 1);
    }
    CHECK((K - surrogate).norm() > 1e-3);
    // closed forms for this witness: cosh/sinh against cos/sin
    const double c = 1.0 / 0.5;
    CHECK(std::abs(K(0, 0) - std::cosh(c)) <= 1e-10);
    CHECK(std::abs(surrogate(0, 0) - std::cos(c)) <= 1e-10);
  }
}
