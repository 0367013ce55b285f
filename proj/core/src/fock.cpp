#include "btq/fock.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace btq {

FockBasis::FockBasis(const DomainSpec& dom, int K) : dom_(dom), K_(K) {
  if (K < 0) throw std::invalid_argument("FockBasis: negative truncation degree");
  sqrt_norms_.resize(K + 1);
  const double h = dom.h();
  double m = 1.0;
  for (int k = 0; k <= K; ++k) {
    sqrt_norms_[k] = std::sqrt(m);
    m *= dom.kind() == Domain::plane ? (k + 1) * h : (k + 1) * h / (1.0 + k * h);
  }
}

double FockBasis::norm_sq(int k) const { return sqrt_norms_.at(k) * sqrt_norms_.at(k); }
double FockBasis::sqrt_norm(int k) const { return sqrt_norms_.at(k); }

cxd FockBasis::eval(int k, cxd z) const {
  cxd p = 1.0;
  for (int i = 0; i < k; ++i) p *= z;
  return p / sqrt_norms_.at(k);
}

ToeplitzMatrix toeplitz_matrix(const Symbol& phi, const FockBasis& basis) {
  if (phi.num_vars() != 1)
    throw std::invalid_argument("toeplitz_matrix: symbol must have one variable");
  const DomainSpec& dom = basis.dom();
  const int K = basis.K();
  Matrix M = Matrix::Zero(K + 1, K + 1);

  // running radial moments per distinct rate, up to power K + max alpha
  std::map<Rational, std::vector<double>> tables;
  int max_a = 0;
  for (const auto& [key, coef] : phi.terms()) max_a = std::max(max_a, key.alpha[0]);
  for (const auto& [key, coef] : phi.terms()) {
    if (!tables.contains(key.rate)) {
      std::vector<double> tab(K + max_a + 1);
      const double h = dom.h();
      if (dom.kind() == Domain::plane) {
        const double q = 1.0 + key.rate.value() * h;
        tab[0] = 1.0 / q;
        for (int p = 1; p < static_cast<int>(tab.size()); ++p) tab[p] = tab[p - 1] * p * h / q;
      } else {
        if (!key.rate.is_zero())
          throw std::invalid_argument("toeplitz_matrix: disc symbols must have rate c = 0");
        tab[0] = 1.0;
        for (int p = 1; p < static_cast<int>(tab.size()); ++p)
          tab[p] = tab[p - 1] * p * h / (1.0 + (p - 1) * h);
      }
      tables.emplace(key.rate, std::move(tab));
    }
  }

  for (const auto& [key, coef] : phi.terms()) {
    const int a = key.alpha[0], b = key.beta[0];
    const auto& tab = tables.at(key.rate);
    for (int k = 0; k <= K; ++k) {
      const int l = a + k - b;
      if (l < 0 || l > K) continue;
      M(l, k) += coef * tab[a + k] / (basis.sqrt_norm(k) * basis.sqrt_norm(l));
    }
  }
  return ToeplitzMatrix{std::move(M), dom, K, phi.str()};
}

double op_norm(const Matrix& M) {
  if (M.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(M.adjoint() * M, Eigen::EigenvaluesOnly);
  const double lambda = es.eigenvalues().maxCoeff();
  return std::sqrt(std::max(0.0, lambda));
}

Matrix effective_block(const Matrix& M, int margin) {
  if (margin < 0) throw std::invalid_argument("effective_block: negative margin");
  const Eigen::Index dim = std::min(M.rows(), M.cols());
  if (margin >= dim) throw std::invalid_argument("effective_block: margin >= matrix dimension");
  return M.topLeftCorner(dim - margin, dim - margin);
}

double sup_norm_grid(const Symbol& phi, const DomainSpec& dom, int radial, int angular) {
  if (phi.num_vars() != 1)
    throw std::invalid_argument("sup_norm_grid: symbol must have one variable");
  double rho_max = 1.0;
  if (dom.kind() == Domain::plane) {
    // |z|^d e^{-c|z|^2} turns over at |z|^2 = d/(2c); cover it with margin
    double min_rate = -1.0;
    for (const auto& [key, coef] : phi.terms()) {
      if (key.rate.is_zero() && (key.alpha[0] > 0 || key.beta[0] > 0))
        throw std::invalid_argument("sup_norm_grid: unbounded polynomial on the plane");
      if (!key.rate.is_zero()) {
        const double r = key.rate.value();
        min_rate = min_rate < 0 ? r : std::min(min_rate, r);
      }
    }
    if (min_rate > 0) {
      const double turn = phi.total_degree() / (2.0 * min_rate);
      rho_max = 2.0 * std::sqrt(std::max(1.0, turn)) + 1.0;
    }
  }
  double sup = 0.0;
  for (int i = 0; i <= radial; ++i) {
    const double rho = rho_max * i / radial;
    for (int j = 0; j < angular; ++j) {
      const double theta = 2.0 * M_PI * j / angular;
      const cxd z = std::polar(rho, theta);
      sup = std::max(sup, std::abs(phi.eval(z)));
    }
  }
  return sup;
}

}  // namespace btq
