#include "btq/semiclassical.hpp"

#include <cmath>
#include <stdexcept>

namespace btq {

namespace {

constexpr double kExactFloor = 1e-12;

Matrix partial_sum_target(const std::vector<Symbol>& cochains, double h, const FockBasis& basis) {
  Matrix sum = Matrix::Zero(basis.K() + 1, basis.K() + 1);
  double hp = 1.0;
  for (const Symbol& c : cochains) {
    if (!c.is_zero()) sum += hp * toeplitz_matrix(c, basis).entries;
    hp *= h;
  }
  return sum;
}

double block_residual(const Symbol& phi, const Symbol& psi, const std::vector<Symbol>& cochains,
                      const DomainSpec& dom, int K, int margin) {
  const int reach = phi.total_degree() + psi.total_degree();
  if (margin < reach)
    throw std::invalid_argument("residual: margin smaller than the combined symbol degree");
  const FockBasis basis(dom, K);
  const Matrix Tphi = toeplitz_matrix(phi, basis).entries;
  const Matrix Tpsi = toeplitz_matrix(psi, basis).entries;
  const Matrix R = Tphi * Tpsi - partial_sum_target(cochains, dom.h(), basis);
  return op_norm(effective_block(R, margin));
}

}  // namespace

double residual_scalar(const Symbol& phi, const Symbol& psi, int R, const DomainSpec& dom, int K,
                       int margin, int sign) {
  if (phi.num_vars() != 1 || psi.num_vars() != 1)
    throw std::invalid_argument("residual_scalar: one-variable symbols");
  std::vector<Symbol> cochains;
  for (int r = 0; r <= R; ++r) cochains.push_back(cochain(r, phi, psi, sign));
  return block_residual(phi, psi, cochains, dom, K, margin);
}

OrderFit order_fit(std::span<const double> h_grid, std::span<const double> residuals) {
  if (h_grid.size() != residuals.size() || h_grid.size() < 3)
    throw std::invalid_argument("order_fit: needs >= 3 grid points");
  for (std::size_t i = 1; i < h_grid.size(); ++i)
    if (!(h_grid[i] < h_grid[i - 1]))
      throw std::invalid_argument("order_fit: h grid must be strictly decreasing");

  double max_r = 0.0, min_r = std::numeric_limits<double>::infinity();
  for (double r : residuals) {
    max_r = std::max(max_r, r);
    min_r = std::min(min_r, r);
  }
  if (max_r <= kExactFloor) return OrderFit{true, 0.0};
  if (min_r <= 1e-14)
    throw std::invalid_argument("order_fit: residuals mix roundoff level with genuine values");

  const std::size_t n = h_grid.size();
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::log(h_grid[i]);
    const double y = std::log(residuals[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  if (std::abs(denom) < 1e-14) throw std::invalid_argument("order_fit: degenerate grid");
  return OrderFit{false, (n * sxy - sx * sy) / denom};
}

ExpansionReport expansion_check_spectral(const Symbol& phi, const Symbol& psi, int R, Domain dom,
                                         std::span<const double> h_grid, int K, int margin,
                                         int sign) {
  ExpansionReport rep;
  rep.phi_id = phi.str();
  rep.psi_id = psi.str();
  rep.track = "spectral";
  rep.R = R;
  rep.K = K;
  rep.margin = margin;
  rep.sign = sign;
  rep.domain = dom;
  rep.h_grid.assign(h_grid.begin(), h_grid.end());
  rep.expected_slope = R + 1.0;
  for (double h : h_grid) {
    const DomainSpec spec = dom == Domain::plane ? DomainSpec::plane(h) : DomainSpec::disc(h);
    rep.residuals.push_back(residual_scalar(phi, psi, R, spec, K, margin, sign));
  }
  rep.fit = order_fit(rep.h_grid, rep.residuals);
  return rep;
}

UInvariantExpansion expansion_check_u_invariant(const Symbol& phi, const Symbol& psi, int R,
                                                std::span<const double> h_grid, int K, int margin,
                                                int sign) {
  if (phi.num_vars() != psi.num_vars())
    throw std::invalid_argument("expansion_check_u_invariant: arity mismatch");
  if (phi.num_vars() >= 2 && (!check_symmetric_tail(phi) || !check_symmetric_tail(psi)))
    throw std::invalid_argument("expansion_check_u_invariant: tails must be symmetric");
  if (phi.has_gaussian() || psi.has_gaussian())
    throw std::invalid_argument(
        "expansion_check_u_invariant: upsilon route needs rate c = 0 symbols");

  UInvariantExpansion out;
  auto init = [&](ExpansionReport& rep, const std::string& track) {
    rep.phi_id = phi.str();
    rep.psi_id = psi.str();
    rep.track = track;
    rep.R = R;
    rep.K = K;
    rep.margin = margin;
    rep.sign = sign;
    rep.domain = Domain::plane;
    rep.h_grid.assign(h_grid.begin(), h_grid.end());
    rep.expected_slope = R + 1.0;
  };
  init(out.track_pi_h, "pi_h-cochain");
  init(out.track_upsilon, "upsilon");

  std::vector<Symbol> ups;
  for (int r = 0; r <= R; ++r) ups.push_back(upsilon(r, phi, psi, sign));

  for (double h : h_grid) {
    const DomainSpec spec = DomainSpec::plane(h);
    const Symbol pphi = pi_h(phi, spec);
    const Symbol ppsi = pi_h(psi, spec);
    std::vector<Symbol> cochains;
    for (int r = 0; r <= R; ++r) cochains.push_back(cochain(r, pphi, ppsi, sign));
    out.track_pi_h.residuals.push_back(block_residual(pphi, ppsi, cochains, spec, K, margin));
    out.track_upsilon.residuals.push_back(block_residual(pphi, ppsi, ups, spec, K, margin));

    const FockBasis basis(spec, K);
    const Matrix gap =
        partial_sum_target(cochains, h, basis) - partial_sum_target(ups, h, basis);
    out.track_difference.push_back(op_norm(effective_block(gap, margin)));
  }
  out.track_pi_h.fit = order_fit(out.track_pi_h.h_grid, out.track_pi_h.residuals);
  out.track_upsilon.fit = order_fit(out.track_upsilon.h_grid, out.track_upsilon.residuals);
  out.difference_fit = order_fit(out.track_pi_h.h_grid, out.track_difference);
  return out;
}

int norm_limit_truncation(Domain dom, double h) {
  const double k = dom == Domain::plane ? 8.0 / h : 8.0 / (h * h);
  return std::max(16, static_cast<int>(std::ceil(k)));
}

std::vector<SupNormRow> sup_norm_limit(const Symbol& phi, Domain dom,
                                       std::span<const double> h_grid) {
  std::vector<SupNormRow> rows;
  for (double h : h_grid) {
    const DomainSpec spec = dom == Domain::plane ? DomainSpec::plane(h) : DomainSpec::disc(h);
    SupNormRow row;
    row.h = h;
    row.K = norm_limit_truncation(dom, h);
    row.toeplitz_norm = op_norm(toeplitz_matrix(phi, FockBasis(spec, row.K)).entries);
    row.sup_grid = sup_norm_grid(phi, spec);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace btq
