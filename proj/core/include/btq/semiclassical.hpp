#pragma once

#include <span>
#include <string>
#include <vector>

#include "btq/fock.hpp"

namespace btq {

/// Block-norm residual of the product expansion at order R:
///   || effective_block( T_phi T_psi - sum_{r<=R} h^r T_{C_r(phi,psi,sign)}, margin ) ||.
/// margin must cover the combined degree reach so the block is free of
/// truncation-edge artifacts.
double residual_scalar(const Symbol& phi, const Symbol& psi, int R, const DomainSpec& dom, int K,
                       int margin, int sign);

struct OrderFit {
  bool exact = false;   // all residuals at roundoff level (<= 1e-12)
  double slope = 0.0;   // least-squares slope of log residual vs log h
};

/// Least-squares slope on log-log axes. Residuals all below 1e-12 report
/// exact; mixing roundoff-level and genuine residuals is rejected.
OrderFit order_fit(std::span<const double> h_grid, std::span<const double> residuals);

struct ExpansionReport {
  std::string phi_id;
  std::string psi_id;
  std::string track;  // "spectral", "pi_h-cochain", "upsilon"
  int R = 0;
  int K = 0;
  int margin = 0;
  int sign = -1;
  Domain domain = Domain::plane;
  std::vector<double> h_grid;
  std::vector<double> residuals;
  OrderFit fit;
  double expected_slope = 0.0;  // R + 1
};

/// Order check for spectral symbols. The matrix side reduces exactly to the
/// scalar residual: tensoring with the identity preserves operator norms.
ExpansionReport expansion_check_spectral(const Symbol& phi, const Symbol& psi, int R, Domain dom,
                                         std::span<const double> h_grid, int K, int margin,
                                         int sign);

struct UInvariantExpansion {
  ExpansionReport track_pi_h;    // against sum h^r T_{C_r(pi_h phi, pi_h psi)}
  ExpansionReport track_upsilon; // against sum h^r T_{upsilon_r(phi, psi)}
  std::vector<double> track_difference;  // block norm of the two partial sums' gap
  OrderFit difference_fit;
};

/// Two-track order check for U-invariant symbols on the plane (rate 0 for
/// the upsilon route). Both tracks compare against T_{pi_h phi} T_{pi_h psi},
/// the scalar reduction of the matrix product.
UInvariantExpansion expansion_check_u_invariant(const Symbol& phi, const Symbol& psi, int R,
                                                std::span<const double> h_grid, int K, int margin,
                                                int sign);

struct SupNormRow {
  double h = 0.0;
  int K = 0;
  double toeplitz_norm = 0.0;
  double sup_grid = 0.0;
};

/// Truncation degree for the norm-limit experiments. Plane: coherent mass at
/// radius rho occupies degrees ~ rho^2/h. Disc: the compression norm of a
/// bounded symbol reaches its sup only for K*h large, so K grows like 1/h^2.
int norm_limit_truncation(Domain dom, double h);

/// Table of (h, ||T_phi|| at the norm-limit truncation, grid sup estimate).
std::vector<SupNormRow> sup_norm_limit(const Symbol& phi, Domain dom,
                                       std::span<const double> h_grid);

}  // namespace btq
