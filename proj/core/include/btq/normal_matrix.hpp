#pragma once

#include <Eigen/Dense>
#include <random>

#include "btq/domain.hpp"
#include "btq/fock.hpp"
#include "btq/symbol.hpp"

namespace btq {

/// Point of the normal-matrix domain: a commuting n-tuple of normal N x N
/// matrices stored as one unitary plus eigenvalue data. Row k of d is the
/// joint spectrum point of slot k; component j reconstructs
/// Z_j = U^* diag_k(d(k, j)) U.
struct NormalTuple {
  int N = 0;
  int n = 0;
  Matrix U;  // N x N unitary
  Matrix d;  // N x n eigenvalue data

  Matrix component(int j) const;  // 1-based slot index

  /// Construction invariants: unitarity, pairwise normal commutation of the
  /// reconstructed components, spectra inside the domain.
  void validate(const DomainSpec& dom, double tol_unitary = 1e-12,
                double tol_commute = 1e-10) const;
};

/// Haar-distributed unitary via QR of a standard complex Ginibre matrix
/// with the R-diagonal phase normalization (plain QR is not Haar).
Matrix haar_sample(int N, std::mt19937_64& rng);

/// One complex draw from mu_h: plane = complex Gaussian with E|z|^2 = h,
/// disc = |z|^2 ~ Beta(1, 1/h - 1) with uniform phase.
cxd mu_draw(const DomainSpec& dom, std::mt19937_64& rng);

/// Product-measure draw on the domain: Haar unitary times N i.i.d. rows of
/// mu_h^n spectra.
NormalTuple mu_sample(const DomainSpec& dom, int N, int n, std::mt19937_64& rng);

/// Spectral function: f^#(Z) = U^* diag_k(f(d_k)) U for f with n variables.
Matrix spectral_apply(const Symbol& f, const NormalTuple& Z);

/// U-invariant function from its scalar representative (n = 1): the value in
/// slot k is phi(d_k; d_1, ..., d_k omitted, ..., d_N). Requires a tail-
/// symmetric representative.
Matrix u_invariant_apply(const Symbol& phi, const NormalTuple& Z);

/// Closed-form Haar conjugation average: E[U^* X U] = (Tr X / N) I.
Matrix haar_conj_average(const Matrix& X);

}  // namespace btq
