#pragma once

#include <complex>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "btq/domain.hpp"
#include "btq/rational.hpp"

namespace btq {

/// Key of one symbol term: holomorphic powers, antiholomorphic powers and
/// the exact Gaussian rate. Lexicographic order gives deterministic
/// canonical form.
struct TermKey {
  std::vector<int> alpha;
  std::vector<int> beta;
  Rational rate;

  friend bool operator==(const TermKey&, const TermKey&) = default;
  friend bool operator<(const TermKey& a, const TermKey& b) {
    if (a.alpha != b.alpha) return a.alpha < b.alpha;
    if (a.beta != b.beta) return a.beta < b.beta;
    return a.rate < b.rate;
  }
};

/// Finite sum of terms
///   coef * prod_m z_m^{alpha_m} conj(z_m)^{beta_m} * exp(-c sum_m |z_m|^2)
/// in a fixed number of complex variables. Variable 1 is the kinematic
/// slot; variables 2..N are internal. The class is closed under products,
/// Wirtinger derivatives and exact integration against the plane measures,
/// which keeps every downstream matrix entry quadrature-free.
///
/// Canonical form: no two terms share (alpha, beta, rate), no zero
/// coefficients. All operations return canonical symbols.
class Symbol {
 public:
  explicit Symbol(int num_vars);

  static Symbol zero(int num_vars) { return Symbol(num_vars); }
  static Symbol constant(int num_vars, cxd value);
  static Symbol variable(int num_vars, int m);       // z_m, 1-based
  static Symbol conj_variable(int num_vars, int m);  // conj(z_m)
  static Symbol gaussian(int num_vars, const Rational& rate);
  static Symbol monomial(int num_vars, std::vector<int> alpha, std::vector<int> beta,
                         cxd coef = 1.0, const Rational& rate = Rational());

  int num_vars() const { return num_vars_; }
  const std::map<TermKey, cxd>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Symbol& add_term(const TermKey& key, cxd coef);

  cxd eval(std::span<const cxd> point) const;
  cxd eval(cxd z) const;  // single-variable convenience

  Symbol conj() const;
  int total_degree() const;  // max over terms of |alpha| + |beta|
  bool has_gaussian() const;

  std::string str() const;

  Symbol operator-() const;
  friend Symbol operator+(const Symbol& a, const Symbol& b);
  friend Symbol operator-(const Symbol& a, const Symbol& b);
  friend Symbol operator*(const Symbol& a, const Symbol& b);
  friend Symbol operator*(cxd s, const Symbol& a);

  bool identical(const Symbol& o) const { return num_vars_ == o.num_vars_ && terms_ == o.terms_; }
  static double max_coef_distance(const Symbol& a, const Symbol& b);
  static bool approx_equal(const Symbol& a, const Symbol& b, double tol) {
    return max_coef_distance(a, b) <= tol;
  }

 private:
  int num_vars_;
  std::map<TermKey, cxd> terms_;
};

Symbol sym_add(const Symbol& a, const Symbol& b);
Symbol sym_mul(const Symbol& a, const Symbol& b);

/// Formal Wirtinger derivatives; the Gaussian factor differentiates as
/// d/dz exp(-c|z|^2) = -c conj(z) exp(-c|z|^2), so the class is closed.
Symbol d_z(const Symbol& s, int m);
Symbol d_zbar(const Symbol& s, int m);

/// {a,b} = (2 pi / i) sum_m (d_m a * dbar_m b - d_m b * dbar_m a).
/// Normalized so that C_1(a,b) - C_1(b,a) = sign * (i/2pi) {a,b}.
Symbol poisson(const Symbol& a, const Symbol& b);

/// Cochain of the product expansion:
///   C_r(a,b) = sign^r sum_{|alpha|=r} (1/alpha!) d^alpha a * dbar^alpha b
/// over all variables of the symbols.
Symbol cochain(int r, const Symbol& a, const Symbol& b, int sign);

/// Restriction to the kinematic slot: substitutes z_m = 0 for m >= 2.
/// Result has one variable; the Gaussian rate survives on variable 1.
Symbol flat(const Symbol& s);

/// Delta' s = sum_{m=2}^{N} d_m dbar_m s  (quarter-Laplacian convention,
/// pinned by pi_h(|z_2|^2) = h = sum_j h^j/j! (Delta'^j |z_2|^2)^flat).
Symbol laplacian_prime(const Symbol& s);

/// upsilon_r(a,b) = sum_{j+k+l=r} sign^l/(j!k!l!)
///                    d^l (Delta'^j a)^flat * dbar^l (Delta'^k b)^flat.
/// One-variable result; for one-variable inputs Delta' acts as zero.
Symbol upsilon(int r, const Symbol& a, const Symbol& b, int sign);

/// True iff s is invariant under every transposition of variables 2..N
/// (checked on canonical term lists for the generators (m, m+1)).
bool check_symmetric_tail(const Symbol& s);

/// Integrates out variables 2..N against the normalized measure mu_h of
/// dom using the closed-form moments; the result is a one-variable symbol
/// with numeric coefficients. Disc requires rate c = 0 on every term.
Symbol pi_h(const Symbol& s, const DomainSpec& dom);

/// Exact h-expansion of pi_h for rate-0 symbols on the plane:
/// returns S_j with pi_h(s) = sum_j h^j S_j, where S_j = (Delta'^j s)^flat / j!.
/// The sum terminates (polynomial input), so this is the exact finite case
/// of the uniform expansion of pi_h.
std::vector<Symbol> pi_h_series(const Symbol& s);

}  // namespace btq
