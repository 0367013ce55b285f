#include "btq/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace btq {

namespace {

void check_same_vars(const Symbol& a, const Symbol& b) {
  if (a.num_vars() != b.num_vars())
    throw std::invalid_argument("symbol variable counts differ");
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// all exponent vectors alpha >= 0 with |alpha| = r over nv slots
void compositions(int r, int nv, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == nv - 1) {
    cur.push_back(r);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int i = 0; i <= r; ++i) {
    cur.push_back(i);
    compositions(r - i, nv, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<int>> multi_indices(int r, int nv) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  compositions(r, nv, cur, out);
  return out;
}

}  // namespace

Symbol::Symbol(int num_vars) : num_vars_(num_vars) {
  if (num_vars < 1) throw std::invalid_argument("symbol needs at least one variable");
}

Symbol Symbol::constant(int num_vars, cxd value) {
  Symbol s(num_vars);
  TermKey key{std::vector<int>(num_vars, 0), std::vector<int>(num_vars, 0), Rational()};
  s.add_term(key, value);
  return s;
}

Symbol Symbol::variable(int num_vars, int m) {
  std::vector<int> alpha(num_vars, 0);
  alpha.at(m - 1) = 1;
  return monomial(num_vars, alpha, std::vector<int>(num_vars, 0));
}

Symbol Symbol::conj_variable(int num_vars, int m) {
  std::vector<int> beta(num_vars, 0);
  beta.at(m - 1) = 1;
  return monomial(num_vars, std::vector<int>(num_vars, 0), beta);
}

Symbol Symbol::gaussian(int num_vars, const Rational& rate) {
  return monomial(num_vars, std::vector<int>(num_vars, 0), std::vector<int>(num_vars, 0), 1.0,
                  rate);
}

Symbol Symbol::monomial(int num_vars, std::vector<int> alpha, std::vector<int> beta, cxd coef,
                        const Rational& rate) {
  Symbol s(num_vars);
  if (static_cast<int>(alpha.size()) != num_vars || static_cast<int>(beta.size()) != num_vars)
    throw std::invalid_argument("exponent vector length != num_vars");
  for (int e : alpha)
    if (e < 0) throw std::invalid_argument("negative exponent");
  for (int e : beta)
    if (e < 0) throw std::invalid_argument("negative exponent");
  s.add_term(TermKey{std::move(alpha), std::move(beta), rate}, coef);
  return s;
}

Symbol& Symbol::add_term(const TermKey& key, cxd coef) {
  if (static_cast<int>(key.alpha.size()) != num_vars_ ||
      static_cast<int>(key.beta.size()) != num_vars_)
    throw std::invalid_argument("term arity mismatch");
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    if (coef != cxd(0.0, 0.0)) terms_.emplace(key, coef);
  } else {
    it->second += coef;
    if (it->second == cxd(0.0, 0.0)) terms_.erase(it);
  }
  return *this;
}

cxd Symbol::eval(std::span<const cxd> point) const {
  if (static_cast<int>(point.size()) != num_vars_)
    throw std::invalid_argument("eval: wrong point dimension");
  double norm2 = 0.0;
  for (const cxd& z : point) norm2 += std::norm(z);
  cxd total = 0.0;
  for (const auto& [key, coef] : terms_) {
    cxd v = coef;
    for (int m = 0; m < num_vars_; ++m) {
      for (int i = 0; i < key.alpha[m]; ++i) v *= point[m];
      for (int i = 0; i < key.beta[m]; ++i) v *= std::conj(point[m]);
    }
    if (!key.rate.is_zero()) v *= std::exp(-key.rate.value() * norm2);
    total += v;
  }
  return total;
}

cxd Symbol::eval(cxd z) const { return eval(std::span<const cxd>(&z, 1)); }

Symbol Symbol::conj() const {
  Symbol out(num_vars_);
  for (const auto& [key, coef] : terms_)
    out.add_term(TermKey{key.beta, key.alpha, key.rate}, std::conj(coef));
  return out;
}

int Symbol::total_degree() const {
  int deg = 0;
  for (const auto& [key, coef] : terms_) {
    int d = 0;
    for (int e : key.alpha) d += e;
    for (int e : key.beta) d += e;
    deg = std::max(deg, d);
  }
  return deg;
}

bool Symbol::has_gaussian() const {
  for (const auto& [key, coef] : terms_)
    if (!key.rate.is_zero()) return true;
  return false;
}

std::string Symbol::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, coef] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << coef.real();
    if (coef.imag() != 0.0) os << (coef.imag() > 0 ? "+" : "") << coef.imag() << "i";
    os << ")";
    for (int m = 0; m < num_vars_; ++m) {
      if (key.alpha[m] > 0) {
        os << "*z" << (m + 1);
        if (key.alpha[m] > 1) os << "^" << key.alpha[m];
      }
      if (key.beta[m] > 0) {
        os << "*zb" << (m + 1);
        if (key.beta[m] > 1) os << "^" << key.beta[m];
      }
    }
    if (!key.rate.is_zero()) {
      os << "*exp(-" << key.rate.num();
      if (key.rate.den() != 1) os << "/" << key.rate.den();
      os << "|z|^2)";
    }
  }
  return os.str();
}

Symbol Symbol::operator-() const {
  Symbol out(num_vars_);
  for (const auto& [key, coef] : terms_) out.add_term(key, -coef);
  return out;
}

Symbol operator+(const Symbol& a, const Symbol& b) {
  check_same_vars(a, b);
  Symbol out = a;
  for (const auto& [key, coef] : b.terms_) out.add_term(key, coef);
  return out;
}

Symbol operator-(const Symbol& a, const Symbol& b) { return a + (-b); }

Symbol operator*(const Symbol& a, const Symbol& b) {
  check_same_vars(a, b);
  Symbol out(a.num_vars());
  const int nv = a.num_vars();
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) {
      TermKey key{std::vector<int>(nv), std::vector<int>(nv), ka.rate + kb.rate};
      for (int m = 0; m < nv; ++m) {
        key.alpha[m] = ka.alpha[m] + kb.alpha[m];
        key.beta[m] = ka.beta[m] + kb.beta[m];
      }
      out.add_term(key, ca * cb);
    }
  }
  return out;
}

Symbol operator*(cxd s, const Symbol& a) {
  Symbol out(a.num_vars());
  if (s == cxd(0.0, 0.0)) return out;
  for (const auto& [key, coef] : a.terms_) out.add_term(key, s * coef);
  return out;
}

double Symbol::max_coef_distance(const Symbol& a, const Symbol& b) {
  check_same_vars(a, b);
  double dist = 0.0;
  for (const auto& [key, coef] : a.terms_) {
    auto it = b.terms_.find(key);
    const cxd other = it == b.terms_.end() ? cxd(0.0) : it->second;
    dist = std::max(dist, std::abs(coef - other));
  }
  for (const auto& [key, coef] : b.terms_)
    if (!a.terms_.contains(key)) dist = std::max(dist, std::abs(coef));
  return dist;
}

Symbol sym_add(const Symbol& a, const Symbol& b) { return a + b; }
Symbol sym_mul(const Symbol& a, const Symbol& b) { return a * b; }

Symbol d_z(const Symbol& s, int m) {
  if (m < 1 || m > s.num_vars()) throw std::invalid_argument("d_z: variable index out of range");
  const int v = m - 1;
  Symbol out(s.num_vars());
  for (const auto& [key, coef] : s.terms()) {
    if (key.alpha[v] > 0) {
      TermKey k = key;
      k.alpha[v] -= 1;
      out.add_term(k, coef * static_cast<double>(key.alpha[v]));
    }
    if (!key.rate.is_zero()) {
      TermKey k = key;
      k.beta[v] += 1;
      out.add_term(k, -key.rate.value() * coef);
    }
  }
  return out;
}

Symbol d_zbar(const Symbol& s, int m) {
  if (m < 1 || m > s.num_vars())
    throw std::invalid_argument("d_zbar: variable index out of range");
  const int v = m - 1;
  Symbol out(s.num_vars());
  for (const auto& [key, coef] : s.terms()) {
    if (key.beta[v] > 0) {
      TermKey k = key;
      k.beta[v] -= 1;
      out.add_term(k, coef * static_cast<double>(key.beta[v]));
    }
    if (!key.rate.is_zero()) {
      TermKey k = key;
      k.alpha[v] += 1;
      out.add_term(k, -key.rate.value() * coef);
    }
  }
  return out;
}

Symbol poisson(const Symbol& a, const Symbol& b) {
  check_same_vars(a, b);
  Symbol sum(a.num_vars());
  for (int m = 1; m <= a.num_vars(); ++m)
    sum = sum + (d_z(a, m) * d_zbar(b, m) - d_z(b, m) * d_zbar(a, m));
  const cxd two_pi_over_i(0.0, -2.0 * M_PI);  // 2*pi/i
  return two_pi_over_i * sum;
}

Symbol cochain(int r, const Symbol& a, const Symbol& b, int sign) {
  check_same_vars(a, b);
  if (r < 0) throw std::invalid_argument("cochain: negative order");
  if (sign != 1 && sign != -1) throw std::invalid_argument("cochain: sign must be +1 or -1");
  if (r == 0) return a * b;
  Symbol out(a.num_vars());
  const double sgn = (sign == -1 && r % 2 == 1) ? -1.0 : 1.0;
  for (const auto& idx : multi_indices(r, a.num_vars())) {
    Symbol da = a, db = b;
    double fact = 1.0;
    for (int m = 0; m < a.num_vars(); ++m) {
      for (int i = 0; i < idx[m]; ++i) {
        da = d_z(da, m + 1);
        db = d_zbar(db, m + 1);
      }
      fact *= factorial(idx[m]);
    }
    if (da.is_zero() || db.is_zero()) continue;
    out = out + (cxd(sgn / fact) * (da * db));
  }
  return out;
}

Symbol flat(const Symbol& s) {
  Symbol out(1);
  for (const auto& [key, coef] : s.terms()) {
    bool vanishes = false;
    for (int m = 1; m < s.num_vars(); ++m)
      if (key.alpha[m] != 0 || key.beta[m] != 0) { vanishes = true; break; }
    if (vanishes) continue;
    out.add_term(TermKey{{key.alpha[0]}, {key.beta[0]}, key.rate}, coef);
  }
  return out;
}

Symbol laplacian_prime(const Symbol& s) {
  if (s.num_vars() < 2)
    throw std::invalid_argument("laplacian_prime: needs at least two variables");
  Symbol out(s.num_vars());
  for (int m = 2; m <= s.num_vars(); ++m) out = out + d_zbar(d_z(s, m), m);
  return out;
}

Symbol upsilon(int r, const Symbol& a, const Symbol& b, int sign) {
  check_same_vars(a, b);
  if (r < 0) throw std::invalid_argument("upsilon: negative order");
  if (sign != 1 && sign != -1) throw std::invalid_argument("upsilon: sign must be +1 or -1");
  const bool has_tail = a.num_vars() >= 2;

  // (Delta'^j a)^flat tables; Delta' is the zero operator without a tail
  auto lap_flats = [&](const Symbol& s) {
    std::vector<Symbol> out;
    Symbol cur = s;
    for (int j = 0; j <= r; ++j) {
      out.push_back(flat(cur));
      if (!has_tail) break;
      cur = laplacian_prime(cur);
      if (cur.is_zero()) {
        for (int k = j + 1; k <= r; ++k) out.push_back(Symbol::zero(1));
        break;
      }
    }
    while (static_cast<int>(out.size()) <= r) out.push_back(Symbol::zero(1));
    return out;
  };
  const std::vector<Symbol> fa = lap_flats(a);
  const std::vector<Symbol> fb = lap_flats(b);

  Symbol out(1);
  for (int j = 0; j <= r; ++j) {
    for (int k = 0; j + k <= r; ++k) {
      const int l = r - j - k;
      Symbol da = fa[j], db = fb[k];
      for (int i = 0; i < l; ++i) {
        da = d_z(da, 1);
        db = d_zbar(db, 1);
      }
      if (da.is_zero() || db.is_zero()) continue;
      double sgn = (sign == -1 && l % 2 == 1) ? -1.0 : 1.0;
      out = out + (cxd(sgn / (factorial(j) * factorial(k) * factorial(l))) * (da * db));
    }
  }
  return out;
}

bool check_symmetric_tail(const Symbol& s) {
  if (s.num_vars() < 2) throw std::invalid_argument("check_symmetric_tail: needs >= 2 variables");
  // adjacent transpositions generate the symmetric group on variables 2..N
  for (int m = 2; m < s.num_vars(); ++m) {
    Symbol swapped(s.num_vars());
    for (const auto& [key, coef] : s.terms()) {
      TermKey k = key;
      std::swap(k.alpha[m - 1], k.alpha[m]);
      std::swap(k.beta[m - 1], k.beta[m]);
      swapped.add_term(k, coef);
    }
    if (!swapped.identical(s)) return false;
  }
  return true;
}

Symbol pi_h(const Symbol& s, const DomainSpec& dom) {
  Symbol out(1);
  for (const auto& [key, coef] : s.terms()) {
    if (dom.kind() == Domain::disc && !key.rate.is_zero())
      throw std::invalid_argument("pi_h: disc symbols must have rate c = 0");
    cxd factor = coef;
    bool vanishes = false;
    for (int m = 1; m < s.num_vars(); ++m) {
      if (key.alpha[m] != key.beta[m]) { vanishes = true; break; }
      factor *= radial_moment(dom, key.alpha[m], key.rate);
    }
    if (vanishes) continue;
    out.add_term(TermKey{{key.alpha[0]}, {key.beta[0]}, key.rate}, factor);
  }
  return out;
}

std::vector<Symbol> pi_h_series(const Symbol& s) {
  if (s.has_gaussian())
    throw std::invalid_argument("pi_h_series: requires rate c = 0 (plane, polynomial symbols)");
  std::vector<Symbol> out;
  if (s.num_vars() == 1) {
    out.push_back(s);
    return out;
  }
  Symbol cur = s;
  double jfact = 1.0;
  for (int j = 0;; ++j) {
    if (j > 0) jfact *= j;
    out.push_back(cxd(1.0 / jfact) * flat(cur));
    cur = laplacian_prime(cur);
    if (cur.is_zero()) break;
  }
  while (!out.empty() && out.back().is_zero()) out.pop_back();
  if (out.empty()) out.push_back(Symbol::zero(1));
  return out;
}

}  // namespace btq
