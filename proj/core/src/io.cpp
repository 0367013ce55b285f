#include "btq/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace btq {

ordered_json symbol_to_json(const Symbol& s) {
  ordered_json j;
  j["num_vars"] = s.num_vars();
  j["terms"] = ordered_json::array();
  for (const auto& [key, coef] : s.terms()) {
    ordered_json t;
    t["re"] = coef.real();
    t["im"] = coef.imag();
    t["alpha"] = key.alpha;
    t["beta"] = key.beta;
    t["c_num"] = key.rate.num();
    t["c_den"] = key.rate.den();
    j["terms"].push_back(std::move(t));
  }
  return j;
}

Symbol symbol_from_json(const ordered_json& j) {
  if (!j.contains("num_vars") || !j.contains("terms"))
    throw std::invalid_argument("symbol JSON: expected keys num_vars and terms");
  Symbol s(j.at("num_vars").get<int>());
  for (const auto& t : j.at("terms")) {
    const cxd coef(t.at("re").get<double>(), t.at("im").get<double>());
    const Rational rate(t.value("c_num", std::int64_t{0}), t.value("c_den", std::int64_t{1}));
    s.add_term(TermKey{t.at("alpha").get<std::vector<int>>(),
                       t.at("beta").get<std::vector<int>>(), rate},
               coef);
  }
  return s;
}

ordered_json matrix_to_json(const Matrix& M) {
  ordered_json j;
  j["rows"] = M.rows();
  j["cols"] = M.cols();
  ordered_json re = ordered_json::array(), im = ordered_json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    for (Eigen::Index c = 0; c < M.cols(); ++c) {
      re.push_back(M(i, c).real());
      im.push_back(M(i, c).imag());
    }
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  return j;
}

Matrix matrix_from_json(const ordered_json& j) {
  const Eigen::Index rows = j.at("rows").get<Eigen::Index>();
  const Eigen::Index cols = j.at("cols").get<Eigen::Index>();
  Matrix M(rows, cols);
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (static_cast<Eigen::Index>(re.size()) != rows * cols)
    throw std::invalid_argument("matrix JSON: entry count mismatch");
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index c = 0; c < cols; ++c) {
      const Eigen::Index k = i * cols + c;
      M(i, c) = cxd(re.at(k).get<double>(), im.at(k).get<double>());
    }
  return M;
}

std::string matrix_to_csv(const Matrix& M) {
  std::string out;
  char buf[64];
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    for (Eigen::Index c = 0; c < M.cols(); ++c) {
      if (c > 0) out += ',';
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g", M(i, c).real(), M(i, c).imag());
      out += buf;
    }
    out += '\n';
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream os(p, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os << content;
}

void write_matrix_csv(const std::string& path, const Matrix& M) {
  write_text_file(path, matrix_to_csv(M));
}

ordered_json mc_estimate_to_json(const McEstimate& est) {
  ordered_json j;
  j["samples"] = est.samples;
  j["mean"] = matrix_to_json(est.mean);
  ordered_json se = ordered_json::array();
  for (Eigen::Index i = 0; i < est.stderr_.rows(); ++i)
    for (Eigen::Index c = 0; c < est.stderr_.cols(); ++c) se.push_back(est.stderr_(i, c));
  j["stderr"] = std::move(se);
  return j;
}

ordered_json compare_report_to_json(const CompareReport& rep) {
  ordered_json j;
  j["theorem_part"] = rep.theorem_part;
  j["symbol"] = rep.symbol_id;
  j["N"] = rep.N;
  j["K"] = rep.K;
  j["h"] = rep.h;
  j["samples"] = rep.samples;
  j["max_z"] = rep.max_z;
  j["frobenius"] = rep.frobenius;
  j["pass"] = rep.pass;
  return j;
}

ordered_json expansion_report_to_json(const ExpansionReport& rep) {
  ordered_json j;
  j["phi"] = rep.phi_id;
  j["psi"] = rep.psi_id;
  j["track"] = rep.track;
  j["R"] = rep.R;
  j["K"] = rep.K;
  j["margin"] = rep.margin;
  j["sign"] = rep.sign;
  j["domain"] = domain_name(rep.domain);
  j["h_grid"] = rep.h_grid;
  j["residuals"] = rep.residuals;
  j["exact"] = rep.fit.exact;
  if (!rep.fit.exact) j["fitted_slope"] = rep.fit.slope;
  j["expected_slope"] = rep.expected_slope;
  return j;
}

ordered_json sup_norm_rows_to_json(const std::vector<SupNormRow>& rows) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json j;
    j["h"] = r.h;
    j["K"] = r.K;
    j["toeplitz_norm"] = r.toeplitz_norm;
    j["sup_grid"] = r.sup_grid;
    arr.push_back(std::move(j));
  }
  return arr;
}

}  // namespace btq
