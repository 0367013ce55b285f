#pragma once

#include <json.hpp>
#include <string>

#include "btq/kernels.hpp"
#include "btq/matrix_hilbert.hpp"
#include "btq/semiclassical.hpp"

namespace btq {

using ordered_json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "btq 0.1.0";

/// Symbol wire form:
/// {"num_vars":N,"terms":[{"re":..,"im":..,"alpha":[..],"beta":[..],
///                         "c_num":..,"c_den":..}]}
ordered_json symbol_to_json(const Symbol& s);
Symbol symbol_from_json(const ordered_json& j);

ordered_json matrix_to_json(const Matrix& M);
Matrix matrix_from_json(const ordered_json& j);

/// Row-major CSV with one "re,im" pair of cells per entry.
std::string matrix_to_csv(const Matrix& M);
void write_matrix_csv(const std::string& path, const Matrix& M);

ordered_json mc_estimate_to_json(const McEstimate& est);
ordered_json compare_report_to_json(const CompareReport& rep);
ordered_json expansion_report_to_json(const ExpansionReport& rep);
ordered_json sup_norm_rows_to_json(const std::vector<SupNormRow>& rows);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace btq
