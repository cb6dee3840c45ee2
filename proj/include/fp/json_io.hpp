#pragma once

#include <fp/laurent.hpp>
#include <fp/zring.hpp>

#include <nlohmann/json.hpp>

namespace fp {

// {"min_order":m,"trunc_order":t,"coeffs":[...]} with exact coefficients as
// nested term objects and float coefficients as plain numbers.
inline nlohmann::json series_to_json(const LaurentSeries<ZetaExpr>& s) {
    nlohmann::json j;
    j["min_order"]   = s.min_order();
    j["trunc_order"] = s.trunc_order();
    auto coeffs      = nlohmann::json::array();
    for (int k = s.min_order(); k <= s.trunc_order(); ++k)
        coeffs.push_back(nlohmann::json::parse(s.coeff(k).to_json_string()));
    j["coeffs"] = coeffs;
    return j;
}

inline nlohmann::json series_to_json(const LaurentSeries<double>& s) {
    nlohmann::json j;
    j["min_order"]   = s.min_order();
    j["trunc_order"] = s.trunc_order();
    auto coeffs      = nlohmann::json::array();
    for (int k = s.min_order(); k <= s.trunc_order(); ++k) coeffs.push_back(s.coeff(k));
    j["coeffs"] = coeffs;
    return j;
}

inline LaurentSeries<ZetaExpr> series_from_json(const nlohmann::json& j) {
    int lo = j.at("min_order").get<int>(), hi = j.at("trunc_order").get<int>();
    std::vector<ZetaExpr> c;
    for (const auto& e : j.at("coeffs")) c.push_back(ZetaExpr::from_json_string(e.dump()));
    return LaurentSeries<ZetaExpr>(lo, hi, std::move(c));
}

}  // namespace fp
