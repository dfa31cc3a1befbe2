#include "blw/json_io.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

namespace blw {

json to_json(const DyadicRational& d) { return json::array({d.numerator(), d.scale()}); }

DyadicRational dyadic_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer()) {
        throw std::invalid_argument("dyadic must be [numerator, scale]");
    }
    const int scale = j[1].get<int>();
    if (scale < 0) throw std::invalid_argument("dyadic scale must be non-negative");
    return DyadicRational(j[0].get<std::int64_t>(), scale);
}

json to_json(const PiecewisePolynomial& f) {
    json knots = json::array();
    for (const auto& k : f.knots()) knots.push_back(to_json(k));
    json pieces = json::array();
    for (const auto& p : f.pieces()) pieces.push_back(p);
    return json{{"knots", std::move(knots)}, {"pieces", std::move(pieces)}};
}

PiecewisePolynomial polynomial_from_json(const json& j) {
    if (!j.is_object() || !j.contains("knots") || !j.contains("pieces")) {
        throw std::invalid_argument("polynomial needs \"knots\" and \"pieces\"");
    }
    std::vector<DyadicRational> knots;
    for (const auto& k : j.at("knots")) knots.push_back(dyadic_from_json(k));
    std::vector<std::vector<double>> pieces;
    for (const auto& p : j.at("pieces")) pieces.push_back(p.get<std::vector<double>>());
    return PiecewisePolynomial(std::move(knots), std::move(pieces));
}

json to_json(const TranslateSeries& s) {
    json terms = json::array();
    for (const auto& [shift, w] : s.terms) terms.push_back(json::array({to_json(shift), w}));
    return json{{"base", s.base},
                {"log2_dilation", s.log2_dilation},
                {"epsilon", s.epsilon},
                {"discarded_mass", s.discarded_mass},
                {"terms", std::move(terms)}};
}

TranslateSeries series_from_json(const json& j) {
    TranslateSeries s;
    s.base = j.at("base").get<int>();
    s.log2_dilation = j.at("log2_dilation").get<int>();
    s.epsilon = j.value("epsilon", 0.0);
    s.discarded_mass = j.value("discarded_mass", 0.0);
    for (const auto& t : j.at("terms")) s.add(dyadic_from_json(t.at(0)), t.at(1).get<double>());
    return s;
}

PiecewisePolynomial polynomial_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<double> xs, ys;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("CSV line " + std::to_string(lineno) + ": expected x,value");
        double x = 0, y = 0;
        const char* b = line.data();
        auto rx = std::from_chars(b, b + comma, x);
        auto ry = std::from_chars(b + comma + 1, b + line.size(), y);
        if (rx.ec != std::errc() || ry.ec != std::errc()) {
            if (xs.empty()) continue;  // header row
            throw std::invalid_argument("CSV line " + std::to_string(lineno) + ": not numeric");
        }
        if (!xs.empty() && !(x > xs.back())) throw std::invalid_argument("CSV x values must be strictly increasing");
        xs.push_back(x);
        ys.push_back(y);
    }
    if (xs.size() < 2) throw std::invalid_argument("CSV needs at least two samples");
    std::vector<DyadicRational> knots;
    for (double x : xs) knots.push_back(DyadicRational::from_double(x));
    std::vector<std::vector<double>> pieces;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        const double h = (knots[i + 1] - knots[i]).to_double();
        pieces.push_back({ys[i], (ys[i + 1] - ys[i]) / h});
    }
    return PiecewisePolynomial(std::move(knots), std::move(pieces));
}

PiecewisePolynomial polynomial_from_document(const json& j) {
    if (j.is_object() && j.contains("polynomial")) return polynomial_from_json(j.at("polynomial"));
    return polynomial_from_json(j);
}

}  // namespace blw
