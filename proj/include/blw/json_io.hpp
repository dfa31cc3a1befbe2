#pragma once

#include <json.hpp>
#include <string>

#include "blw/piecewise.hpp"
#include "blw/wavelet.hpp"

namespace blw {

using json = nlohmann::ordered_json;

/// {"knots": [[num, scale], ...], "pieces": [[c0, c1, ...], ...]}
json to_json(const PiecewisePolynomial& f);
PiecewisePolynomial polynomial_from_json(const json& j);

json to_json(const DyadicRational& d);
DyadicRational dyadic_from_json(const json& j);

/// {"base", "log2_dilation", "epsilon", "discarded_mass", "terms": [[[num, scale], w], ...]}
json to_json(const TranslateSeries& s);
TranslateSeries series_from_json(const json& j);

/// Piecewise-linear interpolant of "x,value" CSV rows; x must be strictly increasing.
PiecewisePolynomial polynomial_from_csv(const std::string& text);

/// Accepts a bare polynomial object, or any object with a "polynomial" member.
PiecewisePolynomial polynomial_from_document(const json& j);

}  // namespace blw
