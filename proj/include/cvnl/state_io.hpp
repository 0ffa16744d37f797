#pragma once

// JSON form of a covariance matrix: {"modes": n, "sigma": [row-major 4n^2 reals]}.

#include <string>

#include "cvnl/gaussian.hpp"

namespace cvnl {

std::string state_to_json(const CovarianceMatrix& cm);
CovarianceMatrix state_from_json(const std::string& text);

CovarianceMatrix read_state_file(const std::string& path);
void write_state_file(const CovarianceMatrix& cm, const std::string& path);

}  // namespace cvnl
