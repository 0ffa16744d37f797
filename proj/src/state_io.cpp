#include "cvnl/state_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cvnl/errors.hpp"

namespace cvnl {

std::string state_to_json(const CovarianceMatrix& cm) {
  const auto& s = cm.matrix();
  nlohmann::json sigma = nlohmann::json::array();
  for (Eigen::Index i = 0; i < s.rows(); ++i) {
    for (Eigen::Index j = 0; j < s.cols(); ++j) sigma.push_back(s(i, j));
  }
  nlohmann::json doc{{"modes", cm.modes()}, {"sigma", std::move(sigma)}};
  return doc.dump() + "\n";
}

CovarianceMatrix state_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(0, std::string("state JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("modes") || !doc.contains("sigma")) {
    throw ParseError(0, "state JSON needs 'modes' and 'sigma'");
  }
  if (!doc["modes"].is_number_integer() || !doc["sigma"].is_array()) {
    throw ParseError(0, "state JSON: 'modes' must be an integer and 'sigma' an array");
  }
  const int n = doc["modes"].get<int>();
  if (n < 1 || n > kMaxModes) throw ParseError(0, "state JSON: modes must be 1, 2 or 3");
  const auto& sigma = doc["sigma"];
  const auto dim = static_cast<std::size_t>(2 * n);
  if (sigma.size() != dim * dim) {
    throw ParseError(0, "state JSON: expected " + std::to_string(dim * dim) + " entries in 'sigma'");
  }
  Eigen::MatrixXd s(dim, dim);
  for (std::size_t k = 0; k < dim * dim; ++k) {
    if (!sigma[k].is_number()) throw ParseError(0, "state JSON: non-numeric entry in 'sigma'");
    s(static_cast<Eigen::Index>(k / dim), static_cast<Eigen::Index>(k % dim)) = sigma[k].get<double>();
  }
  return CovarianceMatrix(std::move(s));
}

CovarianceMatrix read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open state file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return state_from_json(buf.str());
}

void write_state_file(const CovarianceMatrix& cm, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write state file '" + path + "'");
  out << state_to_json(cm);
}

}  // namespace cvnl
