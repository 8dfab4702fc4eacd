#include "spinqc/state_io.hpp"

#include <fstream>

namespace spinqc {

using nlohmann::json;

json matrix_to_json(const Mat& m) {
  json re = json::array(), im = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json rre = json::array(), rim = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      rre.push_back(m(r, c).real());
      rim.push_back(m(r, c).imag());
    }
    re.push_back(rre);
    im.push_back(rim);
  }
  return json{{"dim", m.rows()}, {"re", re}, {"im", im}};
}

json to_json(const PureState& psi) {
  json re = json::array(), im = json::array();
  for (int k = 0; k < psi.dim(); ++k) {
    re.push_back(psi.amplitude(k).real());
    im.push_back(psi.amplitude(k).imag());
  }
  return json{{"dim", psi.dim()}, {"re", re}, {"im", im}};
}

json to_json(const DensityMatrix& rho) { return matrix_to_json(rho.entries()); }

Mat matrix_from_json(const json& j) {
  int dim = j.at("dim").get<int>();
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (int(re.size()) != dim || int(im.size()) != dim)
    throw std::invalid_argument("state json: row count does not match dim");
  Mat m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    if (int(re[r].size()) != dim || int(im[r].size()) != dim)
      throw std::invalid_argument("state json: column count does not match dim");
    for (int c = 0; c < dim; ++c)
      m(r, c) = cxd(re[r][c].get<double>(), im[r][c].get<double>());
  }
  return m;
}

PureState pure_state_from_json(const json& j) {
  int dim = j.at("dim").get<int>();
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (int(re.size()) != dim || int(im.size()) != dim)
    throw std::invalid_argument("state json: amplitude count does not match dim");
  Vec v(dim);
  for (int k = 0; k < dim; ++k) v(k) = cxd(re[k].get<double>(), im[k].get<double>());
  return PureState(std::move(v));
}

DensityMatrix density_from_json(const json& j) { return DensityMatrix(matrix_from_json(j)); }

DensityMatrix load_state(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open state file: " + path);
  json j = json::parse(in);
  if (j.at("re").is_array() && !j["re"].empty() && j["re"][0].is_array())
    return density_from_json(j);
  return DensityMatrix::from_pure(pure_state_from_json(j));
}

}  // namespace spinqc
