#include "g2lab/io.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace g2lab {

namespace {

std::string idx(int a) { return std::to_string(a + 1); }

Json matrix_rows(const Eigen::Matrix3d& r) {
  Json rows = Json::array();
  for (int i = 0; i < 3; ++i) rows.push_back({r(i, 0), r(i, 1), r(i, 2)});
  return rows;
}

Json vector_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

template <class T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorKind::Parse, std::string("missing field \"") + key + "\"");
  }
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("field \"") + key + "\": " + e.what());
  }
}

Json residuals_json(const NamedResiduals& rs) {
  Json out = Json::object();
  for (const auto& [name, value] : rs) out[name] = value;
  return out;
}

}  // namespace

Json ambient_to_json(const AmbientSpace& amb) {
  Json j;
  j["m"] = amb.m;
  j["convention"] = kCoordinateConvention;
  j["triple_rotation"] = matrix_rows(amb.rotation.matrix());
  return j;
}

AmbientSpace ambient_from_json(const Json& j) {
  const int m = field<int>(j, "m");
  const auto convention = field<std::string>(j, "convention");
  if (convention != kCoordinateConvention) {
    throw Error(ErrorKind::Parse, "unsupported coordinate convention \"" + convention + "\"");
  }
  Eigen::Matrix3d r = Eigen::Matrix3d::Identity();
  if (j.contains("triple_rotation")) {
    const auto rows = field<std::vector<std::vector<double>>>(j, "triple_rotation");
    if (rows.size() != 3) throw Error(ErrorKind::Parse, "triple_rotation must be 3x3");
    for (int i = 0; i < 3; ++i) {
      if (rows[i].size() != 3) throw Error(ErrorKind::Parse, "triple_rotation must be 3x3");
      for (int k = 0; k < 3; ++k) r(i, k) = rows[i][k];
    }
  }
  return rotate_triple(build_ambient(m), TripleRotation(r, 1e-12));
}

Json hyperpoint_to_json(const HypersurfacePoint& hp) {
  Json j;
  j["ambient"] = ambient_to_json(hp.ambient);
  j["N"] = vector_json(hp.normal);
  return j;
}

HypersurfacePoint hyperpoint_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("ambient")) throw Error(ErrorKind::Parse, "missing field \"ambient\"");
  const AmbientSpace amb = ambient_from_json(j.at("ambient"));
  const auto n = field<std::vector<double>>(j, "N");
  if (static_cast<Eigen::Index>(n.size()) != amb.dim) {
    throw Error(ErrorKind::Parse, "N has " + std::to_string(n.size()) + " entries, expected " +
                                      std::to_string(amb.dim));
  }
  return induce(amb, Eigen::Map<const Vector>(n.data(), amb.dim));
}

Json shape_to_json(const LinOp& shape) {
  Json j;
  j["dim"] = shape.rows();
  Json entries = Json::array();
  for (Eigen::Index i = 0; i < shape.rows(); ++i)
    for (Eigen::Index k = 0; k < shape.cols(); ++k) entries.push_back(shape(i, k));
  j["entries"] = std::move(entries);
  return j;
}

LinOp shape_from_json(const Json& j) {
  const auto dim = field<Eigen::Index>(j, "dim");
  const auto entries = field<std::vector<double>>(j, "entries");
  if (dim <= 0 || static_cast<Eigen::Index>(entries.size()) != dim * dim) {
    throw Error(ErrorKind::Parse, "entries must hold dim*dim values");
  }
  LinOp shape(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index k = 0; k < dim; ++k) shape(i, k) = entries[static_cast<std::size_t>(i * dim + k)];
  return shape;
}

Json report_to_json(const StructureReport& rep) {
  Json j;
  j["pass"] = rep.pass;
  j["residuals"] = residuals_json(rep.residuals);
  return j;
}

Json certificate_to_json(const HopfCertificate& cert) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["status"] = std::string(to_string(cert.status));
  j["failing_step"] = cert.failing_step ? Json(*cert.failing_step) : Json(nullptr);
  j["reason"] = cert.reason;
  j["rotation"] = matrix_rows(cert.rotation.matrix());
  j["betas"] = {cert.betas[0], cert.betas[1], cert.betas[2]};
  j["chosen_a"] = cert.chosen_a + 1;
  Json pairs = Json::array();
  for (const auto& p : cert.eigenpairs) pairs.push_back({{"lambda", p.lambda}, {"mu", p.mu}});
  j["eigenpairs"] = std::move(pairs);
  Json eps = Json::array();
  for (const auto& e : cert.epsilons) eps.push_back({{"epsilon", e.value}, {"distance", e.distance}});
  j["epsilons"] = std::move(eps);
  Json eta = Json::object();
  for (int a = 0; a < 3; ++a) eta["eta(xi" + idx(a) + ")"] = cert.eta_xi[a];
  j["eta_xi"] = std::move(eta);
  j["alpha"] = cert.alpha;
  j["residual_hopf"] = cert.residual_hopf;
  j["step_residuals"] = residuals_json(cert.step_residuals);
  return j;
}

Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::Parse, origin + ": " + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Parse, "cannot write " + path);
  out << text;
}

void write_spectrum_csv(std::ostream& os, const std::vector<SpectrumA>& rows) {
  os << "r,alpha,beta,lambda,mu,distinct_count\n";
  const auto old_flags = os.flags();
  const auto old_precision = os.precision();
  os << std::setprecision(17);
  for (const SpectrumA& s : rows) {
    os << s.r << ',' << s.alpha << ',' << s.beta << ',' << s.lambda << ',' << s.mu << ','
       << s.distinct_count << '\n';
  }
  os.flags(old_flags);
  os.precision(old_precision);
}

}  // namespace g2lab
