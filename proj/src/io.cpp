#include "matmoment/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace matmoment {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

namespace {

ordered block_to_json(const CMat& b) {
  ordered rows = ordered::array();
  for (Eigen::Index i = 0; i < b.rows(); ++i) {
    ordered row = ordered::array();
    for (Eigen::Index j = 0; j < b.cols(); ++j)
      row.push_back({b(i, j).real(), b(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

CMat block_from_json(const json& rows, int p) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != p)
    throw ShapeMismatch("moment block must be a p x p array");
  CMat b(p, p);
  for (int i = 0; i < p; ++i) {
    const json& row = rows.at(i);
    if (!row.is_array() || static_cast<int>(row.size()) != p)
      throw ShapeMismatch("moment block row has wrong length");
    for (int j = 0; j < p; ++j) {
      const json& entry = row.at(j);
      if (!entry.is_array() || entry.size() != 2)
        throw ShapeMismatch("matrix entry must be a [re, im] pair");
      b(i, j) = Cplx(entry.at(0).get<double>(), entry.at(1).get<double>());
    }
  }
  return b;
}

ordered poly_to_json(const MatrixPolynomial& poly) {
  ordered coeffs = ordered::array();
  for (int k = 0; k <= poly.degree(); ++k) coeffs.push_back(block_to_json(poly.coeff(k)));
  return coeffs;
}

}  // namespace

MatrixMoments moments_from_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ShapeMismatch(std::string("moment file is not valid JSON: ") + e.what());
  }
  try {
    const std::string kind_str = doc.at("kind").get<std::string>();
    MomentKind kind;
    if (kind_str == "trigonometric") kind = MomentKind::Trigonometric;
    else if (kind_str == "hamburger") kind = MomentKind::Hamburger;
    else throw ShapeMismatch("kind must be trigonometric or hamburger");
    ProblemDims dims{doc.at("p").get<int>(), doc.at("n").get<int>()};
    const json& blocks = doc.at("moments");
    std::vector<CMat> h;
    for (const json& b : blocks) h.push_back(block_from_json(b, dims.p));
    MatrixMoments mm{kind, dims, std::move(h)};
    mm.validate();
    return mm;
  } catch (const json::exception& e) {
    throw ShapeMismatch(std::string("moment file missing fields: ") + e.what());
  }
}

std::string moments_to_json_text(const MatrixMoments& moments) {
  ordered doc;
  doc["kind"] = to_string(moments.kind);
  doc["p"] = moments.dims.p;
  doc["n"] = moments.dims.n;
  ordered blocks = ordered::array();
  for (const CMat& b : moments.blocks) blocks.push_back(block_to_json(b));
  doc["moments"] = std::move(blocks);
  return doc.dump(2) + "\n";
}

MatrixMoments load_moments(const std::string& path) {
  return moments_from_json_text(read_text_file(path));
}

void save_moments(const MatrixMoments& moments, const std::string& path) {
  write_text_file(path, moments_to_json_text(moments));
}

std::string reports_to_json_text(const std::vector<IdentityReport>& reports) {
  ordered arr = ordered::array();
  for (const IdentityReport& r : reports) {
    ordered item;
    item["name"] = r.name;
    item["residual"] = r.max_residual;
    item["tolerance"] = r.tolerance;
    item["pass"] = r.pass;
    item["samples"] = r.samples;
    item["seed"] = r.seed;
    arr.push_back(std::move(item));
  }
  return arr.dump(2) + "\n";
}

std::string pair_to_json_text(const DeBrangesPair& pair, const SecondKindPair* second,
                              const ThetaMatrix* theta, double smallest_pivot) {
  ordered doc;
  doc["geometry"] = to_string(pair.tag);
  doc["construction"] = to_string(pair.construction);
  doc["alpha"] = {pair.alpha.real(), pair.alpha.imag()};
  doc["smallest_pivot"] = smallest_pivot;
  doc["E_minus"] = poly_to_json(pair.minus);
  doc["E_plus"] = poly_to_json(pair.plus);
  if (second) {
    doc["E_minus_second"] = poly_to_json(second->minus);
    doc["E_plus_second"] = poly_to_json(second->plus);
  }
  if (theta) {
    doc["theta"] = {{"b11", poly_to_json(theta->b11)},
                    {"b12", poly_to_json(theta->b12)},
                    {"b21", poly_to_json(theta->b21)},
                    {"b22", poly_to_json(theta->b22)}};
  }
  return doc.dump(2) + "\n";
}

std::string density_csv(const std::vector<double>& points,
                        const std::vector<CMat>& densities,
                        const std::vector<CMat>* phi_values) {
  std::ostringstream os;
  os.precision(17);
  const int p = static_cast<int>(densities.front().rows());
  os << "point";
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) os << ",delta_re_" << i << j << ",delta_im_" << i << j;
  if (phi_values)
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j) os << ",phi_re_" << i << j << ",phi_im_" << i << j;
  os << "\n";
  for (std::size_t r = 0; r < points.size(); ++r) {
    os << points[r];
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j)
        os << "," << densities[r](i, j).real() << "," << densities[r](i, j).imag();
    if (phi_values)
      for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j)
          os << "," << (*phi_values)[r](i, j).real() << ","
             << (*phi_values)[r](i, j).imag();
    os << "\n";
  }
  return os.str();
}

SchurSpec schur_spec_from_json_text(const std::string& text, int p, GeometryTag tag) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ShapeMismatch(std::string("parameter spec is not valid JSON: ") + e.what());
  }
  SchurSpec spec;
  spec.p = p;
  spec.tag = tag;
  const std::string type = doc.value("type", "zero");
  if (type == "zero") {
    spec.type = SchurSpec::Type::Zero;
  } else if (type == "constant") {
    if (doc.contains("matrix")) {
      spec.type = SchurSpec::Type::Constant;
      spec.matrix = block_from_json(doc.at("matrix"), p);
    } else {
      spec.type = SchurSpec::Type::ConstantRandom;
      spec.sigma_max = doc.value("sigma_max", 0.8);
    }
  } else if (type == "blaschke_unitary") {
    spec.type = SchurSpec::Type::BlaschkeUnitary;
    if (doc.contains("alpha")) {
      const json& a = doc.at("alpha");
      spec.alpha = Cplx(a.at(0).get<double>(), a.at(1).get<double>());
    }
    spec.scale = doc.value("scale", 1.0);
  } else if (type == "product") {
    spec.type = SchurSpec::Type::Product;
    spec.factors = doc.value("factors", 2);
    spec.scale = doc.value("scale", 0.9);
  } else {
    throw ShapeMismatch("unknown parameter type " + type);
  }
  return spec;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open " + path + " for writing");
  os << text;
}

std::string read_text_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace matmoment
