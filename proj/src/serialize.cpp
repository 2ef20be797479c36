#include "msk/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace msk {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw SchemaError("json: " + what);
}

double max_abs(const CMat& a) {
  double m = 0.0;
  for (int j = 0; j < a.cols(); ++j)
    for (int i = 0; i < a.rows(); ++i) m = std::max(m, std::abs(a(i, j)));
  return m;
}

}  // namespace

Json mat_to_json(const CMat& a) {
  Json re = Json::array();
  Json im = Json::array();
  for (int i = 0; i < a.rows(); ++i) {
    Json rrow = Json::array();
    Json irow = Json::array();
    for (int j = 0; j < a.cols(); ++j) {
      rrow.push_back(a(i, j).real());
      irow.push_back(a(i, j).imag());
    }
    re.push_back(std::move(rrow));
    im.push_back(std::move(irow));
  }
  return Json{{"re", std::move(re)}, {"im", std::move(im)}};
}

CMat mat_from_json(const Json& j) {
  require(j.is_object() && j.contains("re") && j.contains("im"),
          "matrix needs \"re\" and \"im\" arrays");
  const Json& re = j.at("re");
  const Json& im = j.at("im");
  require(re.is_array() && im.is_array() && re.size() == im.size() &&
              !re.empty(),
          "matrix parts must be equal-size nonempty arrays");
  const auto rows = static_cast<int>(re.size());
  require(re.at(0).is_array() && !re.at(0).empty(), "matrix rows must be arrays");
  const auto cols = static_cast<int>(re.at(0).size());
  CMat a(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const Json& rrow = re.at(i);
    const Json& irow = im.at(i);
    require(rrow.is_array() && irow.is_array() &&
                static_cast<int>(rrow.size()) == cols &&
                static_cast<int>(irow.size()) == cols,
            "matrix rows must be rectangular");
    for (int jj = 0; jj < cols; ++jj) {
      require(rrow.at(jj).is_number() && irow.at(jj).is_number(),
              "matrix entries must be numbers");
      a(i, jj) = Complex(rrow.at(jj).get<double>(), irow.at(jj).get<double>());
    }
  }
  return a;
}

Json circle_to_json(const CircleFn& f) {
  const int m = f.grid_size();
  const int lo = -m / 2;
  const int hi = m / 2 - 1;
  double scale = 0.0;
  for (int k = lo; k <= hi; ++k) scale = std::max(scale, max_abs(f.fourier_coeff(k)));
  Json coeffs = Json::array();
  for (int k = lo; k <= hi; ++k) {
    const CMat c = f.fourier_coeff(k);
    if (max_abs(c) > 1e-15 * scale && scale > 0.0)
      coeffs.push_back(Json::array({k, mat_to_json(c)}));
  }
  return Json{{"shape", Json::array({f.rows(), f.cols()})},
              {"M", m},
              {"coeffs", std::move(coeffs)}};
}

CircleFn circle_from_json(const Json& j) {
  require(j.is_object() && j.contains("shape") && j.contains("M") &&
              j.contains("coeffs"),
          "function needs \"shape\", \"M\", \"coeffs\"");
  const Json& shape = j.at("shape");
  require(shape.is_array() && shape.size() == 2 &&
              shape.at(0).is_number_integer() && shape.at(1).is_number_integer(),
          "\"shape\" must be [rows, cols]");
  const int rows = shape.at(0).get<int>();
  const int cols = shape.at(1).get<int>();
  require(rows >= 1 && cols >= 1, "\"shape\" entries must be positive");
  require(j.at("M").is_number_integer(), "\"M\" must be an integer");
  const int m = j.at("M").get<int>();
  std::map<int, CMat> coeffs;
  for (const Json& entry : j.at("coeffs")) {
    require(entry.is_array() && entry.size() == 2 &&
                entry.at(0).is_number_integer(),
            "coefficient entries are [k, matrix]");
    const int k = entry.at(0).get<int>();
    CMat c = mat_from_json(entry.at(1));
    require(c.rows() == rows && c.cols() == cols,
            "coefficient shape disagrees with \"shape\"");
    require(!coeffs.count(k), "duplicate coefficient index");
    coeffs.emplace(k, std::move(c));
  }
  if (coeffs.empty()) return CircleFn::zero(rows, cols, m);
  return CircleFn::from_fourier(coeffs, m);
}

InnerFn inner_from_spec(const Json& spec, int grid) {
  require(spec.is_object() && spec.contains("type") &&
              spec.at("type").is_string(),
          "inner spec needs a \"type\" string");
  const std::string type = spec.at("type").get<std::string>();
  if (type == "monomial") {
    require(spec.contains("n") && spec.at("n").is_number_integer() &&
                spec.contains("d") && spec.at("d").is_number_integer(),
            "monomial spec needs integer \"n\" and \"d\"");
    return monomial(spec.at("n").get<int>(), spec.at("d").get<int>(), grid);
  }
  if (type == "bp") {
    require(spec.contains("d") && spec.at("d").is_number_integer() &&
                spec.contains("factors") && spec.at("factors").is_array(),
            "bp spec needs integer \"d\" and a \"factors\" array");
    const int d = spec.at("d").get<int>();
    std::vector<BlaschkeFactor> factors;
    for (const Json& jf : spec.at("factors")) {
      require(jf.is_object() && jf.contains("w") && jf.contains("P") &&
                  jf.at("w").is_array() && jf.at("w").size() == 2,
              "bp factor needs \"w\": [re, im] and \"P\": matrix");
      BlaschkeFactor f;
      f.w = Complex(jf.at("w").at(0).get<double>(),
                    jf.at("w").at(1).get<double>());
      f.projection = mat_from_json(jf.at("P"));
      factors.push_back(std::move(f));
    }
    return blaschke_potapov(factors, d, grid);
  }
  if (type == "crofoot") {
    require(spec.contains("base") && spec.contains("W"),
            "crofoot spec needs \"base\" and \"W\"");
    return crofoot_inner(inner_from_spec(spec.at("base"), grid),
                         mat_from_json(spec.at("W")));
  }
  throw SchemaError("json: unknown inner spec type \"" + type + "\"");
}

CircleFn symbol_from_spec(const Json& spec, int d, int grid, Rng& rng) {
  require(spec.is_object(), "symbol spec must be an object");
  if (spec.contains("coeffs")) {
    Json wrapped{{"shape", Json::array({d, d})},
                 {"M", grid},
                 {"coeffs", spec.at("coeffs")}};
    return circle_from_json(wrapped);
  }
  if (spec.contains("random")) {
    const Json& r = spec.at("random");
    require(r.is_object() && r.contains("degree") &&
                r.at("degree").is_number_integer(),
            "random symbol needs integer \"degree\"");
    const int degree = r.at("degree").get<int>();
    const double scl =
        r.contains("scale") ? r.at("scale").get<double>() : 1.0;
    return CircleFn::from_fourier(rng.laurent(d, degree, scl), grid);
  }
  throw SchemaError("json: symbol spec needs \"coeffs\" or \"random\"");
}

Json tto_to_json(const TTOMatrix& t) {
  Json theta1 = t.theta1_spec.empty() ? Json(nullptr) : Json::parse(t.theta1_spec, nullptr, false);
  Json theta2 = t.theta2_spec.empty() ? Json(nullptr) : Json::parse(t.theta2_spec, nullptr, false);
  if (theta1.is_discarded()) theta1 = t.theta1_spec;
  if (theta2.is_discarded()) theta2 = t.theta2_spec;
  return Json{{"mat", mat_to_json(t.mat)},
              {"theta1", std::move(theta1)},
              {"theta2", std::move(theta2)},
              {"symbol", t.symbol_id},
              {"grid_tol", t.grid_tol}};
}

Json finding_to_json(const Finding& f) {
  return Json{{"check", f.check},
              {"instance_seed", f.instance_seed},
              {"lhs", f.lhs},
              {"rhs", f.rhs},
              {"tolerance", f.tolerance},
              {"verdict", f.verdict}};
}

}  // namespace msk
