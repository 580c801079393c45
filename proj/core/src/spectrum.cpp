#include "pvn/spectrum.hpp"

#include <cmath>
#include <complex>

#include "pvn/errors.hpp"

namespace pvn {

std::string to_string(Method method) {
  switch (method) {
    case Method::fgh: return "fgh";
    case Method::pvn: return "pvn";
    case Method::bvn: return "bvn";
    case Method::vn_analytic: return "vn-analytic";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  if (name == "fgh") return Method::fgh;
  if (name == "pvn") return Method::pvn;
  if (name == "bvn") return Method::bvn;
  if (name == "vn-analytic") return Method::vn_analytic;
  throw InvalidArgument("method", "unknown method '" + std::string(name) +
                                      "' (expected fgh, pvn, bvn or vn-analytic)");
}

void fix_phase(Eigen::MatrixXcd& vectors) {
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    Eigen::Index peak = 0;
    vectors.col(c).cwiseAbs().maxCoeff(&peak);
    const std::complex<double> z = vectors(peak, c);
    if (std::abs(z) == 0.0) continue;
    vectors.col(c) *= std::conj(z) / std::abs(z);
    vectors(peak, c) = std::abs(z);
  }
}

}  // namespace pvn
