#include "nullcone/report.hpp"

#include <cmath>

#include "nullcone/matrix.hpp"

namespace nullcone {

Json to_json(const CheckReport& r, bool timing) {
  Json j;
  j["name"] = r.name;
  j["pass"] = r.pass;
  j["witness"] = r.witness ? Json(*r.witness) : Json(nullptr);
  if (!r.details.empty()) j["details"] = r.details;
  if (timing) j["elapsed_ms"] = std::round(r.elapsed_ms * 1000.0) / 1000.0;
  return j;
}

std::string to_string(const ExactMatrix& m) {
  std::string out = "[";
  for (int i = 0; i < m.rows(); ++i) {
    out += i ? ", [" : "[";
    for (int j = 0; j < m.cols(); ++j) {
      if (j) out += ", ";
      out += m.at(i, j).to_string();
    }
    out += "]";
  }
  return out + "]";
}

}  // namespace nullcone
