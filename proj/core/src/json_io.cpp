#include "roofscale/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace roofscale {

namespace {

using nlohmann::json;

cplx parse_complex(const json& j, const std::string& what) {
  if (j.is_number()) {
    return cplx(j.get<double>(), 0.0);
  }
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
      !j[1].is_number()) {
    throw std::runtime_error(what + " must be a [re, im] pair");
  }
  return cplx(j[0].get<double>(), j[1].get<double>());
}

std::vector<int> parse_dims(const json& j) {
  if (!j.contains("dims") || !j["dims"].is_array()) {
    throw std::runtime_error("state file needs a \"dims\" array");
  }
  std::vector<int> dims;
  for (const auto& d : j["dims"]) {
    if (!d.is_number_integer()) {
      throw std::runtime_error("\"dims\" entries must be integers");
    }
    dims.push_back(d.get<int>());
  }
  return dims;
}

std::string complex_json(cplx v) {
  return "[" + format_double(v.real()) + ", " + format_double(v.imag()) + "]";
}

std::string amplitudes_json(const Vec& v) {
  std::string out = "[";
  for (int i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += complex_json(v[i]);
  }
  return out + "]";
}

std::string matrix_json(const Mat& m) {
  std::string out = "[";
  for (int i = 0; i < m.rows(); ++i) {
    if (i) out += ", ";
    out += "[";
    for (int j = 0; j < m.cols(); ++j) {
      if (j) out += ", ";
      out += complex_json(m(i, j));
    }
    out += "]";
  }
  return out + "]";
}

std::string dims_json(const std::vector<int>& dims) {
  std::string out = "[";
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(dims[i]);
  }
  return out + "]";
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  std::string s(buf);
  if (s.find_first_of(".einEIN") == std::string::npos) {
    s += ".0";
  }
  return s;
}

StateFile parse_state_json(const std::string& text) {
  const json j = json::parse(text);
  if (!j.is_object()) {
    throw std::runtime_error("state file must be a JSON object");
  }
  const std::vector<int> dims = parse_dims(j);
  const bool has_amp = j.contains("amplitudes");
  const bool has_mat = j.contains("matrix");
  if (has_amp == has_mat) {
    throw std::runtime_error(
        "state file needs exactly one of \"amplitudes\" or \"matrix\"");
  }
  StateFile sf;
  if (has_amp) {
    const json& amps = j["amplitudes"];
    if (!amps.is_array()) {
      throw std::runtime_error("\"amplitudes\" must be an array");
    }
    Vec v(amps.size());
    for (std::size_t i = 0; i < amps.size(); ++i) {
      v[static_cast<int>(i)] = parse_complex(amps[i], "amplitude");
    }
    sf.pure.emplace(dims, std::move(v));
  } else {
    const json& rows = j["matrix"];
    if (!rows.is_array()) {
      throw std::runtime_error("\"matrix\" must be an array of rows");
    }
    const auto n = rows.size();
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      if (!rows[i].is_array() || rows[i].size() != n) {
        throw std::runtime_error("\"matrix\" must be square");
      }
      for (std::size_t k = 0; k < n; ++k) {
        m(static_cast<int>(i), static_cast<int>(k)) =
            parse_complex(rows[i][k], "matrix entry");
      }
    }
    sf.mixed.emplace(dims, std::move(m));
  }
  return sf;
}

std::string to_json(const PureState& psi) {
  return "{\"dims\": " + dims_json(psi.dims()) +
         ", \"amplitudes\": " + amplitudes_json(psi.amplitudes()) + "}";
}

std::string to_json(const MixedState& rho) {
  return "{\"dims\": " + dims_json(rho.dims()) +
         ", \"matrix\": " + matrix_json(rho.matrix()) + "}";
}

MixedState as_mixed(const StateFile& sf) {
  if (sf.mixed) return *sf.mixed;
  return projector(*sf.pure);
}

LocalOperator parse_local_operator_json(const std::string& text) {
  const json j = json::parse(text);
  if (!j.is_object() || !j.contains("factors") || !j["factors"].is_array() ||
      j["factors"].empty()) {
    throw std::runtime_error(
        "operator file needs a nonempty \"factors\" array");
  }
  std::vector<Mat> factors;
  for (const auto& rows : j["factors"]) {
    if (!rows.is_array() || rows.empty()) {
      throw std::runtime_error("each factor must be an array of rows");
    }
    const auto n = rows.size();
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      if (!rows[i].is_array() || rows[i].size() != n) {
        throw std::runtime_error("each factor must be square");
      }
      for (std::size_t k = 0; k < n; ++k) {
        m(static_cast<int>(i), static_cast<int>(k)) =
            parse_complex(rows[i][k], "factor entry");
      }
    }
    factors.push_back(std::move(m));
  }
  return sl_normalize(factors);
}

std::string to_json(const LocalOperator& op) {
  std::string out = "{\"factors\": [";
  for (std::size_t i = 0; i < op.factors().size(); ++i) {
    if (i) out += ", ";
    out += matrix_json(op.factors()[i]);
  }
  return out + "]}";
}

GhzwFamily parse_family_json(const std::string& text) {
  const json j = json::parse(text);
  if (!j.is_object()) {
    throw std::runtime_error("family file must be a JSON object");
  }
  auto field = [&](const char* name) {
    if (!j.contains(name)) {
      throw std::runtime_error(std::string("family file needs \"") + name +
                               "\"");
    }
    return parse_complex(j[name], name);
  };
  return GhzwFamily(field("a"), field("b"), field("c"), field("d"),
                    field("f"));
}

std::string to_json(const GhzwFamily& fam) {
  return "{\"a\": " + complex_json(fam.a()) +
         ", \"b\": " + complex_json(fam.b()) +
         ", \"c\": " + complex_json(fam.c()) +
         ", \"d\": " + complex_json(fam.d()) +
         ", \"f\": " + complex_json(fam.f()) + "}";
}

std::string to_json(const RoofResult& result) {
  std::string out = "{\"value\": " + format_double(result.value);
  out += ", \"weights\": [";
  for (int i = 0; i < result.decomposition.length(); ++i) {
    if (i) out += ", ";
    out += format_double(result.decomposition.weights()[i]);
  }
  out += "], \"states\": [";
  for (int i = 0; i < result.decomposition.length(); ++i) {
    if (i) out += ", ";
    out += amplitudes_json(result.decomposition.states()[i].amplitudes());
  }
  out += "], \"restarts_used\": " + std::to_string(result.restarts_used);
  out += ", \"converged\": ";
  out += result.converged ? "true" : "false";
  return out + "}";
}

std::string curve_csv(const std::vector<CurveSample>& samples) {
  std::string out = "p,char,convex\n";
  for (const auto& s : samples) {
    out += format_double(s.p) + "," + format_double(s.char_value) + "," +
           format_double(s.convex_value) + "\n";
  }
  return out;
}

std::string surface_csv(const std::vector<SurfaceSample>& samples) {
  std::string out = "p,q,char,convex\n";
  for (const auto& s : samples) {
    out += format_double(s.p) + "," + format_double(s.q) + "," +
           format_double(s.char_value) + "," + format_double(s.convex_value) +
           "\n";
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open " + path + " for writing");
  }
  out << text;
  if (!out) {
    throw std::runtime_error("failed writing " + path);
  }
}

}  // namespace roofscale
