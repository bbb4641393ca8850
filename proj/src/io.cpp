#include "bandrec/io.hpp"

#include <fstream>
#include <stdexcept>

#include "bandrec/errors.hpp"

namespace bandrec {

using nlohmann::json;

json to_json(const PeriodicBandSignal& f) {
  json re = json::array();
  json im = json::array();
  for (const cplx& c : f.coeffs()) {
    re.push_back(c.real());
    im.push_back(c.imag());
  }
  return {{"period", f.period()}, {"sigma", f.sigma()}, {"coeffs_re", re}, {"coeffs_im", im}, {"real_flag", f.real_flag()}};
}

PeriodicBandSignal signal_from_json(const json& j) {
  try {
    const auto re = j.at("coeffs_re").get<std::vector<double>>();
    const auto im = j.at("coeffs_im").get<std::vector<double>>();
    if (re.size() != im.size()) throw PreconditionError("signal JSON: coeffs_re and coeffs_im differ in length");
    std::vector<cplx> c(re.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = {re[i], im[i]};
    return {j.at("period").get<double>(), j.at("sigma").get<double>(), std::move(c), j.value("real_flag", false)};
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("signal JSON: ") + e.what());
  }
}

json to_json(const SampleSet& s) {
  json re = json::array();
  json im = json::array();
  for (std::size_t i = 0; i < s.size(); ++i) {
    json rr = json::array();
    json ir = json::array();
    for (const cplx& v : s.row(i)) {
      rr.push_back(v.real());
      ir.push_back(v.imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ir));
  }
  return {{"period", s.period()}, {"k", s.k()}, {"points", std::vector<double>(s.points().begin(), s.points().end())},
          {"data_re", re}, {"data_im", im}};
}

SampleSet sample_set_from_json(const json& j) {
  try {
    const double period = j.at("period").get<double>();
    const int k = j.at("k").get<int>();
    auto points = j.at("points").get<std::vector<double>>();
    const auto re = j.at("data_re").get<std::vector<std::vector<double>>>();
    const auto im = j.at("data_im").get<std::vector<std::vector<double>>>();
    if (re.size() != points.size() || im.size() != points.size()) {
      throw PreconditionError("sample set JSON: data rows do not match the number of points");
    }
    std::vector<cplx> data;
    data.reserve(points.size() * static_cast<std::size_t>(std::max(k, 0)));
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (re[i].size() != static_cast<std::size_t>(k) || im[i].size() != static_cast<std::size_t>(k)) {
        throw PreconditionError("sample set JSON: row " + std::to_string(i) + " does not have k entries");
      }
      for (int l = 0; l < k; ++l) data.emplace_back(re[i][static_cast<std::size_t>(l)], im[i][static_cast<std::size_t>(l)]);
    }
    return {period, std::move(points), k, std::move(data)};
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("sample set JSON: ") + e.what());
  }
}

json to_json(const ReconstructionReport& r) {
  json out{{"method", to_string(r.method)},
           {"k", r.k},
           {"sigma", r.sigma},
           {"delta", r.delta},
           {"T", r.period},
           {"contraction_predicted", r.contraction_predicted},
           {"errors", r.errors},
           {"bound_curve", r.bound_curve},
           {"iterations", r.iterations},
           {"converged", r.converged},
           {"residual_final", r.residual_final},
           {"errors_kind", r.reference_errors ? "reference" : "update"}};
  if (r.rho) out["rho"] = *r.rho;
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error("cannot parse " + path + ": " + e.what());
  }
}

}  // namespace bandrec
