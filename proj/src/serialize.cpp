#include "qsim/serialize.hpp"

namespace qsim {

nlohmann::json state_to_json(const StateVector& v) {
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (Index i = 0; i < v.dim(); ++i) {
    re.push_back(v[i].real());
    im.push_back(v[i].imag());
  }
  return {{"n", v.num_qubits()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

StateVector state_from_json(const nlohmann::json& j) {
  try {
    const int n = j.at("n").get<int>();
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (re.size() != im.size()) throw DomainError("'re' and 'im' differ in length");
    AmplitudeVector<double> amps(static_cast<Index>(re.size()));
    for (std::size_t i = 0; i < re.size(); ++i) {
      amps[static_cast<Index>(i)] = {re[i].get<double>(), im[i].get<double>()};
    }
    return StateVector(n, std::move(amps));
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed state JSON: ") + e.what());
  }
}

}  // namespace qsim
