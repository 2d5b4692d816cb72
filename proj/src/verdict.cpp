#include "wcalc/verdict.hpp"

#include <cmath>
#include <limits>

#include "wcalc/errors.hpp"

namespace wcalc {

Json sanitize(const Json& j) {
  if (j.is_number_float()) {
    const double x = j.get<double>();
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "+inf" : "-inf";
    return j;
  }
  if (j.is_object()) {
    Json out = Json::object();
    for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = sanitize(it.value());
    return out;
  }
  if (j.is_array()) {
    Json out = Json::array();
    for (const auto& e : j) out.push_back(sanitize(e));
    return out;
  }
  return j;
}

double json_to_double(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "+inf" || s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw InvalidParameter("json", "expected a number, got " + j.dump());
}

std::string to_string(Status s) {
  switch (s) {
    case Status::Holds: return "Holds";
    case Status::Fails: return "Fails";
    case Status::Undetermined: return "Undetermined";
  }
  return "Undetermined";
}

Status status_from_string(const std::string& s) {
  if (s == "Holds") return Status::Holds;
  if (s == "Fails") return Status::Fails;
  if (s == "Undetermined") return Status::Undetermined;
  throw InvalidParameter("status", "unknown status '" + s + "'");
}

Verdict Verdict::holds(std::string cond, std::size_t horizon) {
  Verdict v;
  v.condition = std::move(cond);
  v.status = Status::Holds;
  v.horizon = horizon;
  return v;
}

Verdict Verdict::fails(std::string cond, std::size_t horizon, Witness w) {
  Verdict v;
  v.condition = std::move(cond);
  v.status = Status::Fails;
  v.horizon = horizon;
  v.witness = w;
  return v;
}

Verdict Verdict::undetermined(std::string cond, std::size_t horizon) {
  Verdict v;
  v.condition = std::move(cond);
  v.horizon = horizon;
  return v;
}

Json to_json(const Verdict& v) {
  Json j = Json::object();
  j["condition"] = v.condition;
  j["status"] = to_string(v.status);
  if (v.witness) {
    if (v.witness->second)
      j["witness"] = Json::array({v.witness->first, *v.witness->second});
    else
      j["witness"] = v.witness->first;
  } else {
    j["witness"] = nullptr;
  }
  j["horizon"] = v.horizon;
  j["evidence"] = v.evidence;
  return j;
}

Status combine_all(std::initializer_list<Status> parts) {
  Status out = Status::Holds;
  for (Status s : parts) {
    if (s == Status::Fails) return Status::Fails;
    if (s == Status::Undetermined) out = Status::Undetermined;
  }
  return out;
}

}  // namespace wcalc
