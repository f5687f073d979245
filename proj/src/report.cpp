#include "bdivisor/report.hpp"

#include <sstream>

namespace bdivisor::report {

Report exact_check(std::string name, const Rational& target, const Rational& computed) {
  Report r;
  r.check_name = std::move(name);
  r.target = to_string(target);
  r.computed = to_string(computed);
  r.bound = "0";
  r.pass = (target == computed);
  return r;
}

Report bounded_check(std::string name, std::string target, std::string computed, const numbers::Real& deviation,
                     double bound) {
  Report r;
  r.check_name = std::move(name);
  r.target = std::move(target);
  r.computed = std::move(computed);
  r.bound = to_decimal(bound);
  r.pass = deviation <= numbers::Real(bound);
  return r;
}

Report bounded_check(std::string name, double target, double computed, double bound) {
  const double deviation = std::fabs(computed - target);
  Report r;
  r.check_name = std::move(name);
  r.target = to_decimal(target);
  r.computed = to_decimal(computed);
  r.bound = to_decimal(bound);
  r.pass = deviation <= bound;
  return r;
}

Report interval_check(std::string name, const Rational& target, const Rational& estimate, const Rational& tail) {
  Report r;
  r.check_name = std::move(name);
  r.target = to_string(target);
  r.computed = to_string(estimate);
  r.bound = to_string(tail);
  r.pass = estimate - tail <= target && target <= estimate;
  return r;
}

std::string decimal(const numbers::Real& x) {
  return x.str(static_cast<std::streamsize>(numbers::working_digits()), std::ios_base::fmtflags(0));
}

nlohmann::json to_json(const Report& r) {
  nlohmann::json j;
  j["check_name"] = r.check_name;
  j["target"] = r.target;
  j["computed"] = r.computed;
  j["bound"] = r.bound;
  j["pass"] = r.pass;
  j["runtime_ms"] = r.runtime_ms;
  if (!r.details.empty()) j["details"] = r.details;
  return j;
}

nlohmann::json document(const std::string& command, const nlohmann::json& config, const std::vector<Report>& reports) {
  nlohmann::json doc;
  doc["schema"] = kSchema;
  doc["command"] = command;
  doc["config"] = config;
  auto& arr = doc["reports"] = nlohmann::json::array();
  for (const auto& r : reports) arr.push_back(to_json(r));
  doc["pass"] = all_pass(reports);
  return doc;
}

std::string to_csv(const std::vector<Report>& reports) {
  std::ostringstream out;
  out << "check_name,target,computed,bound,pass,runtime_ms\n";
  for (const auto& r : reports) {
    out << r.check_name << ',' << r.target << ',' << r.computed << ',' << r.bound << ',' << (r.pass ? "true" : "false")
        << ',' << r.runtime_ms << '\n';
  }
  return out.str();
}

nlohmann::json strip_timing(const nlohmann::json& doc) {
  if (doc.is_object()) {
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [key, value] : doc.items()) {
      if (key == "runtime_ms") continue;
      out[key] = strip_timing(value);
    }
    return out;
  }
  if (doc.is_array()) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& v : doc) out.push_back(strip_timing(v));
    return out;
  }
  return doc;
}

bool all_pass(const std::vector<Report>& reports) {
  for (const auto& r : reports) {
    if (!r.pass) return false;
  }
  return true;
}

} // namespace bdivisor::report
