#pragma once

#include "bdivisor/numbers.hpp"
#include "bdivisor/rational.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace bdivisor::report {

inline constexpr const char* kSchema = "bdivisor-report/1";

/// One check. pass iff |computed - target| <= bound under the check's metric;
/// exact checks carry bound "0".
struct Report {
  std::string check_name;
  std::string target;
  std::string computed;
  std::string bound;
  bool pass = false;
  std::int64_t runtime_ms = 0;
  /// Check-specific payload (method, budget, seed, ...). Deterministic.
  nlohmann::json details = nlohmann::json::object();
};

Report exact_check(std::string name, const Rational& target, const Rational& computed);

/// |computed - target| <= bound with the deviation supplied by the caller.
Report bounded_check(std::string name, std::string target, std::string computed, const numbers::Real& deviation,
                     double bound);
Report bounded_check(std::string name, double target, double computed, double bound);

/// Interval check: pass iff lower <= target <= upper, bound = upper - lower.
Report interval_check(std::string name, const Rational& target, const Rational& estimate, const Rational& tail);

/// Decimal at the current working precision.
std::string decimal(const numbers::Real& x);

nlohmann::json to_json(const Report& r);

/// Top-level document: schema, command, config, reports (in the given order), pass.
nlohmann::json document(const std::string& command, const nlohmann::json& config, const std::vector<Report>& reports);

/// check_name,target,computed,bound,pass,runtime_ms.
std::string to_csv(const std::vector<Report>& reports);

/// Copy of a document with every "runtime_ms" field removed.
nlohmann::json strip_timing(const nlohmann::json& doc);

bool all_pass(const std::vector<Report>& reports);

} // namespace bdivisor::report
