#pragma once

#include <string>

#include "icvx/json_io.hpp"
#include "icvx/uniform.hpp"
#include "icvx/verify.hpp"

namespace icvx {

json to_json(const Multiplier& m);
Multiplier multiplier_from_json(const json& j);

json to_json(const ValueReport& r);
json to_json(const DualResult& r);
json to_json(const SlaterReport& r);
json to_json(const ScanReport& r);
json to_json(const ChainReport& r);
json to_json(const MinimaxReport& r);
json to_json(const FuzzyCertificate& c);
json to_json(const SlacknessReport& r);
json to_json(const AttainmentReport& r);
json to_json(const UniformEstimate& e);

FuzzyCertificate certificate_from_json(const json& j);

/// Top-level report: {instance, command, values, multipliers, certificates,
/// residuals, flags, meta}.
struct Report {
  std::string instance;
  std::string command;
  json values = json::object();
  json multipliers = json::array();
  json certificates = json::array();
  json residuals = json::object();
  json flags = json::array();

  /// `meta` carries the library version and a timestamp unless omitted.
  [[nodiscard]] json to_json(bool with_meta) const;
};

}  // namespace icvx
