#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"
#include "wrinkle/nearsymp.hpp"
#include "wrinkle/singular.hpp"

namespace wrinkle {

struct RunConfig {
  std::uint64_t seed = 42;
  std::size_t samples = 10000;
  Rational delta = ratio(1, 20);
};

nlohmann::json to_json(const Assignment& params);
nlohmann::json to_json(const Check& check);
nlohmann::json to_json(const VerificationReport& report);

/// Runs every check the catalog entry claims. Throws UnboundVariable when a
/// declared parameter has no value.
VerificationReport verify_form(const FormEntry& entry, const RunConfig& config);

inline constexpr std::size_t kTransversalitySamples = 100;

/// Critical value curve over the fixed view box [-2, 2]^2 with cusp markers.
struct CritsetPlot {
  std::string svg;
  int cusps = 0;
  std::size_t points = 0;
  bool empty = false;
};

CritsetPlot critset_svg(const LocalModel& model, std::size_t samples);

nlohmann::json to_json(const SingularityKind& kind);

}  // namespace wrinkle
