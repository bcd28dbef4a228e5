#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ustat {

// One simulated trajectory, tagged with how it was produced so artifacts can
// be regenerated from metadata alone.
struct Sample {
  std::vector<double> points;
  std::string process_id;
  std::uint64_t seed = 0;
};

}  // namespace ustat
