#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "flexspan/geometry.hpp"

namespace flexspan {

// Reference parameter sets. Third-type rows carry the published computed
// angles (degrees) and the identifier of the reference folding.
struct Fixture {
  std::string id;  // "<subtype>#<row>", e.g. "III-OAE#8"
  ParameterSet params;
  int fs_count = 0;                    // completions with a flexible folding
  std::vector<double> even_alpha_deg;  // α_4, α_6, ..., α_N
  std::vector<double> beta_deg;        // β_3, ..., β_N
  std::uint32_t di = 0;                // reference folding, 0 if none
  double eps1_deg = 75.0;              // flexion value the identifier refers to
};

const std::vector<Fixture>& fixture_catalog();
std::vector<Fixture> fixtures_of(SubType s);
// Throws std::out_of_range for an unknown id.
const Fixture& fixture(const std::string& id);

}  // namespace flexspan
