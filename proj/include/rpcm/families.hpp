#pragma once

#include <string>
#include <vector>

#include "rpcm/system.hpp"

namespace rpcm {

// Built-in family catalog, addressable by string id:
//   dyadic           left 2x, right 2x-1 (exact analytic oracle)
//   linear-low-slope left 2x, right 2^-beta (2x-1), integer beta
//   lsv              left x(1+(2x)^alpha), right 2x-1
//   lsv-contract     left x(1+(2x)^alpha), right beta (x-1/2), beta in [0,1]
//   critical         left x(1+(2x)^alpha), right 2^beta (x-1/2)^beta, beta>1
//   flat             left x(1+(2x)^alpha), right exp(2^beta-(x-1/2)^-beta), beta>=1
//   wide-entrance    left x(1+(2x)^alpha), right (x-1/2)^beta, beta>=1
//   counterexample   left 1-sqrt(1-2x), right beta (2x-1), beta in (0,1)
RandomMapSystem make_system(const std::string& family_id, ParameterMeasure nu_a,
                            ParameterMeasure nu_b);

const std::vector<std::string>& family_ids();

// convenience constructors used all over the tests
RandomMapSystem dyadic_system();
RandomMapSystem linear_low_slope_system(std::vector<ParameterMeasure::Atom> beta_atoms);
RandomMapSystem lsv_system(ParameterMeasure nu_a);

}  // namespace rpcm
