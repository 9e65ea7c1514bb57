#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace ncfa {

inline constexpr const char* kVersion = "0.1.0";

//! Inner-product scale note carried by all spectral artifacts: the SU(2)
//! fundamental weight has squared length 1/4, so |lambda_n| = n/2 and
//! kappa_n = n(n+2)/4 = l(l+1) for l = n/2.
inline constexpr const char* kNormalizationNote = "su2: kappa = l(l+1)";

enum class GroupId { Torus, SU2, SO3 };

//! Requested operation is meaningless for the given group/mode combination.
struct unsupported_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

//! Computation ran but could not reach the required accuracy.
struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

//! "su2", "so3" or "torus:d".
std::string group_name(GroupId id, int torus_dim);
std::pair<GroupId, int> parse_group(const std::string& name);

}  // namespace ncfa
