#pragma once

#include <string>

#include "ncfa/groups.hpp"

namespace ncfa::sample_io {

//! Little-endian binary layout:
//!   magic "NCFA" | u16 version (1) | u16 group tag (1 su2, 2 so3, 3 torus)
//!   | u16 torus dim (0 unless torus) | u16 reserved (0)
//!   | u64 count | u64 seed
//! followed by count rows of 4 f64 (quaternion) or torus-dim f64 (angles).
void write_samples(const std::string& path, const groups::SampleSet& samples);
groups::SampleSet read_samples(const std::string& path);

}  // namespace ncfa::sample_io
