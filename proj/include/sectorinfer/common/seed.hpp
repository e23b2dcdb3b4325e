#pragma once

#include <cstdint>
#include <string_view>

namespace sectorinfer {

/// Independent stream seed for one purpose ("balance", "split", ...) derived
/// from the run seed, so that adding a consumer never shifts the others.
std::uint64_t sub_seed(std::uint64_t seed, std::string_view purpose);

}  // namespace sectorinfer
