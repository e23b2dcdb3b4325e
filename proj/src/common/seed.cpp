#include "sectorinfer/common/seed.hpp"

#include "sectorinfer/common/hash.hpp"

#include <array>
#include <random>

namespace sectorinfer {

std::uint64_t sub_seed(std::uint64_t seed, std::string_view purpose) {
    const std::uint64_t h = stable_hash64(purpose);
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
    std::array<std::uint32_t, 2> out{};
    seq.generate(out.begin(), out.end());
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

}  // namespace sectorinfer
