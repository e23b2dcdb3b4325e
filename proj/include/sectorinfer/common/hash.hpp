#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>

namespace sectorinfer {

/// Incremental SHA-256. Used for fingerprints, feature versions, parameter
/// hashes and model versions, all of which must be stable across runs.
class Sha256 {
public:
    Sha256();
    ~Sha256();
    Sha256(const Sha256&) = delete;
    Sha256& operator=(const Sha256&) = delete;
    Sha256(Sha256&&) noexcept;
    Sha256& operator=(Sha256&&) noexcept;

    Sha256& update(std::string_view bytes);
    Sha256& update(std::span<const std::byte> bytes);
    Sha256& update_u64(std::uint64_t value);

    /// Length-prefixed field, so ("ab","c") and ("a","bc") hash differently.
    Sha256& field(std::string_view bytes);

    /// Lowercase hex digest; the hasher cannot be updated afterwards.
    std::string hex();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

std::string sha256_hex(std::string_view bytes);

/// First 16 hex characters of the SHA-256 digest.
std::string short_hash(std::string_view bytes);

/// Stable 64-bit value derived from a string (first 8 digest bytes).
std::uint64_t stable_hash64(std::string_view bytes);

}  // namespace sectorinfer
