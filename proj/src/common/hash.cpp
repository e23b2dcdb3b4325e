#include "sectorinfer/common/hash.hpp"

#include <openssl/evp.h>

#include <array>
#include <stdexcept>

namespace sectorinfer {

struct Sha256::Impl {
    EVP_MD_CTX* ctx = nullptr;
};

Sha256::Sha256() : impl_(std::make_unique<Impl>()) {
    impl_->ctx = EVP_MD_CTX_new();
    if (impl_->ctx == nullptr || EVP_DigestInit_ex(impl_->ctx, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("EVP sha256 init failed");
    }
}

Sha256::~Sha256() {
    if (impl_ && impl_->ctx) EVP_MD_CTX_free(impl_->ctx);
}

Sha256::Sha256(Sha256&&) noexcept = default;
Sha256& Sha256::operator=(Sha256&&) noexcept = default;

Sha256& Sha256::update(std::string_view bytes) {
    EVP_DigestUpdate(impl_->ctx, bytes.data(), bytes.size());
    return *this;
}

Sha256& Sha256::update(std::span<const std::byte> bytes) {
    EVP_DigestUpdate(impl_->ctx, bytes.data(), bytes.size());
    return *this;
}

Sha256& Sha256::update_u64(std::uint64_t value) {
    std::array<unsigned char, 8> buf{};
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(value >> (8 * i));
    EVP_DigestUpdate(impl_->ctx, buf.data(), buf.size());
    return *this;
}

Sha256& Sha256::field(std::string_view bytes) {
    update_u64(bytes.size());
    return update(bytes);
}

std::string Sha256::hex() {
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    EVP_DigestFinal_ex(impl_->ctx, digest.data(), &len);
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(kHex[digest[i] >> 4]);
        out.push_back(kHex[digest[i] & 0xf]);
    }
    return out;
}

std::string sha256_hex(std::string_view bytes) { return Sha256{}.update(bytes).hex(); }

std::string short_hash(std::string_view bytes) { return sha256_hex(bytes).substr(0, 16); }

std::uint64_t stable_hash64(std::string_view bytes) {
    return std::stoull(sha256_hex(bytes).substr(0, 16), nullptr, 16);
}

}  // namespace sectorinfer
