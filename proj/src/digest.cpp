#include "incbl/digest.hpp"

#include <openssl/evp.h>

namespace incbl {

Sha256 sha256_bytes(std::string_view bytes) {
    Sha256 out{};
    unsigned int len = 0;
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (ctx == nullptr ||
        EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx, bytes.data(), bytes.size()) != 1 ||
        EVP_DigestFinal_ex(ctx, out.data(), &len) != 1 || len != out.size()) {
        EVP_MD_CTX_free(ctx);
        throw Error("sha256 computation failed");
    }
    EVP_MD_CTX_free(ctx);
    return out;
}

std::string hex_digest(const Sha256& digest) {
    static constexpr char kHex[] = "0123456789abcdef";
    std::string s;
    s.reserve(digest.size() * 2);
    for (std::uint8_t b : digest) {
        s.push_back(kHex[b >> 4]);
        s.push_back(kHex[b & 0x0f]);
    }
    return s;
}

}  // namespace incbl
