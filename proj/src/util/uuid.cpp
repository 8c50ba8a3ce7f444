#include "util/uuid.hpp"

#include <atomic>
#include <cctype>
#include <cstdio>
#include <mutex>
#include <random>

namespace adtrace::util {

namespace {

std::string format_uuid(uint64_t hi, uint64_t lo) {
    // Force version 4 and RFC 4122 variant bits.
    hi = (hi & 0xFFFFFFFFFFFF0FFFULL) | 0x0000000000004000ULL;
    lo = (lo & 0x3FFFFFFFFFFFFFFFULL) | 0x8000000000000000ULL;
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%08x-%04x-%04x-%04x-%012llx",
                  static_cast<uint32_t>(hi >> 32), static_cast<uint32_t>((hi >> 16) & 0xFFFF),
                  static_cast<uint32_t>(hi & 0xFFFF), static_cast<uint32_t>(lo >> 48),
                  static_cast<unsigned long long>(lo & 0xFFFFFFFFFFFFULL));
    return buf;
}

class RandomUuid final : public UuidGenerator {
public:
    RandomUuid() : rng_(std::random_device{}()) {}
    std::string next() override {
        std::lock_guard<std::mutex> lock(mu_);
        return format_uuid(rng_(), rng_());
    }

private:
    std::mutex mu_;
    std::mt19937_64 rng_;
};

class SequentialUuid final : public UuidGenerator {
public:
    explicit SequentialUuid(uint64_t start) : counter_(start) {}
    std::string next() override { return format_uuid(0, counter_.fetch_add(1)); }

private:
    std::atomic<uint64_t> counter_;
};

}  // namespace

bool is_valid_uuid(const std::string& s) {
    if (s.size() != 36) return false;
    for (size_t i = 0; i < s.size(); ++i) {
        if (i == 8 || i == 13 || i == 18 || i == 23) {
            if (s[i] != '-') return false;
        } else if (!std::isxdigit(static_cast<unsigned char>(s[i]))) {
            return false;
        }
    }
    return true;
}

std::shared_ptr<UuidGenerator> UuidGenerator::random() {
    return std::make_shared<RandomUuid>();
}

std::shared_ptr<UuidGenerator> UuidGenerator::sequential(uint64_t start) {
    return std::make_shared<SequentialUuid>(start);
}

}  // namespace adtrace::util
