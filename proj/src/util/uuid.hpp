#pragma once

#include <cstdint>
#include <memory>
#include <string>

namespace adtrace::util {

bool is_valid_uuid(const std::string& s);

/// Source of RFC 4122 version-4 UUID strings. The sequential variant exists
/// for pipeline test mode, where output files must be byte-reproducible.
class UuidGenerator {
public:
    virtual ~UuidGenerator() = default;
    virtual std::string next() = 0;

    static std::shared_ptr<UuidGenerator> random();
    static std::shared_ptr<UuidGenerator> sequential(uint64_t start = 1);
};

}  // namespace adtrace::util
