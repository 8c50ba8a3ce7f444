#pragma once

#include <cstdint>
#include <string>

#include "classify/zero_shot.hpp"

namespace adtrace::classify {

struct HttpBackendOptions {
    int max_attempts = 3;
    int backoff_base_ms = 200;
    int timeout_ms = 30000;
};

/// Client for the zero-shot inference wire protocol: POST a JSON body
/// {"text", "hypothesis_template", "candidate_labels"} and receive parallel
/// {"labels", "scores"} arrays sorted descending. Transport failures are
/// retried with exponential backoff before TransportError is raised;
/// non-200 responses and schema mismatches raise ProtocolError immediately.
class HttpClassifierBackend final : public ClassifierBackend {
public:
    explicit HttpClassifierBackend(std::string endpoint_url,
                                   HttpBackendOptions options = HttpBackendOptions());

    RawScores classify_raw(const ZeroShotRequest& request) override;

private:
    std::string scheme_host_port_;
    std::string path_;
    HttpBackendOptions options_;
};

}  // namespace adtrace::classify
