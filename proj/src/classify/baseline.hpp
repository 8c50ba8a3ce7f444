#pragma once

#include "classify/zero_shot.hpp"

namespace adtrace::classify {

/// Deterministic offline classifier: each label scores 1 plus the number of
/// case-insensitive hits from its bundled keyword lexicon, normalized to a
/// distribution. A stand-in for the hosted NLI model so the pipeline runs
/// and tests without network access.
class BaselineBackend final : public ClassifierBackend {
public:
    RawScores classify_raw(const ZeroShotRequest& request) override;
};

ClassificationResult baseline_classify(const ZeroShotRequest& request);

// Lexicon hit count for one label against the text (exposed for tests).
size_t baseline_lexicon_hits(const std::string& label, const std::string& text);

}  // namespace adtrace::classify
