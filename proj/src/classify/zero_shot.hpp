#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace adtrace::classify {

inline constexpr const char* kDefaultHypothesisTemplate =
    "This product advertisement is about {}.";
inline constexpr const char* kUnclassifiedLabel = "__unclassified__";

// The seven candidate labels, in canonical order.
std::vector<std::string> default_label_set();

struct ZeroShotRequest {
    std::string text;
    std::string hypothesis_template = kDefaultHypothesisTemplate;
    std::vector<std::string> candidate_labels = default_label_set();
};

struct ClassificationResult {
    // (label, probability) sorted descending; ties keep candidate order.
    std::vector<std::pair<std::string, double>> scores;
    std::string top_label;
    double top_prob = 0.0;
};

/// Backend could not be reached; safe to retry.
class TransportError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Backend answered with something that violates the wire contract. The
/// offending payload is attached to the message.
class ProtocolError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raw (label, score) pairs as produced by a backend, pre-validation.
struct RawScores {
    std::vector<std::pair<std::string, double>> scores;
};

class ClassifierBackend {
public:
    virtual ~ClassifierBackend() = default;
    virtual RawScores classify_raw(const ZeroShotRequest& request) = 0;
};

// Throws std::invalid_argument when the request invariants do not hold
// (empty/duplicate labels, template without exactly one "{}").
void validate_request(const ZeroShotRequest& request);

// Normalizes raw scores into a result: probabilities sum to 1 within 1e-6,
// descending order, ties broken by candidate_labels order. Does not require
// unit input sum (scaling invariance lives here).
ClassificationResult normalize_scores(const ZeroShotRequest& request,
                                      std::vector<std::pair<std::string, double>> raw);

// Invokes the backend once and validates its output: unknown or missing
// labels, NaN/negative scores, or a sum off 1 by more than 1e-3 raise
// ProtocolError. Empty text raises std::invalid_argument.
ClassificationResult classify(const ZeroShotRequest& request, ClassifierBackend& backend);

// Filtering predicate used by the pipeline sink stage.
bool passes_filter(const std::string& label, double prob,
                   const std::set<std::string>& relevant_labels, double min_prob);

}  // namespace adtrace::classify
