#include "classify/zero_shot.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "util/strings.hpp"

namespace adtrace::classify {

std::vector<std::string> default_label_set() {
    return {"a real animal",       "a toy",
            "a print of an animal", "an object",
            "a faux animal",        "an animal body part",
            "a faux animal body part"};
}

void validate_request(const ZeroShotRequest& request) {
    if (request.candidate_labels.empty())
        throw std::invalid_argument("zero-shot request: no candidate labels");
    std::set<std::string> unique(request.candidate_labels.begin(),
                                 request.candidate_labels.end());
    if (unique.size() != request.candidate_labels.size())
        throw std::invalid_argument("zero-shot request: duplicate candidate labels");
    size_t first = request.hypothesis_template.find("{}");
    if (first == std::string::npos ||
        request.hypothesis_template.find("{}", first + 1) != std::string::npos)
        throw std::invalid_argument(
            "zero-shot request: hypothesis template must contain {} exactly once");
}

ClassificationResult normalize_scores(const ZeroShotRequest& request,
                                      std::vector<std::pair<std::string, double>> raw) {
    // candidate order index decides ties
    std::map<std::string, size_t> order;
    for (size_t i = 0; i < request.candidate_labels.size(); ++i)
        order[request.candidate_labels[i]] = i;

    double sum = 0.0;
    for (const auto& [label, score] : raw) sum += score;
    ClassificationResult out;
    out.scores.reserve(raw.size());
    for (auto& [label, score] : raw)
        out.scores.emplace_back(label, sum > 0 ? score / sum : 1.0 / raw.size());
    std::stable_sort(out.scores.begin(), out.scores.end(),
                     [&](const auto& a, const auto& b) {
                         if (a.second != b.second) return a.second > b.second;
                         return order[a.first] < order[b.first];
                     });
    out.top_label = out.scores.front().first;
    out.top_prob = out.scores.front().second;
    return out;
}

ClassificationResult classify(const ZeroShotRequest& request, ClassifierBackend& backend) {
    validate_request(request);
    if (util::trim(request.text).empty())
        throw std::invalid_argument("zero-shot request: empty text");

    RawScores raw = backend.classify_raw(request);

    std::set<std::string> expected(request.candidate_labels.begin(),
                                   request.candidate_labels.end());
    std::set<std::string> seen;
    double sum = 0.0;
    for (const auto& [label, score] : raw.scores) {
        if (!expected.count(label))
            throw ProtocolError("backend returned unknown label: " + label);
        if (!seen.insert(label).second)
            throw ProtocolError("backend returned duplicate label: " + label);
        if (std::isnan(score) || std::isinf(score))
            throw ProtocolError("backend returned non-finite score for label: " + label);
        if (score < 0.0) throw ProtocolError("backend returned negative score for label: " + label);
        sum += score;
    }
    if (seen.size() != expected.size())
        throw ProtocolError("backend response is missing labels");
    if (std::abs(sum - 1.0) > 1e-3)
        throw ProtocolError("backend scores sum to " + std::to_string(sum) +
                            ", expected 1 within 1e-3");

    return normalize_scores(request, std::move(raw.scores));
}

bool passes_filter(const std::string& label, double prob,
                   const std::set<std::string>& relevant_labels, double min_prob) {
    return relevant_labels.count(label) > 0 && prob >= min_prob;
}

}  // namespace adtrace::classify
