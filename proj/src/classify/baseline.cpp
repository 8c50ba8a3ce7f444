#include "classify/baseline.hpp"

#include <cctype>
#include <map>
#include <vector>

#include "util/strings.hpp"

namespace adtrace::classify {

namespace {

const std::map<std::string, std::vector<std::string>>& lexicons() {
    static const std::map<std::string, std::vector<std::string>> table = {
        {"a real animal",
         {"live", "alive", "living", "hatchling", "juvenile", "breeding", "cub", "puppy",
          "kitten", "fledgling"}},
        {"a toy", {"plush", "stuffed", "toy", "toys", "figurine", "doll", "playset"}},
        {"a print of an animal",
         {"print", "poster", "postcard", "painting", "photograph", "canvas", "lithograph",
          "artwork", "drawing"}},
        {"an object",
         {"mug", "cup", "shirt", "keychain", "sticker", "pendant", "necklace", "bracelet",
          "ornament", "lamp", "vase"}},
        {"a faux animal",
         {"faux", "fake", "replica", "imitation", "artificial", "resin", "synthetic"}},
        {"an animal body part",
         {"claw", "skin", "skull", "ivory", "taxidermy", "tooth", "horn", "feather", "rug",
          "teeth", "antler", "bone", "fur", "pelt", "tusk", "hide"}},
        {"a faux animal body part",
         {"faux ivory", "fake ivory", "faux fur", "fake fur", "faux leather", "resin skull",
          "replica skull", "faux taxidermy", "imitation ivory"}},
    };
    return table;
}

std::vector<std::string> tokenize_lower(const std::string& text) {
    std::vector<std::string> tokens;
    std::string cur;
    for (char c : text) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        } else if (!cur.empty()) {
            tokens.push_back(cur);
            cur.clear();
        }
    }
    if (!cur.empty()) tokens.push_back(cur);
    return tokens;
}

size_t count_word_occurrences(const std::vector<std::string>& tokens, const std::string& word) {
    size_t n = 0;
    for (const auto& t : tokens)
        if (t == word) ++n;
    return n;
}

size_t count_phrase_occurrences(const std::vector<std::string>& tokens,
                                const std::vector<std::string>& phrase) {
    if (phrase.empty() || tokens.size() < phrase.size()) return 0;
    size_t n = 0;
    for (size_t i = 0; i + phrase.size() <= tokens.size(); ++i) {
        bool match = true;
        for (size_t k = 0; k < phrase.size(); ++k) {
            if (tokens[i + k] != phrase[k]) {
                match = false;
                break;
            }
        }
        if (match) ++n;
    }
    return n;
}

}  // namespace

size_t baseline_lexicon_hits(const std::string& label, const std::string& text) {
    auto it = lexicons().find(label);
    if (it == lexicons().end()) return 0;
    std::vector<std::string> tokens = tokenize_lower(text);
    size_t hits = 0;
    for (const auto& entry : it->second) {
        if (entry.find(' ') == std::string::npos) {
            hits += count_word_occurrences(tokens, entry);
        } else {
            hits += count_phrase_occurrences(tokens, tokenize_lower(entry));
        }
    }
    return hits;
}

RawScores BaselineBackend::classify_raw(const ZeroShotRequest& request) {
    RawScores raw;
    double total = 0.0;
    std::vector<double> scores;
    scores.reserve(request.candidate_labels.size());
    for (const auto& label : request.candidate_labels) {
        double score = 1.0 + static_cast<double>(baseline_lexicon_hits(label, request.text));
        scores.push_back(score);
        total += score;
    }
    for (size_t i = 0; i < request.candidate_labels.size(); ++i)
        raw.scores.emplace_back(request.candidate_labels[i], scores[i] / total);
    return raw;
}

ClassificationResult baseline_classify(const ZeroShotRequest& request) {
    BaselineBackend backend;
    return classify(request, backend);
}

}  // namespace adtrace::classify
