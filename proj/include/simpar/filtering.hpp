#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "simpar/corpus.hpp"
#include "simpar/errors.hpp"
#include "simpar/jsonl.hpp"
#include "simpar/textseg.hpp"

namespace simpar {

enum class LengthUnit { chars, words, tokens };

inline const char* to_string(LengthUnit unit) {
    switch (unit) {
        case LengthUnit::chars: return "chars";
        case LengthUnit::words: return "words";
        case LengthUnit::tokens: return "tokens";
    }
    return "chars";
}

inline LengthUnit length_unit_from_string(std::string_view s) {
    if (s == "chars") return LengthUnit::chars;
    if (s == "words") return LengthUnit::words;
    if (s == "tokens") return LengthUnit::tokens;
    throw ConfigError("unknown length unit: " + std::string(s));
}

struct FilterConfig {
    std::int64_t min_words = 10;     // skip when word_count <= min_words
    double quantile = 0.15;          // per-document token-count quantile
    std::int64_t max_tokens = 1500;  // skip when token_count > max_tokens
    double ratio_low = 0.5;          // reject when output/source ratio < ratio_low
    double ratio_high = 1.5;         // ... or > ratio_high
    LengthUnit ratio_unit = LengthUnit::chars;

    void validate() const {
        if (!(quantile > 0.0 && quantile < 1.0))
            throw ConfigError("quantile must be in (0, 1)");
        if (!(ratio_low < 1.0 && 1.0 < ratio_high))
            throw ConfigError("ratio bounds must straddle 1.0");
        if (min_words <= 0 || max_tokens <= 0 || ratio_low <= 0.0)
            throw ConfigError("filter thresholds must be positive");
    }
};

// Linear-interpolation quantile over unsorted data (classic order-statistic
// interpolation at h = (n-1)*q).
inline double quantile_linear(std::vector<double> values, double q) {
    if (values.empty()) throw DataError("quantile of empty sample");
    std::sort(values.begin(), values.end());
    const double h = static_cast<double>(values.size() - 1) * q;
    const std::size_t lo = static_cast<std::size_t>(h);
    if (lo + 1 >= values.size()) return values.back();
    return values[lo] + (h - static_cast<double>(lo)) * (values[lo + 1] - values[lo]);
}

inline double population_stddev(const std::vector<double>& values) {
    if (values.empty()) return 0.0;
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / static_cast<double>(values.size()));
}

// Pre-simplification skip conditions, counted with priority short-first so
// overlapping hits land in exactly one bucket.
struct DocumentTagCounts {
    std::int64_t skipped_short = 0;  // condition 1: hard rule, word count, quantile
    std::int64_t skipped_long = 0;   // condition 2: token count > max_tokens
    std::int64_t kept = 0;
};

// Tags each paragraph of a document to_skip per the skip conditions. The hard
// rule fires first: a single-paragraph document, or one whose minimum
// paragraph token count is >= the population stddev of its token counts,
// is skipped wholesale. Otherwise a paragraph is skipped when its word count
// is <= min_words, its token count falls below the document's quantile of
// token counts, or (independently) its token count exceeds max_tokens.
inline DocumentTagCounts tag_document(Document& doc, const FilterConfig& cfg) {
    DocumentTagCounts counts;
    if (doc.paragraphs.empty()) return counts;

    std::vector<double> token_counts;
    token_counts.reserve(doc.paragraphs.size());
    for (const Paragraph& p : doc.paragraphs) {
        token_counts.push_back(static_cast<double>(p.token_count));
    }

    const double min_tokens = *std::min_element(token_counts.begin(), token_counts.end());
    const bool hard_rule = doc.paragraphs.size() == 1 ||
                           min_tokens >= population_stddev(token_counts);
    if (hard_rule) {
        for (Paragraph& p : doc.paragraphs) p.tag = Tag::to_skip;
        counts.skipped_short += static_cast<std::int64_t>(doc.paragraphs.size());
        return counts;
    }

    const double cutoff = quantile_linear(token_counts, cfg.quantile);
    for (Paragraph& p : doc.paragraphs) {
        const bool too_short = p.word_count <= cfg.min_words ||
                               static_cast<double>(p.token_count) < cutoff;
        const bool too_long = p.token_count > cfg.max_tokens;
        if (too_short) {
            p.tag = Tag::to_skip;
            ++counts.skipped_short;
        } else if (too_long) {
            p.tag = Tag::to_skip;
            ++counts.skipped_long;
        } else {
            p.tag = Tag::keep;
            ++counts.kept;
        }
    }
    return counts;
}

inline double length_in_unit(std::string_view text, LengthUnit unit, const Tokenizer* tok) {
    switch (unit) {
        case LengthUnit::chars: return static_cast<double>(utf8_length(text));
        case LengthUnit::words: return static_cast<double>(count_words(text));
        case LengthUnit::tokens:
            if (tok == nullptr) throw ConfigError("token length unit requires a tokenizer");
            return static_cast<double>(tok->count(text));
    }
    return 0.0;
}

// Post-simplification length-ratio check. The ratio is strict: exactly
// ratio_low or ratio_high keeps the pair.
inline Tag tag_rejection(const Paragraph& original, std::string_view simplified_text,
                         const FilterConfig& cfg, const Tokenizer* tok = nullptr) {
    const double source_len = length_in_unit(original.text, cfg.ratio_unit, tok);
    if (source_len <= 0.0) {
        throw DataError("length ratio undefined for empty original " +
                        to_string(original.key()));
    }
    const double ratio = length_in_unit(simplified_text, cfg.ratio_unit, tok) / source_len;
    return (ratio < cfg.ratio_low || ratio > cfg.ratio_high) ? Tag::to_reject : Tag::keep;
}

// Per-condition removal accounting. Overlapping hits are counted once, in
// priority order short > long > reject, so the buckets plus kept sum to total.
struct DropReport {
    std::int64_t total = 0;
    std::int64_t skipped_short = 0;
    std::int64_t skipped_long = 0;
    std::int64_t rejected = 0;
    std::int64_t kept = 0;
    std::vector<std::string> integrity_errors;

    json to_json() const {
        auto pct = [this](std::int64_t n) {
            return total == 0 ? 0.0
                              : 100.0 * static_cast<double>(n) / static_cast<double>(total);
        };
        return json{{"total", total},
                    {"skipped_short", {{"count", skipped_short}, {"percentage", pct(skipped_short)}}},
                    {"skipped_long", {{"count", skipped_long}, {"percentage", pct(skipped_long)}}},
                    {"rejected", {{"count", rejected}, {"percentage", pct(rejected)}}},
                    {"kept", {{"count", kept}, {"percentage", pct(kept)}}},
                    {"integrity_errors", integrity_errors}};
    }
};

// What align_and_drop can account for on its own: it sees tags, not the
// condition that produced them, so skips are a single bucket here.
struct AlignReport {
    std::int64_t total = 0;
    std::int64_t kept = 0;
    std::int64_t dropped_skipped = 0;
    std::int64_t dropped_rejected = 0;
    std::vector<std::string> integrity_errors;
};

// Keyed two-stream merge: emits a pair for every key present on both sides
// with both tags keep; a keep-tagged key present on only one side is an
// alignment-integrity error. Inputs must be sorted by (doc_id, para_idx).
// Skip wins over reject when the two sides disagree.
template <typename OrigSource, typename SimpSource, typename Sink>
AlignReport align_and_drop(OrigSource&& originals, SimpSource&& simplifieds, Sink&& sink) {
    AlignReport report;
    Paragraph orig, simp;
    bool have_orig = originals.next(orig);
    bool have_simp = simplifieds.next(simp);
    ParaKey last_orig, last_simp;
    bool first_orig = true, first_simp = true;

    auto advance_orig = [&] {
        if (!first_orig && !(last_orig < orig.key()))
            throw DataError("originals not sorted by key at " + to_string(orig.key()));
        last_orig = orig.key();
        first_orig = false;
    };
    auto advance_simp = [&] {
        if (!first_simp && !(last_simp < simp.key()))
            throw DataError("simplifieds not sorted by key at " + to_string(simp.key()));
        last_simp = simp.key();
        first_simp = false;
    };

    auto account_one_sided = [&](const Paragraph& p, const char* side) {
        ++report.total;
        if (p.tag == Tag::keep) {
            report.integrity_errors.push_back(to_string(p.key()) + " present only in " + side);
        } else if (p.tag == Tag::to_skip) {
            ++report.dropped_skipped;
        } else {
            ++report.dropped_rejected;
        }
    };

    while (have_orig || have_simp) {
        if (have_orig && (!have_simp || orig.key() < simp.key())) {
            advance_orig();
            account_one_sided(orig, "originals");
            have_orig = originals.next(orig);
        } else if (have_simp && (!have_orig || simp.key() < orig.key())) {
            advance_simp();
            account_one_sided(simp, "simplifieds");
            have_simp = simplifieds.next(simp);
        } else {
            advance_orig();
            advance_simp();
            ++report.total;
            if (orig.tag == Tag::keep && simp.tag == Tag::keep) {
                ++report.kept;
                sink(ParallelPair{orig.key(), orig.text, simp.text});
            } else if (orig.tag == Tag::to_skip || simp.tag == Tag::to_skip) {
                ++report.dropped_skipped;
            } else {
                ++report.dropped_rejected;
            }
            have_orig = originals.next(orig);
            have_simp = simplifieds.next(simp);
        }
    }
    return report;
}

// In-memory convenience wrapper used by tests and small runs.
struct VectorParagraphSource {
    const std::vector<Paragraph>* items;
    std::size_t pos = 0;
    bool next(Paragraph& out) {
        if (pos >= items->size()) return false;
        out = (*items)[pos++];
        return true;
    }
};

inline std::pair<std::vector<ParallelPair>, AlignReport> align_and_drop(
    const std::vector<Paragraph>& originals, const std::vector<Paragraph>& simplifieds) {
    std::vector<ParallelPair> pairs;
    VectorParagraphSource o{&originals};
    VectorParagraphSource s{&simplifieds};
    AlignReport report =
        align_and_drop(o, s, [&pairs](ParallelPair pair) { pairs.push_back(std::move(pair)); });
    return {std::move(pairs), std::move(report)};
}

}  // namespace simpar
