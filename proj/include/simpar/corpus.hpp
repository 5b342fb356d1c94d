#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "simpar/jsonl.hpp"
#include "simpar/textseg.hpp"
#include "simpar/tokenizer.hpp"

namespace simpar {

enum class Tag { keep, to_skip, to_reject };

inline const char* to_string(Tag tag) {
    switch (tag) {
        case Tag::keep: return "keep";
        case Tag::to_skip: return "to_skip";
        case Tag::to_reject: return "to_reject";
    }
    return "keep";
}

inline Tag tag_from_string(std::string_view s) {
    if (s == "keep") return Tag::keep;
    if (s == "to_skip") return Tag::to_skip;
    if (s == "to_reject") return Tag::to_reject;
    throw DataError("unknown tag: " + std::string(s));
}

// (doc_id, para_idx) is the stable key that keeps the two corpora aligned.
struct ParaKey {
    std::string doc_id;
    std::int64_t para_idx = 0;

    friend auto operator<=>(const ParaKey&, const ParaKey&) = default;
};

inline std::string to_string(const ParaKey& key) {
    return key.doc_id + ":" + std::to_string(key.para_idx);
}

struct Paragraph {
    std::string doc_id;
    std::int64_t para_idx = 0;
    std::string text;
    std::int64_t token_count = 0;
    std::int64_t word_count = 0;
    Tag tag = Tag::keep;

    ParaKey key() const { return {doc_id, para_idx}; }
};

struct Document {
    std::string doc_id;
    std::string text;
    std::vector<Paragraph> paragraphs;
};

// Aligned (original, simplified) pair; only paragraphs tagged keep on both
// sides ever become one.
struct ParallelPair {
    ParaKey key;
    std::string original;
    std::string simplified;

    friend bool operator==(const ParallelPair&, const ParallelPair&) = default;
};

// Splits a document body into paragraphs and fills per-paragraph counts.
inline void segment_document(Document& doc, const Tokenizer& tokenizer) {
    doc.paragraphs.clear();
    std::int64_t idx = 0;
    for (std::string& block : split_paragraphs(doc.text)) {
        Paragraph p;
        p.doc_id = doc.doc_id;
        p.para_idx = idx++;
        p.word_count = static_cast<std::int64_t>(count_words(block));
        p.token_count = static_cast<std::int64_t>(tokenizer.count(block));
        p.text = std::move(block);
        doc.paragraphs.push_back(std::move(p));
    }
}

// Streams documents from a JSONL file of {"id": ..., "text": ...} records in
// file order; memory stays bounded by a single document.
class DocumentReader {
public:
    explicit DocumentReader(const std::string& path,
                            BadRecordPolicy policy = BadRecordPolicy::fail)
        : records_(path, policy), policy_(policy) {}

    bool next(Document& doc) {
        json rec;
        for (;;) {
            if (!records_.next(rec)) return false;
            if (!rec.contains("id") || !rec.contains("text") ||
                !rec["id"].is_string() || !rec["text"].is_string()) {
                if (policy_ == BadRecordPolicy::fail) {
                    throw DataError(records_.path() + ":" +
                                    std::to_string(records_.line_number()) +
                                    ": record must have string fields id and text");
                }
                ++bad_records_;
                continue;
            }
            break;
        }
        doc.doc_id = rec["id"].get<std::string>();
        doc.text = rec["text"].get<std::string>();
        doc.paragraphs.clear();
        if (doc.doc_id.empty()) {
            throw DataError(records_.path() + ":" +
                            std::to_string(records_.line_number()) + ": empty doc id");
        }
        return true;
    }

    std::size_t skipped() const { return records_.skipped() + bad_records_; }

private:
    JsonlReader records_;
    BadRecordPolicy policy_;
    std::size_t bad_records_ = 0;
};

inline json to_json(const Paragraph& p) {
    return json{{"doc_id", p.doc_id},
                {"para_idx", p.para_idx},
                {"text", p.text},
                {"token_count", p.token_count},
                {"word_count", p.word_count},
                {"tag", to_string(p.tag)}};
}

inline Paragraph paragraph_from_json(const json& rec) {
    Paragraph p;
    p.doc_id = rec.at("doc_id").get<std::string>();
    p.para_idx = rec.at("para_idx").get<std::int64_t>();
    p.text = rec.at("text").get<std::string>();
    p.token_count = rec.value("token_count", std::int64_t{0});
    p.word_count = rec.value("word_count", std::int64_t{0});
    p.tag = tag_from_string(rec.value("tag", "keep"));
    return p;
}

class ParagraphReader {
public:
    explicit ParagraphReader(const std::string& path,
                             BadRecordPolicy policy = BadRecordPolicy::fail)
        : records_(path, policy) {}

    bool next(Paragraph& p) {
        json rec;
        if (!records_.next(rec)) return false;
        try {
            p = paragraph_from_json(rec);
        } catch (const json::exception& e) {
            throw DataError(records_.path() + ":" + std::to_string(records_.line_number()) +
                            ": " + e.what());
        }
        return true;
    }

private:
    JsonlReader records_;
};

inline json to_json(const ParallelPair& pair) {
    return json{{"doc_id", pair.key.doc_id},
                {"para_idx", pair.key.para_idx},
                {"original", pair.original},
                {"simplified", pair.simplified}};
}

inline ParallelPair pair_from_json(const json& rec) {
    ParallelPair pair;
    pair.key.doc_id = rec.at("doc_id").get<std::string>();
    pair.key.para_idx = rec.at("para_idx").get<std::int64_t>();
    pair.original = rec.at("original").get<std::string>();
    pair.simplified = rec.at("simplified").get<std::string>();
    return pair;
}

class PairReader {
public:
    explicit PairReader(const std::string& path,
                        BadRecordPolicy policy = BadRecordPolicy::fail)
        : records_(path, policy) {}

    bool next(ParallelPair& pair) {
        json rec;
        if (!records_.next(rec)) return false;
        try {
            pair = pair_from_json(rec);
        } catch (const json::exception& e) {
            throw DataError(records_.path() + ":" + std::to_string(records_.line_number()) +
                            ": " + e.what());
        }
        return true;
    }

private:
    JsonlReader records_;
};

template <typename Range>
void emit_pairs(const Range& pairs, const std::string& path) {
    JsonlWriter out(path);
    for (const ParallelPair& pair : pairs) {
        out.write(to_json(pair));
    }
    out.commit();
}

}  // namespace simpar
