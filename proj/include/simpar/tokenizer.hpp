#pragma once

#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "simpar/errors.hpp"
#include "simpar/textseg.hpp"

namespace simpar {

// Subword token counting behind a stable handle. The built-in whitespace
// tokenizer needs no assets; a merges file (one "left right" pair per line,
// optional "#version" header) selects greedy BPE over UTF-8 code points.
// Counting is deterministic for a fixed handle.
class Tokenizer {
public:
    static Tokenizer whitespace_fallback() {
        Tokenizer t;
        t.name_ = "whitespace";
        t.vocab_size_ = 1;
        return t;
    }

    static Tokenizer from_merges_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open tokenizer model " + path);
        Tokenizer t;
        t.name_ = path;
        std::string line;
        std::size_t rank = 0;
        bool any = false;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty() || line[0] == '#') continue;
            const std::size_t sp = line.find(' ');
            if (sp == std::string::npos || sp == 0 || sp + 1 >= line.size()) {
                throw ConfigError(path + ": malformed merge rule: " + line);
            }
            t.merges_[{line.substr(0, sp), line.substr(sp + 1)}] = rank++;
            any = true;
        }
        if (!any) throw ConfigError(path + ": no merge rules found");
        t.vocab_size_ = 256 + t.merges_.size();
        return t;
    }

    const std::string& name() const { return name_; }
    std::size_t vocab_size() const { return vocab_size_; }

    std::size_t count(std::string_view text) const {
        if (merges_.empty()) return count_words(text);
        std::size_t total = 0;
        std::size_t start = 0;
        const std::size_t n = text.size();
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == n || is_space(text[i])) {
                if (i > start) total += count_word_bpe(text.substr(start, i - start));
                start = i + 1;
            }
        }
        return total;
    }

private:
    Tokenizer() = default;

    static std::vector<std::string> code_points(std::string_view word) {
        std::vector<std::string> symbols;
        std::size_t i = 0;
        while (i < word.size()) {
            std::size_t len = 1;
            const unsigned char c = static_cast<unsigned char>(word[i]);
            if ((c & 0xE0) == 0xC0) len = 2;
            else if ((c & 0xF0) == 0xE0) len = 3;
            else if ((c & 0xF8) == 0xF0) len = 4;
            len = std::min(len, word.size() - i);
            symbols.emplace_back(word.substr(i, len));
            i += len;
        }
        return symbols;
    }

    std::size_t count_word_bpe(std::string_view word) const {
        std::vector<std::string> syms = code_points(word);
        while (syms.size() > 1) {
            std::size_t best_rank = std::numeric_limits<std::size_t>::max();
            std::size_t best_pos = 0;
            for (std::size_t i = 0; i + 1 < syms.size(); ++i) {
                auto it = merges_.find({syms[i], syms[i + 1]});
                if (it != merges_.end() && it->second < best_rank) {
                    best_rank = it->second;
                    best_pos = i;
                }
            }
            if (best_rank == std::numeric_limits<std::size_t>::max()) break;
            syms[best_pos] += syms[best_pos + 1];
            syms.erase(syms.begin() + static_cast<std::ptrdiff_t>(best_pos) + 1);
        }
        return syms.size();
    }

    std::string name_;
    std::size_t vocab_size_ = 1;
    std::map<std::pair<std::string, std::string>, std::size_t> merges_;
};

using TokenizerHandle = std::shared_ptr<const Tokenizer>;

inline TokenizerHandle make_tokenizer(const std::string& model_path) {
    if (model_path.empty()) {
        return std::make_shared<const Tokenizer>(Tokenizer::whitespace_fallback());
    }
    return std::make_shared<const Tokenizer>(Tokenizer::from_merges_file(model_path));
}

}  // namespace simpar
