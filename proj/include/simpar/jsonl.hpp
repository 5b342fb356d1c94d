#pragma once

#include <zlib.h>

#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <utility>

#include "json.hpp"
#include "simpar/errors.hpp"

namespace simpar {

using json = nlohmann::json;

// Streaming line reader. zlib's gzopen reads both gzip-compressed and plain
// files, so `.gz` inputs are accepted transparently.
class LineReader {
public:
    explicit LineReader(const std::string& path) : path_(path) {
        file_ = gzopen(path.c_str(), "rb");
        if (file_ == nullptr) {
            throw ConfigError("cannot open " + path);
        }
        gzbuffer(file_, 1 << 18);
    }

    ~LineReader() {
        if (file_ != nullptr) gzclose(file_);
    }

    LineReader(const LineReader&) = delete;
    LineReader& operator=(const LineReader&) = delete;

    // Reads the next line (without the trailing newline). Returns false at EOF.
    bool next(std::string& line) {
        line.clear();
        char buf[1 << 14];
        bool got = false;
        for (;;) {
            if (gzgets(file_, buf, sizeof(buf)) == nullptr) {
                int err = 0;
                const char* msg = gzerror(file_, &err);
                if (err != 0 && err != Z_STREAM_END) {
                    throw DataError(path_ + ": read error: " + (msg ? msg : ""));
                }
                break;
            }
            got = true;
            line += buf;
            if (!line.empty() && line.back() == '\n') {
                line.pop_back();
                if (!line.empty() && line.back() == '\r') line.pop_back();
                break;
            }
        }
        if (got) ++line_no_;
        return got;
    }

    std::size_t line_number() const { return line_no_; }
    const std::string& path() const { return path_; }

private:
    std::string path_;
    gzFile file_ = nullptr;
    std::size_t line_no_ = 0;
};

enum class BadRecordPolicy { fail, skip };

// JSONL record reader with a per-record error policy: `fail` raises a
// DataError carrying the line number, `skip` counts and moves on.
class JsonlReader {
public:
    explicit JsonlReader(const std::string& path,
                         BadRecordPolicy policy = BadRecordPolicy::fail)
        : lines_(path), policy_(policy) {}

    bool next(json& record) {
        std::string line;
        while (lines_.next(line)) {
            if (line.empty()) continue;
            try {
                record = json::parse(line);
                return true;
            } catch (const json::parse_error& e) {
                if (policy_ == BadRecordPolicy::fail) {
                    throw DataError(lines_.path() + ":" +
                                    std::to_string(lines_.line_number()) +
                                    ": malformed record: " + e.what());
                }
                ++skipped_;
            }
        }
        return false;
    }

    std::size_t skipped() const { return skipped_; }
    std::size_t line_number() const { return lines_.line_number(); }
    const std::string& path() const { return lines_.path(); }

private:
    LineReader lines_;
    BadRecordPolicy policy_;
    std::size_t skipped_ = 0;
};

// JSONL writer that stages output in a `<path>.tmp` sidecar and renames it
// into place on commit(). An abandoned writer removes the sidecar, so a
// half-written file never masquerades as a finished one.
class JsonlWriter {
public:
    explicit JsonlWriter(const std::string& path)
        : path_(path), tmp_path_(path + ".tmp") {
        file_ = std::fopen(tmp_path_.c_str(), "wb");
        if (file_ == nullptr) {
            throw ConfigError("cannot open " + tmp_path_ + " for writing");
        }
    }

    ~JsonlWriter() {
        if (file_ != nullptr) {
            std::fclose(file_);
            std::remove(tmp_path_.c_str());
        }
    }

    JsonlWriter(const JsonlWriter&) = delete;
    JsonlWriter& operator=(const JsonlWriter&) = delete;

    void write(const json& record) {
        const std::string line = record.dump();
        if (std::fwrite(line.data(), 1, line.size(), file_) != line.size() ||
            std::fputc('\n', file_) == EOF) {
            throw DataError("write failed: " + tmp_path_);
        }
        ++count_;
    }

    void write_raw(const std::string& line) {
        if (std::fwrite(line.data(), 1, line.size(), file_) != line.size() ||
            std::fputc('\n', file_) == EOF) {
            throw DataError("write failed: " + tmp_path_);
        }
        ++count_;
    }

    void commit() {
        if (file_ == nullptr) return;
        const bool ok = std::fflush(file_) == 0;
        std::fclose(file_);
        file_ = nullptr;
        if (!ok) {
            std::remove(tmp_path_.c_str());
            throw DataError("flush failed: " + tmp_path_);
        }
        std::error_code ec;
        std::filesystem::rename(tmp_path_, path_, ec);
        if (ec) {
            std::remove(tmp_path_.c_str());
            throw DataError("rename failed: " + path_ + ": " + ec.message());
        }
    }

    std::size_t count() const { return count_; }

private:
    std::string path_;
    std::string tmp_path_;
    std::FILE* file_ = nullptr;
    std::size_t count_ = 0;
};

inline json load_json_file(const std::string& path) {
    LineReader lines(path);
    std::string all, line;
    while (lines.next(line)) {
        all += line;
        all += '\n';
    }
    try {
        return json::parse(all);
    } catch (const json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

inline void save_json_file(const std::string& path, const json& value, int indent = 2) {
    JsonlWriter out(path);
    out.write_raw(value.dump(indent));
    out.commit();
}

}  // namespace simpar
