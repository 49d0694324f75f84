#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "motifstream/core.hpp"

namespace motifstream {

// Classification of one input line. Malformed covers syntax (token count,
// non-integer fields); Rejected covers well-formed records the stream model
// forbids (self-loops).
enum class ParseKind { Edge, Skip, Malformed, Rejected };

struct ParsedLine {
    ParseKind kind = ParseKind::Skip;
    StreamRecord record;
    std::string error;
};

namespace detail {

inline bool parse_u64(std::string_view tok, std::uint64_t& out) {
    if (tok.empty()) return false;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc() && p == tok.data() + tok.size();
}

inline bool parse_i64(std::string_view tok, std::int64_t& out) {
    if (tok.empty()) return false;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc() && p == tok.data() + tok.size();
}

}  // namespace detail

// Parses one line of edge-list text: "u v" or "u v ts", '#' comments and
// blank lines skipped. Endpoints are unordered non-negative integers.
inline ParsedLine parse_edge_line(std::string_view line) {
    ParsedLine out;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
        if (i > start) tokens.push_back(line.substr(start, i - start));
    }

    if (tokens.empty()) return out;  // blank line
    if (tokens[0].front() == '#') return out;  // comment

    if (tokens.size() < 2 || tokens.size() > 3) {
        out.kind = ParseKind::Malformed;
        out.error = "expected 'u v' or 'u v ts'";
        return out;
    }
    std::uint64_t u = 0, v = 0;
    if (!detail::parse_u64(tokens[0], u) || !detail::parse_u64(tokens[1], v)) {
        out.kind = ParseKind::Malformed;
        out.error = "endpoints must be non-negative integers";
        return out;
    }
    if (tokens.size() == 3) {
        std::int64_t ts = 0;
        if (!detail::parse_i64(tokens[2], ts)) {
            out.kind = ParseKind::Malformed;
            out.error = "timestamp must be an integer";
            return out;
        }
        out.record.src_ts = ts;
    }
    if (u == v) {
        out.kind = ParseKind::Rejected;
        out.error = "self-loop";
        return out;
    }
    out.kind = ParseKind::Edge;
    out.record.u = u;
    out.record.v = v;
    return out;
}

struct StreamOptions {
    std::optional<std::uint64_t> shuffle_seed;
    bool sort_by_timestamp = false;
};

// Seeded in-place Fisher-Yates permutation of a record batch.
inline void shuffle_records(std::vector<StreamRecord>& records, std::uint64_t seed) {
    RngHandle rng(seed);
    for (std::size_t i = records.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.uniform_int(i));
        std::swap(records[i - 1], records[j]);
    }
}

// A finite or unbounded sequence of edges; next() assigns arrival indexes
// 1..N in emission order.
class StreamSource {
public:
    std::optional<Edge> next() {
        std::optional<StreamRecord> rec = pull();
        if (!rec) return std::nullopt;
        Edge e{rec->u, rec->v, ++emitted_};
        return e;
    }

    std::uint64_t emitted() const { return emitted_; }

    // Drains the remaining records into memory.
    std::vector<Edge> drain() {
        std::vector<Edge> all;
        while (auto e = next()) all.push_back(*e);
        return all;
    }

private:
    friend StreamSource read_stream(const std::string&, const StreamOptions&);
    friend StreamSource make_stream(std::vector<StreamRecord>);

    std::optional<StreamRecord> pull() {
        if (materialized_) {
            if (cursor_ >= records_.size()) return std::nullopt;
            return records_[cursor_++];
        }
        std::string line;
        while (std::getline(*input_, line)) {
            ++line_no_;
            ParsedLine p = parse_edge_line(line);
            switch (p.kind) {
                case ParseKind::Edge: return p.record;
                case ParseKind::Skip: continue;
                default:
                    throw std::runtime_error("line " + std::to_string(line_no_) + ": " + p.error);
            }
        }
        if (input_->bad()) throw std::runtime_error("stream read failure");
        return std::nullopt;
    }

    bool materialized_ = false;
    std::vector<StreamRecord> records_;
    std::size_t cursor_ = 0;
    std::shared_ptr<std::istream> input_;
    std::uint64_t line_no_ = 0;
    std::uint64_t emitted_ = 0;
};

// Drains a source into plain records (timestamps are not preserved; the
// emission order is the stream order).
inline std::vector<StreamRecord> drain_records(StreamSource& src) {
    std::vector<StreamRecord> all;
    while (auto e = src.next()) all.push_back(StreamRecord{e->u, e->v, std::nullopt});
    return all;
}

// Wraps an in-memory record list as a stream (tests, generators).
inline StreamSource make_stream(std::vector<StreamRecord> records) {
    StreamSource s;
    s.materialized_ = true;
    s.records_ = std::move(records);
    return s;
}

// Opens an edge-list file ("-" for stdin). Shuffling and timestamp ordering
// require a bounded source and are mutually exclusive. Shuffle is a seeded
// Fisher-Yates pass so a given seed always yields the same permutation.
inline StreamSource read_stream(const std::string& path, const StreamOptions& opts = {}) {
    if (opts.shuffle_seed && opts.sort_by_timestamp)
        throw std::invalid_argument("read_stream: shuffle and sort-by-timestamp are exclusive");

    const bool is_stdin = path == "-";
    const bool needs_materialize = opts.shuffle_seed.has_value() || opts.sort_by_timestamp;
    if (is_stdin && needs_materialize)
        throw std::invalid_argument("read_stream: cannot reorder an unbounded source");

    StreamSource s;
    if (is_stdin) {
        s.input_ = std::shared_ptr<std::istream>(&std::cin, [](std::istream*) {});
        return s;
    }
    auto file = std::make_shared<std::ifstream>(path);
    if (!file->is_open()) throw std::runtime_error("cannot open " + path);

    if (!needs_materialize) {
        s.input_ = file;
        return s;
    }

    std::vector<StreamRecord> records;
    std::string line;
    std::uint64_t line_no = 0;
    while (std::getline(*file, line)) {
        ++line_no;
        ParsedLine p = parse_edge_line(line);
        switch (p.kind) {
            case ParseKind::Edge: records.push_back(p.record); break;
            case ParseKind::Skip: break;
            default:
                throw std::runtime_error("line " + std::to_string(line_no) + ": " + p.error);
        }
    }
    if (file->bad()) throw std::runtime_error("read failure on " + path);

    if (opts.sort_by_timestamp) {
        for (std::size_t i = 0; i < records.size(); ++i)
            if (!records[i].src_ts)
                throw std::runtime_error("sort-by-timestamp: record without timestamp");
        std::stable_sort(records.begin(), records.end(),
                         [](const StreamRecord& a, const StreamRecord& b) {
                             return *a.src_ts < *b.src_ts;
                         });
    } else if (opts.shuffle_seed) {
        shuffle_records(records, *opts.shuffle_seed);
    }
    return make_stream(std::move(records));
}

// Serializes records as "u v" / "u v ts" lines, LF-terminated.
inline void write_edge_list(std::ostream& os, const std::vector<StreamRecord>& records) {
    for (const auto& r : records) {
        os << r.u << ' ' << r.v;
        if (r.src_ts) os << ' ' << *r.src_ts;
        os << '\n';
    }
}

// Copies the first occurrence of every unordered endpoint pair from `in` to
// `out`, dropping repeats (in either orientation). Returns the number of
// duplicates removed. Comments and blank lines are not preserved.
inline std::uint64_t dedup_stream(std::istream& in, std::ostream& out) {
    std::unordered_set<PairKey, PairKeyHash> seen;
    std::string line;
    std::uint64_t removed = 0;
    std::uint64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        ParsedLine p = parse_edge_line(line);
        switch (p.kind) {
            case ParseKind::Skip: continue;
            case ParseKind::Edge: break;
            default:
                throw std::runtime_error("line " + std::to_string(line_no) + ": " + p.error);
        }
        if (!seen.insert(PairKey(p.record.u, p.record.v)).second) {
            ++removed;
            continue;
        }
        out << p.record.u << ' ' << p.record.v;
        if (p.record.src_ts) out << ' ' << *p.record.src_ts;
        out << '\n';
    }
    if (in.bad()) throw std::runtime_error("dedup input read failure");
    return removed;
}

inline std::uint64_t dedup_stream_files(const std::string& in_path, const std::string& out_path) {
    std::ifstream in(in_path);
    if (!in.is_open()) throw std::runtime_error("cannot open " + in_path);
    std::ofstream out(out_path, std::ios::binary);
    if (!out.is_open()) throw std::runtime_error("cannot open " + out_path);
    return dedup_stream(in, out);
}

}  // namespace motifstream
