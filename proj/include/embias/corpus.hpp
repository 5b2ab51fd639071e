#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace embias {

/// Splits on whitespace, strips surrounding punctuation, lowercases, and
/// keeps only tokens made of ASCII letters and apostrophes. "The cat,
/// the CAT." -> [the, cat, the, cat]; "it's 2024 now" -> [it's, now].
std::vector<std::string> tokenize(std::string_view text);

/// A tokenized corpus: one token vector per document. Documents are the
/// unit of context -- training windows never cross document boundaries.
struct TokenStream {
    std::vector<std::vector<std::string>> documents;

    size_t total_tokens() const;

    /// One document per non-empty line.
    static TokenStream from_text(std::string_view text);
    static TokenStream from_files(const std::vector<std::filesystem::path>& paths);
};

struct TransparentStringHash {
    using is_transparent = void;
    size_t operator()(std::string_view s) const {
        return std::hash<std::string_view>{}(s);
    }
};

/// Terms retained by frequency filtering, with dense contiguous ids
/// assigned in descending-count then lexicographic order.
class Vocabulary {
public:
    Vocabulary() = default;
    Vocabulary(std::vector<std::string> terms, std::vector<std::int64_t> counts);

    size_t size() const { return terms_.size(); }
    const std::vector<std::string>& terms() const { return terms_; }
    const std::vector<std::int64_t>& counts() const { return counts_; }
    const std::string& term(size_t id) const { return terms_[id]; }
    std::int64_t count(size_t id) const { return counts_[id]; }
    std::int64_t total_count() const { return total_count_; }

    /// Dense id of `term`, or -1 if absent.
    std::int32_t id(std::string_view term) const {
        auto it = index_.find(term);
        return it == index_.end() ? -1 : it->second;
    }
    bool contains(std::string_view term) const { return id(term) >= 0; }

private:
    std::vector<std::string> terms_;
    std::vector<std::int64_t> counts_;
    std::unordered_map<std::string, std::int32_t, TransparentStringHash,
                       std::equal_to<>>
        index_;
    std::int64_t total_count_ = 0;
};

inline constexpr int kDefaultMinCount = 5;
inline constexpr int kDefaultMaxVocab = 50000;

/// Counts tokens across all documents, drops terms below `min_count`,
/// keeps the `max_size` most frequent (ties broken lexicographically).
/// Throws DataError("empty corpus") when nothing survives.
Vocabulary build_vocabulary(const TokenStream& stream, int min_count = kDefaultMinCount,
                            int max_size = kDefaultMaxVocab);

}  // namespace embias
