#include "embias/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "embias/error.hpp"

namespace embias {

namespace {

inline bool is_space(unsigned char c) { return std::isspace(c) != 0; }
inline bool is_token_char(unsigned char c) {
    return (c >= 'a' && c <= 'z') || c == '\'';
}

// Lowercase a raw whitespace-delimited chunk, strip surrounding
// punctuation, and keep it only if every remaining char is a letter or
// apostrophe.
void emit_token(std::string_view raw, std::vector<std::string>& out) {
    size_t begin = 0;
    size_t end = raw.size();
    auto is_word_char = [](unsigned char c) {
        return std::isalnum(c) != 0 || c == '\'';
    };
    while (begin < end && !is_word_char(static_cast<unsigned char>(raw[begin]))) ++begin;
    while (end > begin && !is_word_char(static_cast<unsigned char>(raw[end - 1]))) --end;
    // Apostrophes count as word chars inside a token but are stripped at
    // the edges along with the rest of the punctuation.
    while (begin < end && raw[begin] == '\'') ++begin;
    while (end > begin && raw[end - 1] == '\'') --end;
    if (begin >= end) return;

    std::string token;
    token.reserve(end - begin);
    for (size_t i = begin; i < end; ++i) {
        token.push_back(static_cast<char>(
            std::tolower(static_cast<unsigned char>(raw[i]))));
    }
    for (unsigned char c : token) {
        if (!is_token_char(c)) return;
    }
    out.push_back(std::move(token));
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    size_t i = 0;
    const size_t n = text.size();
    while (i < n) {
        while (i < n && is_space(static_cast<unsigned char>(text[i]))) ++i;
        size_t start = i;
        while (i < n && !is_space(static_cast<unsigned char>(text[i]))) ++i;
        if (i > start) emit_token(text.substr(start, i - start), tokens);
    }
    return tokens;
}

size_t TokenStream::total_tokens() const {
    size_t n = 0;
    for (const auto& doc : documents) n += doc.size();
    return n;
}

TokenStream TokenStream::from_text(std::string_view text) {
    TokenStream stream;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        auto tokens = tokenize(text.substr(pos, eol - pos));
        if (!tokens.empty()) stream.documents.push_back(std::move(tokens));
        pos = eol + 1;
    }
    return stream;
}

TokenStream TokenStream::from_files(const std::vector<std::filesystem::path>& paths) {
    TokenStream stream;
    for (const auto& path : paths) {
        std::ifstream in(path);
        if (!in) throw DataError("cannot open corpus file: " + path.string());
        std::string line;
        while (std::getline(in, line)) {
            auto tokens = tokenize(line);
            if (!tokens.empty()) stream.documents.push_back(std::move(tokens));
        }
    }
    return stream;
}

Vocabulary::Vocabulary(std::vector<std::string> terms, std::vector<std::int64_t> counts)
    : terms_(std::move(terms)), counts_(std::move(counts)) {
    index_.reserve(terms_.size());
    for (size_t i = 0; i < terms_.size(); ++i) {
        index_.emplace(terms_[i], static_cast<std::int32_t>(i));
        total_count_ += counts_[i];
    }
    if (index_.size() != terms_.size()) {
        throw DataError("vocabulary contains duplicate terms");
    }
}

Vocabulary build_vocabulary(const TokenStream& stream, int min_count, int max_size) {
    if (min_count < 1) throw DataError("min_count must be >= 1");
    if (max_size < 1) throw DataError("max_size must be >= 1");

    std::unordered_map<std::string, std::int64_t> counts;
    for (const auto& doc : stream.documents) {
        for (const auto& token : doc) ++counts[token];
    }

    std::vector<std::pair<std::string, std::int64_t>> kept;
    kept.reserve(counts.size());
    for (auto& [term, count] : counts) {
        if (count >= min_count) kept.emplace_back(term, count);
    }
    if (kept.empty()) throw DataError("empty corpus");

    std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (kept.size() > static_cast<size_t>(max_size)) {
        kept.resize(static_cast<size_t>(max_size));
    }

    std::vector<std::string> terms;
    std::vector<std::int64_t> term_counts;
    terms.reserve(kept.size());
    term_counts.reserve(kept.size());
    for (auto& [term, count] : kept) {
        terms.push_back(std::move(term));
        term_counts.push_back(count);
    }
    return Vocabulary(std::move(terms), std::move(term_counts));
}

}  // namespace embias
