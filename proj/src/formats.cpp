#include "embias/formats.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"

namespace embias {

namespace {

using nlohmann::json;

std::string stem_label(const std::filesystem::path& path) {
    auto stem = path.stem().string();
    return stem.empty() ? path.string() : stem;
}

json meta_to_json(const EmbeddingMeta& meta, int dim, size_t vocab_size) {
    json j;
    j["corpus_label"] = meta.corpus_label;
    j["source"] = meta.source;
    j["dimension"] = dim;
    j["vocab_size"] = vocab_size;
    if (meta.train_config) {
        const TrainConfig& c = *meta.train_config;
        j["train_config"] = {
            {"dimension", c.dimension},   {"window", c.window},
            {"negatives", c.negatives},   {"epochs", c.epochs},
            {"initial_lr", c.initial_lr}, {"subsample_t", c.subsample_t},
            {"seed", c.seed},
        };
    }
    if (!meta.epoch_losses.empty()) j["epoch_losses"] = meta.epoch_losses;
    return j;
}

EmbeddingMeta meta_from_json(const json& j) {
    EmbeddingMeta meta;
    meta.corpus_label = j.value("corpus_label", std::string());
    meta.source = j.value("source", std::string());
    if (j.contains("train_config")) {
        const json& c = j.at("train_config");
        TrainConfig config;
        config.dimension = c.at("dimension").get<int>();
        config.window = c.at("window").get<int>();
        config.negatives = c.at("negatives").get<int>();
        config.epochs = c.at("epochs").get<int>();
        config.initial_lr = c.at("initial_lr").get<double>();
        config.subsample_t = c.at("subsample_t").get<double>();
        config.seed = c.at("seed").get<std::uint64_t>();
        meta.train_config = config;
    }
    if (j.contains("epoch_losses")) {
        meta.epoch_losses = j.at("epoch_losses").get<std::vector<double>>();
    }
    return meta;
}

std::filesystem::path sidecar_path(const std::filesystem::path& path) {
    return std::filesystem::path(path.string() + ".meta.json");
}

// Little-endian float32 I/O; on-disk layout is fixed regardless of host.
void put_f32le(std::string& out, float value) {
    std::uint32_t bits;
    std::memcpy(&bits, &value, 4);
    out.push_back(static_cast<char>(bits & 0xFF));
    out.push_back(static_cast<char>((bits >> 8) & 0xFF));
    out.push_back(static_cast<char>((bits >> 16) & 0xFF));
    out.push_back(static_cast<char>((bits >> 24) & 0xFF));
}

float get_f32le(const unsigned char* p) {
    const std::uint32_t bits = std::uint32_t(p[0]) | (std::uint32_t(p[1]) << 8) |
                               (std::uint32_t(p[2]) << 16) |
                               (std::uint32_t(p[3]) << 24);
    float value;
    std::memcpy(&value, &bits, 4);
    return value;
}

}  // namespace

EmbeddingFormat parse_format(std::string_view name) {
    if (name == "glove") return EmbeddingFormat::GloveText;
    if (name == "word2vec") return EmbeddingFormat::Word2vecBinary;
    if (name == "native") return EmbeddingFormat::Native;
    throw DataError("unknown embedding format: " + std::string(name) +
                    " (expected glove, word2vec, or native)");
}

std::string format_name(EmbeddingFormat format) {
    switch (format) {
        case EmbeddingFormat::GloveText: return "glove";
        case EmbeddingFormat::Word2vecBinary: return "word2vec";
        case EmbeddingFormat::Native: return "native";
    }
    return "unknown";
}

EmbeddingSpace load_glove_text(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open embedding file: " + path.string());

    std::vector<std::string> terms;
    std::vector<float> data;
    std::unordered_map<std::string, size_t> rows;
    int dim = -1;
    size_t line_no = 0;
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        const size_t word_end = line.find(' ');
        if (word_end == std::string::npos || word_end == 0) {
            throw DataError("parse error at line " + std::to_string(line_no) +
                            ": expected 'word v1 v2 ...'");
        }
        std::string word = line.substr(0, word_end);

        std::vector<float> row;
        if (dim > 0) row.reserve(static_cast<size_t>(dim));
        size_t pos = word_end;
        int field = 1;
        while (pos < line.size()) {
            while (pos < line.size() && line[pos] == ' ') ++pos;
            if (pos >= line.size()) break;
            const char* begin = line.c_str() + pos;
            char* end = nullptr;
            errno = 0;
            const float value = std::strtof(begin, &end);
            if (end == begin || (*end != '\0' && *end != ' ')) {
                throw DataError("parse error at line " + std::to_string(line_no) +
                                ", field " + std::to_string(field) +
                                ": not a number");
            }
            row.push_back(value);
            pos = static_cast<size_t>(end - line.c_str());
            ++field;
        }

        if (dim < 0) {
            dim = static_cast<int>(row.size());
            if (dim < 2) {
                throw DataError("parse error at line 1: dimension must be >= 2, got " +
                                std::to_string(dim));
            }
        } else if (static_cast<int>(row.size()) != dim) {
            throw DataError("dimension mismatch at line " + std::to_string(line_no));
        }

        auto it = rows.find(word);
        if (it != rows.end()) {
            std::cerr << "warning: duplicate word '" << word << "' at line "
                      << line_no << "; last occurrence wins\n";
            std::copy(row.begin(), row.end(),
                      data.begin() + static_cast<std::ptrdiff_t>(it->second * row.size()));
        } else {
            rows.emplace(std::move(word), terms.size());
            terms.push_back(line.substr(0, word_end));
            data.insert(data.end(), row.begin(), row.end());
        }
    }
    if (terms.empty()) throw DataError("empty embedding file: " + path.string());

    EmbeddingMeta meta;
    meta.corpus_label = stem_label(path);
    meta.source = path.string();
    return EmbeddingSpace(std::move(terms), std::move(data), dim, std::move(meta));
}

void save_glove_text(const EmbeddingSpace& space, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write embedding file: " + path.string());
    char buf[64];
    for (size_t i = 0; i < space.size(); ++i) {
        out << space.terms()[i];
        for (float x : space.vec(i)) {
            std::snprintf(buf, sizeof(buf), " %.9g", static_cast<double>(x));
            out << buf;
        }
        out << '\n';
    }
    if (!out) throw DataError("write failed: " + path.string());
}

EmbeddingSpace load_word2vec_binary(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open embedding file: " + path.string());

    std::string header_line;
    if (!std::getline(in, header_line)) {
        throw DataError("word2vec header not found in " + path.string());
    }
    size_t vocab_size = 0;
    int dim = 0;
    {
        std::istringstream header(header_line);
        std::string rest;
        if (!(header >> vocab_size >> dim) || vocab_size == 0 || (header >> rest)) {
            throw DataError("malformed word2vec header in " + path.string());
        }
    }
    if (dim < 2) {
        throw DataError("word2vec dimension must be >= 2, got " + std::to_string(dim));
    }

    std::vector<std::string> terms;
    std::vector<float> data;
    terms.reserve(vocab_size);
    data.reserve(vocab_size * static_cast<size_t>(dim));
    std::unordered_map<std::string, size_t> rows;

    std::vector<char> raw(4 * static_cast<size_t>(dim));
    std::vector<float> row(static_cast<size_t>(dim));
    for (size_t entry = 0; entry < vocab_size; ++entry) {
        auto truncated = [&] {
            return DataError("truncated word2vec file (entry " +
                             std::to_string(entry + 1) + " of " +
                             std::to_string(vocab_size) + "): " + path.string());
        };
        int c = in.get();
        while (c == '\n' || c == ' ') c = in.get();
        std::string word;
        while (c != EOF && c != ' ') {
            word.push_back(static_cast<char>(c));
            c = in.get();
        }
        if (c == EOF) throw truncated();
        if (word.empty()) {
            throw DataError("empty word at entry " + std::to_string(entry + 1) +
                            " in " + path.string());
        }
        if (!in.read(raw.data(), static_cast<std::streamsize>(raw.size()))) {
            throw truncated();
        }
        for (int k = 0; k < dim; ++k) {
            row[static_cast<size_t>(k)] = get_f32le(
                reinterpret_cast<const unsigned char*>(raw.data()) + 4 * k);
        }

        auto it = rows.find(word);
        if (it != rows.end()) {
            std::cerr << "warning: duplicate word '" << word
                      << "' in word2vec file; last occurrence wins\n";
            std::copy(row.begin(), row.end(),
                      data.begin() + static_cast<std::ptrdiff_t>(it->second * row.size()));
        } else {
            rows.emplace(word, terms.size());
            terms.push_back(std::move(word));
            data.insert(data.end(), row.begin(), row.end());
        }
    }
    int tail = in.get();
    if (tail == '\n') tail = in.get();
    if (tail != EOF) {
        throw DataError("trailing bytes beyond the last vector in " + path.string());
    }

    EmbeddingMeta meta;
    meta.corpus_label = stem_label(path);
    meta.source = path.string();
    return EmbeddingSpace(std::move(terms), std::move(data), dim, std::move(meta));
}

void save_word2vec_binary(const EmbeddingSpace& space,
                          const std::filesystem::path& path) {
    std::string out;
    out.reserve(space.size() * (8 + 4 * static_cast<size_t>(space.dim())));
    out += std::to_string(space.size());
    out += ' ';
    out += std::to_string(space.dim());
    out += '\n';
    for (size_t i = 0; i < space.size(); ++i) {
        out += space.terms()[i];
        out += ' ';
        for (float x : space.vec(i)) put_f32le(out, x);
        out += '\n';
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw DataError("cannot write embedding file: " + path.string());
    file.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!file) throw DataError("write failed: " + path.string());
}

EmbeddingSpace load_native(const std::filesystem::path& path) {
    EmbeddingSpace space = load_word2vec_binary(path);
    const auto sidecar = sidecar_path(path);
    if (std::filesystem::exists(sidecar)) {
        std::ifstream in(sidecar);
        if (!in) throw DataError("cannot open metadata sidecar: " + sidecar.string());
        json j;
        try {
            in >> j;
        } catch (const json::exception& e) {
            throw DataError("invalid metadata sidecar " + sidecar.string() + ": " +
                            e.what());
        }
        EmbeddingMeta meta = meta_from_json(j);
        if (meta.corpus_label.empty()) meta.corpus_label = stem_label(path);
        if (meta.source.empty()) meta.source = path.string();
        space.meta() = std::move(meta);
    }
    return space;
}

void save_native(const EmbeddingSpace& space, const std::filesystem::path& path) {
    save_word2vec_binary(space, path);
    std::ofstream out(sidecar_path(path));
    if (!out) {
        throw DataError("cannot write metadata sidecar: " + sidecar_path(path).string());
    }
    out << meta_to_json(space.meta(), space.dim(), space.size()).dump(2) << '\n';
}

EmbeddingSpace load_embedding(const std::filesystem::path& path,
                              EmbeddingFormat format) {
    switch (format) {
        case EmbeddingFormat::GloveText: return load_glove_text(path);
        case EmbeddingFormat::Word2vecBinary: return load_word2vec_binary(path);
        case EmbeddingFormat::Native: return load_native(path);
    }
    throw DataError("unknown embedding format");
}

void save_embedding(const EmbeddingSpace& space, const std::filesystem::path& path,
                    EmbeddingFormat format) {
    switch (format) {
        case EmbeddingFormat::GloveText: save_glove_text(space, path); return;
        case EmbeddingFormat::Word2vecBinary: save_word2vec_binary(space, path); return;
        case EmbeddingFormat::Native: save_native(space, path); return;
    }
    throw DataError("unknown embedding format");
}

EmbeddingFormat detect_format(const std::filesystem::path& path) {
    const auto ext = path.extension().string();
    if (ext == ".txt" || ext == ".vec") return EmbeddingFormat::GloveText;
    if (std::filesystem::exists(sidecar_path(path))) return EmbeddingFormat::Native;
    return EmbeddingFormat::Word2vecBinary;
}

}  // namespace embias
