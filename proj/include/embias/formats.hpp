#pragma once

#include <filesystem>
#include <string>

#include "embias/embedding.hpp"

namespace embias {

enum class EmbeddingFormat { GloveText, Word2vecBinary, Native };

/// Parses "glove" / "word2vec" / "native"; throws on anything else.
EmbeddingFormat parse_format(std::string_view name);
std::string format_name(EmbeddingFormat format);

/// `word v1 v2 ... vd` per line, dimension inferred from the first line.
/// Duplicate words: last occurrence wins, with a warning on stderr.
/// Errors name the offending line ("dimension mismatch at line 2").
EmbeddingSpace load_glove_text(const std::filesystem::path& path);

/// Values written with 9 significant digits, which round-trips float32
/// exactly.
void save_glove_text(const EmbeddingSpace& space, const std::filesystem::path& path);

/// Header "<vocab_size> <d>\n", then per word: bytes to a single space,
/// then d little-endian IEEE-754 floats and a newline. Trailing bytes
/// beyond the last vector are an error.
EmbeddingSpace load_word2vec_binary(const std::filesystem::path& path);
void save_word2vec_binary(const EmbeddingSpace& space,
                          const std::filesystem::path& path);

/// Native format: word2vec binary layout plus a "<path>.meta.json"
/// sidecar holding the provenance record. A missing sidecar loads with
/// default metadata.
EmbeddingSpace load_native(const std::filesystem::path& path);
void save_native(const EmbeddingSpace& space, const std::filesystem::path& path);

EmbeddingSpace load_embedding(const std::filesystem::path& path, EmbeddingFormat format);
void save_embedding(const EmbeddingSpace& space, const std::filesystem::path& path,
                    EmbeddingFormat format);

/// Sniffs the format: ".txt"/".vec" -> glove text, a sidecar next to the
/// file -> native, otherwise word2vec binary.
EmbeddingFormat detect_format(const std::filesystem::path& path);

}  // namespace embias
