#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "incbl/types.hpp"

namespace incbl {

enum class LanguageHint { java, python, c, cpp, unknown };

/// Identifier-like tokens: maximal runs of [A-Za-z0-9_] starting with a
/// letter or underscore. Runs starting with a digit (numeric literals,
/// including hex like 0x1f) are skipped entirely. Comment and string
/// literal contents are token sources like any other text. The language
/// hint is accepted for interface stability; the lexical rule is shared.
std::vector<std::string> tokenize_source(std::string_view text,
                                         LanguageHint hint = LanguageHint::unknown);

/// Splits an identifier on underscores, digit/letter boundaries and
/// camelCase humps (including the last capital of an acronym run before a
/// lowercase letter). Returns lowercase letter parts; bare digit runs are
/// dropped. When the identifier segmented into >= 2 pieces, the whole
/// lowercased identifier is appended as an additional subtoken.
std::vector<std::string> split_identifier(std::string_view token);

LanguageHint language_hint_for_path(std::string_view path);
bool has_recognized_extension(std::string_view path);

/// Replaces bytes that do not form valid UTF-8 with U+FFFD so downstream
/// stages only ever see well-formed text.
std::string sanitize_utf8(std::string_view bytes);

class Stoplist {
public:
    Stoplist() = default;

    /// Parses "one term per line" text; '#' starts a comment line and
    /// surrounding whitespace is trimmed. Terms are lowercased.
    static Stoplist from_text(std::string_view text);
    static Stoplist from_file(const std::filesystem::path& path);

    bool contains(std::string_view term) const {
        return terms_.find(std::string(term)) != terms_.end();
    }
    std::size_t size() const { return terms_.size(); }

    /// Digest of the canonical form (sorted terms joined by '\n'); half of
    /// the model-version pair checked on snapshot load.
    const Sha256& digest() const { return digest_; }

private:
    std::unordered_set<std::string> terms_;
    Sha256 digest_{};
};

/// The full text pipeline: tokenize, split identifiers, lowercase, drop
/// stopwords and single-character terms, Porter-stem, count. Holds the
/// English stopword list and the programming-keyword list.
class Preprocessor {
public:
    /// Built-in lists (the data files compiled into the binary).
    Preprocessor();
    Preprocessor(Stoplist english, Stoplist keywords);

    TermCounts normalize_terms(const std::vector<std::string>& tokens) const;

    /// nullopt when the path's extension is not a recognized source type;
    /// an empty file yields an empty (but present) TermCounts.
    std::optional<TermCounts> build_code_document(std::string_view path,
                                                  std::string_view text) const;

    /// Title and description concatenated through the same pipeline.
    /// nullopt when both fields are empty.
    std::optional<TermCounts> build_report_document(const BugReport& report) const;

    const Stoplist& english() const { return english_; }
    const Stoplist& keywords() const { return keywords_; }

private:
    bool dropped(const std::string& term) const;

    Stoplist english_;
    Stoplist keywords_;
};

}  // namespace incbl
