#include "incbl/preprocess.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "incbl/digest.hpp"
#include "incbl/porter.hpp"
#include "stoplists_data.hpp"

namespace incbl {
namespace {

bool is_word_char(unsigned char c) {
    return std::isalnum(c) != 0 || c == '_';
}

bool is_word_start(unsigned char c) {
    return std::isalpha(c) != 0 || c == '_';
}

char ascii_lower(char c) {
    return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
}

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), ascii_lower);
    return out;
}

bool is_pure_digits(std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isdigit(c) != 0;
    });
}

enum class CharClass { lower, upper, digit, other };

CharClass classify(unsigned char c) {
    if (std::islower(c)) return CharClass::lower;
    if (std::isupper(c)) return CharClass::upper;
    if (std::isdigit(c)) return CharClass::digit;
    return CharClass::other;
}

}  // namespace

std::vector<std::string> tokenize_source(std::string_view text, LanguageHint) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        if (!is_word_char(c)) {
            ++i;
            continue;
        }
        std::size_t start = i;
        while (i < text.size() &&
               is_word_char(static_cast<unsigned char>(text[i]))) {
            ++i;
        }
        if (is_word_start(c)) {
            tokens.emplace_back(text.substr(start, i - start));
        }
        // runs starting with a digit are numeric literals: skipped
    }
    return tokens;
}

std::vector<std::string> split_identifier(std::string_view token) {
    // Segment boundaries: '_', digit<->letter transitions, lower->upper,
    // and before the last upper of an acronym run followed by lowercase.
    std::vector<std::pair<std::size_t, std::size_t>> segments;
    std::size_t seg_start = std::string_view::npos;
    auto close = [&](std::size_t end) {
        if (seg_start != std::string_view::npos && end > seg_start) {
            segments.emplace_back(seg_start, end);
        }
        seg_start = std::string_view::npos;
    };
    for (std::size_t i = 0; i < token.size(); ++i) {
        CharClass cur = classify(static_cast<unsigned char>(token[i]));
        if (cur == CharClass::other) {  // '_' and anything non-alnum
            close(i);
            continue;
        }
        if (seg_start == std::string_view::npos) {
            seg_start = i;
            continue;
        }
        CharClass prev = classify(static_cast<unsigned char>(token[i - 1]));
        bool boundary = false;
        if ((prev == CharClass::digit) != (cur == CharClass::digit)) {
            boundary = true;
        } else if (prev == CharClass::lower && cur == CharClass::upper) {
            boundary = true;
        } else if (prev == CharClass::upper && cur == CharClass::lower &&
                   i >= 2 && seg_start <= i - 2 &&
                   classify(static_cast<unsigned char>(token[i - 2])) ==
                       CharClass::upper) {
            // HTTPServer: break before the 'S' of "Server"
            close(i - 1);
            seg_start = i - 1;
            continue;
        }
        if (boundary) {
            close(i);
            seg_start = i;
        }
    }
    close(token.size());

    std::vector<std::string> parts;
    for (auto [b, e] : segments) {
        std::string_view seg = token.substr(b, e - b);
        if (is_pure_digits(seg)) continue;
        parts.push_back(to_lower(seg));
    }
    if (segments.size() >= 2) {
        parts.push_back(to_lower(token));
    }
    return parts;
}

LanguageHint language_hint_for_path(std::string_view path) {
    auto dot = path.rfind('.');
    if (dot == std::string_view::npos) return LanguageHint::unknown;
    std::string ext = to_lower(path.substr(dot));
    if (ext == ".java") return LanguageHint::java;
    if (ext == ".py") return LanguageHint::python;
    if (ext == ".c" || ext == ".h") return LanguageHint::c;
    if (ext == ".cc" || ext == ".cpp" || ext == ".hpp") return LanguageHint::cpp;
    return LanguageHint::unknown;
}

bool has_recognized_extension(std::string_view path) {
    auto dot = path.rfind('.');
    if (dot == std::string_view::npos) return false;
    std::string ext = to_lower(path.substr(dot));
    return ext == ".java" || ext == ".py" || ext == ".c" || ext == ".cc" ||
           ext == ".cpp" || ext == ".h" || ext == ".hpp";
}

std::string sanitize_utf8(std::string_view bytes) {
    static constexpr std::string_view kReplacement = "\xEF\xBF\xBD";  // U+FFFD
    std::string out;
    out.reserve(bytes.size());
    std::size_t i = 0;
    auto is_cont = [&](std::size_t k) {
        return k < bytes.size() &&
               (static_cast<unsigned char>(bytes[k]) & 0xC0) == 0x80;
    };
    while (i < bytes.size()) {
        unsigned char c = static_cast<unsigned char>(bytes[i]);
        std::size_t len = 0;
        if (c < 0x80) {
            len = 1;
        } else if ((c & 0xE0) == 0xC0 && c >= 0xC2) {
            len = 2;
        } else if ((c & 0xF0) == 0xE0) {
            len = 3;
        } else if ((c & 0xF8) == 0xF0 && c <= 0xF4) {
            len = 4;
        }
        bool ok = len > 0;
        for (std::size_t k = 1; ok && k < len; ++k) {
            ok = is_cont(i + k);
        }
        if (ok) {
            out.append(bytes.substr(i, len));
            i += len;
        } else {
            out.append(kReplacement);
            ++i;
        }
    }
    return out;
}

Stoplist Stoplist::from_text(std::string_view text) {
    Stoplist list;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto b = line.find_first_not_of(" \t\r\n");
        if (b == std::string::npos) continue;
        auto e = line.find_last_not_of(" \t\r\n");
        list.terms_.insert(to_lower(std::string_view(line).substr(b, e - b + 1)));
    }
    std::vector<std::string> sorted(list.terms_.begin(), list.terms_.end());
    std::sort(sorted.begin(), sorted.end());
    std::string canonical;
    for (const auto& t : sorted) {
        canonical += t;
        canonical += '\n';
    }
    list.digest_ = sha256_bytes(canonical);
    return list;
}

Stoplist Stoplist::from_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open stoplist file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_text(buf.str());
}

Preprocessor::Preprocessor()
    : english_(Stoplist::from_text(kEnglishStopwordsText)),
      keywords_(Stoplist::from_text(kCodeKeywordsText)) {}

Preprocessor::Preprocessor(Stoplist english, Stoplist keywords)
    : english_(std::move(english)), keywords_(std::move(keywords)) {}

bool Preprocessor::dropped(const std::string& term) const {
    return term.size() < 2 || english_.contains(term) ||
           keywords_.contains(term);
}

TermCounts Preprocessor::normalize_terms(
    const std::vector<std::string>& tokens) const {
    TermCounts out;
    for (const auto& raw : tokens) {
        std::string lower = to_lower(raw);
        if (dropped(lower) || is_pure_digits(lower)) continue;
        std::string stemmed = porter_stem(lower);
        if (dropped(stemmed)) continue;  // a stem can land on a stopword
        ++out.counts[std::move(stemmed)];
    }
    return out;
}

std::optional<TermCounts> Preprocessor::build_code_document(
    std::string_view path, std::string_view text) const {
    if (!has_recognized_extension(path)) return std::nullopt;
    std::vector<std::string> subtokens;
    for (const auto& token :
         tokenize_source(text, language_hint_for_path(path))) {
        for (auto& part : split_identifier(token)) {
            subtokens.push_back(std::move(part));
        }
    }
    return normalize_terms(subtokens);
}

std::optional<TermCounts> Preprocessor::build_report_document(
    const BugReport& report) const {
    if (report.title.empty() && report.description.empty()) {
        return std::nullopt;
    }
    std::string combined = report.title + " " + report.description;
    std::vector<std::string> subtokens;
    for (const auto& token : tokenize_source(sanitize_utf8(combined))) {
        for (auto& part : split_identifier(token)) {
            subtokens.push_back(std::move(part));
        }
    }
    return normalize_terms(subtokens);
}

}  // namespace incbl
