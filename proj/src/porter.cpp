#include "incbl/porter.hpp"

#include <array>
#include <cstddef>

namespace incbl {
namespace {

bool is_consonant(const std::string& w, std::size_t i) {
    char c = w[i];
    switch (c) {
        case 'a':
        case 'e':
        case 'i':
        case 'o':
        case 'u':
            return false;
        case 'y':
            return i == 0 ? true : !is_consonant(w, i - 1);
        default:
            return true;
    }
}

// m of the [C](VC)^m[V] decomposition of w[0..len).
int measure(const std::string& w, std::size_t len) {
    std::size_t i = 0;
    while (i < len && is_consonant(w, i)) ++i;
    int m = 0;
    while (true) {
        if (i >= len) return m;
        while (i < len && !is_consonant(w, i)) ++i;
        if (i >= len) return m;
        while (i < len && is_consonant(w, i)) ++i;
        ++m;
    }
}

bool contains_vowel(const std::string& w, std::size_t len) {
    for (std::size_t i = 0; i < len; ++i) {
        if (!is_consonant(w, i)) return true;
    }
    return false;
}

bool ends_double_consonant(const std::string& w) {
    std::size_t n = w.size();
    return n >= 2 && w[n - 1] == w[n - 2] && is_consonant(w, n - 1);
}

// *o condition: w[0..len) ends consonant-vowel-consonant where the final
// consonant is not w, x or y.
bool ends_cvc(const std::string& w, std::size_t len) {
    if (len < 3) return false;
    if (!is_consonant(w, len - 3) || is_consonant(w, len - 2) ||
        !is_consonant(w, len - 1)) {
        return false;
    }
    char last = w[len - 1];
    return last != 'w' && last != 'x' && last != 'y';
}

bool ends_with(const std::string& w, std::string_view suffix) {
    return w.size() >= suffix.size() &&
           w.compare(w.size() - suffix.size(), suffix.size(), suffix) == 0;
}

struct Rule {
    std::string_view suffix;
    std::string_view replacement;
};

// Applies the first matching rule whose stem has measure > min_m; once a
// suffix matches, scanning stops whether or not the condition holds.
void apply_rules(std::string& w, const Rule* rules, std::size_t n, int min_m) {
    for (std::size_t i = 0; i < n; ++i) {
        if (!ends_with(w, rules[i].suffix)) continue;
        std::size_t stem_len = w.size() - rules[i].suffix.size();
        if (measure(w, stem_len) > min_m) {
            w.replace(stem_len, w.size() - stem_len, rules[i].replacement);
        }
        return;
    }
}

void step_1a(std::string& w) {
    if (ends_with(w, "sses")) {
        w.resize(w.size() - 2);
    } else if (ends_with(w, "ies")) {
        w.resize(w.size() - 2);
    } else if (ends_with(w, "ss")) {
        // keep
    } else if (ends_with(w, "s")) {
        w.resize(w.size() - 1);
    }
}

void step_1b(std::string& w) {
    bool removed = false;
    if (ends_with(w, "eed")) {
        if (measure(w, w.size() - 3) > 0) w.resize(w.size() - 1);
    } else if (ends_with(w, "ed")) {
        if (contains_vowel(w, w.size() - 2)) {
            w.resize(w.size() - 2);
            removed = true;
        }
    } else if (ends_with(w, "ing")) {
        if (contains_vowel(w, w.size() - 3)) {
            w.resize(w.size() - 3);
            removed = true;
        }
    }
    if (!removed) return;
    if (ends_with(w, "at") || ends_with(w, "bl") || ends_with(w, "iz")) {
        w.push_back('e');
    } else if (ends_double_consonant(w)) {
        char last = w.back();
        if (last != 'l' && last != 's' && last != 'z') w.resize(w.size() - 1);
    } else if (measure(w, w.size()) == 1 && ends_cvc(w, w.size())) {
        w.push_back('e');
    }
}

void step_1c(std::string& w) {
    if (ends_with(w, "y") && contains_vowel(w, w.size() - 1)) {
        w.back() = 'i';
    }
}

constexpr std::array<Rule, 20> kStep2{{
    {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"},
    {"anci", "ance"},   {"izer", "ize"},    {"abli", "able"},
    {"alli", "al"},     {"entli", "ent"},   {"eli", "e"},
    {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
    {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"},
    {"fulness", "ful"}, {"ousness", "ous"}, {"aliti", "al"},
    {"iviti", "ive"},   {"biliti", "ble"},
}};

constexpr std::array<Rule, 7> kStep3{{
    {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
    {"ical", "ic"},  {"ful", ""},   {"ness", ""},
}};

void step_4(std::string& w) {
    static constexpr std::array<std::string_view, 19> suffixes{
        "al",  "ance", "ence", "er",    "ic",   "able", "ible",
        "ant", "ement", "ment", "ent",  "ion",  "ou",   "ism",
        "ate", "iti",   "ous",  "ive",  "ize",
    };
    std::string_view best;
    for (std::string_view s : suffixes) {
        if (ends_with(w, s) && s.size() > best.size()) best = s;
    }
    if (best.empty()) return;
    std::size_t stem_len = w.size() - best.size();
    if (measure(w, stem_len) <= 1) return;
    if (best == "ion" && !(w[stem_len - 1] == 's' || w[stem_len - 1] == 't')) {
        return;
    }
    w.resize(stem_len);
}

void step_5a(std::string& w) {
    if (!ends_with(w, "e")) return;
    int m = measure(w, w.size() - 1);
    if (m > 1 || (m == 1 && !ends_cvc(w, w.size() - 1))) {
        w.resize(w.size() - 1);
    }
}

void step_5b(std::string& w) {
    if (measure(w, w.size()) > 1 && ends_double_consonant(w) &&
        w.back() == 'l') {
        w.resize(w.size() - 1);
    }
}

}  // namespace

std::string porter_stem(std::string_view word) {
    std::string w(word);
    if (w.size() <= 2) return w;
    step_1a(w);
    step_1b(w);
    step_1c(w);
    apply_rules(w, kStep2.data(), kStep2.size(), 0);
    apply_rules(w, kStep3.data(), kStep3.size(), 0);
    step_4(w);
    step_5a(w);
    step_5b(w);
    return w;
}

}  // namespace incbl
