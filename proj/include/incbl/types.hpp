#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace incbl {

using TermId = std::uint32_t;
using DocId = std::uint32_t;
using Sha256 = std::array<std::uint8_t, 32>;

/// Normalized bag-of-terms of one document. Keys are lowercase stemmed
/// terms; values are occurrence counts (>= 1). total_terms is the number
/// of distinct terms, the document length used by the length weight.
struct TermCounts {
    std::map<std::string, std::uint32_t> counts;

    std::size_t total_terms() const { return counts.size(); }
    bool empty() const { return counts.empty(); }

    bool operator==(const TermCounts&) const = default;
};

struct BugReport {
    std::string id;
    std::string title;
    std::string description;
    std::optional<std::vector<std::string>> fixed_files;
    std::string created_at;  // RFC 3339, carried verbatim
};

struct RankParams {
    double alpha = 0.25;
    std::uint32_t top_k = 10;
};

// Error hierarchy. InputError covers bad user-supplied data, ModelError
// internal consistency violations, IoError filesystem failures, and the
// SnapshotError family everything about persisted model files.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InputError : Error {
    using Error::Error;
};
struct ModelError : Error {
    using Error::Error;
};
struct IoError : Error {
    using Error::Error;
};
struct SnapshotError : Error {
    using Error::Error;
};
struct SnapshotVersionError : SnapshotError {
    using SnapshotError::SnapshotError;
};
// Stoplist digests differ from the running binary's lists; the snapshot
// is valid but unusable, a re-index is required.
struct SnapshotIncompatibleError : SnapshotError {
    using SnapshotError::SnapshotError;
};

}  // namespace incbl
