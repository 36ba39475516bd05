#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "incbl/types.hpp"

namespace incbl {

/// Bidirectional term <-> id map. Ids of terms whose document frequency
/// dropped to zero are tombstoned and reused (smallest first) so the
/// column space stays compact under vocabulary churn.
class Vocabulary {
public:
    std::optional<TermId> find(std::string_view term) const;
    const std::string& term(TermId id) const;
    bool is_live(TermId id) const;

    /// Returns the id of an existing term, or assigns one (reusing the
    /// smallest tombstoned id before growing the id space).
    TermId intern(const std::string& term);
    void retire(TermId id);

    std::size_t live_size() const { return term_to_id_.size(); }
    /// One past the largest id ever assigned; the length of dense arrays
    /// indexed by term id.
    TermId id_space() const { return static_cast<TermId>(id_to_term_.size()); }
    const std::set<TermId>& free_ids() const { return free_ids_; }

    std::vector<TermId> live_ids() const;

    /// Rebuilds the reverse map and free set from an id table in which
    /// tombstones are empty strings. Used by snapshot loading.
    static Vocabulary from_id_table(std::vector<std::string> id_to_term);
    const std::vector<std::string>& id_table() const { return id_to_term_; }

private:
    std::unordered_map<std::string, TermId> term_to_id_;
    std::vector<std::string> id_to_term_;  // "" marks a tombstone
    std::set<TermId> free_ids_;
};

using SparseRow = std::map<TermId, std::uint32_t>;

/// Sparse tf-idf document vector; exact zeros are never stored.
using DocVector = std::map<TermId, double>;

struct DocInfo {
    std::string path;
    std::uint32_t total_terms = 0;
    Sha256 content_hash{};  // all-zero when built from in-memory documents
};

/// One document's normalized content plus the content fingerprint that
/// ends up in the doc table.
struct IndexedDocument {
    TermCounts counts;
    Sha256 content_hash{};
};

/// Additions, deletions and modifications between two corpus states.
/// The three path sets must be pairwise disjoint.
struct ChangeSet {
    std::map<std::string, IndexedDocument> added;
    std::set<std::string> deleted;
    std::map<std::string, IndexedDocument> modified;

    bool empty() const {
        return added.empty() && deleted.empty() && modified.empty();
    }
};

struct UpdateReport {
    std::vector<TermId> touched_terms;  // sorted ascending
    std::vector<DocId> touched_docs;    // sorted ascending
    std::int64_t delta_m = 0;
};

/// tf(c) = ln(c) + 1 for c >= 1; absent terms (c = 0) contribute 0.
double compute_tf(std::uint32_t count);

/// idf = ln(M / (df + 1)). May be negative (df + 1 > M); kept unclamped.
double compute_idf(std::uint64_t m, std::uint64_t df);

/// df_new = df_old + sign(a_new) - sign(a_old). Throws ModelError when the
/// result would be negative (the model is corrupt).
std::uint32_t update_df_for_doc(std::uint32_t df_old, std::uint32_t a_old,
                                std::uint32_t a_new);

/// Additive idf correction ln((M + delta_m) / M) applied to every term
/// whose df did not change when the corpus size moves by delta_m.
double idf_shift(std::uint64_t m, std::int64_t delta_m);

double l2_norm(const DocVector& v);

/// dot(u, v) / (|u| |v|); 0 when either norm is 0.
double cosine(const DocVector& u, const DocVector& v);

/// Term-document count matrix with its derived state: document frequency
/// vector, cached idf vector, live document count M, the doc table, and
/// the ordered multiset of document lengths backing the length weight.
///
/// Single writer: at most one apply_change_set in flight; readers work on
/// a copied or published snapshot of the value.
class SparseTermDocMatrix {
public:
    std::uint64_t doc_count() const { return doc_table_.size(); }
    std::uint32_t df(TermId id) const;
    double idf(TermId id) const;
    const SparseRow* row(DocId doc) const;
    const DocInfo* doc_info(DocId doc) const;
    std::optional<DocId> doc_for_path(std::string_view path) const;
    std::vector<DocId> live_docs() const;
    const std::map<DocId, SparseRow>& rows() const { return rows_; }
    const std::map<DocId, DocInfo>& doc_table() const { return doc_table_; }
    DocId next_doc_id() const { return next_doc_id_; }
    const std::vector<std::uint32_t>& df_table() const { return df_; }
    const std::vector<double>& idf_table() const { return idf_; }

    /// Corpus-wide document length extrema; both require doc_count() >= 1.
    std::uint32_t min_total_terms() const;
    std::uint32_t max_total_terms() const;

    /// tf-idf vector of a live document. Throws InputError for dead ids.
    DocVector doc_vector(DocId doc) const;

    /// Query vectorization: out-of-vocabulary terms are dropped, the rest
    /// weighted tf x idf with this corpus's idf.
    DocVector vectorize_query(const Vocabulary& vocab,
                              const TermCounts& query) const;

    /// Applies one change set atomically. Preconditions (deleted and
    /// modified paths exist, added paths do not, path sets disjoint) are
    /// validated up front; on violation an InputError listing every
    /// offending path is thrown and the model is untouched. The resulting
    /// state matches a full rebuild over the surviving documents: counts,
    /// df and M exactly, cached idf within floating-point shift residue.
    UpdateReport apply_change_set(Vocabulary& vocab, const ChangeSet& changes);

    /// Non-incremental construction. Documents are visited in ascending
    /// path order and term ids assigned in first-appearance order, so the
    /// result is deterministic; this is also the oracle the incremental
    /// path is tested against.
    static std::pair<SparseTermDocMatrix, Vocabulary> rebuild_full(
        const std::map<std::string, IndexedDocument>& documents);

    /// Reassembles a matrix from its serialized fields, recomputing the
    /// derived lookups (path index, length multiset) and validating df,
    /// M and total_terms consistency. Used by snapshot loading.
    static SparseTermDocMatrix restore(std::map<DocId, SparseRow> rows,
                                       std::map<DocId, DocInfo> doc_table,
                                       std::vector<std::uint32_t> df,
                                       std::vector<double> idf,
                                       DocId next_doc_id,
                                       const Vocabulary& vocab);

private:
    SparseRow build_row(Vocabulary& vocab, const TermCounts& counts);
    void refresh_idf(const Vocabulary& vocab,
                     const std::set<TermId>& touched_terms,
                     std::uint64_t m_old);

    std::map<DocId, SparseRow> rows_;
    std::map<DocId, DocInfo> doc_table_;
    std::unordered_map<std::string, DocId> path_to_doc_;
    std::vector<std::uint32_t> df_;
    std::vector<double> idf_;
    std::multiset<std::uint32_t> doc_lengths_;
    DocId next_doc_id_ = 0;
};

}  // namespace incbl
