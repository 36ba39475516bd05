#include "incbl/vsm_index.hpp"

#include <algorithm>
#include <cmath>

namespace incbl {

// ---------------------------------------------------------------------------
// Vocabulary
// ---------------------------------------------------------------------------

std::optional<TermId> Vocabulary::find(std::string_view term) const {
    auto it = term_to_id_.find(std::string(term));
    if (it == term_to_id_.end()) return std::nullopt;
    return it->second;
}

const std::string& Vocabulary::term(TermId id) const {
    if (!is_live(id)) throw ModelError("term id is not live");
    return id_to_term_[id];
}

bool Vocabulary::is_live(TermId id) const {
    return id < id_to_term_.size() && !id_to_term_[id].empty();
}

TermId Vocabulary::intern(const std::string& term) {
    auto it = term_to_id_.find(term);
    if (it != term_to_id_.end()) return it->second;
    TermId id;
    if (!free_ids_.empty()) {
        id = *free_ids_.begin();
        free_ids_.erase(free_ids_.begin());
        id_to_term_[id] = term;
    } else {
        id = static_cast<TermId>(id_to_term_.size());
        id_to_term_.push_back(term);
    }
    term_to_id_.emplace(term, id);
    return id;
}

void Vocabulary::retire(TermId id) {
    if (!is_live(id)) throw ModelError("retiring a dead term id");
    term_to_id_.erase(id_to_term_[id]);
    id_to_term_[id].clear();
    free_ids_.insert(id);
}

std::vector<TermId> Vocabulary::live_ids() const {
    std::vector<TermId> out;
    out.reserve(term_to_id_.size());
    for (TermId id = 0; id < id_to_term_.size(); ++id) {
        if (!id_to_term_[id].empty()) out.push_back(id);
    }
    return out;
}

Vocabulary Vocabulary::from_id_table(std::vector<std::string> id_to_term) {
    Vocabulary v;
    v.id_to_term_ = std::move(id_to_term);
    for (TermId id = 0; id < v.id_to_term_.size(); ++id) {
        const auto& term = v.id_to_term_[id];
        if (term.empty()) {
            v.free_ids_.insert(id);
        } else if (!v.term_to_id_.emplace(term, id).second) {
            throw SnapshotError("vocabulary contains a duplicate term");
        }
    }
    return v;
}

// ---------------------------------------------------------------------------
// Weighting primitives
// ---------------------------------------------------------------------------

double compute_tf(std::uint32_t count) {
    if (count == 0) return 0.0;
    return std::log(static_cast<double>(count)) + 1.0;
}

double compute_idf(std::uint64_t m, std::uint64_t df) {
    if (m < 1) throw ModelError("idf requires a nonempty corpus");
    return std::log(static_cast<double>(m) / (static_cast<double>(df) + 1.0));
}

namespace {
int sign_of(std::uint32_t v) { return v > 0 ? 1 : 0; }
}  // namespace

std::uint32_t update_df_for_doc(std::uint32_t df_old, std::uint32_t a_old,
                                std::uint32_t a_new) {
    int delta = sign_of(a_new) - sign_of(a_old);
    if (delta < 0 && df_old == 0) {
        throw ModelError("document frequency underflow");
    }
    return static_cast<std::uint32_t>(static_cast<std::int64_t>(df_old) + delta);
}

double idf_shift(std::uint64_t m, std::int64_t delta_m) {
    if (m < 1 || static_cast<std::int64_t>(m) + delta_m < 1) {
        throw ModelError("idf shift requires nonempty corpora on both sides");
    }
    return std::log(
        (static_cast<double>(m) + static_cast<double>(delta_m)) /
        static_cast<double>(m));
}

double l2_norm(const DocVector& v) {
    double sum = 0.0;
    for (const auto& [id, w] : v) sum += w * w;
    return std::sqrt(sum);
}

double cosine(const DocVector& u, const DocVector& v) {
    double nu = l2_norm(u);
    double nv = l2_norm(v);
    if (nu == 0.0 || nv == 0.0) return 0.0;
    double dot = 0.0;
    auto iu = u.begin();
    auto iv = v.begin();
    while (iu != u.end() && iv != v.end()) {
        if (iu->first < iv->first) {
            ++iu;
        } else if (iv->first < iu->first) {
            ++iv;
        } else {
            dot += iu->second * iv->second;
            ++iu;
            ++iv;
        }
    }
    return dot / (nu * nv);
}

// ---------------------------------------------------------------------------
// SparseTermDocMatrix
// ---------------------------------------------------------------------------

std::uint32_t SparseTermDocMatrix::df(TermId id) const {
    return id < df_.size() ? df_[id] : 0;
}

double SparseTermDocMatrix::idf(TermId id) const {
    return id < idf_.size() ? idf_[id] : 0.0;
}

const SparseRow* SparseTermDocMatrix::row(DocId doc) const {
    auto it = rows_.find(doc);
    return it == rows_.end() ? nullptr : &it->second;
}

const DocInfo* SparseTermDocMatrix::doc_info(DocId doc) const {
    auto it = doc_table_.find(doc);
    return it == doc_table_.end() ? nullptr : &it->second;
}

std::optional<DocId> SparseTermDocMatrix::doc_for_path(
    std::string_view path) const {
    auto it = path_to_doc_.find(std::string(path));
    if (it == path_to_doc_.end()) return std::nullopt;
    return it->second;
}

std::vector<DocId> SparseTermDocMatrix::live_docs() const {
    std::vector<DocId> out;
    out.reserve(doc_table_.size());
    for (const auto& [doc, info] : doc_table_) out.push_back(doc);
    return out;
}

std::uint32_t SparseTermDocMatrix::min_total_terms() const {
    if (doc_lengths_.empty()) throw ModelError("length extrema of empty corpus");
    return *doc_lengths_.begin();
}

std::uint32_t SparseTermDocMatrix::max_total_terms() const {
    if (doc_lengths_.empty()) throw ModelError("length extrema of empty corpus");
    return *doc_lengths_.rbegin();
}

DocVector SparseTermDocMatrix::doc_vector(DocId doc) const {
    auto it = rows_.find(doc);
    if (it == rows_.end()) throw InputError("unknown document id");
    DocVector out;
    for (const auto& [term, count] : it->second) {
        double w = compute_tf(count) * idf_[term];
        if (w != 0.0) out.emplace_hint(out.end(), term, w);
    }
    return out;
}

DocVector SparseTermDocMatrix::vectorize_query(const Vocabulary& vocab,
                                               const TermCounts& query) const {
    DocVector out;
    for (const auto& [term, count] : query.counts) {
        auto id = vocab.find(term);
        if (!id) continue;
        double w = compute_tf(count) * idf_[*id];
        if (w != 0.0) out.emplace(*id, w);
    }
    return out;
}

SparseRow SparseTermDocMatrix::build_row(Vocabulary& vocab,
                                         const TermCounts& counts) {
    SparseRow row;
    for (const auto& [term, count] : counts.counts) {
        if (count == 0) continue;  // zeros are never stored
        TermId id = vocab.intern(term);
        if (id >= df_.size()) {
            df_.resize(id + 1, 0);
            idf_.resize(id + 1, 0.0);
        }
        row.emplace(id, count);
    }
    return row;
}

UpdateReport SparseTermDocMatrix::apply_change_set(Vocabulary& vocab,
                                                   const ChangeSet& changes) {
    // Validate everything before mutating anything: the whole change set
    // is rejected atomically.
    std::string bad;
    auto complain = [&bad](std::string_view what, const std::string& path) {
        bad += bad.empty() ? "" : "; ";
        bad += what;
        bad += ": ";
        bad += path;
    };
    for (const auto& [path, doc] : changes.added) {
        if (path_to_doc_.count(path)) complain("added path already indexed", path);
        if (changes.deleted.count(path) || changes.modified.count(path)) {
            complain("path in more than one change class", path);
        }
    }
    for (const auto& path : changes.deleted) {
        if (!path_to_doc_.count(path)) complain("deleted path not indexed", path);
        if (changes.modified.count(path)) {
            complain("path in more than one change class", path);
        }
    }
    for (const auto& [path, doc] : changes.modified) {
        if (!path_to_doc_.count(path)) complain("modified path not indexed", path);
    }
    if (!bad.empty()) throw InputError("invalid change set: " + bad);

    std::uint64_t m_old = doc_count();
    std::set<TermId> touched_terms;
    std::set<DocId> touched_docs;

    auto drop_term_occurrence = [&](TermId term, std::uint32_t old_count,
                                    std::uint32_t new_count) {
        df_[term] = update_df_for_doc(df_[term], old_count, new_count);
        touched_terms.insert(term);
        if (df_[term] == 0 && new_count == 0) {
            vocab.retire(term);
            idf_[term] = 0.0;
        }
    };

    for (const auto& path : changes.deleted) {
        DocId doc = path_to_doc_.at(path);
        const SparseRow& row = rows_.at(doc);
        for (const auto& [term, count] : row) {
            drop_term_occurrence(term, count, 0);
        }
        doc_lengths_.erase(doc_lengths_.find(doc_table_.at(doc).total_terms));
        rows_.erase(doc);
        doc_table_.erase(doc);
        path_to_doc_.erase(path);
        touched_docs.insert(doc);
    }

    for (const auto& [path, document] : changes.modified) {
        DocId doc = path_to_doc_.at(path);
        SparseRow new_row = build_row(vocab, document.counts);
        SparseRow& old_row = rows_.at(doc);

        // df deltas over the union of old and new term sets; entries whose
        // count is unchanged are not touched at all.
        auto io = old_row.begin();
        auto in = new_row.begin();
        while (io != old_row.end() || in != new_row.end()) {
            if (in == new_row.end() ||
                (io != old_row.end() && io->first < in->first)) {
                drop_term_occurrence(io->first, io->second, 0);
                ++io;
            } else if (io == old_row.end() || in->first < io->first) {
                df_[in->first] = update_df_for_doc(df_[in->first], 0, in->second);
                touched_terms.insert(in->first);
                ++in;
            } else {
                if (io->second != in->second) touched_terms.insert(io->first);
                ++io;
                ++in;
            }
        }

        auto& info = doc_table_.at(doc);
        doc_lengths_.erase(doc_lengths_.find(info.total_terms));
        info.total_terms = static_cast<std::uint32_t>(new_row.size());
        info.content_hash = document.content_hash;
        doc_lengths_.insert(info.total_terms);
        old_row = std::move(new_row);
        touched_docs.insert(doc);
    }

    for (const auto& [path, document] : changes.added) {
        DocId doc = next_doc_id_++;
        SparseRow row = build_row(vocab, document.counts);
        for (const auto& [term, count] : row) {
            df_[term] = update_df_for_doc(df_[term], 0, count);
            touched_terms.insert(term);
        }
        auto total = static_cast<std::uint32_t>(row.size());
        rows_.emplace(doc, std::move(row));
        doc_table_.emplace(doc, DocInfo{path, total, document.content_hash});
        path_to_doc_.emplace(path, doc);
        doc_lengths_.insert(total);
        touched_docs.insert(doc);
    }

    refresh_idf(vocab, touched_terms, m_old);

    UpdateReport report;
    report.touched_terms.assign(touched_terms.begin(), touched_terms.end());
    report.touched_docs.assign(touched_docs.begin(), touched_docs.end());
    report.delta_m = static_cast<std::int64_t>(doc_count()) -
                     static_cast<std::int64_t>(m_old);
    return report;
}

void SparseTermDocMatrix::refresh_idf(const Vocabulary& vocab,
                                      const std::set<TermId>& touched_terms,
                                      std::uint64_t m_old) {
    std::uint64_t m_new = doc_count();
    // Touched terms (df changed or a count changed) are recomputed
    // directly; every other live term keeps its cached idf plus the
    // uniform ln((M + dM) / M) correction.
    for (TermId id : touched_terms) {
        idf_[id] = vocab.is_live(id) ? compute_idf(m_new, df_[id]) : 0.0;
    }
    if (m_new == m_old || m_old == 0 || m_new == 0) return;
    double shift = idf_shift(m_old, static_cast<std::int64_t>(m_new) -
                                        static_cast<std::int64_t>(m_old));
    for (TermId id : vocab.live_ids()) {
        if (!touched_terms.count(id)) idf_[id] += shift;
    }
}

std::pair<SparseTermDocMatrix, Vocabulary> SparseTermDocMatrix::rebuild_full(
    const std::map<std::string, IndexedDocument>& documents) {
    SparseTermDocMatrix m;
    Vocabulary vocab;
    for (const auto& [path, document] : documents) {
        DocId doc = m.next_doc_id_++;
        SparseRow row = m.build_row(vocab, document.counts);
        for (const auto& [term, count] : row) {
            m.df_[term] += 1;
        }
        auto total = static_cast<std::uint32_t>(row.size());
        m.rows_.emplace(doc, std::move(row));
        m.doc_table_.emplace(doc, DocInfo{path, total, document.content_hash});
        m.path_to_doc_.emplace(path, doc);
        m.doc_lengths_.insert(total);
    }
    std::uint64_t count = m.doc_count();
    for (TermId id = 0; id < m.df_.size(); ++id) {
        m.idf_[id] = m.df_[id] > 0 ? compute_idf(count, m.df_[id]) : 0.0;
    }
    return {std::move(m), std::move(vocab)};
}

SparseTermDocMatrix SparseTermDocMatrix::restore(
    std::map<DocId, SparseRow> rows, std::map<DocId, DocInfo> doc_table,
    std::vector<std::uint32_t> df, std::vector<double> idf, DocId next_doc_id,
    const Vocabulary& vocab) {
    SparseTermDocMatrix m;
    m.rows_ = std::move(rows);
    m.doc_table_ = std::move(doc_table);
    m.df_ = std::move(df);
    m.idf_ = std::move(idf);
    m.next_doc_id_ = next_doc_id;

    if (m.rows_.size() != m.doc_table_.size()) {
        throw SnapshotError("row count does not match doc table");
    }
    if (m.df_.size() != vocab.id_space() || m.idf_.size() != vocab.id_space()) {
        throw SnapshotError("df/idf arrays do not match the vocabulary");
    }
    std::vector<std::uint32_t> recount(m.df_.size(), 0);
    for (const auto& [doc, row] : m.rows_) {
        auto info = m.doc_table_.find(doc);
        if (info == m.doc_table_.end()) {
            throw SnapshotError("row without doc table entry");
        }
        if (doc >= m.next_doc_id_) {
            throw SnapshotError("doc id beyond next_doc_id");
        }
        if (info->second.total_terms != row.size()) {
            throw SnapshotError("total_terms does not match row size");
        }
        for (const auto& [term, count] : row) {
            if (count == 0) throw SnapshotError("explicit zero count");
            if (!vocab.is_live(term)) {
                throw SnapshotError("row references a dead term id");
            }
            recount[term] += 1;
        }
        if (!m.path_to_doc_.emplace(info->second.path, doc).second) {
            throw SnapshotError("duplicate document path");
        }
        m.doc_lengths_.insert(info->second.total_terms);
    }
    if (recount != m.df_) {
        throw SnapshotError("stored df disagrees with row contents");
    }
    return m;
}

}  // namespace incbl
