#pragma once

#include "vsd/corpus.hpp"
#include "vsd/thesaurus.hpp"

#include <map>
#include <memory>
#include <string>
#include <utility>

namespace vsd {

class BranchLengthModel;

/// Sparse TF-IDF vector over (case, verb) contexts.
struct WordVector {
    std::map<std::pair<Marker, Word>, double> terms;
    bool empty() const { return terms.empty(); }
};

/// Weight of each context c for noun n: f(n, c) * ln(N / nf(c)). Contexts
/// whose weight is zero are not stored.
WordVector build_vector(const CoocTable & cooc, const Word & noun);

/// dot(a, b) / (|a| |b|); 0 when either vector is empty.
double cosine(const WordVector & a, const WordVector & b);

/// Precomputed vectors for every noun of a co-occurrence table.
class VectorSpace {
public:
    explicit VectorSpace(const CoocTable & cooc);

    bool contains(const Word & noun) const { return vectors_.count(noun) != 0; }
    /// Empty vector for unknown nouns.
    const WordVector & vector(const Word & noun) const;
    double similarity(const Word & a, const Word & b) const;
    const std::map<Word, WordVector> & vectors() const { return vectors_; }

private:
    std::map<Word, WordVector> vectors_;
    std::map<Word, double> norms_;
};

/// Corpus counts per code prefix, propagated upward, for information-content
/// similarity. The root is the empty prefix.
class ClassFrequency {
public:
    ClassFrequency() = default;
    /// Explicit prefix -> count table. Must contain the root ("").
    explicit ClassFrequency(std::map<std::string, double> counts);

    /// Counts every thesaurus leaf once (add-one) plus the corpus frequency
    /// of each of its words, then sums counts up the tree.
    static ClassFrequency from_word_counts(const Thesaurus & t, const std::map<Word, long> & word_counts);
    /// Word frequencies from a whitespace-tokenized text stream.
    static std::map<Word, long> count_words(std::istream & in);

    double count(const std::string & prefix) const;
    /// count(prefix) / count(root). Throws ConfigError if the root count is 0.
    double probability(const std::string & prefix) const;
    const std::map<std::string, double> & counts() const { return counts_; }

private:
    std::map<std::string, double> counts_;
};

/// max over common ancestors c of -ln P(c); equals -ln P(deepest common
/// ancestor) because P never grows going down the tree.
double ic_similarity(const Thesaurus & t, const ClassFrequency & freq, const Word & a, const Word & b);

enum class MeasureKind { table, vsm, sbl, ic };
enum class UnknownWordPolicy { zero, error };

MeasureKind parse_measure_kind(const std::string & s);
std::string to_string(MeasureKind kind);
UnknownWordPolicy parse_unknown_policy(const std::string & s);

/// One word-similarity measure with its resources. Immutable once built.
class Measure {
public:
    static Measure table(std::shared_ptr<const Thesaurus> t, std::shared_ptr<const SimilarityTable> tbl,
                         UnknownWordPolicy policy = UnknownWordPolicy::zero);
    static Measure vsm(std::shared_ptr<const VectorSpace> space, UnknownWordPolicy policy = UnknownWordPolicy::zero);
    static Measure sbl(std::shared_ptr<const Thesaurus> t, std::shared_ptr<const BranchLengthModel> model,
                       UnknownWordPolicy policy = UnknownWordPolicy::zero);
    static Measure ic(std::shared_ptr<const Thesaurus> t, std::shared_ptr<const ClassFrequency> freq,
                      UnknownWordPolicy policy = UnknownWordPolicy::zero);

    MeasureKind kind() const { return kind_; }
    UnknownWordPolicy policy() const { return policy_; }

    /// Similarity of two words. Unknown words score minimum() under the zero
    /// policy and raise LookupError under the error policy.
    double operator()(const Word & a, const Word & b) const;
    double minimum() const;

    /// True when similarity is a non-decreasing function of the deepest common
    /// ancestor in the code tree, which makes thesaurus-based neighbor search
    /// exact.
    bool tree_backed() const { return kind_ == MeasureKind::table || kind_ == MeasureKind::ic; }
    const Thesaurus * thesaurus() const { return thesaurus_.get(); }
    /// Whether the measure has an entry for `w` (thesaurus word or VSM noun).
    bool knows(const Word & w) const;

private:
    Measure() = default;

    MeasureKind kind_ = MeasureKind::table;
    UnknownWordPolicy policy_ = UnknownWordPolicy::zero;
    std::shared_ptr<const Thesaurus> thesaurus_;
    std::shared_ptr<const SimilarityTable> table_;
    std::shared_ptr<const VectorSpace> space_;
    std::shared_ptr<const BranchLengthModel> sbl_;
    std::shared_ptr<const ClassFrequency> freq_;
};

} // namespace vsd
