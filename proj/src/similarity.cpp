#include "vsd/similarity.hpp"

#include "vsd/error.hpp"
#include "vsd/sbl.hpp"

#include <cmath>
#include <istream>

namespace vsd {

namespace {

// nf(<c, v>): number of noun types seen with each context.
std::map<std::pair<Marker, Word>, long> context_noun_types(const CoocTable & cooc) {
    std::map<std::pair<Marker, Word>, long> nf;
    for (const auto & [key, freq] : cooc.tuples) nf[{std::get<1>(key), std::get<2>(key)}] += 1;
    return nf;
}

WordVector vector_from(const CoocTable & cooc, const std::map<std::pair<Marker, Word>, long> & nf,
                       CoocTable::Key lo, const Word & noun) {
    WordVector v;
    for (auto it = cooc.tuples.lower_bound(lo); it != cooc.tuples.end() && std::get<0>(it->first) == noun; ++it) {
        std::pair<Marker, Word> ctx{std::get<1>(it->first), std::get<2>(it->first)};
        double idf = std::log(static_cast<double>(cooc.noun_types) / static_cast<double>(nf.at(ctx)));
        double w = static_cast<double>(it->second) * idf;
        if (w != 0.0) v.terms.emplace(std::move(ctx), w);
    }
    return v;
}

} // namespace

WordVector build_vector(const CoocTable & cooc, const Word & noun) {
    auto nf = context_noun_types(cooc);
    return vector_from(cooc, nf, {noun, "", ""}, noun);
}

double cosine(const WordVector & a, const WordVector & b) {
    if (a.empty() || b.empty()) return 0.0;
    double dot = 0, na = 0, nb = 0;
    for (const auto & [k, w] : a.terms) {
        na += w * w;
        auto it = b.terms.find(k);
        if (it != b.terms.end()) dot += w * it->second;
    }
    for (const auto & [k, w] : b.terms) nb += w * w;
    if (na == 0 || nb == 0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

VectorSpace::VectorSpace(const CoocTable & cooc) {
    auto nf = context_noun_types(cooc);
    for (auto it = cooc.tuples.begin(); it != cooc.tuples.end();) {
        const Word noun = std::get<0>(it->first);
        auto v = vector_from(cooc, nf, it->first, noun);
        double n2 = 0;
        for (const auto & [k, w] : v.terms) n2 += w * w;
        norms_[noun] = std::sqrt(n2);
        vectors_.emplace(noun, std::move(v));
        while (it != cooc.tuples.end() && std::get<0>(it->first) == noun) ++it;
    }
}

const WordVector & VectorSpace::vector(const Word & noun) const {
    static const WordVector empty;
    auto it = vectors_.find(noun);
    return it == vectors_.end() ? empty : it->second;
}

double VectorSpace::similarity(const Word & a, const Word & b) const {
    auto ia = vectors_.find(a);
    auto ib = vectors_.find(b);
    if (ia == vectors_.end() || ib == vectors_.end()) return 0.0;
    const auto & va = ia->second.terms;
    const auto & vb = ib->second.terms;
    if (va.empty() || vb.empty()) return 0.0;
    // Both maps are sorted: merge-join the supports.
    double dot = 0;
    auto x = va.begin();
    auto y = vb.begin();
    while (x != va.end() && y != vb.end()) {
        if (x->first < y->first) {
            ++x;
        } else if (y->first < x->first) {
            ++y;
        } else {
            dot += x->second * y->second;
            ++x;
            ++y;
        }
    }
    return dot / (norms_.at(a) * norms_.at(b));
}

ClassFrequency::ClassFrequency(std::map<std::string, double> counts) : counts_(std::move(counts)) {}

ClassFrequency ClassFrequency::from_word_counts(const Thesaurus & t, const std::map<Word, long> & word_counts) {
    std::map<std::string, double> leaf;
    for (const auto & code : t.leaves()) leaf[code.str()] = 1.0;
    for (const auto & [word, n] : word_counts) {
        if (const auto * code = t.find(word)) leaf[code->str()] += static_cast<double>(n);
    }
    std::map<std::string, double> counts;
    for (const auto & [code, n] : leaf)
        for (std::size_t len = 0; len <= code.size(); ++len) counts[code.substr(0, len)] += n;
    return ClassFrequency(std::move(counts));
}

std::map<Word, long> ClassFrequency::count_words(std::istream & in) {
    std::map<Word, long> counts;
    Word w;
    while (in >> w) counts[w] += 1;
    return counts;
}

double ClassFrequency::count(const std::string & prefix) const {
    auto it = counts_.find(prefix);
    if (it == counts_.end()) throw ConfigError("no class frequency for prefix '" + prefix + "'");
    return it->second;
}

double ClassFrequency::probability(const std::string & prefix) const {
    double root = count("");
    if (root <= 0) throw ConfigError("class frequency root count is zero");
    return count(prefix) / root;
}

double ic_similarity(const Thesaurus & t, const ClassFrequency & freq, const Word & a, const Word & b) {
    const auto & ca = t.code(a);
    const auto & cb = t.code(b);
    auto lca = ca.str().substr(0, common_prefix(ca, cb));
    double p = freq.probability(lca);
    if (p == 1.0) return 0.0;
    return -std::log(p);
}

MeasureKind parse_measure_kind(const std::string & s) {
    if (s == "table") return MeasureKind::table;
    if (s == "vsm") return MeasureKind::vsm;
    if (s == "sbl") return MeasureKind::sbl;
    if (s == "ic") return MeasureKind::ic;
    throw ArgumentError("unknown measure '" + s + "' (expected table|vsm|sbl|ic)");
}

std::string to_string(MeasureKind kind) {
    switch (kind) {
    case MeasureKind::table: return "table";
    case MeasureKind::vsm: return "vsm";
    case MeasureKind::sbl: return "sbl";
    case MeasureKind::ic: return "ic";
    }
    return "?";
}

UnknownWordPolicy parse_unknown_policy(const std::string & s) {
    if (s == "zero") return UnknownWordPolicy::zero;
    if (s == "error") return UnknownWordPolicy::error;
    throw ArgumentError("unknown unknown-word policy '" + s + "' (expected zero|error)");
}

Measure Measure::table(std::shared_ptr<const Thesaurus> t, std::shared_ptr<const SimilarityTable> tbl,
                       UnknownWordPolicy policy) {
    if (!t || !tbl) throw ConfigError("table measure needs a thesaurus and a similarity table");
    Measure m;
    m.kind_ = MeasureKind::table;
    m.policy_ = policy;
    m.thesaurus_ = std::move(t);
    m.table_ = std::move(tbl);
    return m;
}

Measure Measure::vsm(std::shared_ptr<const VectorSpace> space, UnknownWordPolicy policy) {
    if (!space) throw ConfigError("vsm measure needs co-occurrence data");
    Measure m;
    m.kind_ = MeasureKind::vsm;
    m.policy_ = policy;
    m.space_ = std::move(space);
    return m;
}

Measure Measure::sbl(std::shared_ptr<const Thesaurus> t, std::shared_ptr<const BranchLengthModel> model,
                     UnknownWordPolicy policy) {
    if (!t || !model) throw ConfigError("sbl measure needs a thesaurus and a branch-length model");
    Measure m;
    m.kind_ = MeasureKind::sbl;
    m.policy_ = policy;
    m.thesaurus_ = std::move(t);
    m.sbl_ = std::move(model);
    return m;
}

Measure Measure::ic(std::shared_ptr<const Thesaurus> t, std::shared_ptr<const ClassFrequency> freq,
                    UnknownWordPolicy policy) {
    if (!t || !freq) throw ConfigError("ic measure needs a thesaurus and class frequencies");
    Measure m;
    m.kind_ = MeasureKind::ic;
    m.policy_ = policy;
    m.thesaurus_ = std::move(t);
    m.freq_ = std::move(freq);
    return m;
}

bool Measure::knows(const Word & w) const {
    if (kind_ == MeasureKind::vsm) return space_->contains(w);
    return thesaurus_->contains(w);
}

double Measure::minimum() const {
    switch (kind_) {
    case MeasureKind::table: return table_->min_value();
    case MeasureKind::sbl: return sbl_->min_path_sum();
    default: return 0.0;
    }
}

double Measure::operator()(const Word & a, const Word & b) const {
    if (!knows(a) || !knows(b)) {
        if (policy_ == UnknownWordPolicy::error)
            throw LookupError("word unknown to " + to_string(kind_) + " measure: '" + (knows(a) ? b : a) + "'");
        return minimum();
    }
    switch (kind_) {
    case MeasureKind::table: return table_similarity(*thesaurus_, *table_, a, b);
    case MeasureKind::vsm: return space_->similarity(a, b);
    case MeasureKind::ic: return ic_similarity(*thesaurus_, *freq_, a, b);
    case MeasureKind::sbl:
        if (policy_ == UnknownWordPolicy::zero && !sbl_->covers(*thesaurus_, a, b)) return minimum();
        return sbl_similarity(*sbl_, *thesaurus_, a, b);
    }
    return minimum();
}

} // namespace vsd
