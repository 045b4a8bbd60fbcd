#pragma once

#include "vsd/corpus.hpp"
#include "vsd/thesaurus.hpp"

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace vsd {

/// Sense with the most supervised examples; ties go to the smaller sense id.
/// Throws LookupError for an unknown verb.
SenseId most_frequent_sense(const SenseDatabase & db, const Word & verb);

/// Senses of `verb` by descending frequency, then ascending id.
std::vector<SenseId> frequency_order(const SenseDatabase & db, const Word & verb);

/// Selectional restriction: fillers of `marker` for `sense` fall under `cls`.
struct RestrictionRule {
    SenseId sense;
    Marker marker;
    std::string cls; ///< code prefix; "" is the root
    double association = 0;
    bool operator==(const RestrictionRule &) const = default;
};

/// p_rs * ln(p_rs / p_r); 0 when p_rs is 0.
double association(double p_rs, double p_r);

/// Association of every class prefix (root included) with each sense and
/// case, from filler counts in the database; rules at or above `threshold`
/// are kept. Fillers outside the thesaurus are ignored.
std::vector<RestrictionRule> train_rules(const SenseDatabase & db, const Word & verb, const Thesaurus & t,
                                         double threshold);

/// A sense is admitted when some input case carries rules for it and, for
/// every such case, a rule class dominates the filler. Anything but exactly
/// one admitted sense falls back to the most frequent sense.
SenseId rule_based_classify(const Example & x, const std::vector<RestrictionRule> & rules, const SenseDatabase & db,
                            const Thesaurus & t);

/// Class label used for fillers the thesaurus does not know.
inline const std::string unknown_class = "?";

struct NbModel {
    Word verb;
    std::size_t level = 5;
    std::map<SenseId, double> priors;
    /// P(class | sense, case) for observed classes.
    std::map<std::pair<SenseId, Marker>, std::map<std::string, double>> likelihoods;
    /// P(class | sense, case) for any class not listed.
    std::map<std::pair<SenseId, Marker>, double> unseen;
    /// Cases with training data for some sense; other input cases are ignored.
    std::set<Marker> cases;
    /// Tie-breaking order (most frequent first).
    std::vector<SenseId> order;

    double likelihood(const SenseId & s, const Marker & c, const std::string & cls) const;
};

/// Laplace-smoothed priors from sense frequencies; add-one likelihoods over
/// the thesaurus classes at `level` plus one class for unknown fillers.
NbModel train_naive_bayes(const SenseDatabase & db, const Word & verb, const Thesaurus & t, std::size_t level = 5);

/// Filler's class at `level`, or unknown_class.
std::string filler_class(const Thesaurus & t, const Word & filler, std::size_t level);

SenseId naive_bayes_classify(const Example & x, const NbModel & model, const Thesaurus & t);

} // namespace vsd
