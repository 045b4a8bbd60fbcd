#pragma once

#include "vsd/corpus.hpp"
#include "vsd/similarity.hpp"
#include "vsd/thesaurus.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace vsd {

enum class ScoringMode {
    weighted,      ///< CCD-weighted mean of per-case SIM
    lexicographic, ///< compare SIM case by case in descending CCD order
    unweighted,    ///< plain sum of per-case SIM
};

ScoringMode parse_scoring_mode(const std::string & s);
std::string to_string(ScoringMode mode);

/// Case contribution to disambiguation for one verb.
struct CcdProfile {
    /// Mean pairwise overlap complement per case, before the exponent.
    std::map<Marker, double> overlap;
    double alpha = 1.0;
    std::size_t smoothing_level = 5;
    bool degenerate = false; ///< fewer than two senses: every weight is 1

    /// overlap^alpha; 0 for cases no two senses define.
    double weight(const Marker & c) const;
    double base(const Marker & c) const;
    bool operator==(const CcdProfile &) const = default;
};

struct EngineParams {
    ScoringMode mode = ScoringMode::lexicographic;
    double alpha = 1.0;
    double lambda = 0.5;
    std::size_t smoothing_level = 5;
};

/// Score of one candidate sense for one input.
struct SenseScore {
    SenseId sense;
    std::map<Marker, double> sims; ///< SIM per case scored
    double score = 0;
    bool no_evidence = true;
    bool operator==(const SenseScore &) const = default;
};

struct ScoredInterpretation {
    std::vector<SenseScore> ranking; ///< best first
    SenseId chosen;
    double certainty = 0;
    bool fallback = false; ///< no candidate survived; chosen is the most frequent sense

    const SenseScore * find(const SenseId & s) const;
    bool operator==(const ScoredInterpretation &) const = default;
};

/// Senses of x.verb whose frame holds every obligatory-class marker of x.
std::vector<SenseId> filter_senses(const SenseDatabase & db, const Example & x);

/// max over e in E of sim(n, e). Throws ArgumentError for an empty E.
double sim_case(const Word & n, const std::map<Word, long> & examples, const Measure & m);
double sim_case(const Word & n, const std::set<Word> & examples, const Measure & m);

/// Fillers are generalized to `smoothing_level`-digit classes first; words
/// outside the thesaurus (or with no thesaurus) stay as themselves.
CcdProfile compute_ccd(const SenseDatabase & db, const Word & verb, const Thesaurus * t, double alpha,
                       std::size_t smoothing_level);

/// SIM for every case present in both the input and the sense's frame with
/// at least one example filler.
std::map<Marker, double> case_sims(const Example & x, const SenseRecord & sense, const Measure & m);

/// Scalar score from per-case SIM values. Lexicographic mode yields the limit
/// of the weighted score as alpha grows: the mean SIM over the scored cases
/// of highest CCD.
double combine_sims(const std::map<Marker, double> & sims, const CcdProfile & ccd, ScoringMode mode);

SenseScore score_sense(const Example & x, const SenseRecord & sense, const CcdProfile & ccd, const Measure & m,
                       ScoringMode mode);

/// lambda * s1 + (1 - lambda) * (s1 - s2). Throws ArgumentError unless
/// lambda is in [0, 1].
double certainty(double score1, double score2, double lambda);

/// Certainty from the two largest of `scores` (0 stands in for a missing
/// second score; an empty list gives certainty(0, 0)).
double certainty_from_scores(std::vector<double> scores, double lambda);

/// Input cases ordered by descending CCD, ties by marker.
std::vector<Marker> cascade_order(const Example & x, const CcdProfile & ccd);

/// Orders scored candidates and attaches the certainty. Candidates without
/// evidence rank last; residual ties go to the more frequent sense, then the
/// smaller sense id.
ScoredInterpretation rank_candidates(std::vector<SenseScore> candidates, const Example & x, const SenseDatabase & db,
                                     const CcdProfile & ccd, ScoringMode mode, double lambda);

ScoredInterpretation disambiguate(const Example & x, const SenseDatabase & db, const CcdProfile & ccd,
                                  const Measure & m, const EngineParams & params);

/// Same result as disambiguate() given precomputed SIM values per sense
/// (senses absent from `sims` have no evidence).
ScoredInterpretation rank_from_sims(const Example & x, const std::map<SenseId, std::map<Marker, double>> & sims,
                                    const SenseDatabase & db, const CcdProfile & ccd, const EngineParams & params);

/// Within each (context, verb) group, every member takes the sense of the
/// member with the highest certainty (first one on ties).
std::vector<ScoredInterpretation> propagate_context(const std::vector<Example> & examples,
                                                    std::vector<ScoredInterpretation> results);

/// Database, measure and per-verb CCD profiles bundled for batch use.
class Engine {
public:
    Engine(SenseDatabase db, Measure measure, std::shared_ptr<const Thesaurus> thesaurus, EngineParams params);

    const SenseDatabase & database() const { return db_; }
    const Measure & measure() const { return measure_; }
    const EngineParams & params() const { return params_; }
    const Thesaurus * thesaurus() const { return thesaurus_.get(); }
    /// Throws LookupError for an unknown verb.
    const CcdProfile & ccd(const Word & verb) const;

    ScoredInterpretation disambiguate(const Example & x) const;
    std::vector<ScoredInterpretation> disambiguate_all(const std::vector<Example> & xs, bool propagate = false) const;

private:
    SenseDatabase db_;
    Measure measure_;
    std::shared_ptr<const Thesaurus> thesaurus_;
    EngineParams params_;
    std::map<Word, CcdProfile> ccd_;
};

} // namespace vsd
