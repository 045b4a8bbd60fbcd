#pragma once

#include "vsd/corpus.hpp"
#include "vsd/engine.hpp"
#include "vsd/sampler.hpp"
#include "vsd/similarity.hpp"
#include "vsd/thesaurus.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace vsd {

struct FoldPlan {
    std::size_t k = 6;
    std::uint64_t seed = 1;
    std::map<ExampleId, std::size_t> assignments;

    std::vector<ExampleId> fold(std::size_t i) const;
    std::size_t fold_size(std::size_t i) const;
};

/// Shuffles the ids (seeded) and deals them round-robin into k folds.
/// Throws ArgumentError when k is 0 or exceeds the number of ids.
FoldPlan make_folds(const std::vector<ExampleId> & ids, std::size_t k, std::uint64_t seed);

/// One classifier output; an empty sense means the classifier abstained.
struct Prediction {
    std::optional<SenseId> sense;
    double certainty = 0;
};

struct Decision {
    ExampleId id = 0;
    Word verb;
    SenseId gold;
    Prediction prediction;
};

struct Metrics {
    std::size_t inputs = 0;
    std::size_t decisions = 0;
    std::size_t correct = 0;
    std::optional<double> accuracy; ///< correct / decisions; absent without decisions
    double coverage = 0;            ///< decisions / inputs
    double precision = 0;           ///< same as accuracy, 0 without decisions
    double recall = 0;              ///< correct / inputs
    double f = 0;
    std::optional<double> acceptability; ///< mean over decisions
};

struct MetricReport {
    std::map<Word, Metrics> per_verb;
    Metrics pooled;                      ///< all decisions pooled
    std::optional<double> macro_accuracy; ///< mean of per-verb accuracies
};

/// (beta^2 + 1) r p / (beta^2 p + r); 0 when both are 0.
double f_measure(double recall, double precision, double beta = 1.0);

/// Sense-to-sense distances per verb, for acceptability.
class SenseDistance {
public:
    void set(const Word & verb, const SenseId & a, const SenseId & b, double d);
    /// 0 for a == b; ConfigError for a missing pair.
    double distance(const Word & verb, const SenseId & a, const SenseId & b) const;
    /// Largest distance among the verb's senses; ConfigError if unknown.
    double max_length(const Word & verb) const;

    /// `verb<TAB>sense_a<TAB>sense_b<TAB>dist` lines.
    static SenseDistance load(std::istream & in);
    static SenseDistance load_file(const std::string & path);

private:
    std::map<Word, std::map<std::pair<SenseId, SenseId>, double>> dist_;
};

/// ((MAXLEN - dist(x, s)) / MAXLEN)^alpha. ConfigError when MAXLEN <= 0.
double acceptability(const SenseDistance & d, const Word & verb, const SenseId & x, const SenseId & s,
                     double alpha = 1.0);

MetricReport compute_metrics(const std::vector<Decision> & decisions, double beta = 1.0,
                             const SenseDistance * distances = nullptr, double acceptability_alpha = 1.0);

struct CoveragePoint {
    double threshold = 0;
    double coverage = 0;
    std::optional<double> accuracy;
};

/// Decisions with certainty >= threshold count as made; the rest abstain.
std::vector<CoveragePoint> coverage_accuracy_curve(const std::vector<Decision> & decisions,
                                                   const std::vector<double> & thresholds);

/// Predicts a batch of inputs (batches allow context propagation).
using Predictor = std::function<std::vector<Prediction>(const std::vector<Example> &)>;
/// Builds a predictor from the training database of one fold.
using Trainer = std::function<Predictor(const SenseDatabase & train)>;

struct CvReport {
    FoldPlan plan;
    std::vector<MetricReport> folds;
    MetricReport aggregate; ///< decisions of all folds pooled
    std::vector<Decision> decisions;
};

/// For each fold: trains on the seed lexicon plus the other folds, predicts
/// the held-out fold. Throws ResolutionError for unlabeled examples.
CvReport cross_validate(const std::vector<SenseEntry> & lexicon, const std::vector<Example> & corpus, std::size_t k,
                        std::uint64_t seed, const Trainer & trainer, double beta = 1.0);

enum class Method { vsd, mfs, rb, nb };
Method parse_method(const std::string & s);

struct MethodConfig {
    Method method = Method::vsd;
    EngineParams engine;
    double rb_threshold = 0.0;
    std::size_t nb_level = 5;
    bool propagate_context = false;
};

/// Trainer for one of the built-in classifiers. The thesaurus is needed by
/// every method but MFS; `measure` only by vsd.
Trainer make_trainer(const MethodConfig & cfg, std::shared_ptr<const Thesaurus> thesaurus,
                     std::optional<Measure> measure);

/// Held-out accuracy tracked with cached SIM values as examples are added
/// to the database one at a time.
class HeldOutTracker {
public:
    HeldOutTracker(std::vector<Example> test, const SenseDatabase & db, Measure measure);

    /// Records that `x` was added to the database as sense s.
    void add(const Example & x, const SenseId & s);
    /// Fraction of test examples whose chosen sense equals the gold label.
    double accuracy(const SenseDatabase & db, const std::function<const CcdProfile &(const Word &)> & ccd,
                    const EngineParams & params) const;
    const std::vector<Example> & test() const { return test_; }

private:
    std::vector<Example> test_;
    Measure measure_;
    std::vector<std::map<SenseId, std::map<Marker, double>>> sims_;
};

struct LearningPoint {
    std::size_t annotated = 0;
    double accuracy = 0;
};

struct LearningOptions {
    /// Stop once held-out accuracy reaches this value.
    std::optional<double> stop_at;
    std::optional<std::size_t> max_steps;
};

/// Starts from the seed database with `train` as the unlabeled pool and the
/// gold labels as annotator; accuracy on `test` after every adoption. The
/// first point (0 annotations) uses the seed only.
std::vector<LearningPoint> learning_curve(const SenseDatabase & seed, const std::vector<Example> & train,
                                          const std::vector<Example> & test, const Measure & measure,
                                          std::shared_ptr<const Thesaurus> thesaurus, const SamplerParams & params,
                                          const LearningOptions & opts = {});

/// Held-out accuracy with every training example in the database.
double terminal_accuracy(const SenseDatabase & seed, const std::vector<Example> & train,
                         const std::vector<Example> & test, const Measure & measure,
                         std::shared_ptr<const Thesaurus> thesaurus, const EngineParams & params);

/// First number of annotations whose accuracy reaches `target`.
std::optional<std::size_t> annotations_to_reach(const std::vector<LearningPoint> & curve, double target);

} // namespace vsd
