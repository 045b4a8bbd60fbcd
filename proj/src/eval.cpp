#include "vsd/eval.hpp"

#include "text_util.hpp"
#include "vsd/baselines.hpp"
#include "vsd/error.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>

namespace vsd {

std::vector<ExampleId> FoldPlan::fold(std::size_t i) const {
    std::vector<ExampleId> out;
    for (const auto & [id, f] : assignments)
        if (f == i) out.push_back(id);
    return out;
}

std::size_t FoldPlan::fold_size(std::size_t i) const {
    std::size_t n = 0;
    for (const auto & [id, f] : assignments) n += f == i;
    return n;
}

FoldPlan make_folds(const std::vector<ExampleId> & ids, std::size_t k, std::uint64_t seed) {
    if (k == 0) throw ArgumentError("fold count must be positive");
    if (k > ids.size())
        throw ArgumentError("cannot split " + std::to_string(ids.size()) + " examples into " + std::to_string(k) +
                            " folds");
    std::vector<ExampleId> order = ids;
    std::sort(order.begin(), order.end());
    if (std::adjacent_find(order.begin(), order.end()) != order.end()) throw ConflictError("duplicate example id");
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
    FoldPlan plan;
    plan.k = k;
    plan.seed = seed;
    for (std::size_t i = 0; i < order.size(); ++i) plan.assignments[order[i]] = i % k;
    return plan;
}

double f_measure(double recall, double precision, double beta) {
    double b2 = beta * beta;
    double den = b2 * precision + recall;
    if (den == 0) return 0.0;
    return (b2 + 1.0) * recall * precision / den;
}

void SenseDistance::set(const Word & verb, const SenseId & a, const SenseId & b, double d) {
    dist_[verb][std::minmax(a, b)] = d;
}

double SenseDistance::distance(const Word & verb, const SenseId & a, const SenseId & b) const {
    if (a == b) return 0.0;
    auto v = dist_.find(verb);
    if (v != dist_.end()) {
        auto it = v->second.find(std::minmax(a, b));
        if (it != v->second.end()) return it->second;
    }
    throw ConfigError("no sense distance for " + verb + " (" + a + ", " + b + ")");
}

double SenseDistance::max_length(const Word & verb) const {
    auto v = dist_.find(verb);
    if (v == dist_.end() || v->second.empty()) throw ConfigError("no sense distances for verb '" + verb + "'");
    double m = 0;
    for (const auto & [pair, d] : v->second) m = std::max(m, d);
    return m;
}

SenseDistance SenseDistance::load(std::istream & in) {
    SenseDistance out;
    text::LineReader reader(in);
    std::string line;
    while (reader.next(line)) {
        auto f = text::split(line, '\t');
        if (f.size() != 4) throw FormatError("expected verb<TAB>sense_a<TAB>sense_b<TAB>dist", reader.line_no());
        double d = text::parse_double(text::trim(f[3]), reader.line_no());
        if (d < 0) throw FormatError("negative sense distance", reader.line_no());
        out.set(text::trim(f[0]), text::trim(f[1]), text::trim(f[2]), d);
    }
    return out;
}

SenseDistance SenseDistance::load_file(const std::string & path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open sense distance file: " + path);
    return load(in);
}

double acceptability(const SenseDistance & d, const Word & verb, const SenseId & x, const SenseId & s, double alpha) {
    double maxlen = d.max_length(verb);
    if (maxlen <= 0) throw ConfigError("sense distances for '" + verb + "' are all zero");
    double v = (maxlen - d.distance(verb, x, s)) / maxlen;
    return std::pow(std::clamp(v, 0.0, 1.0), alpha);
}

namespace {

struct Tally {
    std::size_t inputs = 0, decisions = 0, correct = 0;
    double accept_sum = 0;
};

Metrics finish(const Tally & t, double beta, bool with_accept) {
    Metrics m;
    m.inputs = t.inputs;
    m.decisions = t.decisions;
    m.correct = t.correct;
    if (t.decisions) {
        m.accuracy = static_cast<double>(t.correct) / static_cast<double>(t.decisions);
        m.precision = *m.accuracy;
        if (with_accept) m.acceptability = t.accept_sum / static_cast<double>(t.decisions);
    }
    if (t.inputs) {
        m.coverage = static_cast<double>(t.decisions) / static_cast<double>(t.inputs);
        m.recall = static_cast<double>(t.correct) / static_cast<double>(t.inputs);
    }
    m.f = f_measure(m.recall, m.precision, beta);
    return m;
}

} // namespace

MetricReport compute_metrics(const std::vector<Decision> & decisions, double beta, const SenseDistance * distances,
                             double acceptability_alpha) {
    std::map<Word, Tally> per_verb;
    Tally pooled;
    for (const auto & d : decisions) {
        for (Tally * t : {&per_verb[d.verb], &pooled}) {
            ++t->inputs;
            if (!d.prediction.sense) continue;
            ++t->decisions;
            if (*d.prediction.sense == d.gold) ++t->correct;
            if (distances)
                t->accept_sum += acceptability(*distances, d.verb, *d.prediction.sense, d.gold, acceptability_alpha);
        }
    }
    MetricReport r;
    double acc_sum = 0;
    std::size_t acc_n = 0;
    for (const auto & [verb, t] : per_verb) {
        auto m = finish(t, beta, distances != nullptr);
        if (m.accuracy) {
            acc_sum += *m.accuracy;
            ++acc_n;
        }
        r.per_verb.emplace(verb, std::move(m));
    }
    r.pooled = finish(pooled, beta, distances != nullptr);
    if (acc_n) r.macro_accuracy = acc_sum / static_cast<double>(acc_n);
    return r;
}

std::vector<CoveragePoint> coverage_accuracy_curve(const std::vector<Decision> & decisions,
                                                   const std::vector<double> & thresholds) {
    std::vector<CoveragePoint> out;
    for (double theta : thresholds) {
        std::size_t made = 0, correct = 0;
        for (const auto & d : decisions) {
            if (!d.prediction.sense || !(d.prediction.certainty >= theta)) continue;
            ++made;
            correct += *d.prediction.sense == d.gold;
        }
        CoveragePoint p;
        p.threshold = theta;
        if (!decisions.empty()) p.coverage = static_cast<double>(made) / static_cast<double>(decisions.size());
        if (made) p.accuracy = static_cast<double>(correct) / static_cast<double>(made);
        out.push_back(p);
    }
    return out;
}

CvReport cross_validate(const std::vector<SenseEntry> & lexicon, const std::vector<Example> & corpus, std::size_t k,
                        std::uint64_t seed, const Trainer & trainer, double beta) {
    std::vector<ExampleId> ids;
    for (const auto & x : corpus) {
        if (!x.label) throw ResolutionError("example " + std::to_string(x.id) + " has no gold label");
        ids.push_back(x.id);
    }
    CvReport report;
    report.plan = make_folds(ids, k, seed);
    for (std::size_t f = 0; f < k; ++f) {
        std::vector<Example> train, test;
        for (const auto & x : corpus) (report.plan.assignments.at(x.id) == f ? test : train).push_back(x);
        auto predictor = trainer(SenseDatabase::build(lexicon, train));
        auto predictions = predictor(test);
        if (predictions.size() != test.size()) throw ArgumentError("predictor returned the wrong number of results");
        std::vector<Decision> fold;
        for (std::size_t i = 0; i < test.size(); ++i)
            fold.push_back({test[i].id, test[i].verb, *test[i].label, predictions[i]});
        report.folds.push_back(compute_metrics(fold, beta));
        report.decisions.insert(report.decisions.end(), fold.begin(), fold.end());
    }
    std::sort(report.decisions.begin(), report.decisions.end(),
              [](const Decision & a, const Decision & b) { return a.id < b.id; });
    report.aggregate = compute_metrics(report.decisions, beta);
    return report;
}

Method parse_method(const std::string & s) {
    if (s == "vsd") return Method::vsd;
    if (s == "mfs") return Method::mfs;
    if (s == "rb") return Method::rb;
    if (s == "nb") return Method::nb;
    throw ArgumentError("unknown method '" + s + "' (expected vsd|mfs|rb|nb)");
}

Trainer make_trainer(const MethodConfig & cfg, std::shared_ptr<const Thesaurus> thesaurus,
                     std::optional<Measure> measure) {
    if (cfg.method != Method::mfs && !thesaurus) throw ConfigError("method needs a thesaurus");
    switch (cfg.method) {
    case Method::vsd:
        if (!measure) throw ConfigError("vsd method needs a similarity measure");
        return [cfg, thesaurus, m = *measure](const SenseDatabase & db) -> Predictor {
            auto engine = std::make_shared<Engine>(db, m, thesaurus, cfg.engine);
            return [engine, propagate = cfg.propagate_context](const std::vector<Example> & xs) {
                std::vector<Prediction> out;
                for (const auto & r : engine->disambiguate_all(xs, propagate)) out.push_back({r.chosen, r.certainty});
                return out;
            };
        };
    case Method::mfs:
        return [](const SenseDatabase & db) -> Predictor {
            return [db](const std::vector<Example> & xs) {
                std::vector<Prediction> out;
                for (const auto & x : xs) out.push_back({most_frequent_sense(db, x.verb), 0.0});
                return out;
            };
        };
    case Method::rb:
        return [cfg, thesaurus](const SenseDatabase & db) -> Predictor {
            auto rules = std::make_shared<std::map<Word, std::vector<RestrictionRule>>>();
            for (const auto & [verb, senses] : db.verbs())
                (*rules)[verb] = train_rules(db, verb, *thesaurus, cfg.rb_threshold);
            return [db, rules, thesaurus](const std::vector<Example> & xs) {
                std::vector<Prediction> out;
                for (const auto & x : xs) {
                    auto it = rules->find(x.verb);
                    if (it == rules->end()) throw LookupError("verb not in database: '" + x.verb + "'");
                    out.push_back({rule_based_classify(x, it->second, db, *thesaurus), 0.0});
                }
                return out;
            };
        };
    case Method::nb:
        return [cfg, thesaurus](const SenseDatabase & db) -> Predictor {
            auto models = std::make_shared<std::map<Word, NbModel>>();
            for (const auto & [verb, senses] : db.verbs())
                models->emplace(verb, train_naive_bayes(db, verb, *thesaurus, cfg.nb_level));
            return [models, thesaurus](const std::vector<Example> & xs) {
                std::vector<Prediction> out;
                for (const auto & x : xs) {
                    auto it = models->find(x.verb);
                    if (it == models->end()) throw LookupError("verb not in database: '" + x.verb + "'");
                    out.push_back({naive_bayes_classify(x, it->second, *thesaurus), 0.0});
                }
                return out;
            };
        };
    }
    throw ArgumentError("unknown method");
}

HeldOutTracker::HeldOutTracker(std::vector<Example> test, const SenseDatabase & db, Measure measure)
    : test_(std::move(test)), measure_(std::move(measure)) {
    for (const auto & y : test_) {
        if (!y.label) throw ResolutionError("test example " + std::to_string(y.id) + " has no gold label");
        std::map<SenseId, std::map<Marker, double>> sims;
        for (const auto & [s, rec] : db.senses(y.verb)) {
            auto v = case_sims(y, rec, measure_);
            if (!v.empty()) sims.emplace(s, std::move(v));
        }
        sims_.push_back(std::move(sims));
    }
}

void HeldOutTracker::add(const Example & x, const SenseId & s) {
    for (std::size_t i = 0; i < test_.size(); ++i) {
        const auto & y = test_[i];
        if (y.verb != x.verb) continue;
        for (const auto & [marker, xf] : x.slots) {
            auto yf = y.slots.find(marker);
            if (yf == y.slots.end()) continue;
            double v = measure_(yf->second, xf);
            auto [cur, inserted] = sims_[i][s].emplace(marker, v);
            if (!inserted && v > cur->second) cur->second = v;
        }
    }
}

double HeldOutTracker::accuracy(const SenseDatabase & db, const std::function<const CcdProfile &(const Word &)> & ccd,
                                const EngineParams & params) const {
    if (test_.empty()) return 0.0;
    std::size_t correct = 0;
    for (std::size_t i = 0; i < test_.size(); ++i) {
        const auto & y = test_[i];
        correct += rank_from_sims(y, sims_[i], db, ccd(y.verb), params).chosen == *y.label;
    }
    return static_cast<double>(correct) / static_cast<double>(test_.size());
}

std::vector<LearningPoint> learning_curve(const SenseDatabase & seed, const std::vector<Example> & train,
                                          const std::vector<Example> & test, const Measure & measure,
                                          std::shared_ptr<const Thesaurus> thesaurus, const SamplerParams & params,
                                          const LearningOptions & opts) {
    SamplerState state(seed, {}, train, measure, std::move(thesaurus), params);
    HeldOutTracker tracker(test, seed, measure);
    auto ccd = [&state](const Word & v) -> const CcdProfile & { return state.ccd(v); };
    std::vector<LearningPoint> curve;
    curve.push_back({0, tracker.accuracy(state.database(), ccd, params.engine)});
    if (opts.stop_at && curve.back().accuracy >= *opts.stop_at) return curve;
    run_sampling(state, gold_oracle(), opts.max_steps, [&](const SamplerState & st, const Selection &) {
        const auto & [x, s] = st.labeled().back();
        tracker.add(x, s);
        curve.push_back({curve.size(), tracker.accuracy(st.database(), ccd, params.engine)});
        return !(opts.stop_at && curve.back().accuracy >= *opts.stop_at);
    });
    return curve;
}

double terminal_accuracy(const SenseDatabase & seed, const std::vector<Example> & train,
                         const std::vector<Example> & test, const Measure & measure,
                         std::shared_ptr<const Thesaurus> thesaurus, const EngineParams & params) {
    SenseDatabase db = seed;
    for (const auto & x : train) {
        if (!x.label) throw ResolutionError("training example " + std::to_string(x.id) + " has no gold label");
        db.add_example(x, *x.label);
    }
    Engine engine(std::move(db), measure, std::move(thesaurus), params);
    if (test.empty()) return 0.0;
    std::size_t correct = 0;
    for (const auto & y : test) correct += engine.disambiguate(y).chosen == y.label;
    return static_cast<double>(correct) / static_cast<double>(test.size());
}

std::optional<std::size_t> annotations_to_reach(const std::vector<LearningPoint> & curve, double target) {
    for (const auto & p : curve)
        if (p.accuracy >= target) return p.annotated;
    return std::nullopt;
}

} // namespace vsd
