#include "vsd/engine.hpp"

#include "vsd/baselines.hpp"
#include "vsd/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace vsd {

ScoringMode parse_scoring_mode(const std::string & s) {
    if (s == "weighted") return ScoringMode::weighted;
    if (s == "lexicographic") return ScoringMode::lexicographic;
    if (s == "unweighted") return ScoringMode::unweighted;
    throw ArgumentError("unknown scoring mode '" + s + "' (expected weighted|lexicographic|unweighted)");
}

std::string to_string(ScoringMode mode) {
    switch (mode) {
    case ScoringMode::weighted: return "weighted";
    case ScoringMode::lexicographic: return "lexicographic";
    case ScoringMode::unweighted: return "unweighted";
    }
    return "?";
}

double CcdProfile::base(const Marker & c) const {
    if (degenerate) return 1.0;
    auto it = overlap.find(c);
    return it == overlap.end() ? 0.0 : it->second;
}

double CcdProfile::weight(const Marker & c) const {
    double b = base(c);
    return b == 0.0 ? 0.0 : std::pow(b, alpha);
}

const SenseScore * ScoredInterpretation::find(const SenseId & s) const {
    for (const auto & sc : ranking)
        if (sc.sense == s) return &sc;
    return nullptr;
}

std::vector<SenseId> filter_senses(const SenseDatabase & db, const Example & x) {
    std::vector<SenseId> out;
    for (const auto & [id, rec] : db.senses(x.verb)) {
        bool fits = true;
        for (const auto & [marker, filler] : x.slots) {
            if (!rec.slots.count(marker) && db.obligatory_class(x.verb, marker)) {
                fits = false;
                break;
            }
        }
        if (fits) out.push_back(id);
    }
    return out;
}

double sim_case(const Word & n, const std::map<Word, long> & examples, const Measure & m) {
    if (examples.empty()) throw ArgumentError("SIM undefined for an empty example set");
    double best = -std::numeric_limits<double>::infinity();
    for (const auto & [e, count] : examples) best = std::max(best, m(n, e));
    return best;
}

double sim_case(const Word & n, const std::set<Word> & examples, const Measure & m) {
    if (examples.empty()) throw ArgumentError("SIM undefined for an empty example set");
    double best = -std::numeric_limits<double>::infinity();
    for (const auto & e : examples) best = std::max(best, m(n, e));
    return best;
}

namespace {

std::string smooth(const Word & w, const Thesaurus * t, std::size_t level) {
    if (t) {
        if (const auto * code = t->find(w)) return code->prefix(std::min(level, code->size())).str();
    }
    return "~" + w; // cannot collide with a digit code
}

} // namespace

CcdProfile compute_ccd(const SenseDatabase & db, const Word & verb, const Thesaurus * t, double alpha,
                       std::size_t smoothing_level) {
    if (!(alpha > 0)) throw ArgumentError("CCD alpha must be positive");
    if (smoothing_level == 0) throw ArgumentError("smoothing level must be positive");
    const auto & senses = db.senses(verb);
    CcdProfile prof;
    prof.alpha = alpha;
    prof.smoothing_level = smoothing_level;
    if (senses.size() < 2) {
        prof.degenerate = true;
        return prof;
    }
    std::map<Marker, std::vector<std::set<std::string>>> per_case;
    for (const auto & [id, rec] : senses) {
        for (const auto & [marker, slot] : rec.slots) {
            auto & sets = per_case[marker];
            if (slot.fillers.empty()) continue;
            std::set<std::string> classes;
            for (const auto & [f, n] : slot.fillers) classes.insert(smooth(f, t, smoothing_level));
            sets.push_back(std::move(classes));
        }
    }
    for (const auto & [marker, sets] : per_case) {
        if (sets.size() < 2) {
            prof.overlap[marker] = 0.0;
            continue;
        }
        double sum = 0;
        std::size_t pairs = 0;
        for (std::size_t i = 0; i < sets.size(); ++i) {
            for (std::size_t j = i + 1; j < sets.size(); ++j) {
                std::size_t common = 0;
                for (const auto & c : sets[i]) common += sets[j].count(c);
                double total = static_cast<double>(sets[i].size() + sets[j].size());
                sum += (total - 2.0 * static_cast<double>(common)) / total;
                ++pairs;
            }
        }
        prof.overlap[marker] = sum / static_cast<double>(pairs);
    }
    return prof;
}

std::map<Marker, double> case_sims(const Example & x, const SenseRecord & sense, const Measure & m) {
    std::map<Marker, double> sims;
    for (const auto & [marker, filler] : x.slots) {
        auto it = sense.slots.find(marker);
        if (it == sense.slots.end() || it->second.fillers.empty()) continue;
        sims.emplace(marker, sim_case(filler, it->second.fillers, m));
    }
    return sims;
}

double combine_sims(const std::map<Marker, double> & sims, const CcdProfile & ccd, ScoringMode mode) {
    if (sims.empty()) return 0.0;
    double mean = 0;
    for (const auto & [c, s] : sims) mean += s;
    mean /= static_cast<double>(sims.size());
    switch (mode) {
    case ScoringMode::unweighted: {
        double sum = 0;
        for (const auto & [c, s] : sims) sum += s;
        return sum;
    }
    case ScoringMode::weighted: {
        double num = 0, den = 0;
        for (const auto & [c, s] : sims) {
            double w = ccd.weight(c);
            num += s * w;
            den += w;
        }
        return den > 0 ? num / den : mean;
    }
    case ScoringMode::lexicographic: {
        double top = 0;
        for (const auto & [c, s] : sims) top = std::max(top, ccd.base(c));
        if (top == 0) return mean;
        double sum = 0;
        std::size_t n = 0;
        for (const auto & [c, s] : sims) {
            if (ccd.base(c) == top) {
                sum += s;
                ++n;
            }
        }
        return sum / static_cast<double>(n);
    }
    }
    return 0.0;
}

SenseScore score_sense(const Example & x, const SenseRecord & sense, const CcdProfile & ccd, const Measure & m,
                       ScoringMode mode) {
    SenseScore sc;
    sc.sense = sense.id;
    sc.sims = case_sims(x, sense, m);
    sc.no_evidence = sc.sims.empty();
    sc.score = combine_sims(sc.sims, ccd, mode);
    return sc;
}

double certainty(double score1, double score2, double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw ArgumentError("lambda must lie in [0, 1]");
    return lambda * score1 + (1.0 - lambda) * (score1 - score2);
}

double certainty_from_scores(std::vector<double> scores, double lambda) {
    if (scores.empty()) return certainty(0.0, 0.0, lambda);
    std::sort(scores.begin(), scores.end(), std::greater<>());
    return certainty(scores[0], scores.size() > 1 ? scores[1] : 0.0, lambda);
}

std::vector<Marker> cascade_order(const Example & x, const CcdProfile & ccd) {
    std::vector<Marker> order;
    for (const auto & [marker, filler] : x.slots) order.push_back(marker);
    std::stable_sort(order.begin(), order.end(),
                     [&](const Marker & a, const Marker & b) { return ccd.base(a) > ccd.base(b); });
    return order;
}

ScoredInterpretation rank_candidates(std::vector<SenseScore> candidates, const Example & x, const SenseDatabase & db,
                                     const CcdProfile & ccd, ScoringMode mode, double lambda) {
    ScoredInterpretation out;
    if (candidates.empty()) {
        out.chosen = most_frequent_sense(db, x.verb);
        out.fallback = true;
        out.certainty = certainty_from_scores({}, lambda);
        return out;
    }
    const auto & senses = db.senses(x.verb);
    auto freq = [&](const SenseId & s) {
        auto it = senses.find(s);
        return it == senses.end() ? 0L : it->second.frequency;
    };
    auto order = cascade_order(x, ccd);
    constexpr double absent = -std::numeric_limits<double>::infinity();
    auto at = [&](const SenseScore & s, const Marker & c) {
        auto it = s.sims.find(c);
        return it == s.sims.end() ? absent : it->second;
    };
    std::stable_sort(candidates.begin(), candidates.end(), [&](const SenseScore & a, const SenseScore & b) {
        if (a.no_evidence != b.no_evidence) return !a.no_evidence;
        if (!a.no_evidence) {
            if (mode == ScoringMode::lexicographic) {
                for (const auto & c : order) {
                    double va = at(a, c), vb = at(b, c);
                    if (va != vb) return va > vb;
                }
            } else if (a.score != b.score) {
                return a.score > b.score;
            }
        }
        if (freq(a.sense) != freq(b.sense)) return freq(a.sense) > freq(b.sense);
        return a.sense < b.sense;
    });
    std::vector<double> scalars;
    scalars.reserve(candidates.size());
    for (const auto & c : candidates) scalars.push_back(c.score);
    out.certainty = certainty_from_scores(std::move(scalars), lambda);
    out.chosen = candidates.front().sense;
    out.ranking = std::move(candidates);
    return out;
}

ScoredInterpretation disambiguate(const Example & x, const SenseDatabase & db, const CcdProfile & ccd,
                                  const Measure & m, const EngineParams & params) {
    const auto & senses = db.senses(x.verb);
    std::vector<SenseScore> scored;
    for (const auto & id : filter_senses(db, x))
        scored.push_back(score_sense(x, senses.at(id), ccd, m, params.mode));
    return rank_candidates(std::move(scored), x, db, ccd, params.mode, params.lambda);
}

ScoredInterpretation rank_from_sims(const Example & x, const std::map<SenseId, std::map<Marker, double>> & sims,
                                    const SenseDatabase & db, const CcdProfile & ccd, const EngineParams & params) {
    std::vector<SenseScore> scored;
    for (const auto & s : filter_senses(db, x)) {
        SenseScore sc;
        sc.sense = s;
        auto it = sims.find(s);
        if (it != sims.end()) sc.sims = it->second;
        sc.no_evidence = sc.sims.empty();
        sc.score = combine_sims(sc.sims, ccd, params.mode);
        scored.push_back(std::move(sc));
    }
    return rank_candidates(std::move(scored), x, db, ccd, params.mode, params.lambda);
}

std::vector<ScoredInterpretation> propagate_context(const std::vector<Example> & examples,
                                                    std::vector<ScoredInterpretation> results) {
    if (examples.size() != results.size()) throw ArgumentError("examples and results differ in length");
    std::map<std::pair<std::string, Word>, std::size_t> leader;
    for (std::size_t i = 0; i < examples.size(); ++i) {
        if (!examples[i].context) continue;
        auto key = std::pair{*examples[i].context, examples[i].verb};
        auto [it, inserted] = leader.emplace(key, i);
        if (!inserted && results[i].certainty > results[it->second].certainty) it->second = i;
    }
    std::vector<ScoredInterpretation> out = results;
    for (std::size_t i = 0; i < examples.size(); ++i) {
        if (!examples[i].context) continue;
        out[i].chosen = results[leader.at({*examples[i].context, examples[i].verb})].chosen;
    }
    return out;
}

Engine::Engine(SenseDatabase db, Measure measure, std::shared_ptr<const Thesaurus> thesaurus, EngineParams params)
    : db_(std::move(db)), measure_(std::move(measure)), thesaurus_(std::move(thesaurus)), params_(params) {
    for (const auto & [verb, senses] : db_.verbs())
        ccd_.emplace(verb, compute_ccd(db_, verb, thesaurus_.get(), params_.alpha, params_.smoothing_level));
}

const CcdProfile & Engine::ccd(const Word & verb) const {
    auto it = ccd_.find(verb);
    if (it == ccd_.end()) throw LookupError("verb not in database: '" + verb + "'");
    return it->second;
}

ScoredInterpretation Engine::disambiguate(const Example & x) const {
    return vsd::disambiguate(x, db_, ccd(x.verb), measure_, params_);
}

std::vector<ScoredInterpretation> Engine::disambiguate_all(const std::vector<Example> & xs, bool propagate) const {
    std::vector<ScoredInterpretation> out;
    out.reserve(xs.size());
    for (const auto & x : xs) out.push_back(disambiguate(x));
    if (propagate) out = propagate_context(xs, std::move(out));
    return out;
}

} // namespace vsd
