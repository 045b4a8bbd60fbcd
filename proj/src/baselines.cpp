#include "vsd/baselines.hpp"

#include "vsd/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace vsd {

std::vector<SenseId> frequency_order(const SenseDatabase & db, const Word & verb) {
    const auto & senses = db.senses(verb);
    std::vector<std::pair<long, SenseId>> keyed;
    for (const auto & [id, rec] : senses) keyed.emplace_back(-rec.frequency, id);
    std::sort(keyed.begin(), keyed.end());
    std::vector<SenseId> out;
    for (auto & [f, id] : keyed) out.push_back(std::move(id));
    return out;
}

SenseId most_frequent_sense(const SenseDatabase & db, const Word & verb) {
    auto order = frequency_order(db, verb);
    if (order.empty()) throw LookupError("verb has no senses: '" + verb + "'");
    return order.front();
}

double association(double p_rs, double p_r) {
    if (p_rs <= 0) return 0.0;
    return p_rs * std::log(p_rs / p_r);
}

namespace {

// Filler counts per class prefix (all levels) for one slot.
std::map<std::string, double> prefix_counts(const std::map<Word, long> & fillers, const Thesaurus & t, double & total) {
    std::map<std::string, double> out;
    total = 0;
    for (const auto & [w, n] : fillers) {
        const auto * code = t.find(w);
        if (!code) continue;
        total += static_cast<double>(n);
        for (std::size_t len = 0; len <= code->size(); ++len) out[code->str().substr(0, len)] += static_cast<double>(n);
    }
    return out;
}

} // namespace

std::vector<RestrictionRule> train_rules(const SenseDatabase & db, const Word & verb, const Thesaurus & t,
                                         double threshold) {
    const auto & senses = db.senses(verb);
    std::map<Marker, std::map<std::string, double>> pooled;
    std::map<Marker, double> pooled_total;
    std::map<std::pair<SenseId, Marker>, std::pair<std::map<std::string, double>, double>> per_sense;
    for (const auto & [id, rec] : senses) {
        for (const auto & [marker, slot] : rec.slots) {
            double total = 0;
            auto counts = prefix_counts(slot.fillers, t, total);
            if (total == 0) continue;
            for (const auto & [cls, n] : counts) pooled[marker][cls] += n;
            pooled_total[marker] += total;
            per_sense[{id, marker}] = {std::move(counts), total};
        }
    }
    std::vector<RestrictionRule> rules;
    for (const auto & [key, data] : per_sense) {
        const auto & [counts, total] = data;
        const auto & marker = key.second;
        for (const auto & [cls, n] : counts) {
            double p_rs = n / total;
            double p_r = pooled[marker][cls] / pooled_total[marker];
            double a = association(p_rs, p_r);
            if (a >= threshold) rules.push_back({key.first, marker, cls, a});
        }
    }
    return rules;
}

SenseId rule_based_classify(const Example & x, const std::vector<RestrictionRule> & rules, const SenseDatabase & db,
                            const Thesaurus & t) {
    std::map<std::pair<SenseId, Marker>, std::vector<const RestrictionRule *>> by_slot;
    for (const auto & r : rules) by_slot[{r.sense, r.marker}].push_back(&r);

    std::vector<SenseId> admitted;
    for (const auto & [id, rec] : db.senses(x.verb)) {
        bool any = false, all = true;
        for (const auto & [marker, filler] : x.slots) {
            auto it = by_slot.find({id, marker});
            if (it == by_slot.end()) continue;
            any = true;
            const auto * code = t.find(filler);
            bool dominated = code && std::any_of(it->second.begin(), it->second.end(),
                                                 [&](const RestrictionRule * r) { return code->starts_with(r->cls); });
            if (!dominated) {
                all = false;
                break;
            }
        }
        if (any && all) admitted.push_back(id);
    }
    if (admitted.size() == 1) return admitted.front();
    return most_frequent_sense(db, x.verb);
}

double NbModel::likelihood(const SenseId & s, const Marker & c, const std::string & cls) const {
    auto it = likelihoods.find({s, c});
    if (it != likelihoods.end()) {
        auto jt = it->second.find(cls);
        if (jt != it->second.end()) return jt->second;
    }
    auto u = unseen.find({s, c});
    if (u == unseen.end()) throw ConfigError("naive Bayes model has no distribution for (" + s + ", " + c + ")");
    return u->second;
}

std::string filler_class(const Thesaurus & t, const Word & filler, std::size_t level) {
    const auto * code = t.find(filler);
    if (!code) return unknown_class;
    return code->str().substr(0, std::min(level, code->size()));
}

NbModel train_naive_bayes(const SenseDatabase & db, const Word & verb, const Thesaurus & t, std::size_t level) {
    if (level == 0) throw ArgumentError("naive Bayes level must be positive");
    const auto & senses = db.senses(verb);
    NbModel model;
    model.verb = verb;
    model.level = level;
    model.order = frequency_order(db, verb);

    double freq_total = 0;
    for (const auto & [id, rec] : senses) freq_total += static_cast<double>(rec.frequency);
    for (const auto & [id, rec] : senses)
        model.priors[id] = (static_cast<double>(rec.frequency) + 1.0) / (freq_total + static_cast<double>(senses.size()));

    std::set<std::string> classes;
    for (const auto & code : t.leaves()) classes.insert(code.str().substr(0, std::min(level, code.size())));
    double vocab = static_cast<double>(classes.size()) + 1.0;

    std::map<std::pair<SenseId, Marker>, std::map<std::string, double>> counts;
    for (const auto & [id, rec] : senses) {
        for (const auto & [marker, slot] : rec.slots) {
            for (const auto & [w, n] : slot.fillers) {
                counts[{id, marker}][filler_class(t, w, level)] += static_cast<double>(n);
                model.cases.insert(marker);
            }
        }
    }
    for (const auto & [id, rec] : senses) {
        for (const auto & marker : model.cases) {
            const auto & slot_counts = counts[{id, marker}];
            double total = 0;
            for (const auto & [cls, n] : slot_counts) total += n;
            auto & dist = model.likelihoods[{id, marker}];
            for (const auto & [cls, n] : slot_counts) dist[cls] = (n + 1.0) / (total + vocab);
            model.unseen[{id, marker}] = 1.0 / (total + vocab);
        }
    }
    return model;
}

SenseId naive_bayes_classify(const Example & x, const NbModel & model, const Thesaurus & t) {
    if (model.order.empty()) throw ConfigError("naive Bayes model for '" + model.verb + "' has no senses");
    SenseId best;
    double best_lp = -std::numeric_limits<double>::infinity();
    for (const auto & s : model.order) {
        double lp = std::log(model.priors.at(s));
        for (const auto & [marker, filler] : x.slots) {
            if (!model.cases.count(marker)) continue;
            lp += std::log(model.likelihood(s, marker, filler_class(t, filler, model.level)));
        }
        if (best.empty() || lp > best_lp) {
            best = s;
            best_lp = lp;
        }
    }
    return best;
}

} // namespace vsd
