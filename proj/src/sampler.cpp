#include "vsd/sampler.hpp"

#include "vsd/error.hpp"

#include <algorithm>
#include <limits>

namespace vsd {

Strategy parse_strategy(const std::string & s) {
    if (s == "tu") return Strategy::tu;
    if (s == "us" || s == "uncertainty") return Strategy::uncertainty;
    if (s == "cbs" || s == "committee") return Strategy::committee;
    if (s == "random") return Strategy::random;
    if (s == "bootstrap") return Strategy::bootstrap;
    throw ArgumentError("unknown strategy '" + s + "' (expected tu|us|cbs|random|bootstrap)");
}

std::string to_string(Strategy s) {
    switch (s) {
    case Strategy::tu: return "tu";
    case Strategy::uncertainty: return "us";
    case Strategy::committee: return "cbs";
    case Strategy::random: return "random";
    case Strategy::bootstrap: return "bootstrap";
    }
    return "?";
}

SamplerState::SamplerState(SenseDatabase seed, std::vector<Example> labeled, std::vector<Example> pool, Measure measure,
                           std::shared_ptr<const Thesaurus> thesaurus, SamplerParams params)
    : seed_(std::move(seed)), db_(seed_), measure_(std::move(measure)), thesaurus_(std::move(thesaurus)),
      params_(params), rng_(params.seed) {
    if (params_.k == 0) throw ArgumentError("k must be at least 1");
    for (auto & x : labeled) {
        if (!x.label) throw ResolutionError("labeled example " + std::to_string(x.id) + " has no label");
        db_.add_example(x, *x.label);
        SenseId s = *x.label;
        labeled_.emplace_back(std::move(x), std::move(s));
    }
    for (auto & x : pool) {
        if (!db_.has_verb(x.verb)) throw LookupError("pool verb not in database: '" + x.verb + "'");
        ExampleId id = x.id;
        if (!pool_.emplace(id, std::move(x)).second) throw ConflictError("duplicate pool id " + std::to_string(id));
    }
    for (const auto & [verb, senses] : db_.verbs())
        ccd_[verb] = compute_ccd(db_, verb, thesaurus_.get(), params_.engine.alpha, params_.engine.smoothing_level);
    for (const auto & [id, x] : pool_) index_insert(x);
    wsd_phase();
}

const CcdProfile & SamplerState::ccd(const Word & verb) const {
    auto it = ccd_.find(verb);
    if (it == ccd_.end()) throw LookupError("verb not in database: '" + verb + "'");
    return it->second;
}

const CacheEntry & SamplerState::entry(ExampleId id) const {
    auto it = cache_.find(id);
    if (it == cache_.end()) throw LookupError("example " + std::to_string(id) + " is not in the pool");
    return it->second;
}

const Example & SamplerState::pool_example(ExampleId id) const {
    auto it = pool_.find(id);
    if (it == pool_.end()) throw LookupError("example " + std::to_string(id) + " is not in the pool");
    return it->second;
}

void SamplerState::index_insert(const Example & y) {
    const Thesaurus * t = measure_.thesaurus();
    if (!t) return;
    for (const auto & [marker, filler] : y.slots)
        if (const auto * code = t->find(filler)) index_[{y.verb, marker}].emplace(code->str(), y.id);
}

void SamplerState::index_erase(const Example & y) {
    const Thesaurus * t = measure_.thesaurus();
    if (!t) return;
    for (const auto & [marker, filler] : y.slots)
        if (const auto * code = t->find(filler)) index_[{y.verb, marker}].erase({code->str(), y.id});
}

void SamplerState::rescore(const Example & y, CacheEntry & e) const {
    e.interp = rank_from_sims(y, e.sims, db_, ccd(y.verb), params_.engine);
}

CacheEntry SamplerState::compute_entry(const Example & y) const {
    CacheEntry e;
    for (const auto & [s, rec] : db_.senses(y.verb)) {
        auto sims = case_sims(y, rec, measure_);
        if (!sims.empty()) e.sims.emplace(s, std::move(sims));
    }
    rescore(y, e);
    return e;
}

void SamplerState::wsd_phase() {
    cache_.clear();
    for (const auto & [id, y] : pool_) cache_.emplace(id, compute_entry(y));
}

SamplerState::Hypothesis SamplerState::hypothesize(const Example & x, const SenseId & s, const Example & y) const {
    Hypothesis h;
    const auto & e = cache_.at(y.id);
    auto it = e.sims.find(s);
    if (it != e.sims.end()) h.sims = it->second;
    for (const auto & [marker, xf] : x.slots) {
        auto yf = y.slots.find(marker);
        if (yf == y.slots.end()) continue;
        double v = measure_(yf->second, xf);
        auto [cur, inserted] = h.sims.emplace(marker, v);
        if (!inserted && v > cur->second) cur->second = v;
    }
    const auto & rec = db_.senses(y.verb).at(s);
    h.candidate = true;
    for (const auto & [marker, yf] : y.slots) {
        if (rec.slots.count(marker) || x.slots.count(marker)) continue;
        if (db_.obligatory_class(y.verb, marker)) {
            h.candidate = false;
            break;
        }
    }
    return h;
}

double SamplerState::hypothetical_certainty(const Example & x, const SenseId & s, const Example & y) const {
    const auto & e = cache_.at(y.id);
    auto h = hypothesize(x, s, y);
    std::vector<double> scores;
    for (const auto & sc : e.interp.ranking)
        if (sc.sense != s) scores.push_back(sc.score);
    if (h.candidate) scores.push_back(combine_sims(h.sims, ccd(y.verb), params_.engine.mode));
    return certainty_from_scores(std::move(scores), params_.engine.lambda);
}

double SamplerState::delta_certainty(ExampleId x, const SenseId & s, ExampleId y) const {
    const auto & ex = pool_example(x);
    const auto & ey = pool_example(y);
    if (ex.verb != ey.verb) return 0.0;
    if (!db_.find(ex.verb, s)) throw ResolutionError("'" + s + "' is not a sense of '" + ex.verb + "'");
    return hypothetical_certainty(ex, s, ey) - cache_.at(y).interp.certainty;
}

std::set<ExampleId> SamplerState::neighbors(ExampleId xid, const SenseId & s, const Marker & c) const {
    const auto & x = pool_example(xid);
    const auto * rec = db_.find(x.verb, s);
    if (!rec) throw ResolutionError("'" + s + "' is not a sense of '" + x.verb + "'");
    std::set<ExampleId> out;
    auto xf = x.slots.find(c);
    if (xf == x.slots.end()) return out;

    auto slot = rec->slots.find(c);
    bool incumbent = slot != rec->slots.end() && !slot->second.fillers.empty();
    auto improves = [&](const Example & y) {
        double v = measure_(y.slots.at(c), xf->second);
        return v > cache_.at(y.id).sims.at(s).at(c);
    };

    if (!incumbent || !measure_.tree_backed()) {
        if (incumbent) brute_force_used_ = true;
        for (const auto & [id, y] : pool_) {
            if (id == xid || y.verb != x.verb || !y.slots.count(c)) continue;
            if (!incumbent || improves(y)) out.insert(id);
        }
        return out;
    }

    // Similarity never decreases with the depth of the common ancestor, so
    // only fillers sharing a longer prefix with x than any incumbent does can
    // improve.
    const Thesaurus & t = *measure_.thesaurus();
    const auto * xc = t.find(xf->second);
    if (!xc) return out;
    std::ptrdiff_t best = -1;
    for (const auto & [e, n] : slot->second.fillers)
        if (const auto * ec = t.find(e)) best = std::max(best, static_cast<std::ptrdiff_t>(common_prefix(*xc, *ec)));
    if (best >= static_cast<std::ptrdiff_t>(xc->size())) return out;
    std::string prefix = xc->str().substr(0, static_cast<std::size_t>(best + 1));

    auto idx = index_.find({x.verb, c});
    if (idx == index_.end()) return out;
    for (auto it = idx->second.lower_bound({prefix, 0});
         it != idx->second.end() && it->first.compare(0, prefix.size(), prefix) == 0; ++it) {
        if (it->second == xid) continue;
        if (improves(pool_.at(it->second))) out.insert(it->second);
    }
    return out;
}

std::set<ExampleId> SamplerState::neighbors(ExampleId x, const SenseId & s) const {
    std::set<ExampleId> out;
    for (const auto & [marker, filler] : pool_example(x).slots) out.merge(neighbors(x, s, marker));
    return out;
}

double SamplerState::training_utility(ExampleId xid) const {
    const auto & x = pool_example(xid);
    const auto & ranking = cache_.at(xid).interp.ranking;
    if (ranking.empty()) return 0.0;
    std::size_t k = std::min(params_.k, ranking.size());
    double total = 0;
    for (std::size_t i = 0; i < k; ++i) {
        const auto & s = ranking[i].sense;
        double sum = 0;
        for (auto y : neighbors(xid, s))
            sum += hypothetical_certainty(x, s, pool_.at(y)) - cache_.at(y).interp.certainty;
        total += sum;
    }
    return total / static_cast<double>(k);
}

std::optional<Selection> SamplerState::select_committee() {
    std::vector<std::size_t> order(labeled_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::size_t half = (labeled_.size() + 1) / 2;

    std::vector<std::map<ExampleId, SenseId>> votes;
    for (std::size_t m = 0; m < params_.committee_size; ++m) {
        std::shuffle(order.begin(), order.end(), rng_);
        std::vector<std::size_t> chosen(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(half));
        std::sort(chosen.begin(), chosen.end());
        SenseDatabase member = seed_;
        for (auto i : chosen) member.add_example(labeled_[i].first, labeled_[i].second);
        std::map<Word, CcdProfile> prof;
        std::map<ExampleId, SenseId> vote;
        for (const auto & [id, y] : pool_) {
            auto it = prof.find(y.verb);
            if (it == prof.end())
                it = prof.emplace(y.verb, compute_ccd(member, y.verb, thesaurus_.get(), params_.engine.alpha,
                                                      params_.engine.smoothing_level))
                         .first;
            vote[id] = disambiguate(y, member, it->second, measure_, params_.engine).chosen;
        }
        votes.push_back(std::move(vote));
    }

    std::vector<ExampleId> disagree, all;
    for (const auto & [id, y] : pool_) {
        all.push_back(id);
        for (std::size_t m = 1; m < votes.size(); ++m) {
            if (votes[m].at(id) != votes[0].at(id)) {
                disagree.push_back(id);
                break;
            }
        }
    }
    const auto & from = disagree.empty() ? all : disagree;
    std::uniform_int_distribution<std::size_t> pick(0, from.size() - 1);
    return Selection{from[pick(rng_)], std::nullopt, 0.0};
}

std::optional<Selection> SamplerState::select_next() {
    if (pool_.empty()) return std::nullopt;
    switch (params_.strategy) {
    case Strategy::tu: {
        Selection best;
        bool any = false;
        for (const auto & [id, x] : pool_) {
            double u = training_utility(id);
            if (!any || u > best.utility) {
                best = {id, std::nullopt, u};
                any = true;
            }
        }
        return best;
    }
    case Strategy::uncertainty:
    case Strategy::bootstrap: {
        bool lowest = params_.strategy == Strategy::uncertainty;
        const std::pair<const ExampleId, CacheEntry> * best = nullptr;
        for (const auto & kv : cache_) {
            double c = kv.second.interp.certainty;
            if (!best || (lowest ? c < best->second.interp.certainty : c > best->second.interp.certainty)) best = &kv;
        }
        Selection sel{best->first, std::nullopt, 0.0};
        if (!lowest) sel.auto_label = best->second.interp.chosen;
        return sel;
    }
    case Strategy::random: {
        std::uniform_int_distribution<std::size_t> pick(0, pool_.size() - 1);
        auto it = pool_.begin();
        std::advance(it, static_cast<std::ptrdiff_t>(pick(rng_)));
        return Selection{it->first, std::nullopt, 0.0};
    }
    case Strategy::committee: return select_committee();
    }
    return std::nullopt;
}

void SamplerState::adopt(ExampleId xid, const SenseId & s) {
    const Example x = pool_example(xid);
    if (!db_.find(x.verb, s)) throw ResolutionError("'" + s + "' is not a sense of '" + x.verb + "'");

    auto touched = neighbors(xid, s);

    db_.add_example(x, s);
    labeled_.emplace_back(x, s);
    index_erase(x);
    pool_.erase(xid);
    cache_.erase(xid);
    ccd_[x.verb] = compute_ccd(db_, x.verb, thesaurus_.get(), params_.engine.alpha, params_.engine.smoothing_level);

    for (auto yid : touched) {
        const auto & y = pool_.at(yid);
        auto & sims = cache_.at(yid).sims[s];
        for (const auto & [marker, xf] : x.slots) {
            auto yf = y.slots.find(marker);
            if (yf == y.slots.end()) continue;
            double v = measure_(yf->second, xf);
            auto [cur, inserted] = sims.emplace(marker, v);
            if (!inserted && v > cur->second) cur->second = v;
        }
    }
    // The profile and sense frequencies moved, so every example of this verb
    // is re-ranked from its cached SIM values.
    for (auto & [id, e] : cache_) {
        const auto & y = pool_.at(id);
        if (y.verb == x.verb) rescore(y, e);
    }
}

Oracle gold_oracle() {
    return [](const Example & x) -> SenseId {
        if (!x.label) throw ResolutionError("example " + std::to_string(x.id) + " has no gold label");
        return *x.label;
    };
}

std::vector<Selection> run_sampling(SamplerState & state, const Oracle & oracle, std::optional<std::size_t> max_steps,
                                    const std::function<bool(const SamplerState &, const Selection &)> & after_step) {
    std::vector<Selection> out;
    while (!max_steps || out.size() < *max_steps) {
        auto sel = state.select_next();
        if (!sel) break;
        SenseId s = sel->auto_label ? *sel->auto_label : oracle(state.pool().at(sel->id));
        state.adopt(sel->id, s);
        out.push_back(*sel);
        if (after_step && !after_step(state, out.back())) break;
    }
    return out;
}

} // namespace vsd
