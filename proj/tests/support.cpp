#include "support.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace vsd::test {

std::shared_ptr<const Thesaurus> thesaurus_of(Entries entries) {
    auto t = std::make_shared<Thesaurus>();
    for (const auto & [code, word] : entries) t->add(Code(code), word);
    return t;
}

Measure table_measure(std::shared_ptr<const Thesaurus> t) {
    return Measure::table(std::move(t), std::make_shared<SimilarityTable>(SimilarityTable::standard()));
}

SenseEntry sense(const Word & verb, const SenseId & id, Frame frame, const std::string & gloss) {
    SenseEntry e;
    e.verb = verb;
    e.sense_id = id;
    e.gloss = gloss.empty() ? id : gloss;
    const auto obligatory = default_obligatory_markers();
    for (const auto & [marker, fillers] : frame) e.frame.slots[marker] = Slot{obligatory.count(marker) != 0, fillers};
    return e;
}

Example example(ExampleId id, const Word & verb, std::map<Marker, Word> slots, std::optional<SenseId> label) {
    Example x;
    x.id = id;
    x.verb = verb;
    x.slots = std::move(slots);
    x.label = std::move(label);
    return x;
}

Instance random_instance(std::uint64_t seed, const InstanceLimits & limits) {
    std::mt19937_64 rng(seed);
    auto uniform = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
    auto coin = [&](double p) { return std::uniform_real_distribution<double>(0, 1)(rng) < p; };

    Instance inst;
    // Small digit alphabets give many shared prefixes and exact ties.
    auto t = std::make_shared<Thesaurus>();
    std::size_t n_words = uniform(6, 30);
    std::size_t alphabet = uniform(2, 3);
    std::vector<Word> words;
    for (std::size_t i = 0; i < n_words; ++i) {
        std::string code;
        for (int d = 0; d < 6; ++d) code += static_cast<char>('0' + uniform(0, alphabet - 1));
        Word w = "w" + std::to_string(i);
        t->add(Code(code), w);
        words.push_back(w);
    }
    inst.thesaurus = t;
    auto any_word = [&]() -> Word {
        if (coin(0.05)) return "unk" + std::to_string(uniform(0, 2));
        return words[uniform(0, words.size() - 1)];
    };

    const std::vector<Marker> all_cases = {"ga", "wo", "ni"};
    std::size_t n_cases = uniform(1, std::min<std::size_t>(limits.max_cases, all_cases.size()));
    std::vector<Marker> cases(all_cases.begin(), all_cases.begin() + static_cast<std::ptrdiff_t>(n_cases));
    std::vector<Word> verbs = {"v"};
    if (coin(0.3)) verbs.push_back("u");

    for (const auto & verb : verbs) {
        std::size_t n_senses = uniform(1, limits.max_senses);
        for (std::size_t s = 0; s < n_senses; ++s) {
            SenseEntry e;
            e.verb = verb;
            e.sense_id = "s" + std::to_string(s + 1);
            e.gloss = verb + " sense " + std::to_string(s + 1);
            for (const auto & c : cases) {
                if (e.frame.slots.size() > 0 && coin(0.25)) continue;
                Slot slot;
                slot.obligatory = c != "ni" || coin(0.5);
                std::size_t n = uniform(slot.obligatory ? 1 : 0, 2);
                for (std::size_t j = 0; j < n; ++j) slot.examples.insert(any_word());
                e.frame.slots[c] = slot;
            }
            inst.lexicon.push_back(e);
        }
    }

    auto random_example = [&](ExampleId id) {
        Example x;
        x.id = id;
        x.verb = verbs[uniform(0, verbs.size() - 1)];
        for (const auto & c : cases)
            if (coin(0.7)) x.slots[c] = any_word();
        if (x.slots.empty()) x.slots[cases[uniform(0, cases.size() - 1)]] = any_word();
        return x;
    };
    auto senses_of = [&](const Word & verb) {
        std::vector<SenseId> out;
        for (const auto & e : inst.lexicon)
            if (e.verb == verb) out.push_back(e.sense_id);
        return out;
    };

    std::size_t n_labeled = uniform(0, 3);
    std::size_t n_pool = uniform(1, limits.max_pool);
    for (std::size_t i = 0; i < n_labeled; ++i) {
        auto x = random_example(1000 + i);
        auto ss = senses_of(x.verb);
        x.label = ss[uniform(0, ss.size() - 1)];
        inst.labeled.push_back(x);
    }
    for (std::size_t i = 0; i < n_pool; ++i) {
        auto x = random_example(i);
        if (coin(0.15) && i > 0) x.slots = inst.pool[uniform(0, i - 1)].slots;
        auto ss = senses_of(x.verb);
        x.label = ss[uniform(0, ss.size() - 1)];
        inst.pool.push_back(x);
    }

    for (std::size_t i = 0; i < 3 * n_words; ++i)
        inst.cooc.tuples[{words[uniform(0, n_words - 1)], cases[uniform(0, cases.size() - 1)], "ctx" + std::to_string(uniform(0, 4))}] +=
            static_cast<long>(uniform(1, 3));
    inst.cooc.recount_nouns();
    return inst;
}

Measure instance_measure(const Instance & inst, std::uint64_t seed) {
    switch (seed % 3) {
    case 0: return table_measure(inst.thesaurus);
    case 1: {
        std::map<Word, long> counts;
        for (const auto & [w, code] : inst.thesaurus->entries()) counts[w] = static_cast<long>(w.size() % 4);
        return Measure::ic(inst.thesaurus,
                           std::make_shared<ClassFrequency>(ClassFrequency::from_word_counts(*inst.thesaurus, counts)));
    }
    default: return Measure::vsm(std::make_shared<VectorSpace>(inst.cooc));
    }
}

std::map<SenseId, std::map<Marker, double>> brute_sims(const SenseDatabase & db, const Example & y, const Measure & m) {
    std::map<SenseId, std::map<Marker, double>> out;
    for (const auto & [id, rec] : db.senses(y.verb)) {
        std::map<Marker, double> sims;
        for (const auto & [c, filler] : y.slots) {
            auto slot = rec.slots.find(c);
            if (slot == rec.slots.end() || slot->second.fillers.empty()) continue;
            bool first = true;
            double best = 0;
            for (const auto & [e, count] : slot->second.fillers) {
                double v = m(filler, e);
                if (first || v > best) best = v;
                first = false;
            }
            sims[c] = best;
        }
        if (!sims.empty()) out.emplace(id, std::move(sims));
    }
    return out;
}

std::set<ExampleId> brute_sim_changed(const SenseDatabase & db, const std::vector<Example> & pool, const Example & x,
                                      const SenseId & s, const Measure & m) {
    SenseDatabase after = db;
    after.add_example(x, s);
    std::set<ExampleId> out;
    for (const auto & y : pool) {
        if (y.id == x.id || y.verb != x.verb) continue;
        auto before_s = brute_sims(db, y, m)[s];
        if (before_s != brute_sims(after, y, m)[s]) out.insert(y.id);
    }
    return out;
}

double brute_delta(const SenseDatabase & db, const CcdProfile & ccd, const Example & x, const SenseId & s,
                   const Example & y, const Measure & m, const EngineParams & params) {
    if (x.verb != y.verb) return 0.0;
    SenseDatabase after = db;
    after.add_example(x, s);
    return disambiguate(y, after, ccd, m, params).certainty - disambiguate(y, db, ccd, m, params).certainty;
}

double brute_utility(const SenseDatabase & db, const CcdProfile & ccd, const std::vector<Example> & pool,
                     const Example & x, const std::vector<SenseId> & k_best, const Measure & m,
                     const EngineParams & params) {
    if (k_best.empty()) return 0.0;
    double total = 0;
    for (const auto & s : k_best) {
        double sum = 0;
        for (const auto & y : pool)
            if (y.id != x.id) sum += brute_delta(db, ccd, x, s, y, m, params);
        total += sum;
    }
    return total / static_cast<double>(k_best.size());
}

TreeProblem random_tree(std::uint64_t seed, std::size_t max_branches) {
    std::mt19937_64 rng(seed);
    auto uniform = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
    std::uniform_real_distribution<double> length(-2.0, -0.05);
    std::size_t min_leaves = std::min<std::size_t>(180, max_branches * 2 / 5);

    for (;;) {
        std::size_t depth = uniform(3, 4);
        TreeProblem out;
        out.truth.level = depth;
        out.truth.subset_count = 1;

        std::vector<std::string> frontier = {""};
        std::size_t branches = 0;
        for (std::size_t level = 1; level <= depth; ++level) {
            std::vector<std::string> next;
            for (std::size_t i = 0; i < frontier.size(); ++i) {
                // Every node keeps at least one child so all leaves reach full depth.
                std::size_t reserved = branches + (frontier.size() - i - 1);
                std::size_t room = max_branches > reserved ? max_branches - reserved : 1;
                std::size_t want = 0;
                if (level == depth)
                    want = uniform(9, 10);
                else if (level == 1)
                    want = depth == 3 ? uniform(6, 7) : uniform(3, 4);
                else if (uniform(0, 7) == 0)
                    want = 1;
                else
                    want = depth == 3 ? uniform(3, 4) : uniform(2, 3);
                std::size_t n = std::max<std::size_t>(1, std::min(want, room));
                for (std::size_t d = 0; d < n; ++d) {
                    auto child = frontier[i] + static_cast<char>('0' + d);
                    out.truth.lengths[child] = length(rng);
                    next.push_back(child);
                    ++branches;
                }
            }
            frontier = std::move(next);
        }
        if (frontier.size() < min_leaves) continue;
        for (const auto & leaf : frontier) out.leaves.push_back({leaf, Code(leaf)});
        return out;
    }
}

namespace {

std::string describe(std::uint64_t seed, std::size_t step, const std::string & what) {
    std::ostringstream os;
    os << "seed " << seed << " step " << step << ": " << what;
    return os.str();
}

} // namespace

std::string check_sampler_instance(std::uint64_t seed, std::size_t adoptions) {
    auto inst = random_instance(seed);
    auto m = instance_measure(inst, seed);
    SamplerParams p;
    p.seed = seed;
    p.k = 1 + seed % 2;
    const ScoringMode modes[] = {ScoringMode::weighted, ScoringMode::lexicographic, ScoringMode::unweighted};
    p.engine.mode = modes[(seed / 3) % 3];
    p.engine.alpha = seed % 4 == 0 ? 2.0 : 1.0;
    p.engine.lambda = seed % 5 == 0 ? 0.3 : 0.5;
    SamplerState st(SenseDatabase::build(inst.lexicon, {}), inst.labeled, inst.pool, m, inst.thesaurus, p);
    std::mt19937_64 rng(seed ^ 0x5eedULL);
    const auto & t = inst.thesaurus;

    for (std::size_t step = 0; step <= adoptions && !st.pool().empty(); ++step) {
        const auto & db = st.database();
        std::vector<Example> pool;
        for (const auto & [id, y] : st.pool()) pool.push_back(y);

        std::map<Word, CcdProfile> ccd;
        for (const auto & [verb, senses] : db.verbs()) {
            ccd[verb] = compute_ccd(db, verb, t.get(), p.engine.alpha, p.engine.smoothing_level);
            if (!(st.ccd(verb) == ccd[verb])) return describe(seed, step, "CCD of " + verb + " differs");
        }
        if (st.cache().size() != pool.size()) return describe(seed, step, "cache size differs from pool");
        for (const auto & y : pool) {
            const auto & e = st.entry(y.id);
            if (e.sims != brute_sims(db, y, m)) return describe(seed, step, "SIM cache of " + std::to_string(y.id));
            if (!(e.interp == disambiguate(y, db, ccd.at(y.verb), m, p.engine)))
                return describe(seed, step, "interpretation of " + std::to_string(y.id));
        }
        if (step == adoptions) break;

        const auto & x = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
        for (const auto & [s, rec] : db.senses(x.verb)) {
            auto changed = brute_sim_changed(db, pool, x, s, m);
            if (st.neighbors(x.id, s) != changed)
                return describe(seed, step, "neighbors of " + std::to_string(x.id) + " as " + s);
            for (const auto & y : pool) {
                if (y.id == x.id) continue;
                double got = st.delta_certainty(x.id, s, y.id);
                double want = brute_delta(db, ccd.at(x.verb), x, s, y, m, p.engine);
                if (got != want)
                    return describe(seed, step,
                                    "delta certainty " + std::to_string(x.id) + "->" + std::to_string(y.id) + " as " + s);
                if (want != 0 && !changed.count(y.id))
                    return describe(seed, step, "certainty of " + std::to_string(y.id) + " changes outside neighbors");
            }
        }
        std::vector<SenseId> k_best;
        const auto & ranking = st.entry(x.id).interp.ranking;
        for (std::size_t i = 0; i < std::min(p.k, ranking.size()); ++i) k_best.push_back(ranking[i].sense);
        if (st.training_utility(x.id) != brute_utility(db, ccd.at(x.verb), pool, x, k_best, m, p.engine))
            return describe(seed, step, "training utility of " + std::to_string(x.id));

        std::vector<SenseId> senses;
        for (const auto & [s, rec] : db.senses(x.verb)) senses.push_back(s);
        auto s = senses[std::uniform_int_distribution<std::size_t>(0, senses.size() - 1)(rng)];
        auto before = db.example_count();
        auto pool_before = st.pool().size();
        st.adopt(x.id, s);
        if (st.database().example_count() != before + 1 || st.pool().size() != pool_before - 1)
            return describe(seed, step, "adopt did not move one example");
    }
    return "";
}

} // namespace vsd::test
