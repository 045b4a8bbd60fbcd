#include "vsd/synthetic.hpp"

#include "vsd/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace vsd {

namespace {

std::string pad(std::size_t v, std::size_t width) {
    std::string s = std::to_string(v);
    if (s.size() > width) throw ArgumentError("value does not fit in " + std::to_string(width) + " digits");
    return std::string(width - s.size(), '0') + s;
}

Word word_for(const std::string & code) { return "n" + code; }

class ClassAllocator {
public:
    explicit ClassAllocator(std::mt19937_64 & rng) : rng_(rng) {}

    // A fresh 5-digit class that no earlier class or reserved prefix overlaps.
    std::string next() {
        std::uniform_int_distribution<std::size_t> pick(0, 99999);
        for (int attempt = 0; attempt < 1000000; ++attempt) {
            auto cls = pad(pick(rng_), 5);
            if (free(cls)) {
                used_.insert(cls);
                return cls;
            }
        }
        throw ArgumentError("class space exhausted");
    }

    // A fresh 4-digit prefix whose whole subtree is unused.
    std::string next_area() {
        std::uniform_int_distribution<std::size_t> pick(0, 9999);
        for (int attempt = 0; attempt < 100000; ++attempt) {
            auto p = pad(pick(rng_), 4);
            if (free(p)) {
                used_.insert(p);
                return p;
            }
        }
        throw ArgumentError("class space exhausted");
    }

private:
    bool free(const std::string & p) const {
        for (const auto & u : used_)
            if (u.compare(0, p.size(), p) == 0 || p.compare(0, u.size(), u) == 0) return false;
        return true;
    }

    std::mt19937_64 & rng_;
    std::set<std::string> used_;
};

void add_word(Thesaurus & t, const std::string & code) { t.add(Code(code), word_for(code)); }

SenseId sense_name(std::size_t i) { return "s" + std::to_string(i + 1); }

} // namespace

std::vector<std::size_t> skewed_cluster_sizes(std::size_t total, std::size_t clusters) {
    if (clusters == 0 || total < 2 * clusters)
        throw ArgumentError("need at least two examples per cluster for a strictly largest cluster");
    std::vector<double> w(clusters);
    for (std::size_t i = 0; i < clusters; ++i) w[i] = 1.0 / static_cast<double>(i + 1);
    double sum = std::accumulate(w.begin(), w.end(), 0.0);
    std::vector<std::size_t> sizes(clusters);
    std::size_t assigned = 0;
    for (std::size_t i = 0; i < clusters; ++i) {
        sizes[i] = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(static_cast<double>(total) * w[i] / sum)));
        assigned += sizes[i];
    }
    // Hand the remainder to the smallest clusters, or take back from the largest.
    for (std::size_t i = clusters; assigned < total; i = i == 1 ? clusters : i - 1) {
        ++sizes[i - 1];
        ++assigned;
    }
    for (std::size_t i = 0; assigned > total; i = (i + 1) % clusters) {
        if (sizes[i] > 1) {
            --sizes[i];
            --assigned;
        }
    }
    std::sort(sizes.begin(), sizes.end(), std::greater<>());
    if (clusters > 1 && sizes[0] == sizes[1]) {
        ++sizes[0];
        --sizes.back();
        if (sizes.back() == 0) throw ArgumentError("cannot make a strictly largest cluster");
        std::sort(sizes.begin(), sizes.end(), std::greater<>());
    }
    return sizes;
}

SyntheticCorpus generate_synthetic(const SyntheticSpec & spec) {
    if (spec.senses == 0 || spec.senses > 9) throw ArgumentError("senses must be between 1 and 9");
    if (spec.cases.empty() || spec.cases.size() != spec.overlap.size())
        throw ArgumentError("one overlap value per case is required");
    if (spec.depth < 6) throw ArgumentError("depth must be at least 6");
    if (spec.seed_classes == 0) throw ArgumentError("seed_classes must be positive");
    if (spec.cluster_sizes.empty()) throw ArgumentError("at least one cluster is required");
    if (!(spec.noise >= 0 && spec.noise <= 1)) throw ArgumentError("noise must lie in [0, 1]");
    for (double o : spec.overlap)
        if (!(o >= 0 && o <= 1)) throw ArgumentError("overlap must lie in [0, 1]");
    const std::size_t tail = spec.depth - 5;
    const double capacity = std::pow(10.0, static_cast<double>(tail));
    for (auto n : spec.cluster_sizes) {
        if (n == 0) throw ArgumentError("cluster sizes must be positive");
        if (static_cast<double>(n) > capacity)
            throw ArgumentError("cluster of " + std::to_string(n) + " exceeds the " +
                                std::to_string(static_cast<long long>(capacity)) + " leaves of a class");
    }

    std::mt19937_64 rng(spec.seed);
    ClassAllocator alloc(rng);
    SyntheticCorpus out;
    const auto obligatory = default_obligatory_markers();
    const std::string zeros(tail - 1, '0');

    std::vector<SenseEntry> senses(spec.senses);
    for (std::size_t i = 0; i < spec.senses; ++i) {
        senses[i].verb = spec.verb;
        senses[i].sense_id = sense_name(i);
        senses[i].gloss = "sense " + std::to_string(i + 1);
    }
    for (std::size_t c = 0; c < spec.cases.size(); ++c) {
        const auto & marker = spec.cases[c];
        auto shared = static_cast<std::size_t>(std::lround(spec.overlap[c] * static_cast<double>(spec.seed_classes)));
        std::vector<std::string> shared_cls;
        for (std::size_t j = 0; j < shared; ++j) shared_cls.push_back(alloc.next());
        for (std::size_t i = 0; i < spec.senses; ++i) {
            auto & slot = senses[i].frame.slots[marker];
            slot.obligatory = obligatory.count(marker) != 0;
            for (const auto & cls : shared_cls) {
                auto code = cls + std::to_string(i + 1) + zeros;
                add_word(out.thesaurus, code);
                slot.examples.insert(word_for(code));
            }
            for (std::size_t j = shared; j < spec.seed_classes; ++j) {
                auto code = alloc.next() + "1" + zeros;
                add_word(out.thesaurus, code);
                slot.examples.insert(word_for(code));
            }
        }
    }
    out.lexicon = senses;

    std::vector<std::size_t> perm(spec.senses);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);

    struct Pending {
        std::size_t cluster;
        SenseId label;
        std::map<Marker, Word> slots;
    };
    std::vector<Pending> pending;
    for (std::size_t k = 0; k < spec.cluster_sizes.size(); ++k) {
        SenseId sense = sense_name(perm[k % spec.senses]);
        out.cluster_sense.push_back(sense);
        std::vector<std::string> cls;
        for (std::size_t c = 0; c < spec.cases.size(); ++c) cls.push_back(alloc.next());
        for (std::size_t j = 0; j < spec.cluster_sizes[k]; ++j) {
            Pending p{k, sense, {}};
            for (std::size_t c = 0; c < spec.cases.size(); ++c) {
                auto code = cls[c] + pad(j, tail);
                add_word(out.thesaurus, code);
                p.slots[spec.cases[c]] = word_for(code);
            }
            pending.push_back(std::move(p));
        }
    }
    std::shuffle(pending.begin(), pending.end(), rng);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> other(1, spec.senses > 1 ? spec.senses - 1 : 1);
    for (std::size_t i = 0; i < pending.size(); ++i) {
        Example x;
        x.id = i;
        x.verb = spec.verb;
        x.slots = std::move(pending[i].slots);
        x.label = pending[i].label;
        if (spec.noise > 0 && spec.senses > 1 && coin(rng) < spec.noise) {
            std::size_t cur = std::stoul(x.label->substr(1)) - 1;
            x.label = sense_name((cur + other(rng)) % spec.senses);
        }
        out.examples.push_back(std::move(x));
        out.cluster.push_back(pending[i].cluster);
    }
    return out;
}

SyntheticCorpus generate_ccd_probe(const CcdProbeSpec & spec) {
    if (spec.senses < 2 || spec.senses > 9) throw ArgumentError("probe needs between 2 and 9 senses");
    if (spec.shared_classes == 0 || spec.inputs == 0) throw ArgumentError("probe needs classes and inputs");
    if (!(spec.misleading >= 0 && spec.misleading <= 1)) throw ArgumentError("misleading must lie in [0, 1]");
    if (spec.shared == spec.distinct) throw ArgumentError("probe cases must differ");

    std::mt19937_64 rng(spec.seed);
    ClassAllocator alloc(rng);
    SyntheticCorpus out;
    const auto obligatory = default_obligatory_markers();

    std::vector<std::string> shared_cls;
    for (std::size_t j = 0; j < spec.shared_classes; ++j) shared_cls.push_back(alloc.next());
    std::string area = alloc.next_area();
    std::vector<std::size_t> digit(10);
    std::iota(digit.begin(), digit.end(), 0);
    std::shuffle(digit.begin(), digit.end(), rng);

    auto shared_leaf = [&](std::size_t q, std::size_t sense) { return shared_cls[q] + std::to_string(sense + 1) + "0"; };
    auto distinct_cls = [&](std::size_t sense) { return area + std::to_string(digit[sense]); };

    for (std::size_t i = 0; i < spec.senses; ++i) {
        SenseEntry e;
        e.verb = spec.verb;
        e.sense_id = sense_name(i);
        e.gloss = "sense " + std::to_string(i + 1);
        auto & a = e.frame.slots[spec.shared];
        a.obligatory = obligatory.count(spec.shared) != 0;
        for (std::size_t q = 0; q < spec.shared_classes; ++q) {
            auto code = shared_leaf(q, i);
            add_word(out.thesaurus, code);
            a.examples.insert(word_for(code));
        }
        auto & b = e.frame.slots[spec.distinct];
        b.obligatory = obligatory.count(spec.distinct) != 0;
        auto code = distinct_cls(i) + "10";
        add_word(out.thesaurus, code);
        b.examples.insert(word_for(code));
        out.lexicon.push_back(std::move(e));
    }

    auto n_mislead = static_cast<std::size_t>(std::lround(spec.misleading * static_cast<double>(spec.inputs)));
    std::vector<std::size_t> order(spec.inputs);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::uniform_int_distribution<std::size_t> pick_q(0, spec.shared_classes - 1);
    std::uniform_int_distribution<std::size_t> pick_other(1, spec.senses - 1);
    std::uniform_int_distribution<std::size_t> pick_d6(2, 9);
    std::uniform_int_distribution<std::size_t> pick_d7(0, 9);
    for (std::size_t n = 0; n < spec.inputs; ++n) {
        std::size_t truth = order[n] % spec.senses;
        bool mislead = order[n] < n_mislead;
        std::size_t q = pick_q(rng);
        std::string a_code = mislead ? shared_leaf(q, (truth + pick_other(rng)) % spec.senses) : shared_cls[q] + "00";
        std::string b_code = distinct_cls(truth) + std::to_string(pick_d6(rng)) + std::to_string(pick_d7(rng));
        add_word(out.thesaurus, a_code);
        add_word(out.thesaurus, b_code);
        Example x;
        x.id = n;
        x.verb = spec.verb;
        x.slots[spec.shared] = word_for(a_code);
        x.slots[spec.distinct] = word_for(b_code);
        x.label = sense_name(truth);
        out.examples.push_back(std::move(x));
        out.cluster.push_back(mislead ? 1 : 0);
    }
    return out;
}

} // namespace vsd
