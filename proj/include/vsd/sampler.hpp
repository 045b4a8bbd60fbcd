#pragma once

#include "vsd/corpus.hpp"
#include "vsd/engine.hpp"
#include "vsd/similarity.hpp"
#include "vsd/thesaurus.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace vsd {

enum class Strategy { tu, uncertainty, committee, random, bootstrap };

/// Accepts tu, us|uncertainty, cbs|committee, random, bootstrap.
Strategy parse_strategy(const std::string & s);
std::string to_string(Strategy s);

struct SamplerParams {
    Strategy strategy = Strategy::tu;
    std::size_t k = 1; ///< k-best senses averaged in the training utility
    std::size_t committee_size = 2;
    std::uint64_t seed = 1;
    EngineParams engine;
};

/// Cached disambiguation state of one pool example.
struct CacheEntry {
    /// SIM per case for every sense of the verb (not only candidates) that
    /// shares a scored case with the example.
    std::map<SenseId, std::map<Marker, double>> sims;
    ScoredInterpretation interp;
    bool operator==(const CacheEntry &) const = default;
};

struct Selection {
    ExampleId id = 0;
    std::optional<SenseId> auto_label; ///< set by bootstrap
    double utility = 0;                ///< training utility (tu strategy only)
};

/// Supervised database D, unlabeled pool X and the certainty cache over X.
/// Training utility, delta certainty and neighbor sets are evaluated against
/// the current CCD profile; adopt() refreshes the profile afterwards.
class SamplerState {
public:
    /// D = seed + labeled. Every pool verb must be in D (LookupError).
    SamplerState(SenseDatabase seed, std::vector<Example> labeled, std::vector<Example> pool, Measure measure,
                 std::shared_ptr<const Thesaurus> thesaurus, SamplerParams params);

    const SenseDatabase & database() const { return db_; }
    const std::map<ExampleId, Example> & pool() const { return pool_; }
    const std::vector<std::pair<Example, SenseId>> & labeled() const { return labeled_; }
    const SamplerParams & params() const { return params_; }
    const Measure & measure() const { return measure_; }
    const Thesaurus * thesaurus() const { return thesaurus_.get(); }
    const CcdProfile & ccd(const Word & verb) const;
    /// Throws LookupError for an id not in the pool.
    const CacheEntry & entry(ExampleId id) const;
    const std::map<ExampleId, CacheEntry> & cache() const { return cache_; }
    /// True once a neighbor query had to scan the pool because the measure is
    /// not tree-backed.
    bool used_brute_force() const { return brute_force_used_; }

    /// Recomputes every cache entry from scratch.
    void wsd_phase();

    /// C(y | D + {x:s}) - C(y | D), with the CCD profile held fixed.
    double delta_certainty(ExampleId x, const SenseId & s, ExampleId y) const;

    /// Pool examples (other than x) whose SIM for (s, c) would change if x
    /// were adopted as s.
    std::set<ExampleId> neighbors(ExampleId x, const SenseId & s, const Marker & c) const;
    /// Union over the cases of x.
    std::set<ExampleId> neighbors(ExampleId x, const SenseId & s) const;

    /// Mean over x's k-best senses of the summed delta certainty over its
    /// neighbors; 0 when x has no candidate.
    double training_utility(ExampleId x) const;

    /// nullopt when the pool is empty.
    std::optional<Selection> select_next();

    /// Moves x from the pool into D as sense s and refreshes the cache.
    /// Throws LookupError for an id not in the pool, ResolutionError for a
    /// sense its verb lacks.
    void adopt(ExampleId x, const SenseId & s);

private:
    struct Hypothesis {
        std::map<Marker, double> sims; ///< SIM for s after adoption
        bool candidate = false;        ///< s survives filtering after adoption
    };

    Hypothesis hypothesize(const Example & x, const SenseId & s, const Example & y) const;
    double hypothetical_certainty(const Example & x, const SenseId & s, const Example & y) const;
    CacheEntry compute_entry(const Example & y) const;
    void rescore(const Example & y, CacheEntry & e) const;
    void index_insert(const Example & y);
    void index_erase(const Example & y);
    const Example & pool_example(ExampleId id) const;
    std::optional<Selection> select_committee();

    SenseDatabase seed_;
    SenseDatabase db_;
    std::vector<std::pair<Example, SenseId>> labeled_;
    std::map<ExampleId, Example> pool_;
    Measure measure_;
    std::shared_ptr<const Thesaurus> thesaurus_;
    SamplerParams params_;
    std::map<Word, CcdProfile> ccd_;
    std::map<ExampleId, CacheEntry> cache_;
    /// (verb, marker) -> sorted (filler code, id) over pool examples whose
    /// filler the measure's thesaurus knows.
    std::map<std::pair<Word, Marker>, std::set<std::pair<std::string, ExampleId>>> index_;
    mutable bool brute_force_used_ = false;
    std::mt19937_64 rng_;
};

/// Returns the sense a human (or simulated annotator) assigns.
using Oracle = std::function<SenseId(const Example &)>;

/// Oracle reading the example's own label; throws ResolutionError when an
/// example has none.
Oracle gold_oracle();

/// Runs select/adopt until the pool is empty or `max_steps` adoptions have
/// been made. `after_step` runs after each adoption; returning false stops
/// the loop. Bootstrap selections are adopted with their own top sense
/// without consulting the oracle.
std::vector<Selection> run_sampling(SamplerState & state, const Oracle & oracle,
                                    std::optional<std::size_t> max_steps = std::nullopt,
                                    const std::function<bool(const SamplerState &, const Selection &)> & after_step = {});

} // namespace vsd
