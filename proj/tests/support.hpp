#pragma once

#include "vsd/corpus.hpp"
#include "vsd/engine.hpp"
#include "vsd/sampler.hpp"
#include "vsd/sbl.hpp"
#include "vsd/similarity.hpp"
#include "vsd/thesaurus.hpp"

#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace vsd::test {

using Entries = std::initializer_list<std::pair<std::string, std::string>>;

/// Thesaurus from (code, word) pairs.
std::shared_ptr<const Thesaurus> thesaurus_of(Entries entries);

Measure table_measure(std::shared_ptr<const Thesaurus> t);

using Frame = std::initializer_list<std::pair<Marker, std::set<Word>>>;

/// Sense entry whose slots take the default obligatory flags.
SenseEntry sense(const Word & verb, const SenseId & id, Frame frame, const std::string & gloss = "");

Example example(ExampleId id, const Word & verb, std::map<Marker, Word> slots,
                std::optional<SenseId> label = std::nullopt);

/// Random single- or two-verb sampling problem.
struct Instance {
    std::shared_ptr<const Thesaurus> thesaurus;
    std::vector<SenseEntry> lexicon;
    std::vector<Example> labeled;
    std::vector<Example> pool;
    CoocTable cooc;
};

struct InstanceLimits {
    std::size_t max_pool = 50;
    std::size_t max_senses = 3;
    std::size_t max_cases = 3;
};

Instance random_instance(std::uint64_t seed, const InstanceLimits & limits = {});

/// Measure for instance `seed`: cycles through table, ic and vsm.
Measure instance_measure(const Instance & inst, std::uint64_t seed);

// Brute-force references, written against the definitions rather than the
// incremental machinery.

/// SIM per case for every sense of y's verb sharing a case with y, by direct
/// enumeration.
std::map<SenseId, std::map<Marker, double>> brute_sims(const SenseDatabase & db, const Example & y, const Measure & m);

/// Pool examples whose SIM for (s, c) differs once x is stored as s.
std::set<ExampleId> brute_sim_changed(const SenseDatabase & db, const std::vector<Example> & pool, const Example & x,
                                      const SenseId & s, const Measure & m);

/// C(y | D + {x:s}) - C(y | D) with the CCD of D.
double brute_delta(const SenseDatabase & db, const CcdProfile & ccd, const Example & x, const SenseId & s,
                   const Example & y, const Measure & m, const EngineParams & params);

/// Mean over the k best senses of x of the summed delta certainty over the
/// rest of the pool (ascending id).
double brute_utility(const SenseDatabase & db, const CcdProfile & ccd, const std::vector<Example> & pool,
                     const Example & x, const std::vector<SenseId> & k_best, const Measure & m,
                     const EngineParams & params);

/// Random code tree with known branch lengths; every leaf is an item.
struct TreeProblem {
    std::vector<SblItem> leaves;
    BranchLengthModel truth;
};

/// Depth 3 or 4, at most `max_branches` branches, lengths drawn from
/// [-2, -0.05] so that longer paths tend to mean lower similarity. Bottom
/// nodes have 9-10 leaves and trees are resampled until they carry at least
/// min(180, 2/5 of the branch budget) leaves, so every leaf and branching
/// node appears in many pairs; some inner nodes have one child.
TreeProblem random_tree(std::uint64_t seed, std::size_t max_branches = 500);

/// Checks an incremental sampler against from-scratch recomputation. Returns
/// an empty string on agreement, else a description of the first mismatch.
std::string check_sampler_instance(std::uint64_t seed, std::size_t adoptions = 4);

} // namespace vsd::test
