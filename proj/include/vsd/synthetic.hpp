#pragma once

#include "vsd/corpus.hpp"
#include "vsd/thesaurus.hpp"

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace vsd {

/// Clustered single-verb corpus. Every sense gets seed fillers per case, a
/// fraction `overlap[c]` of whose 5-digit classes are shared by all senses
/// (so the CCD of case c is 1 - overlap[c]). Pool examples come in clusters:
/// all members of a cluster carry the cluster's sense and, per case, fillers
/// from one 5-digit class of their own.
struct SyntheticSpec {
    Word verb = "v";
    std::size_t senses = 2;
    std::vector<Marker> cases = {"ga", "wo"};
    std::vector<double> overlap = {0.0, 0.0};
    std::size_t seed_classes = 2; ///< seed classes per sense and case
    std::vector<std::size_t> cluster_sizes = {4, 2, 2, 1};
    std::size_t depth = 7;
    double noise = 0.0; ///< chance that a pool example's label is swapped for another sense
    std::uint64_t seed = 1;
};

struct SyntheticCorpus {
    Thesaurus thesaurus;
    std::vector<SenseEntry> lexicon;
    std::vector<Example> examples;     ///< labeled, ids 0..n-1 in random order
    std::vector<std::size_t> cluster;  ///< cluster index per example id
    std::vector<SenseId> cluster_sense;
};

/// Throws ArgumentError for an invalid spec, including clusters larger than
/// a 5-digit class can hold.
SyntheticCorpus generate_synthetic(const SyntheticSpec & spec);

/// Zipf-like sizes summing to `total`, largest first and strictly largest.
std::vector<std::size_t> skewed_cluster_sizes(std::size_t total, std::size_t clusters);

/// Case `shared` has identical generalized filler classes for every sense;
/// case `distinct` has disjoint ones. A `misleading` fraction of the inputs
/// takes its shared-case filler verbatim from another sense's seed, which
/// pulls an unweighted sum toward that sense.
struct CcdProbeSpec {
    Word verb = "v";
    std::size_t senses = 2;
    std::size_t shared_classes = 2;
    std::size_t inputs = 20;
    double misleading = 0.5;
    Marker shared = "ga";
    Marker distinct = "wo";
    std::uint64_t seed = 1;
};

SyntheticCorpus generate_ccd_probe(const CcdProbeSpec & spec);

} // namespace vsd
