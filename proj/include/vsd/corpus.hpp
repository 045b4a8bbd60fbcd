#pragma once

#include "vsd/thesaurus.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace vsd {

using Marker = std::string;
using SenseId = std::string;
using ExampleId = std::uint64_t;

/// Markers treated as obligatory when a lexicon slot carries no explicit flag.
std::set<Marker> default_obligatory_markers();

struct Slot {
    bool obligatory = false;
    std::set<Word> examples;
    bool operator==(const Slot &) const = default;
};

struct CaseFrame {
    std::map<Marker, Slot> slots;
    bool operator==(const CaseFrame &) const = default;
};

struct SenseEntry {
    Word verb;
    SenseId sense_id;
    std::string gloss;
    CaseFrame frame;
    bool operator==(const SenseEntry &) const = default;
};

struct Example {
    ExampleId id = 0;
    Word verb;
    std::map<Marker, Word> slots;
    std::optional<SenseId> label;
    std::optional<std::string> context;
    bool operator==(const Example &) const = default;
};

/// Lexicon records: `verb<TAB>sense<TAB>gloss<TAB>slotlist`, where each slot is
/// `marker=f1,f2`, `marker?=...` (optional) or `marker!=...` (obligatory). A
/// bare marker is obligatory iff it is in `obligatory`.
std::vector<SenseEntry> load_lexicon(std::istream & in,
                                     const std::set<Marker> & obligatory = default_obligatory_markers());
std::vector<SenseEntry> load_lexicon_file(const std::string & path,
                                          const std::set<Marker> & obligatory = default_obligatory_markers());
void save_lexicon(std::ostream & out, const std::vector<SenseEntry> & lexicon,
                  const std::set<Marker> & obligatory = default_obligatory_markers());

/// Example records: `verb<TAB>label-or-?<TAB>m1=f1 m2=f2 [ctx=id]`. Ids are
/// assigned in file order starting at `first_id`.
std::vector<Example> load_examples(std::istream & in, ExampleId first_id = 0);
std::vector<Example> load_examples_file(const std::string & path, ExampleId first_id = 0);
void save_examples(std::ostream & out, const std::vector<Example> & examples);

/// (noun, case, verb) tuple counts plus the number of noun types N.
struct CoocTable {
    using Key = std::tuple<Word, Marker, Word>;
    std::map<Key, long> tuples;
    long noun_types = 0;

    /// Recomputes noun_types from the stored tuples.
    void recount_nouns();
    bool operator==(const CoocTable &) const = default;
};

CoocTable load_cooc(std::istream & in);
CoocTable load_cooc_file(const std::string & path);
void save_cooc(std::ostream & out, const CoocTable & table);

/// Each input line is one sentence of `surface/POS` tokens (POS N, P, V or
/// anything else). A noun directly followed by a particle is attached to the
/// nearest following verb of the same sentence; `genitive` particles are
/// skipped.
CoocTable extract_cooc(std::istream & tagged, const Marker & genitive = "no");

/// Per-sense filler statistics for one case slot. The filler keys are the
/// example set E(s, c); the values count supporting records.
struct SlotData {
    bool obligatory = false;
    std::map<Word, long> fillers;
    bool operator==(const SlotData &) const = default;
};

struct SenseRecord {
    SenseId id;
    std::string gloss;
    std::map<Marker, SlotData> slots;
    long frequency = 0; ///< supervised examples stored for this sense
    bool operator==(const SenseRecord &) const = default;
};

/// Lexicon seed plus supervised examples, grouped by verb.
class SenseDatabase {
public:
    using SenseMap = std::map<SenseId, SenseRecord>;

    SenseDatabase() = default;
    explicit SenseDatabase(std::set<Marker> default_obligatory) : default_obligatory_(std::move(default_obligatory)) {}

    /// Seeds from the lexicon, then appends every labeled example. Throws
    /// ResolutionError for labels naming no sense of their verb.
    static SenseDatabase build(const std::vector<SenseEntry> & lexicon, const std::vector<Example> & labeled,
                               const std::set<Marker> & default_obligatory = default_obligatory_markers());

    /// Throws ConflictError on a duplicate (verb, sense).
    void add_sense(const SenseEntry & entry);
    /// Appends the example's fillers to `sense` and bumps its frequency.
    /// A marker missing from the frame becomes a new slot that keeps the
    /// marker's obligatory class unchanged.
    void add_example(const Example & example, const SenseId & sense);

    bool has_verb(const Word & verb) const { return verbs_.count(verb) != 0; }
    /// Throws LookupError for an unknown verb.
    const SenseMap & senses(const Word & verb) const;
    const SenseRecord * find(const Word & verb, const SenseId & sense) const;
    const std::map<Word, SenseMap> & verbs() const { return verbs_; }

    /// Whether an input marker absent from a frame rules that frame out.
    /// Explicit lexicon flags for the verb win; otherwise the default set.
    bool obligatory_class(const Word & verb, const Marker & marker) const;

    /// Total number of supervised examples stored.
    long example_count() const;

    bool operator==(const SenseDatabase &) const = default;

private:
    std::map<Word, SenseMap> verbs_;
    std::set<Marker> default_obligatory_ = default_obligatory_markers();
};

/// Writes the database as lexicon records (filler counts are not preserved).
void save_database(std::ostream & out, const SenseDatabase & db);

} // namespace vsd
