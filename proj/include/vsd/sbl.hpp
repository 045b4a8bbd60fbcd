#pragma once

#include "vsd/corpus.hpp"
#include "vsd/similarity.hpp"
#include "vsd/thesaurus.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace vsd {

/// A word or class placed in the code tree.
struct SblItem {
    std::string label;
    Code code;
};

/// One row of the path-sum system: the branches between two items must sum
/// to the target similarity.
struct PathEquation {
    std::size_t a = 0; ///< item indices
    std::size_t b = 0;
    std::vector<BranchId> branches;
    double target = 0;
};

/// Fitted statistics-based length per thesaurus branch.
class BranchLengthModel {
public:
    std::map<BranchId, double> lengths;
    std::set<BranchId> unresolved;        ///< branches touched by no equation
    std::vector<double> subset_residuals; ///< RMS residual of each subset solve
    std::size_t subset_count = 0;
    std::size_t level = 0; ///< code length of the fitted items

    std::optional<double> length(const BranchId & id) const;
    /// Both words are in `t` and every branch on their path has a length.
    bool covers(const Thesaurus & t, const Word & a, const Word & b) const;
    /// Lower bound on any path sum (<= 0).
    double min_path_sum() const;

    /// `branch_id<TAB>length` lines.
    void save(std::ostream & out) const;
    static BranchLengthModel load(std::istream & in);
    static BranchLengthModel load_file(const std::string & path);
};

std::vector<SblItem> word_items(const Thesaurus & t, const std::vector<Word> & words);

/// Distinct class codes at `level` over every thesaurus word, labeled by code.
std::vector<SblItem> class_items(const Thesaurus & t, std::size_t level);

/// Replaces each noun by its `level`-digit class code; nouns outside the
/// thesaurus are dropped.
CoocTable generalize_cooc(const CoocTable & cooc, const Thesaurus & t, std::size_t level);

using PairTarget = std::function<double(const SblItem &, const SblItem &)>;

/// One equation per unordered item pair. Items must have equal-length,
/// pairwise distinct codes.
std::vector<PathEquation> build_equations(const std::vector<SblItem> & items, const PairTarget & target);
/// Word-level system with targets from `m`.
std::vector<PathEquation> build_equations(const Thesaurus & t, const std::vector<Word> & words, const Measure & m);

struct SolveOptions {
    std::size_t subsets = 15;
    std::uint64_t seed = 1;
    bool nonnegative = false; ///< clamp negative averaged lengths to zero
};

/// Shuffles the equations, deals them into near-equal subsets grouped by
/// common ancestor, solves each by minimum-norm least squares and averages every branch over the subsets
/// that contain it.
BranchLengthModel solve_partitioned(const std::vector<PathEquation> & eqs, const SolveOptions & opts,
                                    const std::set<BranchId> & universe = {});

/// Minimum-norm least-squares solution over the branches the equations touch.
std::map<BranchId, double> solve_min_norm(const std::vector<const PathEquation *> & eqs, double * rms_residual = nullptr);

double sbl_path_sum(const BranchLengthModel & model, const Code & a, const Code & b);
/// Sum of fitted lengths on the path between the words' classes. Throws
/// CoverageError naming an unresolved branch.
double sbl_similarity(const BranchLengthModel & model, const Thesaurus & t, const Word & a, const Word & b);

struct InequalityReport {
    double ratio = 0;          ///< fitted path sums keep the reference ordering
    double baseline_ratio = 0; ///< shorter tree path predicts higher reference
    std::size_t trials = 0;
};

/// Samples quadruples (a, b, c, d) of items with ref(a, b) != ref(c, d) and
/// checks whether the ordering of ref is preserved.
InequalityReport eval_inequality(const BranchLengthModel & model, const std::vector<SblItem> & items,
                                 const PairTarget & reference, std::size_t quadruples, std::uint64_t seed);

} // namespace vsd
