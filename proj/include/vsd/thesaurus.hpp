#pragma once

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace vsd {

using Word = std::string;

/// Fixed-length digit string; every prefix names a class in the code tree.
class Code {
public:
    Code() = default;
    /// Throws FormatError unless `digits` is non-empty and all digits.
    explicit Code(std::string digits);

    const std::string & str() const { return digits_; }
    std::size_t size() const { return digits_.size(); }
    bool empty() const { return digits_.empty(); }

    /// First `level` digits. Throws ArgumentError unless 1 <= level <= size().
    Code prefix(std::size_t level) const;
    bool starts_with(std::string_view prefix) const;

    auto operator<=>(const Code &) const = default;

private:
    std::string digits_;
};

/// Length of the longest common prefix of two codes.
std::size_t common_prefix(const Code & a, const Code & b);

/// First `level` digits of `code`; 1 <= level <= code.size().
Code generalize(const Code & code, std::size_t level);

/// An edge of the code tree, named by the child-side prefix.
/// Branch "123" joins class "12" to class "123".
using BranchId = std::string;

/// Branches on the path between two codes of equal length: the edges from
/// each code up to (but not above) their deepest common ancestor.
std::vector<BranchId> path_branches(const Code & a, const Code & b);

class Thesaurus {
public:
    Thesaurus() = default;

    /// Reads `code<TAB>word` lines; `#` lines and blank lines are skipped.
    static Thesaurus load(std::istream & in);
    static Thesaurus load_file(const std::string & path);
    void save(std::ostream & out) const;

    /// Adds one entry. Same (code, word) twice is a no-op; a word under a
    /// second code is a ConflictError; a code of the wrong length is a
    /// FormatError.
    void add(const Code & code, const Word & word);

    std::size_t depth() const { return depth_; }
    std::size_t size() const { return entries_.size(); }
    bool contains(const Word & word) const { return entries_.count(word) != 0; }

    /// Throws LookupError naming the word.
    const Code & code(const Word & word) const;
    const Code * find(const Word & word) const;

    const std::map<Word, Code> & entries() const { return entries_; }
    /// Distinct leaf codes, sorted.
    std::set<Code> leaves() const;
    /// Every branch id of the tree (one per non-root prefix of some leaf).
    std::set<BranchId> branches() const;

    /// 2 * (depth - common prefix length).
    std::size_t path_length(const Word & a, const Word & b) const;
    static std::size_t path_length(const Code & a, const Code & b);

private:
    std::size_t depth_ = 0;
    std::map<Word, Code> entries_;
};

/// Maps even path lengths to similarity scores. Lengths above the largest key
/// take that key's value; a length between keys takes the value of the
/// nearest smaller key.
class SimilarityTable {
public:
    SimilarityTable() = default;
    explicit SimilarityTable(std::map<std::size_t, double> mapping);

    /// The path-length/similarity table for the 7-level code thesaurus.
    static SimilarityTable standard();
    /// Reads `length<TAB>score` lines.
    static SimilarityTable load(std::istream & in);
    static SimilarityTable load_file(const std::string & path);
    void save(std::ostream & out) const;

    double lookup(std::size_t path_length) const;
    double max_value() const;
    double min_value() const;
    const std::map<std::size_t, double> & mapping() const { return mapping_; }

private:
    std::map<std::size_t, double> mapping_;
};

/// sim(a, b) via the path length between the words' codes.
double table_similarity(const Thesaurus & t, const SimilarityTable & table,
                        const Word & a, const Word & b);

} // namespace vsd
