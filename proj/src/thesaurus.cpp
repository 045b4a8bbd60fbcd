#include "vsd/thesaurus.hpp"

#include "text_util.hpp"
#include "vsd/error.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <ostream>

namespace vsd {

Code::Code(std::string digits) : digits_(std::move(digits)) {
    if (digits_.empty()) throw FormatError("empty thesaurus code");
    for (char ch : digits_)
        if (ch < '0' || ch > '9') throw FormatError("non-digit thesaurus code '" + digits_ + "'");
}

Code Code::prefix(std::size_t level) const {
    if (level < 1 || level > digits_.size())
        throw ArgumentError("generalization level " + std::to_string(level) + " outside [1, " +
                            std::to_string(digits_.size()) + "]");
    Code out;
    out.digits_ = digits_.substr(0, level);
    return out;
}

bool Code::starts_with(std::string_view prefix) const {
    return digits_.size() >= prefix.size() && std::string_view(digits_).substr(0, prefix.size()) == prefix;
}

std::size_t common_prefix(const Code & a, const Code & b) {
    const auto & x = a.str();
    const auto & y = b.str();
    auto n = std::min(x.size(), y.size());
    std::size_t i = 0;
    while (i < n && x[i] == y[i]) ++i;
    return i;
}

Code generalize(const Code & code, std::size_t level) { return code.prefix(level); }

std::vector<BranchId> path_branches(const Code & a, const Code & b) {
    std::vector<BranchId> out;
    auto lcp = common_prefix(a, b);
    for (std::size_t len = lcp + 1; len <= a.size(); ++len) out.push_back(a.str().substr(0, len));
    for (std::size_t len = lcp + 1; len <= b.size(); ++len) out.push_back(b.str().substr(0, len));
    return out;
}

Thesaurus Thesaurus::load(std::istream & in) {
    Thesaurus t;
    text::LineReader reader(in);
    std::string line;
    while (reader.next(line)) {
        auto fields = text::split(line, '\t');
        if (fields.size() != 2)
            throw FormatError("expected code<TAB>word", reader.line_no());
        auto code_str = text::trim(fields[0]);
        auto word = text::trim(fields[1]);
        if (word.empty()) throw FormatError("empty word", reader.line_no());
        try {
            t.add(Code(code_str), word);
        } catch (const FormatError & e) {
            throw FormatError(e.what(), reader.line_no());
        }
    }
    return t;
}

Thesaurus Thesaurus::load_file(const std::string & path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open thesaurus file: " + path);
    return load(in);
}

void Thesaurus::save(std::ostream & out) const {
    for (const auto & [word, code] : entries_) out << code.str() << '\t' << word << '\n';
}

void Thesaurus::add(const Code & code, const Word & word) {
    if (depth_ == 0) {
        depth_ = code.size();
    } else if (code.size() != depth_) {
        throw FormatError("code '" + code.str() + "' has length " + std::to_string(code.size()) +
                          ", expected " + std::to_string(depth_));
    }
    auto [it, inserted] = entries_.emplace(word, code);
    if (!inserted && it->second != code)
        throw ConflictError("word '" + word + "' listed under codes " + it->second.str() + " and " +
                            code.str());
}

const Code & Thesaurus::code(const Word & word) const {
    auto it = entries_.find(word);
    if (it == entries_.end()) throw LookupError("word not in thesaurus: '" + word + "'");
    return it->second;
}

const Code * Thesaurus::find(const Word & word) const {
    auto it = entries_.find(word);
    return it == entries_.end() ? nullptr : &it->second;
}

std::set<Code> Thesaurus::leaves() const {
    std::set<Code> out;
    for (const auto & [word, code] : entries_) out.insert(code);
    return out;
}

std::set<BranchId> Thesaurus::branches() const {
    std::set<BranchId> out;
    for (const auto & [word, code] : entries_)
        for (std::size_t len = 1; len <= code.size(); ++len) out.insert(code.str().substr(0, len));
    return out;
}

std::size_t Thesaurus::path_length(const Word & a, const Word & b) const {
    return path_length(code(a), code(b));
}

std::size_t Thesaurus::path_length(const Code & a, const Code & b) {
    return (a.size() - common_prefix(a, b)) + (b.size() - common_prefix(a, b));
}

SimilarityTable::SimilarityTable(std::map<std::size_t, double> mapping) : mapping_(std::move(mapping)) {
    if (mapping_.empty()) throw FormatError("similarity table is empty");
    if (mapping_.begin()->first != 0) throw FormatError("similarity table must define length 0");
    double prev = mapping_.begin()->second;
    for (const auto & [len, score] : mapping_) {
        if (score < 0) throw FormatError("negative similarity at length " + std::to_string(len));
        if (score > prev) throw FormatError("similarity table increases at length " + std::to_string(len));
        prev = score;
    }
}

SimilarityTable SimilarityTable::standard() {
    return SimilarityTable({{0, 11}, {2, 10}, {4, 9}, {6, 8}, {8, 7}, {10, 5}, {12, 0}});
}

SimilarityTable SimilarityTable::load(std::istream & in) {
    std::map<std::size_t, double> mapping;
    text::LineReader reader(in);
    std::string line;
    while (reader.next(line)) {
        auto fields = text::split_ws(line);
        if (fields.size() != 2) throw FormatError("expected length<TAB>score", reader.line_no());
        auto len = text::parse_long(fields[0], reader.line_no());
        if (len < 0) throw FormatError("negative path length", reader.line_no());
        mapping[static_cast<std::size_t>(len)] = text::parse_double(fields[1], reader.line_no());
    }
    return SimilarityTable(std::move(mapping));
}

SimilarityTable SimilarityTable::load_file(const std::string & path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open similarity table: " + path);
    return load(in);
}

void SimilarityTable::save(std::ostream & out) const {
    for (const auto & [len, score] : mapping_) out << len << '\t' << text::format_double(score) << '\n';
}

double SimilarityTable::lookup(std::size_t path_length) const {
    auto it = mapping_.upper_bound(path_length);
    return std::prev(it)->second;
}

double SimilarityTable::max_value() const { return mapping_.begin()->second; }
double SimilarityTable::min_value() const { return mapping_.rbegin()->second; }

double table_similarity(const Thesaurus & t, const SimilarityTable & table, const Word & a, const Word & b) {
    return table.lookup(t.path_length(a, b));
}

} // namespace vsd
