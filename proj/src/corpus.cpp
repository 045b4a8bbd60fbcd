#include "vsd/corpus.hpp"

#include "text_util.hpp"
#include "vsd/error.hpp"

#include <fstream>
#include <ostream>

namespace vsd {

std::set<Marker> default_obligatory_markers() { return {"ga", "wo", "ni"}; }

namespace {

struct SlotSpec {
    Marker marker;
    char flag = 0; // 0, '?' or '!'
    std::vector<Word> fillers;
};

SlotSpec parse_slot(const std::string & item, std::size_t line) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw FormatError("slot '" + item + "' lacks '='", line);
    SlotSpec spec;
    spec.marker = item.substr(0, eq);
    if (!spec.marker.empty() && (spec.marker.back() == '?' || spec.marker.back() == '!')) {
        spec.flag = spec.marker.back();
        spec.marker.pop_back();
    }
    if (spec.marker.empty()) throw FormatError("slot without case marker: '" + item + "'", line);
    auto rest = item.substr(eq + 1);
    if (!rest.empty()) {
        for (auto & f : text::split(rest, ',')) {
            if (f.empty()) throw FormatError("empty filler in slot '" + item + "'", line);
            spec.fillers.push_back(f);
        }
    }
    return spec;
}

} // namespace

std::vector<SenseEntry> load_lexicon(std::istream & in, const std::set<Marker> & obligatory) {
    std::vector<SenseEntry> out;
    std::set<std::pair<Word, SenseId>> seen;
    text::LineReader reader(in);
    std::string line;
    while (reader.next(line)) {
        auto fields = text::split(line, '\t');
        if (fields.size() != 4) throw FormatError("expected verb<TAB>sense<TAB>gloss<TAB>slots", reader.line_no());
        SenseEntry entry;
        entry.verb = text::trim(fields[0]);
        entry.sense_id = text::trim(fields[1]);
        entry.gloss = text::trim(fields[2]);
        if (entry.verb.empty() || entry.sense_id.empty()) throw FormatError("empty verb or sense id", reader.line_no());
        for (const auto & item : text::split_ws(fields[3])) {
            auto spec = parse_slot(item, reader.line_no());
            if (entry.frame.slots.count(spec.marker))
                throw FormatError("case marker '" + spec.marker + "' repeated", reader.line_no());
            Slot slot;
            slot.obligatory = spec.flag == '!' || (spec.flag == 0 && obligatory.count(spec.marker) != 0);
            slot.examples.insert(spec.fillers.begin(), spec.fillers.end());
            if (slot.obligatory && slot.examples.empty())
                throw FormatError("obligatory case '" + spec.marker + "' has no example fillers", reader.line_no());
            entry.frame.slots.emplace(spec.marker, std::move(slot));
        }
        if (entry.frame.slots.empty()) throw FormatError("case frame has no slots", reader.line_no());
        if (!seen.emplace(entry.verb, entry.sense_id).second)
            throw ConflictError("duplicate sense '" + entry.sense_id + "' for verb '" + entry.verb + "' (line " +
                                std::to_string(reader.line_no()) + ")");
        out.push_back(std::move(entry));
    }
    return out;
}

std::vector<SenseEntry> load_lexicon_file(const std::string & path, const std::set<Marker> & obligatory) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open lexicon file: " + path);
    return load_lexicon(in, obligatory);
}

namespace {

void write_slot(std::ostream & out, const Marker & marker, bool obligatory, const std::set<Marker> & defaults) {
    out << marker;
    bool by_default = defaults.count(marker) != 0;
    if (obligatory != by_default) out << (obligatory ? '!' : '?');
    out << '=';
}

} // namespace

void save_lexicon(std::ostream & out, const std::vector<SenseEntry> & lexicon, const std::set<Marker> & obligatory) {
    for (const auto & e : lexicon) {
        out << e.verb << '\t' << e.sense_id << '\t' << e.gloss << '\t';
        bool first = true;
        for (const auto & [marker, slot] : e.frame.slots) {
            if (!first) out << ' ';
            first = false;
            write_slot(out, marker, slot.obligatory, obligatory);
            bool first_filler = true;
            for (const auto & f : slot.examples) {
                if (!first_filler) out << ',';
                first_filler = false;
                out << f;
            }
        }
        out << '\n';
    }
}

std::vector<Example> load_examples(std::istream & in, ExampleId first_id) {
    std::vector<Example> out;
    text::LineReader reader(in);
    std::string line;
    ExampleId next_id = first_id;
    while (reader.next(line)) {
        auto fields = text::split(line, '\t');
        if (fields.size() != 3) throw FormatError("expected verb<TAB>label<TAB>slots", reader.line_no());
        Example ex;
        ex.id = next_id++;
        ex.verb = text::trim(fields[0]);
        auto label = text::trim(fields[1]);
        if (ex.verb.empty() || label.empty()) throw FormatError("empty verb or label", reader.line_no());
        if (label != "?") ex.label = label;
        auto items = text::split_ws(fields[2]);
        if (!items.empty() && items.back().rfind("ctx=", 0) == 0) {
            ex.context = items.back().substr(4);
            if (ex.context->empty()) throw FormatError("empty context id", reader.line_no());
            items.pop_back();
        }
        for (const auto & item : items) {
            auto eq = item.find('=');
            if (eq == std::string::npos || eq == 0 || eq + 1 == item.size())
                throw FormatError("malformed slot '" + item + "'", reader.line_no());
            auto marker = item.substr(0, eq);
            auto filler = item.substr(eq + 1);
            if (filler.find(',') != std::string::npos)
                throw FormatError("one filler per case marker: '" + item + "'", reader.line_no());
            if (!ex.slots.emplace(marker, filler).second)
                throw FormatError("case marker '" + marker + "' repeated", reader.line_no());
        }
        if (ex.slots.empty()) throw FormatError("example has no case slots", reader.line_no());
        out.push_back(std::move(ex));
    }
    return out;
}

std::vector<Example> load_examples_file(const std::string & path, ExampleId first_id) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open example file: " + path);
    return load_examples(in, first_id);
}

void save_examples(std::ostream & out, const std::vector<Example> & examples) {
    for (const auto & ex : examples) {
        out << ex.verb << '\t' << (ex.label ? *ex.label : std::string("?")) << '\t';
        bool first = true;
        for (const auto & [marker, filler] : ex.slots) {
            if (!first) out << ' ';
            first = false;
            out << marker << '=' << filler;
        }
        if (ex.context) out << " ctx=" << *ex.context;
        out << '\n';
    }
}

void CoocTable::recount_nouns() {
    std::set<Word> nouns;
    for (const auto & [key, freq] : tuples) nouns.insert(std::get<0>(key));
    noun_types = static_cast<long>(nouns.size());
}

CoocTable load_cooc(std::istream & in) {
    CoocTable table;
    text::LineReader reader(in);
    std::string line;
    while (reader.next(line)) {
        auto fields = text::split(line, '\t');
        if (fields.size() != 4) throw FormatError("expected noun<TAB>case<TAB>verb<TAB>freq", reader.line_no());
        auto freq = text::parse_long(text::trim(fields[3]), reader.line_no());
        if (freq <= 0) throw FormatError("non-positive frequency", reader.line_no());
        CoocTable::Key key{text::trim(fields[0]), text::trim(fields[1]), text::trim(fields[2])};
        table.tuples[key] += freq;
    }
    table.recount_nouns();
    return table;
}

CoocTable load_cooc_file(const std::string & path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open co-occurrence file: " + path);
    return load_cooc(in);
}

void save_cooc(std::ostream & out, const CoocTable & table) {
    for (const auto & [key, freq] : table.tuples)
        out << std::get<0>(key) << '\t' << std::get<1>(key) << '\t' << std::get<2>(key) << '\t' << freq << '\n';
}

CoocTable extract_cooc(std::istream & tagged, const Marker & genitive) {
    CoocTable table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(tagged, line)) {
        ++line_no;
        std::vector<std::pair<std::string, std::string>> tokens;
        for (const auto & tok : text::split_ws(line)) {
            auto slash = tok.rfind('/');
            if (slash == std::string::npos || slash == 0 || slash + 1 == tok.size())
                throw FormatError("malformed token '" + tok + "'", line_no);
            tokens.emplace_back(tok.substr(0, slash), tok.substr(slash + 1));
        }
        for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
            if (tokens[i].second != "N" || tokens[i + 1].second != "P") continue;
            const auto & marker = tokens[i + 1].first;
            if (marker == genitive) continue;
            for (std::size_t j = i + 2; j < tokens.size(); ++j) {
                if (tokens[j].second == "V") {
                    table.tuples[{tokens[i].first, marker, tokens[j].first}] += 1;
                    break;
                }
            }
        }
    }
    table.recount_nouns();
    return table;
}

SenseDatabase SenseDatabase::build(const std::vector<SenseEntry> & lexicon, const std::vector<Example> & labeled,
                                   const std::set<Marker> & default_obligatory) {
    SenseDatabase db(default_obligatory);
    for (const auto & entry : lexicon) db.add_sense(entry);
    for (const auto & ex : labeled) {
        if (!ex.label) throw ResolutionError("example " + std::to_string(ex.id) + " has no label");
        db.add_example(ex, *ex.label);
    }
    return db;
}

void SenseDatabase::add_sense(const SenseEntry & entry) {
    auto & senses = verbs_[entry.verb];
    if (senses.count(entry.sense_id))
        throw ConflictError("duplicate sense '" + entry.sense_id + "' for verb '" + entry.verb + "'");
    SenseRecord rec;
    rec.id = entry.sense_id;
    rec.gloss = entry.gloss;
    for (const auto & [marker, slot] : entry.frame.slots) {
        SlotData data;
        data.obligatory = slot.obligatory;
        for (const auto & f : slot.examples) data.fillers[f] = 1;
        rec.slots.emplace(marker, std::move(data));
    }
    senses.emplace(entry.sense_id, std::move(rec));
}

void SenseDatabase::add_example(const Example & example, const SenseId & sense) {
    auto vit = verbs_.find(example.verb);
    if (vit == verbs_.end()) throw ResolutionError("unknown verb '" + example.verb + "'");
    auto sit = vit->second.find(sense);
    if (sit == vit->second.end())
        throw ResolutionError("unknown sense '" + sense + "' for verb '" + example.verb + "'");
    auto & rec = sit->second;
    for (const auto & [marker, filler] : example.slots) {
        auto it = rec.slots.find(marker);
        if (it == rec.slots.end()) {
            SlotData data;
            data.obligatory = obligatory_class(example.verb, marker);
            it = rec.slots.emplace(marker, std::move(data)).first;
        }
        it->second.fillers[filler] += 1;
    }
    rec.frequency += 1;
}

const SenseDatabase::SenseMap & SenseDatabase::senses(const Word & verb) const {
    auto it = verbs_.find(verb);
    if (it == verbs_.end()) throw LookupError("verb not in database: '" + verb + "'");
    return it->second;
}

const SenseRecord * SenseDatabase::find(const Word & verb, const SenseId & sense) const {
    auto vit = verbs_.find(verb);
    if (vit == verbs_.end()) return nullptr;
    auto sit = vit->second.find(sense);
    return sit == vit->second.end() ? nullptr : &sit->second;
}

bool SenseDatabase::obligatory_class(const Word & verb, const Marker & marker) const {
    bool declared = false;
    auto vit = verbs_.find(verb);
    if (vit != verbs_.end()) {
        for (const auto & [id, rec] : vit->second) {
            auto it = rec.slots.find(marker);
            if (it == rec.slots.end()) continue;
            declared = true;
            if (it->second.obligatory) return true;
        }
    }
    return !declared && default_obligatory_.count(marker) != 0;
}

long SenseDatabase::example_count() const {
    long n = 0;
    for (const auto & [verb, senses] : verbs_)
        for (const auto & [id, rec] : senses) n += rec.frequency;
    return n;
}

void save_database(std::ostream & out, const SenseDatabase & db) {
    std::vector<SenseEntry> entries;
    for (const auto & [verb, senses] : db.verbs()) {
        for (const auto & [id, rec] : senses) {
            SenseEntry e{verb, id, rec.gloss, {}};
            for (const auto & [marker, data] : rec.slots) {
                Slot slot{data.obligatory, {}};
                for (const auto & [f, n] : data.fillers) slot.examples.insert(f);
                e.frame.slots.emplace(marker, std::move(slot));
            }
            entries.push_back(std::move(e));
        }
    }
    save_lexicon(out, entries);
}

} // namespace vsd
