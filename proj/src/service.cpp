#include "vsd/service.hpp"

#include "vsd/error.hpp"

#include <httplib.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>

namespace vsd {

namespace {

Reply error_reply(int status, const std::string & kind, const std::string & message, std::uint64_t revision) {
    return {status, Json{{"status", kind}, {"error", message}, {"revision", revision}}};
}

Json interpretation_json(const ScoredInterpretation & r) {
    Json ranking = Json::array();
    for (const auto & sc : r.ranking) {
        Json sims = Json::object();
        for (const auto & [c, v] : sc.sims) sims[c] = v;
        ranking.push_back({{"sense_id", sc.sense}, {"score", sc.score}, {"no_evidence", sc.no_evidence}, {"sims", sims}});
    }
    return {{"chosen", r.chosen}, {"certainty", r.certainty}, {"fallback", r.fallback}, {"ranking", ranking}};
}

// Parses {verb, slots} into an Example; throws ArgumentError on bad shape.
Example example_from(const Json & body) {
    if (!body.is_object() || !body.contains("verb") || !body["verb"].is_string())
        throw ArgumentError("body needs a string 'verb'");
    if (!body.contains("slots") || !body["slots"].is_object() || body["slots"].empty())
        throw ArgumentError("body needs a non-empty 'slots' object");
    Example x;
    x.verb = body["verb"].get<std::string>();
    for (const auto & [marker, filler] : body["slots"].items()) {
        if (!filler.is_string()) throw ArgumentError("slot fillers must be strings");
        x.slots[marker] = filler.get<std::string>();
    }
    if (body.contains("context") && body["context"].is_string()) x.context = body["context"].get<std::string>();
    return x;
}

} // namespace

Session::Session(SamplerState state, std::vector<Example> held_out, std::optional<std::string> log_path)
    : state_(std::move(state)), log_path_(std::move(log_path)) {
    if (!held_out.empty()) {
        tracker_.emplace(std::move(held_out), state_.database(), state_.measure());
        auto ccd = [this](const Word & v) -> const CcdProfile & { return state_.ccd(v); };
        curve_.push_back({0, tracker_->accuracy(state_.database(), ccd, state_.params().engine)});
    }
}

std::uint64_t Session::revision() const {
    std::lock_guard lock(mu_);
    return revision_;
}

SenseDatabase Session::database() const {
    std::lock_guard lock(mu_);
    return state_.database();
}

Json Session::payload(const Selection & sel) const {
    const auto & x = state_.pool().at(sel.id);
    const auto & e = state_.entry(sel.id);
    const auto & senses = state_.database().senses(x.verb);
    Json candidates = Json::array();
    for (const auto & sc : e.interp.ranking)
        candidates.push_back({{"sense_id", sc.sense}, {"gloss", senses.at(sc.sense).gloss}, {"score", sc.score}});
    Json slots = Json::object();
    for (const auto & [m, f] : x.slots) slots[m] = f;
    Json out{{"example_id", sel.id},
             {"verb", x.verb},
             {"slots", slots},
             {"candidates", candidates},
             {"certainty", e.interp.certainty},
             {"utility", sel.utility},
             {"strategy", to_string(state_.params().strategy)},
             {"revision", revision_}};
    if (x.context) out["context"] = *x.context;
    if (sel.auto_label) out["suggested_sense"] = *sel.auto_label;
    return out;
}

Reply Session::next() {
    std::lock_guard lock(mu_);
    if (!selection_ || selection_->first != revision_) selection_.emplace(revision_, state_.select_next());
    const auto & sel = selection_->second;
    if (!sel) return {409, Json{{"status", "exhausted"}, {"revision", revision_}}};
    return {200, payload(*sel)};
}

Reply Session::annotate(const Json & body) {
    std::lock_guard lock(mu_);
    auto count = [&](const char * key) {
        return body.contains(key) && body[key].is_number_integer() && body[key].get<long long>() >= 0;
    };
    if (!body.is_object() || !count("example_id") || !body.contains("sense_id") || !body["sense_id"].is_string() ||
        !count("revision"))
        return error_reply(400, "bad_request", "body needs example_id, sense_id and revision", revision_);
    auto id = body["example_id"].get<ExampleId>();
    auto sense = body["sense_id"].get<std::string>();
    auto rev = body["revision"].get<std::uint64_t>();
    if (rev != revision_) return error_reply(409, "stale", "revision is no longer current", revision_);
    auto it = state_.pool().find(id);
    if (it == state_.pool().end()) return error_reply(404, "not_found", "example is not in the pool", revision_);
    if (!state_.database().find(it->second.verb, sense))
        return error_reply(422, "unknown_sense", "'" + sense + "' is not a sense of '" + it->second.verb + "'",
                           revision_);

    Example x = it->second;
    state_.adopt(id, sense);
    ++revision_;
    if (tracker_) {
        tracker_->add(x, sense);
        auto ccd = [this](const Word & v) -> const CcdProfile & { return state_.ccd(v); };
        curve_.push_back({curve_.size(), tracker_->accuracy(state_.database(), ccd, state_.params().engine)});
    }
    if (log_path_) {
        std::ofstream log(*log_path_, std::ios::app);
        log << Json{{"example_id", id}, {"sense_id", sense}, {"revision", rev}}.dump() << '\n';
    }
    return {200, Json{{"db_size", state_.database().example_count()},
                      {"pool_size", state_.pool().size()},
                      {"revision", revision_}}};
}

Reply Session::state() const {
    std::lock_guard lock(mu_);
    Json senses = Json::object();
    for (const auto & [verb, map] : state_.database().verbs())
        for (const auto & [id, rec] : map) senses[verb][id] = rec.frequency;

    std::vector<double> cs;
    for (const auto & [id, e] : state_.cache()) cs.push_back(e.interp.certainty);
    Json hist{{"bins", 10}, {"counts", std::vector<std::size_t>(10, 0)}};
    if (!cs.empty()) {
        auto [lo, hi] = std::minmax_element(cs.begin(), cs.end());
        double min = *lo, max = *hi;
        std::vector<std::size_t> counts(10, 0);
        for (double c : cs) {
            std::size_t bin = 0;
            if (max > min) bin = std::min<std::size_t>(9, static_cast<std::size_t>(std::floor((c - min) / (max - min) * 10)));
            ++counts[bin];
        }
        hist = {{"bins", 10}, {"min", min}, {"max", max}, {"counts", counts}};
    }
    Json curve = Json::array();
    for (const auto & p : curve_) curve.push_back({{"annotated", p.annotated}, {"accuracy", p.accuracy}});
    return {200, Json{{"db_size", state_.database().example_count()},
                      {"pool_size", state_.pool().size()},
                      {"senses", senses},
                      {"histogram", hist},
                      {"curve", curve},
                      {"strategy", to_string(state_.params().strategy)},
                      {"revision", revision_}}};
}

Reply Session::disambiguate(const Json & body) const {
    std::lock_guard lock(mu_);
    Example x;
    try {
        x = example_from(body);
    } catch (const ArgumentError & e) {
        return error_reply(400, "bad_request", e.what(), revision_);
    }
    if (!state_.database().has_verb(x.verb))
        return error_reply(404, "unknown_verb", "verb not in database: '" + x.verb + "'", revision_);
    try {
        auto r = vsd::disambiguate(x, state_.database(), state_.ccd(x.verb), state_.measure(), state_.params().engine);
        auto out = interpretation_json(r);
        out["revision"] = revision_;
        return {200, out};
    } catch (const LookupError & e) {
        return error_reply(422, "unknown_word", e.what(), revision_);
    }
}

Reply Session::curve() const {
    std::lock_guard lock(mu_);
    Json points = Json::array();
    for (const auto & p : curve_) points.push_back({{"annotated", p.annotated}, {"accuracy", p.accuracy}});
    return {200, Json{{"points", points}, {"held_out", tracker_ ? tracker_->test().size() : 0}, {"revision", revision_}}};
}

std::size_t replay_log(Session & session, std::istream & log) {
    std::string line;
    std::size_t n = 0, line_no = 0;
    while (std::getline(log, line)) {
        ++line_no;
        if (line.empty()) continue;
        Json entry;
        try {
            entry = Json::parse(line);
        } catch (const Json::parse_error & e) {
            throw FormatError(std::string("malformed log entry: ") + e.what(), line_no);
        }
        if (!entry.is_object()) throw FormatError("log entry is not an object", line_no);
        entry["revision"] = session.revision();
        auto r = session.annotate(entry);
        if (r.status != 200) throw FormatError("log entry rejected: " + r.body.dump(), line_no);
        ++n;
    }
    return n;
}

void register_routes(httplib::Server & server, Session & session, const std::string & static_dir) {
    auto send = [](httplib::Response & res, const Reply & r) {
        res.status = r.status;
        res.set_content(r.body.dump(), "application/json");
    };
    auto parse = [](const httplib::Request & req, Json & out) {
        try {
            out = Json::parse(req.body);
            return true;
        } catch (const Json::parse_error &) {
            return false;
        }
    };
    server.Get("/api/sampler/next", [&session, send](const httplib::Request &, httplib::Response & res) {
        send(res, session.next());
    });
    server.Post("/api/sampler/annotate", [&session, send, parse](const httplib::Request & req, httplib::Response & res) {
        Json body;
        if (!parse(req, body)) return send(res, error_reply(400, "bad_request", "invalid JSON", session.revision()));
        send(res, session.annotate(body));
    });
    server.Get("/api/state", [&session, send](const httplib::Request &, httplib::Response & res) {
        send(res, session.state());
    });
    server.Post("/api/disambiguate", [&session, send, parse](const httplib::Request & req, httplib::Response & res) {
        Json body;
        if (!parse(req, body)) return send(res, error_reply(400, "bad_request", "invalid JSON", session.revision()));
        send(res, session.disambiguate(body));
    });
    server.Get("/api/curve", [&session, send](const httplib::Request &, httplib::Response & res) {
        send(res, session.curve());
    });
    if (!static_dir.empty() && std::filesystem::is_directory(static_dir)) server.set_mount_point("/", static_dir);
}

bool serve(Session & session, const ServeOptions & opts) {
    httplib::Server server;
    register_routes(server, session, opts.static_dir);
    return server.listen(opts.host, opts.port);
}

} // namespace vsd
