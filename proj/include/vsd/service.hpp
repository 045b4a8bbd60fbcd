#pragma once

#include "vsd/eval.hpp"
#include "vsd/sampler.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace httplib {
class Server;
}

namespace vsd {

using Json = nlohmann::json;

/// HTTP status plus JSON body.
struct Reply {
    int status = 200;
    Json body;
};

/// One sampler state behind a revision counter. Every accepted annotation
/// increments the revision; requests carrying an older revision are refused.
class Session {
public:
    /// `held_out` (labeled) enables the learning curve. Accepted annotations
    /// are appended to `log_path` as JSON lines when it is set.
    Session(SamplerState state, std::vector<Example> held_out = {}, std::optional<std::string> log_path = std::nullopt);

    Reply next();
    Reply annotate(const Json & body);
    Reply state() const;
    Reply disambiguate(const Json & body) const;
    Reply curve() const;

    std::uint64_t revision() const;
    /// Snapshot of the current database.
    SenseDatabase database() const;

private:
    Json payload(const Selection & sel) const;

    mutable std::mutex mu_;
    SamplerState state_;
    std::uint64_t revision_ = 0;
    std::optional<std::pair<std::uint64_t, std::optional<Selection>>> selection_;
    std::optional<HeldOutTracker> tracker_;
    std::vector<LearningPoint> curve_;
    std::optional<std::string> log_path_;
};

/// Applies a JSON-lines annotation log in order; returns the number of
/// accepted lines. Throws FormatError for a malformed or rejected line.
std::size_t replay_log(Session & session, std::istream & log);

/// Routes under /api plus static files from `static_dir` (if non-empty).
void register_routes(httplib::Server & server, Session & session, const std::string & static_dir = "");

struct ServeOptions {
    std::string host = "127.0.0.1";
    int port = 8080;
    std::string static_dir;
};

/// Blocks until the server stops. Returns false if the address cannot be bound.
bool serve(Session & session, const ServeOptions & opts);

} // namespace vsd
