#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sfc/canonical.hpp"
#include "sfc/errors.hpp"
#include "sfc/sha256.hpp"

namespace sfc {

enum class EventKind {
    ico_minted,
    buy,
    transfer,
    contract_created,
    invested,
    oracle_queried,
    settled,
    sweep_executed,
};

inline const char* event_kind_name(EventKind kind) {
    switch (kind) {
        case EventKind::ico_minted: return "IcoMinted";
        case EventKind::buy: return "Buy";
        case EventKind::transfer: return "Transfer";
        case EventKind::contract_created: return "ContractCreated";
        case EventKind::invested: return "Invested";
        case EventKind::oracle_queried: return "OracleQueried";
        case EventKind::settled: return "Settled";
        case EventKind::sweep_executed: return "SweepExecuted";
    }
    return "Unknown";
}

inline std::optional<EventKind> event_kind_from_name(std::string_view name) {
    for (EventKind kind : {EventKind::ico_minted, EventKind::buy, EventKind::transfer,
                           EventKind::contract_created, EventKind::invested,
                           EventKind::oracle_queried, EventKind::settled,
                           EventKind::sweep_executed}) {
        if (name == event_kind_name(kind)) return kind;
    }
    return std::nullopt;
}

// One hash-chained record of a successful state transition.
//
//   hash = SHA-256(prev_hash_hex || canonical_json({kind, payload, seq}))
//
// Event 0 chains from SHA-256("SFC-GENESIS"). Export format is one canonical
// JSON object {hash, kind, payload, prev_hash, seq} per line.
struct AuditEvent {
    std::uint64_t seq = 0;
    EventKind kind = EventKind::ico_minted;
    Json payload;
    std::string prev_hash;
    std::string hash;

    Json to_json() const {
        return Json{{"hash", hash},
                    {"kind", event_kind_name(kind)},
                    {"payload", payload},
                    {"prev_hash", prev_hash},
                    {"seq", seq}};
    }

    std::string canonical_line() const { return canonical_dump(to_json()); }
};

inline std::string chain_preimage(std::uint64_t seq, std::string_view kind_name,
                                  const Json& payload, std::string_view prev_hash) {
    Json body{{"kind", std::string(kind_name)}, {"payload", payload}, {"seq", seq}};
    return std::string(prev_hash) + canonical_dump(body);
}

struct EventFilter {
    std::optional<std::string> account;   // matches any string value in the payload
    std::optional<std::string> contract;  // matches payload["contract"]
    std::optional<EventKind> kind;
    std::optional<std::pair<std::uint64_t, std::uint64_t>> seq_range;  // inclusive
};

namespace detail {

inline bool payload_mentions(const Json& value, const std::string& account) {
    if (value.is_string()) return value.get_ref<const std::string&>() == account;
    if (value.is_object() || value.is_array())
        for (const auto& item : value)
            if (payload_mentions(item, account)) return true;
    return false;
}

} // namespace detail

// Append-only hash chain. Appends happen only from engine mutations that
// already succeeded, so append itself cannot fail on a valid log.
class AuditLog {
public:
    static constexpr std::string_view genesis_tag = "SFC-GENESIS";

    static const std::string& genesis_anchor() {
        static const std::string anchor = sha256_hex(genesis_tag);
        return anchor;
    }

    const AuditEvent& append(EventKind kind, Json payload) {
        require_hashable_payload(payload);
        AuditEvent event;
        event.seq = events_.size();
        event.kind = kind;
        event.payload = std::move(payload);
        event.prev_hash = head_hash();
        event.hash = sha256_hex(chain_preimage(event.seq, event_kind_name(kind), event.payload, event.prev_hash));
        events_.push_back(std::move(event));
        return events_.back();
    }

    const std::vector<AuditEvent>& events() const noexcept { return events_; }
    std::size_t size() const noexcept { return events_.size(); }
    bool empty() const noexcept { return events_.empty(); }

    const std::string& head_hash() const {
        return events_.empty() ? genesis_anchor() : events_.back().hash;
    }

    std::vector<AuditEvent> query(const EventFilter& filter) const {
        std::vector<AuditEvent> out;
        for (const AuditEvent& event : events_) {
            if (filter.kind && *filter.kind != event.kind) continue;
            if (filter.seq_range &&
                (event.seq < filter.seq_range->first || event.seq > filter.seq_range->second))
                continue;
            if (filter.contract) {
                auto it = event.payload.find("contract");
                if (it == event.payload.end() || !it->is_string() ||
                    it->get_ref<const std::string&>() != *filter.contract)
                    continue;
            }
            if (filter.account && !detail::payload_mentions(event.payload, *filter.account)) continue;
            out.push_back(event);
        }
        return out;
    }

    // Newline-delimited canonical JSON, one event per line, seq order.
    std::string export_lines() const {
        std::string out;
        for (const AuditEvent& event : events_) {
            out += event.canonical_line();
            out += '\n';
        }
        return out;
    }

    void export_file(const std::string& path) const {
        std::ofstream out(path, std::ios::binary);
        if (!out) fail(Errc::io_error, "cannot open '" + path + "' for writing");
        out << export_lines();
        if (!out) fail(Errc::io_error, "failed writing '" + path + "'");
    }

private:
    std::vector<AuditEvent> events_;
};

// True iff every event's hash recomputes from its predecessor and the chain
// anchors at the genesis digest. Returns false rather than throwing.
inline bool verify_chain(const AuditLog& log) {
    std::string prev = AuditLog::genesis_anchor();
    std::uint64_t expected_seq = 0;
    for (const AuditEvent& event : log.events()) {
        if (event.seq != expected_seq++) return false;
        if (event.prev_hash != prev) return false;
        if (event.hash != sha256_hex(chain_preimage(event.seq, event_kind_name(event.kind), event.payload, event.prev_hash)))
            return false;
        prev = event.hash;
    }
    return true;
}

// Validates exported bytes: every line must be the byte-exact canonical
// encoding of a {hash, kind, payload, prev_hash, seq} object whose hash
// recomputes and chains. Any single-byte change makes this return false.
inline bool verify_chain_lines(std::string_view content) {
    std::string prev = AuditLog::genesis_anchor();
    std::uint64_t expected_seq = 0;
    std::size_t pos = 0;
    while (pos < content.size()) {
        std::size_t end = content.find('\n', pos);
        if (end == std::string_view::npos) return false;  // truncated final line
        std::string_view line = content.substr(pos, end - pos);
        pos = end + 1;

        Json event = Json::parse(line, nullptr, false);
        if (event.is_discarded() || !event.is_object() || event.size() != 5) return false;
        if (!event.contains("hash") || !event.contains("kind") || !event.contains("payload") ||
            !event.contains("prev_hash") || !event.contains("seq"))
            return false;
        if (!event["hash"].is_string() || !event["kind"].is_string() ||
            !event["prev_hash"].is_string() || !event["seq"].is_number_unsigned())
            return false;
        if (event.dump() != line) return false;  // non-canonical bytes

        const auto& hash = event["hash"].get_ref<const std::string&>();
        const auto& kind = event["kind"].get_ref<const std::string&>();
        const auto& prev_hash = event["prev_hash"].get_ref<const std::string&>();
        const std::uint64_t seq = event["seq"].get<std::uint64_t>();

        if (seq != expected_seq++) return false;
        if (prev_hash != prev) return false;
        if (hash != sha256_hex(chain_preimage(seq, kind, event["payload"], prev_hash))) return false;
        prev = hash;
    }
    return true;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::io_error, "cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline bool verify_chain_file(const std::string& path) {
    return verify_chain_lines(read_file(path));
}

// Parses exported lines back into events. Expects a valid chain; callers that
// only need a boolean answer should use verify_chain_lines instead.
inline std::vector<AuditEvent> import_events(std::string_view content) {
    if (!verify_chain_lines(content))
        fail(Errc::validation_error, "audit log content does not verify");
    std::vector<AuditEvent> out;
    std::size_t pos = 0;
    while (pos < content.size()) {
        std::size_t end = content.find('\n', pos);
        std::string_view line = content.substr(pos, end - pos);
        pos = end + 1;

        Json parsed = Json::parse(line);
        AuditEvent event;
        event.seq = parsed["seq"].get<std::uint64_t>();
        auto kind = event_kind_from_name(parsed["kind"].get_ref<const std::string&>());
        if (!kind) fail(Errc::parse_error, "unknown event kind in audit log");
        event.kind = *kind;
        event.payload = parsed["payload"];
        event.prev_hash = parsed["prev_hash"].get<std::string>();
        event.hash = parsed["hash"].get<std::string>();
        out.push_back(std::move(event));
    }
    return out;
}

} // namespace sfc
