#pragma once

#include <map>
#include <string>
#include <utility>
#include <variant>

#include "sfc/canonical.hpp"
#include "sfc/errors.hpp"
#include "sfc/geo.hpp"
#include "sfc/sha256.hpp"
#include "sfc/simtime.hpp"

namespace sfc {

// The oracle's answer to "was this parcel preserved?". The verdict is the
// threshold comparison (inclusive, so an exactly-met threshold favors the
// guardian); the evidence hash pins the inputs the verdict was computed from.
struct OracleVerdict {
    std::string contract_id;
    double preserved_fraction = 0.0;
    bool verdict = false;
    std::string evidence_hash;
    SimTime issued_at;
};

// Deterministic lookup table for protocol tests and demonstrations. Entries
// map contract id -> verdict; hits report preserved_fraction 1.0 (true) or 0.0.
class ScriptedOracle {
public:
    ScriptedOracle() = default;
    explicit ScriptedOracle(std::map<std::string, bool> verdicts) : verdicts_(std::move(verdicts)) {}

    ScriptedOracle& set(const std::string& contract_id, bool verdict) {
        verdicts_[contract_id] = verdict;
        return *this;
    }

    const std::map<std::string, bool>& table() const noexcept { return verdicts_; }

private:
    std::map<std::string, bool> verdicts_;
};

// Vegetation-cover oracle over two raster snapshots of the same extent.
struct GeoRasterOracle {
    LandCoverGrid grid_t0;
    LandCoverGrid grid_t1;
};

using OracleHandle = std::variant<ScriptedOracle, GeoRasterOracle>;

inline const char* oracle_kind_name(const OracleHandle& oracle) {
    return std::holds_alternative<ScriptedOracle>(oracle) ? "scripted" : "geo_raster";
}

inline OracleVerdict scripted_verdict(const ScriptedOracle& oracle, const std::string& contract_id,
                                      SimTime now) {
    auto it = oracle.table().find(contract_id);
    if (it == oracle.table().end())
        fail(Errc::no_script_entry, "no scripted verdict for contract '" + contract_id + "'");
    OracleVerdict verdict;
    verdict.contract_id = contract_id;
    verdict.verdict = it->second;
    verdict.preserved_fraction = it->second ? 1.0 : 0.0;
    verdict.evidence_hash = sha256_hex(canonical_dump(
        Json{{"contract", contract_id}, {"kind", "scripted"}, {"verdict", it->second}}));
    verdict.issued_at = now;
    return verdict;
}

inline OracleVerdict geo_verdict(const GeoRasterOracle& oracle, const Parcel& parcel, double threshold,
                                 const std::string& contract_id, SimTime now) {
    OracleVerdict verdict;
    verdict.contract_id = contract_id;
    verdict.preserved_fraction = preserved_fraction(parcel, oracle.grid_t0, oracle.grid_t1);
    verdict.verdict = verdict.preserved_fraction >= threshold;
    verdict.evidence_hash = sha256_hex(canonical_dump(Json{{"grid_t0", oracle.grid_t0.to_json()},
                                                           {"grid_t1", oracle.grid_t1.to_json()},
                                                           {"parcel", parcel.to_json()}}));
    verdict.issued_at = now;
    return verdict;
}

inline OracleVerdict consult(const OracleHandle& oracle, const Parcel& parcel, double threshold,
                             const std::string& contract_id, SimTime now) {
    if (const auto* scripted = std::get_if<ScriptedOracle>(&oracle))
        return scripted_verdict(*scripted, contract_id, now);
    return geo_verdict(std::get<GeoRasterOracle>(oracle), parcel, threshold, contract_id, now);
}

} // namespace sfc
