#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sfc/amount.hpp"
#include "sfc/canonical.hpp"
#include "sfc/engine.hpp"
#include "sfc/errors.hpp"

namespace sfc {

// Scenario files serialize complete protocol flows: declared wallets, a
// one-time ICO, then an ordered list of steps driven by the simulated clock,
// with optional expectations on the final state.

struct AdvanceDaysStep {
    std::uint64_t days = 0;
};
struct BuyStep {
    std::string investor;
    TokenAmount amount;
};
struct TransferStep {
    std::string from;
    std::string to;
    TokenAmount amount;
};
struct CreateContractStep {
    std::optional<std::string> contract;  // omitted -> engine assigns c1, c2, ...
    std::string landowner;
    Parcel parcel;
    SimTime maturity_at;
    double threshold = 0.95;
};
struct InvestStep {
    std::string investor;
    std::string contract;
    TokenAmount amount;
};
struct SweepStep {};
struct SettleStep {
    std::string contract;
    OracleHandle oracle;
};

using ScenarioStep = std::variant<AdvanceDaysStep, BuyStep, TransferStep, CreateContractStep,
                                  InvestStep, SweepStep, SettleStep>;

inline const char* step_op_name(const ScenarioStep& step) {
    struct Namer {
        const char* operator()(const AdvanceDaysStep&) const { return "advance_days"; }
        const char* operator()(const BuyStep&) const { return "buy"; }
        const char* operator()(const TransferStep&) const { return "transfer"; }
        const char* operator()(const CreateContractStep&) const { return "create_contract"; }
        const char* operator()(const InvestStep&) const { return "invest"; }
        const char* operator()(const SweepStep&) const { return "sweep"; }
        const char* operator()(const SettleStep&) const { return "settle"; }
    };
    return std::visit(Namer{}, step);
}

struct ScenarioExpectations {
    std::map<std::string, TokenAmount> balances;
    std::map<std::string, ContractState> contract_states;

    bool empty() const { return balances.empty() && contract_states.empty(); }
};

struct Scenario {
    std::uint32_t decimals = 2;
    TokenAmount ico_supply;
    std::string fund;
    std::vector<std::pair<std::string, Role>> accounts;
    std::vector<ScenarioStep> steps;
    ScenarioExpectations expectations;
};

namespace detail {

inline TokenAmount amount_from_json(const Json& value, std::uint32_t decimals, const std::string& where) {
    if (value.is_string()) return parse_amount(value.get_ref<const std::string&>(), decimals);
    if (value.is_number_unsigned() || value.is_number_integer()) {
        if (value.is_number_integer() && !value.is_number_unsigned() && value.get<std::int64_t>() < 0)
            fail(Errc::invalid_amount, where + ": amounts are non-negative");
        return parse_amount(std::to_string(value.get<std::uint64_t>()), decimals);
    }
    if (value.is_number_float()) {
        // Shortest round-trip form re-parsed as a decimal string; rejects
        // anything finer than the ledger's precision instead of rounding.
        return parse_amount(canonical_dump(value), decimals);
    }
    fail(Errc::validation_error, where + ": amount must be a number or decimal string");
}

inline const Json& require_field(const Json& object, const char* key, const std::string& where) {
    if (!object.contains(key)) fail(Errc::validation_error, where + ": missing '" + key + "'");
    return object.at(key);
}

inline std::string require_string(const Json& object, const char* key, const std::string& where) {
    const Json& value = require_field(object, key, where);
    if (!value.is_string()) fail(Errc::validation_error, where + ": '" + key + "' must be a string");
    return value.get<std::string>();
}

inline Role role_from_name(const std::string& name, const std::string& where) {
    if (name == "fund") return Role::fund;
    if (name == "investor") return Role::investor;
    if (name == "landowner") return Role::landowner;
    fail(Errc::validation_error, where + ": unknown role '" + name + "' (escrow wallets are engine-created)");
}

inline ContractState contract_state_from_name(const std::string& name, const std::string& where) {
    if (name == "open") return ContractState::open;
    if (name == "settled_paid") return ContractState::settled_paid;
    if (name == "settled_reverted") return ContractState::settled_reverted;
    fail(Errc::validation_error, where + ": unknown contract state '" + name + "'");
}

inline LandCoverGrid grid_from_source(const Json& value, const std::filesystem::path& base_dir,
                                    const std::string& where) {
    try {
        if (value.is_string()) {
            std::filesystem::path path = value.get<std::string>();
            if (path.is_relative()) path = base_dir / path;
            return LandCoverGrid::from_json(Json::parse(read_file(path.string())));
        }
        return LandCoverGrid::from_json(value);
    } catch (const Json::parse_error& e) {
        fail(Errc::parse_error, where + ": " + e.what());
    }
}

inline OracleHandle oracle_from_json(const Json& value, const std::filesystem::path& base_dir,
                                     const std::string& where) {
    if (!value.is_object()) fail(Errc::validation_error, where + ": oracle must be an object");
    std::string kind = require_string(value, "kind", where);
    if (kind == "scripted") {
        const Json& verdicts = require_field(value, "verdicts", where);
        if (!verdicts.is_object()) fail(Errc::validation_error, where + ": 'verdicts' must map contract ids to booleans");
        std::map<std::string, bool> table;
        for (const auto& [contract, verdict] : verdicts.items()) {
            if (!verdict.is_boolean()) fail(Errc::validation_error, where + ": scripted verdicts must be booleans");
            table[contract] = verdict.get<bool>();
        }
        return ScriptedOracle(std::move(table));
    }
    if (kind == "geo_raster") {
        return GeoRasterOracle{grid_from_source(require_field(value, "grid_t0", where), base_dir, where),
                               grid_from_source(require_field(value, "grid_t1", where), base_dir, where)};
    }
    fail(Errc::validation_error, where + ": oracle kind must be 'scripted' or 'geo_raster'");
}

} // namespace detail

// Parses and validates a scenario document. Grid fixture paths inside settle
// steps resolve relative to base_dir (the scenario file's directory).
inline Scenario scenario_from_json(const Json& doc, const std::filesystem::path& base_dir = ".") {
    using namespace detail;
    if (!doc.is_object()) fail(Errc::validation_error, "scenario must be a JSON object");

    Scenario scenario;
    if (doc.contains("decimals")) {
        const Json& d = doc.at("decimals");
        if (!d.is_number_unsigned() || d.get<std::uint64_t>() > 9)
            fail(Errc::validation_error, "'decimals' must be an integer in [0, 9]");
        scenario.decimals = d.get<std::uint32_t>();
    }

    const Json& ico = require_field(doc, "ico", "ico");
    scenario.fund = require_string(ico, "fund", "ico");
    scenario.ico_supply = amount_from_json(require_field(ico, "supply", "ico"), scenario.decimals, "ico.supply");
    if (scenario.ico_supply.is_zero()) fail(Errc::validation_error, "ico.supply must be positive");

    const Json& accounts = require_field(doc, "accounts", "accounts");
    if (!accounts.is_array() || accounts.empty())
        fail(Errc::validation_error, "'accounts' must be a non-empty array");
    bool fund_declared = false;
    for (std::size_t i = 0; i < accounts.size(); ++i) {
        const std::string where = "accounts[" + std::to_string(i) + "]";
        const Json& entry = accounts.at(i);
        std::string id = require_string(entry, "id", where);
        if (id.starts_with("escrow:"))
            fail(Errc::validation_error, where + ": the 'escrow:' prefix is reserved for contract wallets");
        Role role = role_from_name(require_string(entry, "role", where), where);
        for (const auto& [existing, _] : scenario.accounts)
            if (existing == id) fail(Errc::validation_error, where + ": duplicate account id '" + id + "'");
        if (role == Role::fund) {
            if (fund_declared) fail(Errc::validation_error, where + ": more than one fund account");
            fund_declared = true;
        }
        scenario.accounts.emplace_back(std::move(id), role);
    }
    if (!fund_declared) fail(Errc::validation_error, "no account with role 'fund'");

    auto declared = [&](const std::string& id) {
        for (const auto& [existing, _] : scenario.accounts)
            if (existing == id) return true;
        return false;
    };
    auto require_declared = [&](const std::string& id, const std::string& where) {
        if (!declared(id)) fail(Errc::validation_error, where + ": account '" + id + "' is not declared");
    };
    require_declared(scenario.fund, "ico.fund");

    const Json& steps = require_field(doc, "steps", "steps");
    if (!steps.is_array()) fail(Errc::validation_error, "'steps' must be an array");
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const std::string where = "steps[" + std::to_string(i) + "]";
        const Json& step = steps.at(i);
        std::string op = require_string(step, "op", where);
        if (op == "advance_days") {
            const Json& days = require_field(step, "days", where);
            if (!days.is_number_unsigned()) fail(Errc::validation_error, where + ": 'days' must be a non-negative integer");
            scenario.steps.push_back(AdvanceDaysStep{days.get<std::uint64_t>()});
        } else if (op == "buy") {
            std::string investor = require_string(step, "investor", where);
            require_declared(investor, where);
            scenario.steps.push_back(
                BuyStep{investor, detail::amount_from_json(require_field(step, "amount", where), scenario.decimals, where)});
        } else if (op == "transfer") {
            std::string from = require_string(step, "from", where);
            std::string to = require_string(step, "to", where);
            require_declared(from, where);
            require_declared(to, where);
            scenario.steps.push_back(TransferStep{
                from, to, detail::amount_from_json(require_field(step, "amount", where), scenario.decimals, where)});
        } else if (op == "create_contract") {
            CreateContractStep create;
            if (step.contains("contract")) create.contract = require_string(step, "contract", where);
            create.landowner = require_string(step, "landowner", where);
            require_declared(create.landowner, where);
            try {
                create.parcel = Parcel::from_json(require_field(step, "parcel", where));
            } catch (const Error& e) {
                fail(Errc::validation_error, where + ": " + e.what());
            }
            const Json& maturity = require_field(step, "maturity_day", where);
            if (!maturity.is_number_unsigned())
                fail(Errc::validation_error, where + ": 'maturity_day' must be a non-negative integer");
            create.maturity_at = SimTime{maturity.get<std::uint64_t>()};
            const Json& threshold = require_field(step, "threshold", where);
            if (!threshold.is_number()) fail(Errc::validation_error, where + ": 'threshold' must be a number");
            create.threshold = threshold.get<double>();
            scenario.steps.push_back(std::move(create));
        } else if (op == "invest") {
            std::string investor = require_string(step, "investor", where);
            require_declared(investor, where);
            scenario.steps.push_back(
                InvestStep{investor, require_string(step, "contract", where),
                           detail::amount_from_json(require_field(step, "amount", where), scenario.decimals, where)});
        } else if (op == "sweep") {
            scenario.steps.push_back(SweepStep{});
        } else if (op == "settle") {
            scenario.steps.push_back(SettleStep{require_string(step, "contract", where),
                                                detail::oracle_from_json(require_field(step, "oracle", where),
                                                                         base_dir, where)});
        } else {
            fail(Errc::validation_error, where + ": unknown op '" + op + "'");
        }
    }

    if (doc.contains("expectations")) {
        const Json& expect = doc.at("expectations");
        if (!expect.is_object()) fail(Errc::validation_error, "'expectations' must be an object");
        if (expect.contains("balances"))
            for (const auto& [id, amount] : expect.at("balances").items())
                scenario.expectations.balances[id] =
                    detail::amount_from_json(amount, scenario.decimals, "expectations.balances." + id);
        if (expect.contains("contracts"))
            for (const auto& [id, state] : expect.at("contracts").items()) {
                if (!state.is_string())
                    fail(Errc::validation_error, "expectations.contracts." + id + " must be a state string");
                scenario.expectations.contract_states[id] =
                    detail::contract_state_from_name(state.get<std::string>(), "expectations.contracts." + id);
            }
    }
    return scenario;
}

inline Scenario load_scenario_file(const std::string& path) {
    Json doc = Json::parse(read_file(path), nullptr, false);
    if (doc.is_discarded()) fail(Errc::parse_error, "'" + path + "' is not valid JSON");
    return scenario_from_json(doc, std::filesystem::path(path).parent_path());
}

struct ExpectationResult {
    std::string description;
    bool passed = false;
};

struct StepFailure {
    std::size_t step_index = 0;
    std::string op;
    Errc code = Errc::validation_error;
    std::string message;
};

// Outcome of one scenario run. The run halts at the first failing step; the
// report then carries the failure and the state reached so far (the audit
// log's last event is the last successful step's).
struct RunReport {
    std::uint32_t decimals = 2;
    std::map<std::string, TokenAmount> balances;
    TokenAmount total_supply;
    std::map<std::string, ContractState> contract_states;
    std::vector<SweepReport> sweep_reports;
    std::string head_hash;
    std::uint64_t event_count = 0;
    SimTime final_time;
    std::vector<ExpectationResult> expectations;
    std::optional<StepFailure> failure;

    bool passed() const {
        if (failure) return false;
        for (const ExpectationResult& e : expectations)
            if (!e.passed) return false;
        return true;
    }

    std::string to_text() const {
        std::ostringstream out;
        out << "final day: " << final_time.days << "\n";
        out << "balances:\n";
        for (const auto& [id, amount] : balances)
            out << "  " << id << ": " << format_amount(amount, decimals) << "\n";
        out << "total supply: " << format_amount(total_supply, decimals) << "\n";
        if (!contract_states.empty()) {
            out << "contracts:\n";
            for (const auto& [id, state] : contract_states)
                out << "  " << id << ": " << contract_state_name(state) << "\n";
        }
        for (const SweepReport& sweep : sweep_reports) {
            out << "sweep at day " << sweep.sweep_time.days << ": " << format_amount(sweep.total(), decimals)
                << " to fund (" << sweep.entries.size() << " wallets)\n";
        }
        out << "audit events: " << event_count << "\n";
        out << "head hash: " << head_hash << "\n";
        for (const ExpectationResult& e : expectations)
            out << (e.passed ? "PASS " : "FAIL ") << e.description << "\n";
        if (failure)
            out << "FAILED at step " << failure->step_index << " (" << failure->op
                << "): " << failure->message << "\n";
        out << (passed() ? "result: PASS" : "result: FAIL") << "\n";
        return out.str();
    }
};

namespace detail {

struct StepRunner {
    Engine& engine;
    std::vector<SweepReport>& sweeps;

    void operator()(const AdvanceDaysStep& step) { engine.advance_clock(step.days); }
    void operator()(const BuyStep& step) { engine.buy(step.investor, step.amount); }
    void operator()(const TransferStep& step) { engine.transfer(step.from, step.to, step.amount); }
    void operator()(const CreateContractStep& step) {
        engine.create_contract(step.landowner, step.parcel, step.maturity_at, step.threshold, step.contract);
    }
    void operator()(const InvestStep& step) { engine.invest(step.investor, step.contract, step.amount); }
    void operator()(const SweepStep&) { sweeps.push_back(engine.run_annual_sweep()); }
    void operator()(const SettleStep& step) { engine.settle(step.contract, step.oracle); }
};

} // namespace detail

// Executes the scenario against a fresh engine. The engine reference (when
// given) receives the engine used for the run so callers can export the log.
inline RunReport run_scenario(const Scenario& scenario, Engine* engine_out = nullptr) {
    Engine local;
    Engine& engine = engine_out ? *engine_out : local;
    engine = Engine(EngineConfig{scenario.decimals});

    RunReport report;
    report.decimals = scenario.decimals;

    for (const auto& [id, role] : scenario.accounts) engine.add_account(id, role);
    engine.ico_mint(scenario.ico_supply, scenario.fund);

    detail::StepRunner runner{engine, report.sweep_reports};
    for (std::size_t i = 0; i < scenario.steps.size(); ++i) {
        try {
            std::visit(runner, scenario.steps[i]);
        } catch (const Error& e) {
            report.failure = StepFailure{i, step_op_name(scenario.steps[i]), e.code(), e.what()};
            break;
        }
    }

    report.balances = engine.ledger().balances();
    report.total_supply = engine.total_supply();
    for (const auto& [id, contract] : engine.contracts().all()) report.contract_states[id] = contract.state;
    report.head_hash = engine.audit_log().head_hash();
    report.event_count = engine.audit_log().size();
    report.final_time = engine.now();

    if (!report.failure) {
        for (const auto& [id, expected] : scenario.expectations.balances) {
            bool known = report.balances.contains(id);
            bool ok = known && report.balances.at(id) == expected;
            std::string actual = known ? format_amount(report.balances.at(id), scenario.decimals) : "<missing>";
            report.expectations.push_back(
                {"balance " + id + " == " + format_amount(expected, scenario.decimals) + " (got " + actual + ")", ok});
        }
        for (const auto& [id, expected] : scenario.expectations.contract_states) {
            bool known = report.contract_states.contains(id);
            bool ok = known && report.contract_states.at(id) == expected;
            std::string actual = known ? contract_state_name(report.contract_states.at(id)) : "<missing>";
            report.expectations.push_back(
                {"contract " + id + " == " + std::string(contract_state_name(expected)) + " (got " + actual + ")", ok});
        }
    }
    return report;
}

// Replays an exported audit log back into balances: the explorer's "whose
// tokens are where" view, derived purely from the public event stream.
struct ReplayedState {
    std::uint32_t decimals = 2;
    std::string fund;
    std::map<std::string, TokenAmount> balances;
    TokenAmount total_supply;
    std::uint64_t event_count = 0;
    std::string head_hash;
};

inline ReplayedState replay_events(const std::vector<AuditEvent>& events) {
    ReplayedState state;
    auto credit = [&](const std::string& id, TokenAmount amount) {
        auto [it, _] = state.balances.try_emplace(id, TokenAmount{});
        it->second += amount;
    };
    auto debit = [&](const std::string& id, TokenAmount amount) {
        auto it = state.balances.find(id);
        if (it == state.balances.end() || it->second < amount)
            fail(Errc::validation_error, "event stream debits more than '" + id + "' holds");
        it->second -= amount;
    };
    auto units = [](const Json& payload, const char* key) {
        return TokenAmount::from_units(payload.at(key).get<std::uint64_t>());
    };

    for (const AuditEvent& event : events) {
        const Json& p = event.payload;
        switch (event.kind) {
            case EventKind::ico_minted: {
                state.fund = p.at("fund").get<std::string>();
                state.decimals = p.at("decimals").get<std::uint32_t>();
                state.total_supply = units(p, "supply_units");
                credit(state.fund, state.total_supply);
                break;
            }
            case EventKind::buy:
            case EventKind::transfer: {
                TokenAmount amount = units(p, "amount_units");
                debit(p.at("from").get<std::string>(), amount);
                credit(p.at("to").get<std::string>(), amount);
                break;
            }
            case EventKind::contract_created: {
                credit(p.at("escrow_account").get<std::string>(), TokenAmount{});
                break;
            }
            case EventKind::invested: {
                TokenAmount amount = units(p, "amount_units");
                debit(p.at("investor").get<std::string>(), amount);
                credit(p.at("escrow_account").get<std::string>(), amount);
                break;
            }
            case EventKind::oracle_queried:
                break;
            case EventKind::settled: {
                TokenAmount amount = units(p, "amount_units");
                if (!amount.is_zero()) {
                    debit(p.at("escrow_account").get<std::string>(), amount);
                    credit(p.at("beneficiary").get<std::string>(), amount);
                }
                break;
            }
            case EventKind::sweep_executed: {
                TokenAmount amount = units(p, "amount_units");
                debit(p.at("investor").get<std::string>(), amount);
                credit(state.fund, amount);
                break;
            }
        }
        state.head_hash = event.hash;
        ++state.event_count;
    }
    return state;
}

} // namespace sfc
