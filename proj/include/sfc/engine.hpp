#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sfc/amount.hpp"
#include "sfc/audit.hpp"
#include "sfc/canonical.hpp"
#include "sfc/errors.hpp"
#include "sfc/escrow.hpp"
#include "sfc/geo.hpp"
#include "sfc/ledger.hpp"
#include "sfc/oracle.hpp"
#include "sfc/simtime.hpp"
#include "sfc/sweep.hpp"

namespace sfc {

struct EngineConfig {
    std::uint32_t decimals = 2;
};

// Confirmation returned to an investor: the contract invested in and the
// escrow pot after the contribution landed.
struct InvestReceipt {
    std::string contract_id;
    TokenAmount escrow_total;
};

// Composition root: deterministic clock, token ledger, escrow contracts,
// sweep schedule and the hash-chained audit log, mutated in one total order.
// Every successful mutation appends its audit events; failed operations are
// atomic no-ops and leave no trace in the log.
//
// Single-writer: mutate from one thread at a time. Reads against a const
// Engine are snapshot-consistent and freely concurrent.
class Engine {
public:
    explicit Engine(EngineConfig config = {}) : config_(config) {
        pow10_units(config_.decimals);  // reject unrepresentable precision up front
    }

    std::uint32_t decimals() const noexcept { return config_.decimals; }
    SimTime now() const noexcept { return now_; }
    const Ledger& ledger() const noexcept { return ledger_; }
    const AuditLog& audit_log() const noexcept { return log_; }
    const ContractRegistry& contracts() const noexcept { return contracts_; }
    const SweepPolicy& sweep_policy() const noexcept { return sweep_policy_; }

    void add_account(const std::string& id, Role role) {
        if (role == Role::escrow)
            fail(Errc::validation_error, "escrow accounts are created by contracts, not declared");
        ledger_.add_account(id, role);
    }

    // --- ledger operations ---------------------------------------------

    void ico_mint(TokenAmount supply, const std::string& fund) {
        ledger_.ico_mint(supply, fund);
        log_.append(EventKind::ico_minted, Json{{"day", now_.days},
                                                {"decimals", config_.decimals},
                                                {"fund", fund},
                                                {"supply_units", supply.units()}});
    }

    void transfer(const std::string& from, const std::string& to, TokenAmount amount) {
        ledger_.transfer(from, to, amount);
        log_.append(EventKind::transfer, movement_payload(from, to, amount));
    }

    void buy(const std::string& investor, TokenAmount amount) {
        ledger_.buy(investor, amount);
        log_.append(EventKind::buy, movement_payload(ledger_.fund_account(), investor, amount));
    }

    // Allowances are ledger bookkeeping, not a state transition the audit
    // log tracks (the event vocabulary has no Approval kind).
    void approve(const std::string& owner, const std::string& spender, TokenAmount amount) {
        ledger_.approve(owner, spender, amount);
    }

    TokenAmount allowance(const std::string& owner, const std::string& spender) const {
        return ledger_.allowance(owner, spender);
    }

    TokenAmount balance_of(const std::string& id) const { return ledger_.balance_of(id); }
    TokenAmount total_supply() const { return ledger_.total_supply(); }

    // --- escrow operations ----------------------------------------------

    std::string create_contract(const std::string& landowner, const Parcel& parcel, SimTime maturity_at,
                                double threshold, std::optional<std::string> contract_id = std::nullopt) {
        if (ledger_.role_of(landowner) != Role::landowner)
            fail(Errc::not_landowner, "'" + landowner + "' is not a landowner account");
        parcel.validate();
        if (maturity_at <= now_) fail(Errc::maturity_in_past, "maturity must lie after the current day");
        if (!(threshold > 0.0 && threshold <= 1.0))
            fail(Errc::invalid_threshold, "threshold must be in (0, 1]");

        EscrowContract contract;
        contract.id = contract_id ? *contract_id : contracts_.allocate_id();
        if (contracts_.contains(contract.id))
            fail(Errc::duplicate_contract, "contract '" + contract.id + "' already exists");
        contract.landowner = landowner;
        contract.escrow_account = "escrow:" + contract.id;
        contract.parcel = parcel;
        contract.created_at = now_;
        contract.maturity_at = maturity_at;
        contract.threshold = threshold;

        ledger_.add_account(contract.escrow_account, Role::escrow);
        const EscrowContract& stored = contracts_.add(std::move(contract));
        log_.append(EventKind::contract_created,
                    Json{{"contract", stored.id},
                         {"day", now_.days},
                         {"escrow_account", stored.escrow_account},
                         {"landowner", stored.landowner},
                         {"maturity_day", stored.maturity_at.days},
                         {"parcel", parcel_payload(stored.parcel)},
                         {"threshold", canonical_double(stored.threshold)}});
        return stored.id;
    }

    InvestReceipt invest(const std::string& investor, const std::string& contract_id, TokenAmount amount) {
        EscrowContract& contract = contracts_.get_mut(contract_id);
        if (!contract.is_open())
            fail(Errc::contract_not_open, "contract '" + contract_id + "' is settled");
        if (now_ >= contract.maturity_at)
            fail(Errc::past_maturity, "contract '" + contract_id + "' is past maturity");
        ledger_.escrow_deposit(investor, contract.escrow_account, amount);
        contract.contributions.push_back({investor, amount, now_});
        TokenAmount total = contract.escrowed();
        log_.append(EventKind::invested, Json{{"amount_units", amount.units()},
                                              {"contract", contract.id},
                                              {"day", now_.days},
                                              {"escrow_account", contract.escrow_account},
                                              {"escrow_total_units", total.units()},
                                              {"investor", investor}});
        return {contract.id, total};
    }

    // Consults the oracle exactly once, then releases the whole pot to the
    // landowner (true verdict) or back to the fund (false). An oracle that
    // cannot answer raises OracleFailure and leaves the contract open and
    // retryable with nothing appended to the log.
    SettlementOutcome settle(const std::string& contract_id, const OracleHandle& oracle) {
        EscrowContract& contract = contracts_.get_mut(contract_id);
        if (!contract.is_open())
            fail(Errc::contract_not_open, "contract '" + contract_id + "' is settled");
        if (now_ < contract.maturity_at)
            fail(Errc::not_yet_mature, "contract '" + contract_id + "' matures on day " +
                                           std::to_string(contract.maturity_at.days));

        OracleVerdict verdict;
        try {
            verdict = consult(oracle, contract.parcel, contract.threshold, contract.id, now_);
        } catch (const Error& e) {
            fail(Errc::oracle_failure, std::string("oracle could not produce a verdict (") + e.what() + ")");
        }

        // The oracle answered; from here on nothing can fail.
        log_.append(EventKind::oracle_queried,
                    Json{{"contract", contract.id},
                         {"day", now_.days},
                         {"evidence_hash", verdict.evidence_hash},
                         {"oracle", oracle_kind_name(oracle)},
                         {"preserved_fraction", canonical_double(verdict.preserved_fraction)},
                         {"verdict", verdict.verdict}});

        SettlementOutcome outcome;
        outcome.contract_id = contract.id;
        outcome.verdict = verdict;
        outcome.beneficiary = verdict.verdict ? contract.landowner : ledger_.fund_account();
        outcome.amount = contract.escrowed();

        ledger_.escrow_release(contract.escrow_account, outcome.beneficiary, outcome.amount);
        contract.state = verdict.verdict ? ContractState::settled_paid : ContractState::settled_reverted;
        log_.append(EventKind::settled, Json{{"amount_units", outcome.amount.units()},
                                             {"beneficiary", outcome.beneficiary},
                                             {"contract", contract.id},
                                             {"day", now_.days},
                                             {"escrow_account", contract.escrow_account},
                                             {"outcome", verdict.verdict ? "paid" : "reverted"}});
        return outcome;
    }

    const EscrowContract& contract_status(const std::string& contract_id) const {
        return contracts_.get(contract_id);
    }

    // --- sweep -----------------------------------------------------------

    SweepReport run_annual_sweep() {
        if (now_.days == 0 || now_.days % sweep_policy_.period_days != 0)
            fail(Errc::not_on_period_boundary,
                 "day " + std::to_string(now_.days) + " is not a multiple of " +
                     std::to_string(sweep_policy_.period_days) + " days since genesis");
        std::uint64_t period = now_.days / sweep_policy_.period_days;
        if (swept_periods_.contains(period))
            fail(Errc::duplicate_sweep, "period " + std::to_string(period) + " already swept");

        SweepReport report = run_sweep(ledger_, sweep_policy_, now_);
        swept_periods_.insert(period);
        for (const SweepEntry& entry : report.entries)
            log_.append(EventKind::sweep_executed, Json{{"amount_units", entry.amount.units()},
                                                        {"balance_before_units", entry.balance_before.units()},
                                                        {"day", now_.days},
                                                        {"investor", entry.investor},
                                                        {"period", period}});
        return report;
    }

    // --- clock -----------------------------------------------------------

    SimTime advance_clock(std::uint64_t days) {
        now_ = now_ + days;
        return now_;
    }

private:
    Json movement_payload(const std::string& from, const std::string& to, TokenAmount amount) const {
        return Json{{"amount_units", amount.units()}, {"day", now_.days}, {"from", from}, {"to", to}};
    }

    // Parcel coordinates enter the hashed payload as canonical decimal
    // strings so exported logs re-hash byte-exactly in any language.
    static Json parcel_payload(const Parcel& p) {
        return Json{{"lat_max", canonical_double(p.lat_max)},
                    {"lat_min", canonical_double(p.lat_min)},
                    {"lon_max", canonical_double(p.lon_max)},
                    {"lon_min", canonical_double(p.lon_min)}};
    }

    EngineConfig config_;
    Ledger ledger_;
    ContractRegistry contracts_;
    AuditLog log_;
    SweepPolicy sweep_policy_;
    SimTime now_;
    std::set<std::uint64_t> swept_periods_;
};

} // namespace sfc
