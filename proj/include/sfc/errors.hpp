#pragma once

#include <stdexcept>
#include <string>

namespace sfc {

// Every failure an engine operation can report. Failed operations are
// atomic no-ops: the engine raises one of these and leaves all state
// (ledger, contracts, audit log, clock) untouched.
enum class Errc {
    // ledger
    already_minted,
    not_fund_account,
    zero_supply,
    insufficient_balance,
    invalid_amount,
    self_transfer,
    not_investor,
    unknown_account,
    duplicate_account,
    duplicate_fund_account,
    escrow_account_protected,
    amount_overflow,
    // escrow
    not_landowner,
    maturity_in_past,
    invalid_threshold,
    invalid_parcel,
    contract_not_open,
    past_maturity,
    not_yet_mature,
    unknown_contract,
    duplicate_contract,
    // oracle
    oracle_failure,
    no_script_entry,
    grid_mismatch,
    no_intersection,
    degenerate_parcel,
    invalid_grid,
    // sweep
    duplicate_sweep,
    not_on_period_boundary,
    // scenario / files
    parse_error,
    validation_error,
    io_error,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::already_minted: return "AlreadyMinted";
        case Errc::not_fund_account: return "NotFundAccount";
        case Errc::zero_supply: return "ZeroSupply";
        case Errc::insufficient_balance: return "InsufficientBalance";
        case Errc::invalid_amount: return "InvalidAmount";
        case Errc::self_transfer: return "SelfTransfer";
        case Errc::not_investor: return "NotInvestor";
        case Errc::unknown_account: return "UnknownAccount";
        case Errc::duplicate_account: return "DuplicateAccount";
        case Errc::duplicate_fund_account: return "DuplicateFundAccount";
        case Errc::escrow_account_protected: return "EscrowAccountProtected";
        case Errc::amount_overflow: return "AmountOverflow";
        case Errc::not_landowner: return "NotLandowner";
        case Errc::maturity_in_past: return "MaturityInPast";
        case Errc::invalid_threshold: return "InvalidThreshold";
        case Errc::invalid_parcel: return "InvalidParcel";
        case Errc::contract_not_open: return "ContractNotOpen";
        case Errc::past_maturity: return "PastMaturity";
        case Errc::not_yet_mature: return "NotYetMature";
        case Errc::unknown_contract: return "UnknownContract";
        case Errc::duplicate_contract: return "DuplicateContract";
        case Errc::oracle_failure: return "OracleFailure";
        case Errc::no_script_entry: return "NoScriptEntry";
        case Errc::grid_mismatch: return "GridMismatch";
        case Errc::no_intersection: return "NoIntersection";
        case Errc::degenerate_parcel: return "DegenerateParcel";
        case Errc::invalid_grid: return "InvalidGrid";
        case Errc::duplicate_sweep: return "DuplicateSweep";
        case Errc::not_on_period_boundary: return "NotOnPeriodBoundary";
        case Errc::parse_error: return "ParseError";
        case Errc::validation_error: return "ValidationError";
        case Errc::io_error: return "IoError";
    }
    return "UnknownError";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
    throw Error(code, message);
}

} // namespace sfc
