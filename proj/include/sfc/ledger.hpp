#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "sfc/amount.hpp"
#include "sfc/errors.hpp"

namespace sfc {

enum class Role { fund, investor, landowner, escrow };

inline const char* role_name(Role role) {
    switch (role) {
        case Role::fund: return "fund";
        case Role::investor: return "investor";
        case Role::landowner: return "landowner";
        case Role::escrow: return "escrow";
    }
    return "unknown";
}

// Integer-exact token ledger with ERC-20-like semantics: mint-once ICO,
// guarded transfers, overwrite-style allowances. Escrow accounts are walled
// off from ordinary transfers; only the escrow module moves their balances.
//
// Invariant: once minted, the sum of all balances equals total_supply.
class Ledger {
public:
    void add_account(const std::string& id, Role role) {
        if (id.empty()) fail(Errc::validation_error, "account id must be non-empty");
        if (accounts_.contains(id)) fail(Errc::duplicate_account, "account '" + id + "' already exists");
        if (role == Role::fund && !fund_.empty())
            fail(Errc::duplicate_fund_account, "fund account already registered as '" + fund_ + "'");
        accounts_.emplace(id, role);
        balances_.emplace(id, TokenAmount{});
        if (role == Role::fund) fund_ = id;
    }

    bool has_account(const std::string& id) const { return accounts_.contains(id); }

    Role role_of(const std::string& id) const {
        auto it = accounts_.find(id);
        if (it == accounts_.end()) fail(Errc::unknown_account, "unknown account '" + id + "'");
        return it->second;
    }

    const std::string& fund_account() const {
        if (fund_.empty()) fail(Errc::not_fund_account, "no fund account registered");
        return fund_;
    }

    bool minted() const noexcept { return minted_; }
    TokenAmount total_supply() const noexcept { return total_supply_; }

    TokenAmount balance_of(const std::string& id) const {
        auto it = balances_.find(id);
        if (it == balances_.end()) fail(Errc::unknown_account, "unknown account '" + id + "'");
        return it->second;
    }

    const std::map<std::string, TokenAmount>& balances() const noexcept { return balances_; }
    const std::map<std::string, Role>& accounts() const noexcept { return accounts_; }

    // One-time mint of the full supply into the fund (genesis) wallet.
    void ico_mint(TokenAmount supply, const std::string& fund) {
        if (minted_) fail(Errc::already_minted, "ICO already executed");
        if (role_of(fund) != Role::fund) fail(Errc::not_fund_account, "'" + fund + "' is not the fund account");
        if (supply.is_zero()) fail(Errc::zero_supply, "ICO supply must be positive");
        balances_[fund] = supply;
        total_supply_ = supply;
        minted_ = true;
    }

    void transfer(const std::string& from, const std::string& to, TokenAmount amount) {
        require_known(from);
        require_known(to);
        if (amount.is_zero()) fail(Errc::invalid_amount, "zero-amount transfers are rejected");
        if (from == to) fail(Errc::self_transfer, "transfer from '" + from + "' to itself");
        if (role_of(from) == Role::escrow || role_of(to) == Role::escrow)
            fail(Errc::escrow_account_protected, "escrow balances move only through contract settlement");
        debit_credit(from, to, amount);
    }

    // Fund -> investor purchase against the genesis wallet.
    void buy(const std::string& investor, TokenAmount amount) {
        require_known(investor);
        if (role_of(investor) != Role::investor)
            fail(Errc::not_investor, "only investor accounts may buy (got '" + investor + "')");
        if (amount.is_zero()) fail(Errc::invalid_amount, "zero-amount purchase");
        debit_credit(fund_account(), investor, amount);
    }

    void approve(const std::string& owner, const std::string& spender, TokenAmount amount) {
        require_known(owner);
        require_known(spender);
        allowances_[{owner, spender}] = amount;  // overwrite semantics; zero revokes
    }

    TokenAmount allowance(const std::string& owner, const std::string& spender) const {
        auto it = allowances_.find({owner, spender});
        return it == allowances_.end() ? TokenAmount{} : it->second;
    }

    // Escrow-module entry points. Invest moves investor funds into a dedicated
    // escrow account; settlement releases the whole pot to one beneficiary.
    void escrow_deposit(const std::string& investor, const std::string& escrow_account, TokenAmount amount) {
        require_known(investor);
        if (role_of(escrow_account) != Role::escrow)
            fail(Errc::escrow_account_protected, "'" + escrow_account + "' is not an escrow account");
        if (amount.is_zero()) fail(Errc::invalid_amount, "zero-amount investment");
        debit_credit(investor, escrow_account, amount);
    }

    void escrow_release(const std::string& escrow_account, const std::string& beneficiary, TokenAmount amount) {
        require_known(beneficiary);
        if (role_of(escrow_account) != Role::escrow)
            fail(Errc::escrow_account_protected, "'" + escrow_account + "' is not an escrow account");
        if (amount.is_zero()) return;  // unfunded contract settles with no transfer
        debit_credit(escrow_account, beneficiary, amount);
    }

    std::uint64_t sum_balances_units() const {
        std::uint64_t sum = 0;
        for (const auto& [id, balance] : balances_) sum += balance.units();
        return sum;
    }

private:
    void require_known(const std::string& id) const {
        if (!accounts_.contains(id)) fail(Errc::unknown_account, "unknown account '" + id + "'");
    }

    void debit_credit(const std::string& from, const std::string& to, TokenAmount amount) {
        TokenAmount& source = balances_.at(from);
        if (source < amount)
            fail(Errc::insufficient_balance,
                 "'" + from + "' holds " + std::to_string(source.units()) + " base units, needs " +
                     std::to_string(amount.units()));
        source -= amount;
        balances_.at(to) += amount;
    }

    std::map<std::string, Role> accounts_;
    std::map<std::string, TokenAmount> balances_;
    std::map<std::pair<std::string, std::string>, TokenAmount> allowances_;
    TokenAmount total_supply_;
    bool minted_ = false;
    std::string fund_;
};

} // namespace sfc
