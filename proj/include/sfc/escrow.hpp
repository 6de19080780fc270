#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sfc/amount.hpp"
#include "sfc/errors.hpp"
#include "sfc/geo.hpp"
#include "sfc/oracle.hpp"
#include "sfc/simtime.hpp"

namespace sfc {

enum class ContractState { open, settled_paid, settled_reverted };

inline const char* contract_state_name(ContractState state) {
    switch (state) {
        case ContractState::open: return "open";
        case ContractState::settled_paid: return "settled_paid";
        case ContractState::settled_reverted: return "settled_reverted";
    }
    return "unknown";
}

struct Contribution {
    std::string investor;
    TokenAmount amount;
    SimTime at;
};

// A preservation agreement. The dedicated escrow account holds exactly the
// sum of contributions while the contract is open; settlement drains it to
// one beneficiary and the contract becomes inert.
struct EscrowContract {
    std::string id;
    std::string landowner;
    std::string escrow_account;
    Parcel parcel;
    SimTime created_at;
    SimTime maturity_at;
    double threshold = 0.95;
    std::vector<Contribution> contributions;
    ContractState state = ContractState::open;

    TokenAmount escrowed() const {
        TokenAmount total;
        for (const Contribution& c : contributions) total += c.amount;
        return total;
    }

    bool is_open() const noexcept { return state == ContractState::open; }
};

// Which wallet the pot went to and why. Settlement is exclusive: the
// beneficiary is the landowner on a true verdict, the fund otherwise, and
// the amount is always the full escrowed pot.
struct SettlementOutcome {
    std::string contract_id;
    OracleVerdict verdict;
    std::string beneficiary;
    TokenAmount amount;
};

class ContractRegistry {
public:
    std::string allocate_id() {
        std::string id;
        do {
            id = "c" + std::to_string(next_id_++);
        } while (contracts_.contains(id));
        return id;
    }

    EscrowContract& add(EscrowContract contract) {
        if (contracts_.contains(contract.id))
            fail(Errc::duplicate_contract, "contract '" + contract.id + "' already exists");
        auto [it, inserted] = contracts_.emplace(contract.id, std::move(contract));
        return it->second;
    }

    bool contains(const std::string& id) const { return contracts_.contains(id); }

    const EscrowContract& get(const std::string& id) const {
        auto it = contracts_.find(id);
        if (it == contracts_.end()) fail(Errc::unknown_contract, "unknown contract '" + id + "'");
        return it->second;
    }

    EscrowContract& get_mut(const std::string& id) {
        auto it = contracts_.find(id);
        if (it == contracts_.end()) fail(Errc::unknown_contract, "unknown contract '" + id + "'");
        return it->second;
    }

    const std::map<std::string, EscrowContract>& all() const noexcept { return contracts_; }

private:
    std::map<std::string, EscrowContract> contracts_;
    std::uint64_t next_id_ = 1;
};

} // namespace sfc
