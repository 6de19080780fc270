#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sfc/amount.hpp"
#include "sfc/ledger.hpp"
#include "sfc/simtime.hpp"

namespace sfc {

// Annual donation: 5% of every investor wallet, floor-rounded in base units,
// moves to the preservation fund once per 365-day period. Fund, landowner
// and escrow balances are exempt.
struct SweepPolicy {
    std::uint64_t rate_numerator = 5;
    std::uint64_t rate_denominator = 100;
    std::uint64_t period_days = 365;
};

struct SweepEntry {
    std::string investor;
    TokenAmount balance_before;
    TokenAmount amount;
};

struct SweepReport {
    SimTime sweep_time;
    std::vector<SweepEntry> entries;  // zero sweeps omitted

    TokenAmount total() const {
        TokenAmount sum;
        for (const SweepEntry& e : entries) sum += e.amount;
        return sum;
    }
};

// floor(balance * rate) in base units, overflow-free: with units = q*den + r,
// floor(units*num/den) == q*num + floor(r*num/den) exactly. Floor never
// over-collects and keeps the swept total equal to the fund's balance delta.
inline TokenAmount sweep_cut(TokenAmount balance, const SweepPolicy& policy) {
    const std::uint64_t num = policy.rate_numerator;
    const std::uint64_t den = policy.rate_denominator;
    const std::uint64_t quotient = balance.units() / den;
    const std::uint64_t remainder = balance.units() % den;
    return TokenAmount::from_units(quotient * num + remainder * num / den);
}

inline SweepReport run_sweep(Ledger& ledger, const SweepPolicy& policy, SimTime at) {
    SweepReport report;
    report.sweep_time = at;
    // Collect first, then move: entry amounts are fixed by pre-sweep balances.
    for (const auto& [id, role] : ledger.accounts()) {
        if (role != Role::investor) continue;
        TokenAmount before = ledger.balance_of(id);
        TokenAmount cut = sweep_cut(before, policy);
        if (cut.is_zero()) continue;
        report.entries.push_back({id, before, cut});
    }
    const std::string& fund = ledger.fund_account();
    for (const SweepEntry& entry : report.entries) ledger.transfer(entry.investor, fund, entry.amount);
    return report;
}

} // namespace sfc
