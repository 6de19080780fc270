// Acceptance suite: one test per criterion, each printing a pass/fail line
// with its runtime. Everything asserts exact values or the stated tolerance;
// randomized parts are seeded and deterministic.

#include <gtest/gtest.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "sfc/sfc.hpp"
#include "test_support.hpp"

using namespace sfc;
using sfc::test::amt;
using sfc::test::random_geo_case;
using sfc::test::ReferenceLedger;
using sfc::test::sampled_fraction;
using sfc::test::unit_grid;

namespace {

class Criterion {
public:
    Criterion(int number, std::string description, double budget_seconds)
        : number_(number), description_(std::move(description)), budget_seconds_(budget_seconds),
          start_(std::chrono::steady_clock::now()) {}

    ~Criterion() {
        auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        bool ok = !::testing::Test::HasFailure() && elapsed < budget_seconds_;
        std::printf("[ACCEPTANCE] criterion %d (%s): %s in %.3fs (budget %.0fs)\n", number_,
                    description_.c_str(), ok ? "PASS" : "FAIL", elapsed, budget_seconds_);
        EXPECT_LT(elapsed, budget_seconds_) << "criterion " << number_ << " exceeded its runtime budget";
    }

private:
    int number_;
    std::string description_;
    double budget_seconds_;
    std::chrono::steady_clock::time_point start_;
};

Scenario golden_scenario(bool verdict) {
    Json doc = Json::parse(read_file(
        (std::filesystem::path(SFC_SOURCE_DIR) / "scenarios" / (verdict ? "golden_a.json" : "golden_b.json"))
            .string()));
    return scenario_from_json(doc, std::filesystem::path(SFC_SOURCE_DIR) / "scenarios");
}

struct CommandResult {
    int exit_code = -1;
    std::string output;
};

CommandResult run_command(const std::string& command) {
    CommandResult result;
    FILE* pipe = popen((command + " 2>&1").c_str(), "r");
    if (!pipe) return result;
    std::array<char, 4096> buffer;
    while (std::size_t n = fread(buffer.data(), 1, buffer.size(), pipe)) result.output.append(buffer.data(), n);
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

} // namespace

// Criterion 1: ICO 4000.00 -> buy 120.00 -> contract (0.95, day 365) ->
// invest 50.00 -> day 365 -> scripted-true settle. Exact final balances.
TEST(Acceptance, Criterion1GoldenScenarioA) {
    Criterion criterion(1, "golden scenario A, happy path", 1.0);

    RunReport report = run_scenario(golden_scenario(true));
    EXPECT_TRUE(report.passed());
    EXPECT_EQ(report.balances.at("fund"), parse_amount("3880.00", 2));
    EXPECT_EQ(report.balances.at("investor"), parse_amount("70.00", 2));
    EXPECT_EQ(report.balances.at("guardian"), parse_amount("50.00", 2));
    EXPECT_EQ(report.balances.at("escrow:c1"), parse_amount("0.00", 2));
    EXPECT_EQ(report.contract_states.at("c1"), ContractState::settled_paid);
}

// Criterion 2: same inputs, scripted-false oracle; the pot reverts to the fund.
TEST(Acceptance, Criterion2GoldenScenarioB) {
    Criterion criterion(2, "golden scenario B, negative verdict", 1.0);

    RunReport report = run_scenario(golden_scenario(false));
    EXPECT_TRUE(report.passed());
    EXPECT_EQ(report.balances.at("fund"), parse_amount("3930.00", 2));
    EXPECT_EQ(report.balances.at("investor"), parse_amount("70.00", 2));
    EXPECT_EQ(report.balances.at("guardian"), parse_amount("0.00", 2));
    EXPECT_EQ(report.contract_states.at("c1"), ContractState::settled_reverted);
}

// Criterion 3: buy 120.00, no investment; sweeps at days 365 and 730 move
// 6.00 then 5.70 to the fund (floor arithmetic in base units).
TEST(Acceptance, Criterion3AnnualSweep) {
    Criterion criterion(3, "annual 5% sweep, two periods", 1.0);

    Engine engine;
    engine.add_account("fund", Role::fund);
    engine.add_account("investor", Role::investor);
    engine.ico_mint(parse_amount("4000.00", 2), "fund");
    engine.buy("investor", parse_amount("120.00", 2));

    engine.advance_clock(365);
    TokenAmount fund_before = engine.balance_of("fund");
    SweepReport first = engine.run_annual_sweep();
    ASSERT_EQ(first.entries.size(), 1u);
    EXPECT_EQ(first.entries[0].amount, amt(600));  // 6.00
    EXPECT_EQ(engine.balance_of("fund") - fund_before, amt(600));
    EXPECT_EQ(engine.balance_of("investor"), parse_amount("114.00", 2));

    engine.advance_clock(365);
    fund_before = engine.balance_of("fund");
    SweepReport second = engine.run_annual_sweep();
    ASSERT_EQ(second.entries.size(), 1u);
    EXPECT_EQ(second.entries[0].amount, amt(570));  // 5.70
    EXPECT_EQ(engine.balance_of("fund") - fund_before, amt(570));
    EXPECT_EQ(engine.balance_of("investor"), parse_amount("108.30", 2));
}

// Criterion 4: >=10,000 randomized operations keep the balance sum equal to
// total supply at every step and match a naive reference ledger.
TEST(Acceptance, Criterion4ConservationProperty) {
    Criterion criterion(4, "conservation over 10,000 randomized operations", 30.0);

    Engine engine;
    engine.add_account("fund", Role::fund);
    for (const char* id : {"inv1", "inv2", "inv3"}) engine.add_account(id, Role::investor);
    for (const char* id : {"own1", "own2"}) engine.add_account(id, Role::landowner);
    engine.ico_mint(amt(100'000'000), "fund");

    ReferenceLedger reference;
    for (const auto& [id, balance] : engine.ledger().balances()) reference.balances[id] = balance.units();
    reference.total_supply = engine.total_supply().units();

    std::vector<std::string> wallets{"fund", "inv1", "inv2", "inv3", "own1", "own2"};
    std::vector<std::string> investors{"inv1", "inv2", "inv3"};
    std::vector<std::string> landowners{"own1", "own2"};
    std::vector<std::string> contract_ids;

    std::mt19937_64 rng(20240813);
    std::uniform_int_distribution<int> op_dist(0, 99);
    std::uniform_int_distribution<std::uint64_t> amount_dist(0, 50'000);
    std::uniform_int_distribution<int> coin(0, 1);
    auto pick = [&](const std::vector<std::string>& pool) -> const std::string& {
        std::uniform_int_distribution<std::size_t> d(0, pool.size() - 1);
        return pool[d(rng)];
    };

    const Parcel parcel{-3.5, -3.0, -60.5, -60.0};
    int executed = 0, attempted = 0, settles = 0, sweeps = 0;
    const int kOps = 10'000;
    for (int i = 0; i < kOps; ++i) {
        int roll = op_dist(rng);
        ++attempted;
        try {
            if (roll < 30) {
                const std::string& investor = pick(investors);
                TokenAmount value = amt(amount_dist(rng));
                engine.buy(investor, value);
                reference.move("fund", investor, value.units());
            } else if (roll < 55) {
                const std::string& from = pick(wallets);
                const std::string& to = pick(wallets);
                TokenAmount value = amt(amount_dist(rng));
                engine.transfer(from, to, value);
                reference.move(from, to, value.units());
            } else if (roll < 65) {
                if (contract_ids.size() < 250) {
                    std::uniform_int_distribution<std::uint64_t> horizon(1, 200);
                    std::string id = engine.create_contract(pick(landowners), parcel,
                                                            engine.now() + horizon(rng), 0.95);
                    contract_ids.push_back(id);
                    reference.balances["escrow:" + id] = 0;
                }
            } else if (roll < 80 && !contract_ids.empty()) {
                const std::string& id = pick(contract_ids);
                const std::string& investor = pick(investors);
                TokenAmount value = amt(amount_dist(rng));
                engine.invest(investor, id, value);
                reference.move(investor, "escrow:" + id, value.units());
            } else if (roll < 90 && !contract_ids.empty()) {
                const std::string& id = pick(contract_ids);
                ScriptedOracle oracle;
                if (op_dist(rng) < 90) oracle.set(id, coin(rng) == 1);  // sometimes no entry
                SettlementOutcome outcome = engine.settle(id, oracle);
                reference.move("escrow:" + id, outcome.beneficiary, outcome.amount.units());
                ++settles;
            } else if (roll < 95) {
                std::uint64_t to_boundary = 365 - (engine.now().days % 365);
                engine.advance_clock(to_boundary);
                SweepReport report = engine.run_annual_sweep();
                for (const SweepEntry& entry : report.entries)
                    reference.move(entry.investor, "fund", entry.amount.units());
                ++sweeps;
            } else {
                std::uniform_int_distribution<std::uint64_t> days(0, 40);
                engine.advance_clock(days(rng));
            }
            ++executed;
        } catch (const Error&) {
            // rejected operation: state must be untouched, reference unchanged
        }

        ASSERT_EQ(engine.ledger().sum_balances_units(), engine.total_supply().units()) << "op " << i;
        ASSERT_EQ(reference.sum(), reference.total_supply) << "op " << i;
        for (const auto& [id, units] : reference.balances)
            ASSERT_EQ(engine.balance_of(id).units(), units) << "op " << i << " wallet " << id;
    }

    EXPECT_EQ(attempted, kOps);
    EXPECT_GT(executed, kOps / 2);
    EXPECT_GT(settles, 50);
    EXPECT_GT(sweeps, 5);
}

// Criterion 5: over >=1,000 random contracts the credited amount equals the
// contribution sum and exactly one of {landowner, fund} is credited.
TEST(Acceptance, Criterion5SettlementExclusivity) {
    Criterion criterion(5, "settlement exclusivity over 1,000 random contracts", 30.0);

    std::mt19937_64 rng(424242);
    std::uniform_int_distribution<int> n_contrib(0, 6);
    std::uniform_int_distribution<std::uint64_t> contrib(1, 4000);
    std::uniform_int_distribution<int> coin(0, 1);

    Engine engine;
    engine.add_account("fund", Role::fund);
    engine.add_account("alice", Role::investor);
    engine.add_account("bob", Role::investor);
    engine.add_account("guardian", Role::landowner);
    engine.ico_mint(amt(1'000'000'000), "fund");
    engine.buy("alice", amt(400'000'000));
    engine.buy("bob", amt(400'000'000));

    for (int round = 0; round < 1000; ++round) {
        std::string id = engine.create_contract("guardian", Parcel{0.0, 1.0, 0.0, 1.0},
                                                engine.now() + 10, 0.95);
        std::uint64_t pot = 0;
        int contributions = n_contrib(rng);
        for (int i = 0; i < contributions; ++i) {
            std::uint64_t value = contrib(rng);
            engine.invest(coin(rng) ? "alice" : "bob", id, amt(value));
            pot += value;
        }
        engine.advance_clock(10);

        std::uint64_t fund_before = engine.balance_of("fund").units();
        std::uint64_t guardian_before = engine.balance_of("guardian").units();
        bool verdict = coin(rng) == 1;
        SettlementOutcome outcome = engine.settle(id, ScriptedOracle({{id, verdict}}));

        ASSERT_EQ(outcome.amount.units(), pot);
        std::uint64_t fund_delta = engine.balance_of("fund").units() - fund_before;
        std::uint64_t guardian_delta = engine.balance_of("guardian").units() - guardian_before;
        ASSERT_EQ(verdict ? guardian_delta : fund_delta, pot);
        ASSERT_EQ(verdict ? fund_delta : guardian_delta, 0u);
        ASSERT_EQ(engine.balance_of("escrow:" + id).units(), 0u);
        ASSERT_EQ(engine.ledger().sum_balances_units(), engine.total_supply().units());
    }
}

// Criterion 6: a 100-event log survives none of 1,000 random single-byte
// mutations; the untouched export verifies and its head hash is reproduced
// by the independent Python re-hashing script.
TEST(Acceptance, Criterion6TamperEvidence) {
    Criterion criterion(6, "tamper evidence and independent re-hash", 10.0);

    Engine engine;
    engine.add_account("fund", Role::fund);
    engine.add_account("alice", Role::investor);
    engine.add_account("bob", Role::investor);
    engine.add_account("guardian", Role::landowner);
    engine.ico_mint(amt(10'000'000), "fund");
    engine.buy("alice", amt(1'000'000));
    engine.buy("bob", amt(1'000'000));
    std::string c1 = engine.create_contract("guardian", Parcel{-3.5, -3.0, -60.5, -60.0}, SimTime{30}, 0.9);
    engine.invest("alice", c1, amt(5000));
    engine.invest("bob", c1, amt(2500));
    engine.advance_clock(30);
    engine.settle(c1, ScriptedOracle({{c1, true}}));
    engine.advance_clock(335);
    engine.run_annual_sweep();
    while (engine.audit_log().size() < 100) engine.transfer("alice", "bob", amt(1));
    ASSERT_EQ(engine.audit_log().size(), 100u);

    std::string lines = engine.audit_log().export_lines();
    ASSERT_TRUE(verify_chain_lines(lines));

    // independent re-hash over the exported file
    auto log_path = std::filesystem::temp_directory_path() / "sfc_acceptance_tamper.ndjson";
    engine.audit_log().export_file(log_path.string());
    std::string script = (std::filesystem::path(SFC_SOURCE_DIR) / "tools" / "rehash_check.py").string();
    CommandResult rehash = run_command("python3 " + script + " " + log_path.string());
    ASSERT_EQ(rehash.exit_code, 0) << rehash.output;
    std::string head = rehash.output.substr(0, rehash.output.find('\n'));
    EXPECT_EQ(head, engine.audit_log().head_hash());

    std::mt19937_64 rng(777);
    std::uniform_int_distribution<std::size_t> pos_dist(0, lines.size() - 1);
    std::uniform_int_distribution<int> byte_dist(1, 255);
    int mutations = 0;
    while (mutations < 1000) {
        std::size_t pos = pos_dist(rng);
        char replacement = static_cast<char>(byte_dist(rng));
        if (replacement == lines[pos] || lines[pos] == '\n') continue;
        std::string tampered = lines;
        tampered[pos] = replacement;
        ASSERT_FALSE(verify_chain_lines(tampered)) << "mutation at byte " << pos << " went undetected";
        ++mutations;
    }
    std::filesystem::remove(log_path);
}

// Criterion 7: geo-oracle fixtures against hand values (1e-12) plus
// monotonicity and dense-sampling equivalence (1e-4) over 500 random cases.
TEST(Acceptance, Criterion7GeoOracleFixturesAndProperties) {
    Criterion criterion(7, "geo oracle fixtures, monotonicity, sampling equivalence", 30.0);

    LandCoverGrid intact = unit_grid(2, 2, {1.0, 1.0, 1.0, 1.0});
    LandCoverGrid mixed = unit_grid(2, 2, {1.0, 1.0, 0.5, 0.5});
    LandCoverGrid barren = unit_grid(2, 2, {0.0, 0.0, 0.0, 0.0});
    Parcel full{0.0, 1.0, 0.0, 1.0};
    Parcel left_half{0.0, 1.0, 0.0, 0.5};

    EXPECT_NEAR(preserved_fraction(full, intact, intact), 1.0, 1e-12);
    EXPECT_NEAR(preserved_fraction(full, intact, barren), 0.0, 1e-12);
    EXPECT_NEAR(preserved_fraction(full, intact, mixed), 0.75, 1e-12);
    EXPECT_NEAR(preserved_fraction(left_half, intact, mixed), 0.75, 1e-12);

    std::mt19937_64 rng(987654);
    std::uniform_real_distribution<double> bump(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        auto geo = random_geo_case(rng);
        double base = preserved_fraction(geo.parcel, geo.grid_t0, geo.grid_t1);
        std::uniform_int_distribution<std::size_t> cell(0, geo.grid_t1.cells.size() - 1);
        double& value = geo.grid_t1.cells[cell(rng)];
        value = std::min(1.0, value + bump(rng));
        ASSERT_GE(preserved_fraction(geo.parcel, geo.grid_t0, geo.grid_t1), base) << "case " << i;
    }

    for (int i = 0; i < 500; ++i) {
        auto geo = random_geo_case(rng);
        double analytic = preserved_fraction(geo.parcel, geo.grid_t0, geo.grid_t1);
        double sampled = sampled_fraction(geo.parcel, geo.grid_t0, geo.grid_t1);
        ASSERT_NEAR(analytic, sampled, 1e-4) << "case " << i;
    }
}

// Criterion 8: running golden scenario A twice yields byte-identical exports.
TEST(Acceptance, Criterion8ReplayDeterminism) {
    Criterion criterion(8, "byte-identical replay of golden scenario A", 30.0);

    Scenario scenario = golden_scenario(true);
    Engine first, second;
    run_scenario(scenario, &first);
    run_scenario(scenario, &second);

    std::string lines_first = first.audit_log().export_lines();
    std::string lines_second = second.audit_log().export_lines();
    EXPECT_EQ(lines_first, lines_second);
    EXPECT_EQ(first.audit_log().head_hash(), second.audit_log().head_hash());
    EXPECT_FALSE(lines_first.empty());
}
