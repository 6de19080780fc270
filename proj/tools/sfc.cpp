// Command-line front end for the SFC protocol engine: runs scenario files,
// verifies exported audit logs, and answers explorer-style queries.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sfc/sfc.hpp"

namespace {

int cmd_run(const std::string& scenario_path, const std::optional<std::string>& export_path) {
    sfc::Scenario scenario = sfc::load_scenario_file(scenario_path);
    sfc::Engine engine;
    sfc::RunReport report = sfc::run_scenario(scenario, &engine);
    std::cout << report.to_text();
    if (export_path) {
        engine.audit_log().export_file(*export_path);
        std::cout << "log exported to " << *export_path << "\n";
    }
    return report.passed() ? 0 : 1;
}

int cmd_verify(const std::string& log_path) {
    std::string content = sfc::read_file(log_path);
    if (!sfc::verify_chain_lines(content)) {
        std::cout << "INVALID: hash chain does not verify\n";
        return 1;
    }
    auto events = sfc::import_events(content);
    std::cout << "OK: " << events.size() << " events, head "
              << (events.empty() ? sfc::AuditLog::genesis_anchor() : events.back().hash) << "\n";
    return 0;
}

int cmd_explore(const std::string& log_path, const std::optional<std::string>& account,
                const std::optional<std::string>& contract, const std::optional<std::string>& kind) {
    std::string content = sfc::read_file(log_path);
    if (!sfc::verify_chain_lines(content)) {
        std::cerr << "refusing to explore a log that does not verify\n";
        return 1;
    }
    sfc::EventFilter filter;
    filter.account = account;
    filter.contract = contract;
    if (kind) {
        auto parsed = sfc::event_kind_from_name(*kind);
        if (!parsed) {
            std::cerr << "unknown event kind '" << *kind << "'\n";
            return 1;
        }
        filter.kind = parsed;
    }

    sfc::AuditLog log;
    for (const sfc::AuditEvent& event : sfc::import_events(content)) log.append(event.kind, event.payload);
    for (const sfc::AuditEvent& event : log.query(filter)) std::cout << event.canonical_line() << "\n";
    return 0;
}

int cmd_report(const std::string& log_path) {
    std::string content = sfc::read_file(log_path);
    if (!sfc::verify_chain_lines(content)) {
        std::cerr << "refusing to report on a log that does not verify\n";
        return 1;
    }
    sfc::ReplayedState state = sfc::replay_events(sfc::import_events(content));
    std::cout << "balances:\n";
    for (const auto& [id, amount] : state.balances)
        std::cout << "  " << id << ": " << sfc::format_amount(amount, state.decimals) << "\n";
    std::cout << "total supply: " << sfc::format_amount(state.total_supply, state.decimals) << "\n";
    std::cout << "audit events: " << state.event_count << "\n";
    std::cout << "head hash: " << (state.event_count ? state.head_hash : sfc::AuditLog::genesis_anchor())
              << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Standing Forest Coin protocol engine"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::optional<std::string> export_path;
    auto* run = app.add_subcommand("run", "execute a scenario file against a fresh engine");
    run->add_option("scenario", scenario_path, "scenario JSON file")->required();
    run->add_option("--export-log", export_path, "write the audit log as newline-delimited JSON");

    std::string verify_path;
    auto* verify = app.add_subcommand("verify", "check an exported audit log's hash chain");
    verify->add_option("log", verify_path, "exported log (.ndjson)")->required();

    std::string explore_path;
    std::optional<std::string> account, contract, kind;
    auto* explore = app.add_subcommand("explore", "list audit events matching a filter");
    explore->add_option("log", explore_path, "exported log (.ndjson)")->required();
    explore->add_option("--account", account, "events whose payload mentions this account");
    explore->add_option("--contract", contract, "events for this contract id");
    explore->add_option("--kind", kind, "events of this kind (e.g. Transfer)");

    std::string report_path;
    auto* report = app.add_subcommand("report", "reconstruct balances by replaying an exported log");
    report->add_option("log", report_path, "exported log (.ndjson)")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(scenario_path, export_path);
        if (verify->parsed()) return cmd_verify(verify_path);
        if (explore->parsed()) return cmd_explore(explore_path, account, contract, kind);
        if (report->parsed()) return cmd_report(report_path);
    } catch (const sfc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
