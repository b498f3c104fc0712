// bucketbook — command-line driver over the ledger with a virtual clock.
//
// Every invocation loads the snapshot named by --state, runs one subcommand,
// and (for mutations) saves the snapshot back atomically. Time moves only
// through `advance`; nothing here reads the wall clock, so identical command
// scripts produce identical snapshots and identical stdout.
//
// stdout carries machine-readable results only (balance integers, record
// pairs, CSV); prose and errors go to stderr. Exit codes: 0 success,
// 1 domain status (e.g. insufficient balance), 2 usage or validation error,
// 3 unreadable or corrupt snapshot.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bucketbook/bench/worst_case.hpp"
#include "bucketbook/ledger.hpp"
#include "bucketbook/sim/adversary.hpp"
#include "bucketbook/snapshot.hpp"

namespace {

using namespace bucketbook;

// Raised by subcommand handlers when the operation itself reports a
// non-success status; distinct from validation faults, which throw Error.
struct DomainFailure {
    std::string message;
};

int exit_code_for(Errc code) {
    switch (code) {
        case Errc::snapshot_parse:
        case Errc::snapshot_version:
        case Errc::snapshot_invalid:
        case Errc::invalid_state:
        case Errc::io_failure:
            return 3;
        default:
            return 2;
    }
}

void require_success(OpStatus status, const std::string& what) {
    if (status != OpStatus::success) {
        throw DomainFailure{what + ": " + to_string(status)};
    }
}

Ledger load(const std::string& state) {
    return load_snapshot(state);
}

void save(const Ledger& ledger, const std::string& state) {
    save_snapshot(ledger, state);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"bounded-storage balance records with time-to-live semantics"};
    app.require_subcommand(1);

    // Shared option storage; each subcommand binds the subset it uses.
    std::string state;
    std::string account, from, to, resource_name, amount_text;
    std::uint64_t ttl = 0, k = 0, timestamp = 0;
    std::uint64_t deposits = 500, seed = 0;
    std::string strategy_name = "spreadAcrossBuckets";
    std::string attack_amount_text = "1";
    std::uint64_t sim_ttl = 2592000, sim_k = 100;
    std::vector<std::uint64_t> k_values = {10, 20, 40, 80};

    auto add_state = [&state](CLI::App* cmd) {
        cmd->add_option("--state", state, "snapshot file")->required();
    };

    CLI::App* init = app.add_subcommand("init", "create an empty snapshot");
    add_state(init);
    init->callback([&] {
        if (std::filesystem::exists(state)) {
            fail(Errc::invalid_config, "refusing to overwrite existing snapshot '" + state + "'");
        }
        save(Ledger{}, state);
    });

    CLI::App* define = app.add_subcommand("define-resource", "register a resource");
    define->add_option("id", resource_name, "resource id")->required();
    define->add_option("--ttl", ttl, "time-to-live in seconds")->required();
    define->add_option("--k", k, "bucket count")->required();
    add_state(define);
    define->callback([&] {
        Ledger ledger = load(state);
        ledger.define_resource(ResourceId{resource_name}, ttl, k);
        save(ledger, state);
    });

    CLI::App* advance = app.add_subcommand("advance", "move the virtual clock forward");
    advance->add_option("timestamp", timestamp, "new clock value (seconds)")->required();
    add_state(advance);
    advance->callback([&] {
        Ledger ledger = load(state);
        ledger.advance_clock(timestamp);
        save(ledger, state);
    });

    CLI::App* mint = app.add_subcommand("mint", "deposit new tokens");
    mint->add_option("account", account)->required();
    mint->add_option("resource", resource_name)->required();
    mint->add_option("amount", amount_text)->required();
    add_state(mint);
    mint->callback([&] {
        Ledger ledger = load(state);
        ledger.mint(AccountId{account}, ResourceId{resource_name}, Amount::parse(amount_text));
        save(ledger, state);
    });

    CLI::App* burn = app.add_subcommand("burn", "consume tokens");
    burn->add_option("account", account)->required();
    burn->add_option("resource", resource_name)->required();
    burn->add_option("amount", amount_text)->required();
    add_state(burn);
    burn->callback([&] {
        Ledger ledger = load(state);
        auto result =
            ledger.burn(AccountId{account}, ResourceId{resource_name}, Amount::parse(amount_text));
        require_success(result.status, "burn");
        save(ledger, state);
    });

    CLI::App* transfer_cmd = app.add_subcommand("transfer", "move tokens between accounts");
    transfer_cmd->add_option("from", from)->required();
    transfer_cmd->add_option("to", to)->required();
    transfer_cmd->add_option("resource", resource_name)->required();
    transfer_cmd->add_option("amount", amount_text)->required();
    add_state(transfer_cmd);
    transfer_cmd->callback([&] {
        Ledger ledger = load(state);
        auto result = ledger.transfer_between(AccountId{from}, AccountId{to},
                                              ResourceId{resource_name},
                                              Amount::parse(amount_text));
        require_success(result.status, "transfer");
        save(ledger, state);
    });

    CLI::App* balance = app.add_subcommand("balance", "print the valid balance");
    balance->add_option("account", account)->required();
    balance->add_option("resource", resource_name)->required();
    add_state(balance);
    balance->callback([&] {
        Ledger ledger = load(state);
        std::cout << ledger.balance_of(AccountId{account}, ResourceId{resource_name}) << "\n";
    });

    CLI::App* records = app.add_subcommand("records", "print one 'amount expiresAt' pair per line");
    records->add_option("account", account)->required();
    records->add_option("resource", resource_name)->required();
    add_state(records);
    records->callback([&] {
        Ledger ledger = load(state);
        for (const auto& r : ledger.records_of(AccountId{account}, ResourceId{resource_name})) {
            std::cout << r.amount << " " << r.expires_at << "\n";
        }
    });

    CLI::App* prune = app.add_subcommand("prune", "drop expired records from one book");
    prune->add_option("account", account)->required();
    prune->add_option("resource", resource_name)->required();
    add_state(prune);
    prune->callback([&] {
        Ledger ledger = load(state);
        ledger.prune_book(AccountId{account}, ResourceId{resource_name});
        save(ledger, state);
    });

    CLI::App* simulate = app.add_subcommand(
        "simulate-dos", "run an adversarial deposit workload; CSV on stdout, summary on stderr");
    simulate->add_option("--deposits", deposits, "number of adversarial deposits");
    simulate->add_option("--strategy", strategy_name,
                         "sameBucket | spreadAcrossBuckets | randomTimes");
    simulate->add_option("--k", sim_k, "bucket count");
    simulate->add_option("--ttl", sim_ttl, "time-to-live in seconds");
    simulate->add_option("--seed", seed, "PRNG seed");
    simulate->add_option("--amount", attack_amount_text, "units per deposit");
    simulate->callback([&] {
        sim::AttackPlan plan{deposits, Amount::parse(attack_amount_text),
                             sim::parse_strategy(strategy_name), AccountId{"victim"}};
        ResourceConfig config(sim_ttl, sim_k);
        sim::PairedAttackReport paired = sim::compare_with_unbounded(plan, config, seed);
        sim::write_attack_csv(std::cout, paired, plan, config, seed);
        sim::write_attack_summary(std::cerr, paired, plan, config);
    });

    CLI::App* bench_cmd = app.add_subcommand(
        "bench-costs", "measure worst-case operation costs per bucket count; CSV on stdout");
    bench_cmd->add_option("--k-values", k_values, "bucket counts to measure")->delimiter(',');
    bench_cmd->add_option("--seed", seed, "PRNG seed");
    bench_cmd->callback([&] {
        bench::write_cost_csv_header(std::cout);
        for (std::uint64_t kv : k_values) {
            if (kv == 0) {
                fail(Errc::invalid_config, "bucket count must be >= 1");
            }
            for (const auto& row : bench::measure_costs(kv, seed)) {
                bench::write_cost_csv_row(std::cout, row);
            }
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const DomainFailure& e) {
        std::cerr << "error: " << e.message << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
