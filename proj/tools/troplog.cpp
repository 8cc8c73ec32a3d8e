#include "troplog/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    namespace cli = troplog::cli;
    CLI::App app{"Genus one tropical maps: radii, completion, dimensions, enumeration"};
    app.require_subcommand(1);

    std::string path;
    cli::CheckOptions check;
    auto* check_cmd = app.add_subcommand("check", "Verify a fixture and its expected values");
    check_cmd->add_option("fixture", path, "Fixture JSON file")->required();
    check_cmd->add_option("--threshold", check.threshold, "Flag multiplicity for well-spacedness")
        ->check(CLI::IsMember({2, 3}));
    check_cmd->add_option("--chamber", check.chamber, "Alignment chamber c1, c2, ... or 'list'");

    cli::CompleteOptions complete;
    std::size_t factor = 0;
    auto* complete_cmd = app.add_subcommand("complete", "Add missing coordinate hyperplanes to the divisor");
    complete_cmd->add_option("fixture", path, "Fixture JSON file")->required();
    auto* complete_factor = complete_cmd->add_option("--factor", factor, "Complete one factor (0-based)");
    auto* complete_all = complete_cmd->add_flag("--all", complete.all, "Complete every factor and check balancing");
    complete_factor->excludes(complete_all);

    cli::DimsOptions dims;
    auto* dims_cmd = app.add_subcommand("dims", "Expected and stratum dimensions");
    dims_cmd->add_option("--genus", dims.genus, "Genus (0 or 1)")->required();
    dims_cmd->add_option("--markings", dims.markings, "Number of markings")->default_val(0);
    dims_cmd->add_option("--target", dims.target, "Target such as p2 or p1xp1")->required();
    dims_cmd->add_option("--degree", dims.degree, "Multidegree such as 2,2")->required();
    dims_cmd->add_option("--contact", dims.contact_file, "Contact order file");
    dims_cmd->add_option("--stratum", dims.stratum_files, "Stratum description files");

    cli::EnumerateOptions en;
    auto* en_cmd = app.add_subcommand("enumerate", "List genus one tropical types");
    en_cmd->add_option("--target", en.target, "Target such as p2 or p1xp1")->required();
    en_cmd->add_option("--degree", en.degree, "Multidegree such as 2,2")->required();
    en_cmd->add_option("--markings", en.markings, "Number of markings")->default_val(0);
    en_cmd->add_option("--max-vertices", en.max_vertices, "Largest vertex count")->required();
    en_cmd->add_option("--divisor", en.divisors, "Divisor component FACTOR:COORD (repeatable)");
    en_cmd->add_option("--contact", en.contact_file, "Contact order file");
    en_cmd->add_option("--threshold", en.threshold, "Flag multiplicity for well-spacedness")
        ->check(CLI::IsMember({2, 3}));
    en_cmd->add_option("--dot", en.dot_dir, "Directory for one DOT file per type");

    cli::ContractOptions contract;
    int m = 0;
    auto* contract_cmd = app.add_subcommand("contract", "Contract the circle of a contraction radius");
    contract_cmd->add_option("fixture", path, "Fixture JSON file")->required();
    auto* contract_m = contract_cmd->add_option("--m", m, "Branch bound for the curve radius");
    auto* contract_factor = contract_cmd->add_option("--factor", factor, "Factor for the map radius (0-based)");
    auto* contract_all = contract_cmd->add_flag("--all", contract.all, "Radius of the whole map");
    contract_m->excludes(contract_factor)->excludes(contract_all);
    contract_factor->excludes(contract_all);
    contract_cmd->add_option("--chamber", contract.chamber, "Alignment chamber c1, c2, ... or 'list'");
    contract_cmd->add_option("--dot", contract.dot_file, "Write the contracted curve as DOT");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cli::exit_input;
    }

    if (check_cmd->parsed()) return cli::check(path, check, std::cout, std::cerr);
    if (complete_cmd->parsed()) {
        if (complete_factor->count()) complete.factor = factor;
        return cli::complete(path, complete, std::cout, std::cerr);
    }
    if (dims_cmd->parsed()) return cli::dims(dims, std::cout, std::cerr);
    if (en_cmd->parsed()) return cli::enumerate(en, std::cout, std::cerr);
    if (contract_cmd->parsed()) {
        if (contract_m->count()) contract.m = m;
        if (contract_factor->count()) contract.factor = factor;
        return cli::contract(path, contract, std::cout, std::cerr);
    }
    return cli::exit_input;
}
