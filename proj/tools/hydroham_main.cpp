#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hydroham/run.hpp"

namespace {

std::vector<hydroham::Rational> parse_sample_points(const std::string& csv) {
    std::vector<hydroham::Rational> points;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty())
            continue;
        points.push_back(hydroham::parse_expr(item, 1).constant_value());
    }
    if (points.empty())
        throw hydroham::ManifestError("--sample-points: no values given");
    return points;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hydroham - exact verification of generalised (bi-)Hamiltonian structures "
                 "of hydrodynamic type and (bi-)flat F-manifold data"};
    app.require_subcommand(0);

    std::string command, manifest_path, sample_points;
    bool json_output = false;
    int max_jet_order = 20;
    std::uint64_t seed = 0;

    std::string commands_help;
    for (const std::string& name : hydroham::command_names())
        commands_help += (commands_help.empty() ? "" : ", ") + name;

    app.add_option("command", command, "one of: " + commands_help)->required();
    app.add_option("manifest", manifest_path, "path to the JSON manifest")->required();
    app.add_flag("--json", json_output, "machine-readable report");
    app.add_option("--max-jet-order", max_jet_order, "cap on intermediate jet orders")
        ->default_val(20);
    app.add_option("--sample-points", sample_points,
                   "comma-separated rational parameters for pencil sampling (default 2,3,5)");
    app.add_option("--seed", seed, "seed reserved for randomized property drivers");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        std::ifstream in(manifest_path);
        if (!in)
            throw hydroham::ManifestError("cannot open manifest file: " + manifest_path);
        hydroham::Json manifest;
        try {
            manifest = hydroham::Json::parse(in);
        } catch (const std::exception& e) {
            throw hydroham::ManifestError(std::string("manifest is not valid JSON: ") + e.what());
        }

        hydroham::RunOptions opts;
        opts.max_jet_order = max_jet_order;
        opts.seed = seed;
        if (!sample_points.empty())
            opts.sample_points = parse_sample_points(sample_points);

        hydroham::Report rep = hydroham::run_command(command, manifest, opts);
        std::cout << (json_output ? hydroham::report_to_json(rep)
                                  : hydroham::report_to_text(rep))
                  << std::endl;
        return rep.pass ? 0 : 1;
    } catch (const hydroham::ManifestError& e) {
        std::cerr << "manifest error: " << e.what() << std::endl;
        return 2;
    } catch (const hydroham::Error& e) {
        std::cerr << e.kind() << ": " << e.what() << std::endl;
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 2;
    }
}
