#ifndef HYDROHAM_RUN_HPP
#define HYDROHAM_RUN_HPP

#include <string>
#include <vector>

#include "hydroham/manifest.hpp"
#include "hydroham/report.hpp"

namespace hydroham {

struct RunOptions {
    int max_jet_order = 20;
    std::vector<Rational> sample_points = {Rational(2), Rational(3), Rational(5)};
    std::uint64_t seed = 0; // reserved for randomized property drivers
};

const std::vector<std::string>& command_names();

/// Dispatch a verification command on a parsed manifest. Manifest problems
/// throw ManifestError; domain failures are reported in the returned
/// Report with pass = false.
Report run_command(const std::string& command, const Json& manifest, const RunOptions& opts);

} // namespace hydroham

#endif
