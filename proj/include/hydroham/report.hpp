#ifndef HYDROHAM_REPORT_HPP
#define HYDROHAM_REPORT_HPP

#include <cstdint>
#include <deque>
#include <string>
#include <utility>
#include <vector>

namespace hydroham {

struct ResidualEntry {
    std::vector<int> indices;   // 1-based, printed as they index the object
    std::string expr;           // canonical expression
    std::string serialized;     // canonical JSON form for jet-space residuals
};

struct CheckReport {
    std::string name;
    bool pass = true;
    std::vector<ResidualEntry> residuals; // nonzero entries when pass = false
};

struct Report {
    std::string command;
    bool pass = true;
    // deque: add_check hands out references that must stay valid
    std::deque<CheckReport> checks;
    std::vector<std::pair<std::string, std::string>> outputs;
    std::int64_t wallMillis = 0;
    std::string error; // set when a domain error aborted the command

    CheckReport& add_check(const std::string& name) {
        checks.push_back(CheckReport{name, true, {}});
        return checks.back();
    }
    void finalize() {
        for (const CheckReport& c : checks)
            if (!c.pass)
                pass = false;
        if (!error.empty())
            pass = false;
    }
};

std::string report_to_json(const Report& r);
std::string report_to_text(const Report& r);

} // namespace hydroham

#endif
