#pragma once

#include "heisapp/config.hpp"
#include "heisapp/report.hpp"

#include <heis/common.hpp>

#include <string>
#include <vector>

namespace heisapp {

struct SuiteInfo {
    std::string id;
    std::string title;
};

// Acceptance suites in criterion order.
const std::vector<SuiteInfo>& suites();
bool is_suite(const std::string& id);

class UnknownSuite : public heis::InvalidArgument {
public:
    explicit UnknownSuite(const std::string& id) : heis::InvalidArgument("unknown suite '" + id + "'") {}
};

// Runs one suite, or every suite for "all", appending to the report.
void run_suite(const std::string& id, const Config& c, Report& r);

}  // namespace heisapp
