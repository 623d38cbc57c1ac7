#pragma once

#include <string>
#include <vector>

namespace heisapp {

// One checked quantity. pass iff |measured - expected| <= tolerance.
struct Record {
    std::string test_id;
    std::string ref;  // identity being checked
    std::string what;
    double measured = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct Info {
    std::string test_id;
    std::string text;
};

class Report {
public:
    Record& check(std::string test_id, std::string ref, std::string what, double measured, double expected,
                  double tolerance);
    // measured <= bound
    Record& bound(std::string test_id, std::string ref, std::string what, double measured, double bound);
    void info(std::string test_id, std::string text);

    const std::vector<Record>& records() const { return records_; }
    const std::vector<Info>& infos() const { return infos_; }
    bool all_pass() const;
    bool pass(const std::string& test_id) const;
    std::vector<std::string> failures() const;

    // Deterministic: no timings, fixed key order, shortest round-trip doubles.
    std::string json(const std::string& config_json) const;

private:
    std::vector<Record> records_;
    std::vector<Info> infos_;
};

}  // namespace heisapp
