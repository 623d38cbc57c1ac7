#include "heisapp/report.hpp"

#include <json.hpp>

#include <cmath>

namespace heisapp {

Record& Report::check(std::string test_id, std::string ref, std::string what, double measured, double expected,
                      double tolerance) {
    Record r{std::move(test_id), std::move(ref), std::move(what), measured, expected, tolerance, false};
    r.pass = std::isfinite(measured) && std::abs(measured - expected) <= tolerance;
    records_.push_back(std::move(r));
    return records_.back();
}

Record& Report::bound(std::string test_id, std::string ref, std::string what, double measured, double b) {
    Record r{std::move(test_id), std::move(ref), std::move(what), measured, 0.0, b, false};
    r.pass = std::isfinite(measured) && measured <= b;
    records_.push_back(std::move(r));
    return records_.back();
}

void Report::info(std::string test_id, std::string text) { infos_.push_back({std::move(test_id), std::move(text)}); }

bool Report::all_pass() const {
    for (const auto& r : records_)
        if (!r.pass) return false;
    return true;
}

bool Report::pass(const std::string& test_id) const {
    bool any = false;
    for (const auto& r : records_)
        if (r.test_id == test_id) {
            any = true;
            if (!r.pass) return false;
        }
    return any;
}

std::vector<std::string> Report::failures() const {
    std::vector<std::string> out;
    for (const auto& r : records_)
        if (!r.pass) out.push_back(r.test_id + ": " + r.what);
    return out;
}

std::string Report::json(const std::string& config_json) const {
    nlohmann::ordered_json j;
    j["config"] = nlohmann::ordered_json::parse(config_json);
    j["records"] = nlohmann::ordered_json::array();
    for (const auto& r : records_) {
        nlohmann::ordered_json e;
        e["test_id"] = r.test_id;
        e["ref"] = r.ref;
        e["what"] = r.what;
        // NaN/inf are not JSON numbers
        auto num = [](double v) -> nlohmann::ordered_json {
            if (std::isfinite(v)) return v;
            return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
        };
        e["measured"] = num(r.measured);
        e["expected"] = num(r.expected);
        e["tolerance"] = num(r.tolerance);
        e["pass"] = r.pass;
        j["records"].push_back(std::move(e));
    }
    j["info"] = nlohmann::ordered_json::array();
    for (const auto& i : infos_) j["info"].push_back({{"test_id", i.test_id}, {"text", i.text}});
    j["pass"] = all_pass();
    return j.dump(2) + "\n";
}

}  // namespace heisapp
