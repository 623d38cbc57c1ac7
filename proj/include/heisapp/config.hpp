#pragma once

#include <heis/freq_function.hpp>
#include <heis/heisenberg.hpp>
#include <heis/profiles.hpp>

#include <map>
#include <string>
#include <vector>

namespace heisapp {

// Profile fixture selected by name: heat(t), exp_floor(r0), gauss_profile(sigma).
struct FixtureSpec {
    std::string name;
    double param = 1.0;

    heis::Profile build(int d) const;
    std::string label() const;
};

struct Config {
    int d = 1;
    int n_max = 24;
    heis::LambdaGridParams lambda;
    heis::GridSpec grid;
    // Half-extent of the s-window used for mass checks of slowly decaying kernels.
    double mass_window = 36.0;
    std::map<std::string, double> tolerances;  // per test_id overrides
    std::vector<FixtureSpec> fixtures{{"heat", 1.0}, {"gauss_profile", 0.25}, {"exp_floor", 0.5}};

    void validate() const;
    double tolerance(const std::string& id, double fallback) const;
    heis::LambdaGrid lambda_grid() const { return heis::LambdaGrid(lambda); }
};

Config default_config();
Config parse_config(const std::string& json_text);
Config load_config(const std::string& path);
std::string config_json(const Config& c);

}  // namespace heisapp
