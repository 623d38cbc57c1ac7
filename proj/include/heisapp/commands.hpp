#pragma once

#include "heisapp/config.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace heisapp {

// Exit codes
inline constexpr int kOk = 0;
inline constexpr int kFailed = 1;  // checks failed or tail bound exceeded
inline constexpr int kUsage = 2;   // bad arguments or malformed input

struct TransformArgs {
    std::string input;    // field (.bin/.csv) for forward, table .csv for inverse
    std::string fixture;  // bundled field instead of input: gaussian, skew, narrow, zero
    std::string direction = "forward";
    bool round_trip = true;
};

struct HeatArgs {
    std::string input;
    std::string fixture = "gaussian";
    std::vector<double> times{0.1, 0.5, 1.0};
};

struct PairArgs {
    std::string dist;   // dirac, one, g_tensor_one, I, dirac_0hat[:c], pf:<gamma>, mu
    std::string theta;  // heat:<t>, gauss_profile:<sigma>, exp_floor:<r0>
};

struct KernelArgs {
    double xdot = 1.0;
    int k = 0;
};

// Each command writes its artefacts under out_dir (created if missing) and a
// human-readable line or two to `log`.
int cmd_transform(const TransformArgs& a, const Config& c, const std::string& out_dir, std::ostream& log);
int cmd_heat(const HeatArgs& a, const Config& c, const std::string& out_dir, std::ostream& log);
int cmd_pair(const PairArgs& a, const Config& c, const std::string& out_dir, std::ostream& log);
int cmd_kernel(const KernelArgs& a, const Config& c, const std::string& out_dir, std::ostream& log);
int cmd_verify(const std::string& suite, const Config& c, const std::string& out_dir, std::ostream& log);

}  // namespace heisapp
