#include "heisapp/config.hpp"

#include <heis/common.hpp>

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace heisapp {

using nlohmann::json;

heis::Profile FixtureSpec::build(int d) const {
    if (name == "heat") return heis::heat_fixture(param, d);
    if (name == "exp_floor") return heis::exp_floor(param, d);
    if (name == "gauss_profile") return heis::gauss_profile(param, d);
    throw heis::InvalidArgument("unknown fixture '" + name + "'");
}

std::string FixtureSpec::label() const {
    std::ostringstream os;
    os << name << '(' << param << ')';
    return os.str();
}

void Config::validate() const {
    heis::check_dim(d);
    if (n_max < 1 || n_max > 64) throw heis::InvalidArgument("config: n_max must lie in [1, 64]");
    if (!(lambda.lambda_min > 0.0)) throw heis::InvalidArgument("config: lambda_min must be positive");
    if (lambda.points_per_sign < 4) throw heis::InvalidArgument("config: points_per_sign must be >= 4");
    if (lambda.ratio == 0.0 && !(lambda.lambda_max > lambda.lambda_min))
        throw heis::InvalidArgument("config: lambda_max must exceed lambda_min");
    if (lambda.ratio != 0.0 && !(lambda.ratio > 1.0)) throw heis::InvalidArgument("config: ratio must exceed 1");
    if (grid.d != d) throw heis::InvalidArgument("config: grid dimension differs from d");
    grid.validate();
    if (grid.ny % 2 == 0 || grid.neta % 2 == 0 || grid.ns % 2 == 0)
        throw heis::InvalidArgument("config: grid axes need an odd number of points");
    if (!(mass_window >= grid.Ls)) throw heis::InvalidArgument("config: mass_window must cover the grid");
    for (const auto& [id, tol] : tolerances)
        if (!(tol >= 0.0)) throw heis::InvalidArgument("config: negative tolerance for " + id);
    for (const auto& f : fixtures) (void)f.build(d);
}

double Config::tolerance(const std::string& id, double fallback) const {
    auto it = tolerances.find(id);
    return it == tolerances.end() ? fallback : it->second;
}

Config default_config() { return Config{}; }

namespace {

template <class T>
void take(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

Config parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw heis::FormatError(std::string("config: ") + e.what());
    }
    if (!j.is_object()) throw heis::FormatError("config: top level must be an object");
    Config c;
    try {
        take(j, "d", c.d);
        take(j, "n_max", c.n_max);
        take(j, "mass_window", c.mass_window);
        c.grid.d = c.d;
        if (j.contains("lambda_grid")) {
            const json& g = j.at("lambda_grid");
            take(g, "lambda_min", c.lambda.lambda_min);
            take(g, "lambda_max", c.lambda.lambda_max);
            take(g, "points_per_sign", c.lambda.points_per_sign);
            take(g, "ratio", c.lambda.ratio);
        }
        if (j.contains("grid")) {
            const json& g = j.at("grid");
            take(g, "ny", c.grid.ny);
            take(g, "neta", c.grid.neta);
            take(g, "ns", c.grid.ns);
            take(g, "Ly", c.grid.Ly);
            take(g, "Leta", c.grid.Leta);
            take(g, "Ls", c.grid.Ls);
        }
        if (j.contains("tolerances"))
            for (const auto& [k, v] : j.at("tolerances").items()) c.tolerances[k] = v.get<double>();
        if (j.contains("fixtures")) {
            c.fixtures.clear();
            for (const auto& f : j.at("fixtures")) {
                FixtureSpec s;
                s.name = f.at("name").get<std::string>();
                if (s.name == "heat") take(f, "t", s.param);
                else if (s.name == "exp_floor") take(f, "r0", s.param);
                else if (s.name == "gauss_profile") take(f, "sigma", s.param);
                c.fixtures.push_back(s);
            }
        }
    } catch (const json::exception& e) {
        throw heis::FormatError(std::string("config: ") + e.what());
    }
    c.validate();
    return c;
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw heis::FormatError("config: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string config_json(const Config& c) {
    nlohmann::ordered_json j;
    j["d"] = c.d;
    j["n_max"] = c.n_max;
    j["lambda_grid"] = {{"lambda_min", c.lambda.lambda_min},
                        {"lambda_max", c.lambda.lambda_max},
                        {"points_per_sign", c.lambda.points_per_sign},
                        {"ratio", c.lambda.ratio}};
    j["grid"] = {{"ny", c.grid.ny}, {"neta", c.grid.neta}, {"ns", c.grid.ns},
                 {"Ly", c.grid.Ly}, {"Leta", c.grid.Leta}, {"Ls", c.grid.Ls}};
    j["mass_window"] = c.mass_window;
    j["tolerances"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : c.tolerances) j["tolerances"][k] = v;
    j["fixtures"] = nlohmann::ordered_json::array();
    for (const auto& f : c.fixtures) {
        const char* key = f.name == "heat" ? "t" : f.name == "exp_floor" ? "r0" : "sigma";
        j["fixtures"].push_back({{"name", f.name}, {key, f.param}});
    }
    return j.dump(2);
}

}  // namespace heisapp
