// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "rgs/harness.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct CommonOpts {
    std::string config_path;
    std::string preset;
    std::string out_dir;
    std::string plan_path;
    uint64_t seed = 0;
    bool seed_set = false;
    long trials = 0;
    int threads = 0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON scenario config");
        cmd->add_option("--preset", preset, "named scenario preset");
        cmd->add_option("--out", out_dir, "output directory");
        cmd->add_option("--plan", plan_path, "purification plan file");
        cmd->add_option("--seed", seed, "root seed")->each([this](const std::string&) {
            seed_set = true;
        });
        cmd->add_option("--trials", trials, "trial count");
        cmd->add_option("--threads", threads, "worker threads");
    }

    rgs::ScenarioConfig resolve(const std::string& scenario_name) const {
        rgs::ScenarioConfig cfg;
        if (!preset.empty()) {
            cfg = rgs::ScenarioConfig::preset(preset);
        }
        if (!config_path.empty()) {
            cfg = rgs::ScenarioConfig::from_json_text(slurp(config_path));
        }
        if (cfg.scenario.empty()) cfg.scenario = scenario_name;
        if (cfg.scenario != scenario_name) {
            throw std::invalid_argument("config names scenario '" + cfg.scenario +
                                        "' but the subcommand is '" + scenario_name + "'");
        }
        if (seed_set) cfg.seed = seed;
        if (trials > 0) cfg.trials = trials;
        if (threads > 0) cfg.threads = threads;
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (!plan_path.empty()) cfg.plan_text = slurp(plan_path);
        return cfg;
    }
};

int dispatch(const CommonOpts& opts, const std::string& scenario) {
    try {
        rgs::ScenarioConfig cfg = opts.resolve(scenario);
        rgs::ScenarioResult res = rgs::run_scenario(cfg);
        std::cout << res.summary << "\n";
        if (!res.results_csv_path.empty()) {
            std::cout << "wrote " << res.results_csv_path << "\n";
        }
        return res.exit_code;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return rgs::kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return rgs::kExitCheckFailed;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"repeater-graph-state chain simulator and link-model toolkit"};
    app.require_subcommand(1);

    struct Sub {
        const char* name;
        const char* help;
    };
    const Sub subs[] = {
        {"validate-oracle", "graph rule engine vs stabilizer tableau equivalence suites"},
        {"chain-sim", "run repeater chain trials (exact tableau or fast z-flip tracking)"},
        {"fidelity-curve", "fidelity and rate sweep over depolarizing noise"},
        {"rate-compare", "throughput comparison of raw / heralded / deferred purification"},
        {"comm-cost", "classical communication cost of the two correction methods"},
        {"link-model", "midpoint-link timing and swap fidelity sweeps"},
    };

    std::vector<std::pair<std::string, CommonOpts>> opts;
    opts.reserve(std::size(subs));
    for (const Sub& s : subs) {
        CLI::App* cmd = app.add_subcommand(s.name, s.help);
        opts.emplace_back(s.name, CommonOpts{});
        opts.back().second.attach(cmd);
    }
    // extra knobs for the oracle suite
    CLI::App* oracle_cmd = app.get_subcommand("validate-oracle");
    int n_max = 0;
    long cases = 0;
    bool exhaustive = false;
    oracle_cmd->add_option("--n-max", n_max, "largest random graph size");
    oracle_cmd->add_option("--cases", cases, "number of random cases");
    oracle_cmd->add_flag("--exhaustive", exhaustive, "enumerate every outcome branch");

    CLI11_PARSE(app, argc, argv);

    for (auto& [name, o] : opts) {
        if (app.get_subcommand(name)->parsed()) {
            if (name == "validate-oracle") {
                try {
                    rgs::ScenarioConfig cfg = o.resolve(name);
                    if (n_max > 0) cfg.oracle.n_max = n_max;
                    if (cases > 0) cfg.oracle.cases = cases;
                    if (exhaustive) {
                        cfg.oracle.exhaustive_outcomes = true;
                        cfg.oracle.n_max = std::min(cfg.oracle.n_max, 4);
                        cfg.oracle.cases = std::min(cfg.oracle.cases, 50L);
                        cfg.oracle.ops_per_case = std::min(cfg.oracle.ops_per_case, 8);
                    }
                    rgs::ScenarioResult res = rgs::run_scenario(cfg);
                    std::cout << res.summary << "\n";
                    return res.exit_code;
                } catch (const std::exception& e) {
                    std::cerr << "config error: " << e.what() << "\n";
                    return rgs::kExitConfigError;
                }
            }
            return dispatch(o, name);
        }
    }
    return rgs::kExitConfigError;
}
