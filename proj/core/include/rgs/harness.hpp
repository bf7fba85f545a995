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

#ifndef RGS_HARNESS_HPP
#define RGS_HARNESS_HPP

#include <string>
#include <vector>

#include "rgs/chain.hpp"
#include "rgs/link_models.hpp"
#include "rgs/rate_model.hpp"
#include "rgs/validation.hpp"

namespace rgs {

// Exit codes shared by the library runner and the command line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfigError = 2;

// One scenario run: everything is spelled out here, nothing global. The
// JSON loader rejects unknown keys so typos fail loudly.
struct ScenarioConfig {
    std::string scenario;  // validate-oracle | chain-sim | fidelity-curve |
                           // rate-compare | comm-cost | link-model
    uint64_t seed = 1;
    long trials = 1000;
    int threads = 1;
    std::string out_dir = "out";

    ChainConfig chain;
    TimingParams timing;
    OracleConfig oracle;
    MimLinkParams mim;
    NoiseParams noise;

    std::string trial_mode = "exact";  // chain-sim: exact | zflip
    std::string plan_text;             // optional purification plan
    int copies = 5;

    std::vector<double> p_dep_grid{0.0, 0.002, 0.004, 0.006, 0.008, 0.01};
    std::vector<double> separation_grid_km{250, 500, 1000, 2000};
    std::vector<int> n_mem_grid{1, 2, 4, 8, 16, 32, 64};
    std::vector<double> bsa_position_grid{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};

    // Parses the JSON text; `overrides` (seed/out/trials/threads...) from the
    // command line are applied afterwards by the caller.
    static ScenarioConfig from_json_text(const std::string& text);
    static ScenarioConfig preset(const std::string& name);
    std::string to_json_text() const;
    uint64_t config_hash() const;
};

struct ScenarioResult {
    int exit_code = kExitOk;
    std::string summary;            // one-line human outcome
    std::string results_csv_path;   // empty when the scenario writes none
};

// Runs one scenario, writing results.csv, any per-trial trials.jsonl, and a
// config-echo.json into the output directory. Never throws for expected
// failures; config problems surface as kExitConfigError.
ScenarioResult run_scenario(const ScenarioConfig& cfg);

}  // namespace rgs

#endif
