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

#include "rgs/harness.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "rgs/error_mc.hpp"
#include "rgs/schedule.hpp"

namespace rgs {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, std::initializer_list<const char*> known,
                    const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : known) {
            if (it.key() == k) {
                ok = true;
                break;
            }
        }
        if (!ok) throw std::invalid_argument("unknown key '" + it.key() + "' in " + where);
    }
}

ChainConfig chain_from_json(const json& j) {
    reject_unknown(j,
                   {"hops", "spacing_km", "attenuation_db_per_km", "p_dep", "arms", "branches",
                    "bsm_success", "loss_enabled", "exact_qubit_cap", "vote"},
                   "chain");
    ChainConfig c;
    c.hops = j.value("hops", c.hops);
    c.spacing_km = j.value("spacing_km", c.spacing_km);
    c.attenuation_db_per_km = j.value("attenuation_db_per_km", c.attenuation_db_per_km);
    c.p_dep = j.value("p_dep", c.p_dep);
    c.spec.arms = j.value("arms", c.spec.arms);
    if (j.contains("branches")) c.spec.tree.branches = j["branches"].get<std::vector<int>>();
    c.bsm_success = j.value("bsm_success", c.bsm_success);
    c.loss_enabled = j.value("loss_enabled", c.loss_enabled);
    c.exact_qubit_cap = j.value("exact_qubit_cap", c.exact_qubit_cap);
    std::string vote = j.value("vote", std::string("recursive"));
    if (vote == "recursive") c.vote = VoteMode::Recursive;
    else if (vote == "shallow") c.vote = VoteMode::Shallow;
    else throw std::invalid_argument("vote must be 'recursive' or 'shallow'");
    return c;
}

json chain_to_json(const ChainConfig& c) {
    return json{{"hops", c.hops},
                {"spacing_km", c.spacing_km},
                {"attenuation_db_per_km", c.attenuation_db_per_km},
                {"p_dep", c.p_dep},
                {"arms", c.spec.arms},
                {"branches", c.spec.tree.branches},
                {"bsm_success", c.bsm_success},
                {"loss_enabled", c.loss_enabled},
                {"exact_qubit_cap", c.exact_qubit_cap},
                {"vote", c.vote == VoteMode::Recursive ? "recursive" : "shallow"}};
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

struct CsvWriter {
    std::ostringstream body;
    std::string header;
    const ScenarioConfig& cfg;

    explicit CsvWriter(const ScenarioConfig& c) : cfg(c) {}

    std::string render() const {
        std::ostringstream os;
        os << "# scenario=" << cfg.scenario << " seed=" << cfg.seed << " config_hash="
           << std::hex << cfg.config_hash() << std::dec << "\n";
        os << header << "\n" << body.str();
        return os.str();
    }
};

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

InnerErrorModel estimate_inner_for(const ScenarioConfig& cfg, double p_dep) {
    ChainConfig c = cfg.chain;
    c.p_dep = p_dep;
    double loss = c.loss_enabled ? 1.0 - c.photon_arrival_probability() : 0.0;
    return estimate_inner_logical_errors(c.spec.tree, 2.0 * p_dep / 3.0, loss, 50000,
                                         derive_seed(cfg.seed, "inner"), c.vote)
        .model;
}

ScenarioResult run_validate_oracle(const ScenarioConfig& cfg, const std::string& out_dir) {
    OracleConfig oc = cfg.oracle;
    oc.seed = cfg.seed;
    OracleReport rep = run_graph_vs_tableau_oracle(oc);
    CsvWriter csv(cfg);
    csv.header = "cases,ops,comparisons,mismatches";
    csv.body << rep.cases << ',' << rep.ops_applied << ',' << rep.comparisons << ','
             << rep.mismatches << "\n";
    write_file(out_dir + "/results.csv", csv.render());
    ScenarioResult res;
    std::ostringstream os;
    os << "oracle: " << rep.cases << " cases, " << rep.comparisons << " state comparisons, "
       << rep.mismatches << " mismatches";
    res.summary = os.str();
    res.results_csv_path = out_dir + "/results.csv";
    if (rep.mismatches > 0) {
        res.exit_code = kExitCheckFailed;
        res.summary += "\n" + rep.first_mismatch;
    }
    return res;
}

ScenarioResult run_chain_sim(const ScenarioConfig& cfg, const std::string& out_dir) {
    ChainConfig chain = cfg.chain;
    chain.seed = cfg.seed;
    chain.trials = cfg.trials;
    TrialMode mode = cfg.trial_mode == "zflip" ? TrialMode::ZFlipFast : TrialMode::ExactTableau;

    std::ostringstream jsonl;
    long ok = 0, verified = 0, agree = 0;
    long frame_a = 0, frame_b = 0;
    for (long t = 0; t < cfg.trials; ++t) {
        TrialOutcome out = run_trial(chain, mode, t);
        ok += out.success ? 1 : 0;
        verified += out.verified_exact ? 1 : 0;
        agree += out.frames_agree ? 1 : 0;
        frame_a += out.frame_a ? 1 : 0;
        frame_b += out.frame_b ? 1 : 0;
        json row{{"trial", t},
                 {"seed", out.trial_seed},
                 {"success", out.success},
                 {"frame_a", out.frame_a},
                 {"frame_b", out.frame_b},
                 {"frames_agree", out.frames_agree},
                 {"verified_exact", out.verified_exact},
                 {"bsm_attempts", out.bsm_attempts},
                 {"bsm_successes", out.bsm_successes},
                 {"photons_lost", out.photons_lost},
                 {"photons_total", out.photons_total}};
        jsonl << row.dump() << "\n";
    }
    write_file(out_dir + "/trials.jsonl", jsonl.str());

    CsvWriter csv(cfg);
    csv.header = "trials,successes,verified_exact,frames_agree,frame_a_count,frame_b_count";
    csv.body << cfg.trials << ',' << ok << ',' << verified << ',' << agree << ',' << frame_a
             << ',' << frame_b << "\n";
    write_file(out_dir + "/results.csv", csv.render());

    ScenarioResult res;
    std::ostringstream os;
    os << "chain-sim: " << ok << "/" << cfg.trials << " successful";
    if (mode == TrialMode::ExactTableau) {
        os << ", " << verified << " verified exactly";
        if (verified != ok || agree != cfg.trials) res.exit_code = kExitCheckFailed;
    }
    res.summary = os.str();
    res.results_csv_path = out_dir + "/results.csv";
    return res;
}

ScenarioResult run_fidelity_curve(const ScenarioConfig& cfg, const std::string& out_dir) {
    CsvWriter csv(cfg);
    csv.header = "p_dep,strategy,fidelity,rate,ci_low,ci_high";
    Schedule flex = cfg.plan_text.empty() ? Schedule::flexible_three_branch(cfg.chain.hops)
                                          : Schedule::parse(cfg.plan_text);
    Schedule pump = Schedule::pumping(
        {PurifyKind::YY, PurifyKind::ZX, PurifyKind::YY, PurifyKind::XZ}, cfg.chain.hops);

    for (double p : cfg.p_dep_grid) {
        ChainConfig chain = cfg.chain;
        chain.p_dep = p;
        chain.seed = cfg.seed;
        InnerErrorModel inner = estimate_inner_for(cfg, p);
        struct Row {
            const char* name;
            RateStrategy strat;
            const Schedule* plan;
        };
        const Row rows[] = {{"raw", RateStrategy::Raw, nullptr},
                            {"baseline", RateStrategy::Baseline, &pump},
                            {"optimistic", RateStrategy::Optimistic, &flex}};
        for (const Row& r : rows) {
            auto rate = rate_model(chain, r.strat, cfg.copies, cfg.timing, &inner);
            auto mc = mc_zflip_fidelity(chain, r.plan, cfg.trials,
                                        derive_seed(cfg.seed, r.name), cfg.threads, &inner);
            csv.body << fmt(p) << ',' << r.name << ',' << fmt(mc.fidelity) << ','
                     << fmt(rate.pairs_per_second) << ',' << fmt(mc.ci_low) << ','
                     << fmt(mc.ci_high) << "\n";
        }
    }
    write_file(out_dir + "/results.csv", csv.render());
    ScenarioResult res;
    res.summary = "fidelity-curve: " + std::to_string(cfg.p_dep_grid.size()) + " grid points";
    res.results_csv_path = out_dir + "/results.csv";
    return res;
}

ScenarioResult run_rate_compare(const ScenarioConfig& cfg, const std::string& out_dir) {
    CsvWriter csv(cfg);
    csv.header =
        "p_dep,raw_rate,baseline_rate,optimistic_rate,opt_over_base,raw_over_opt,"
        "raw_fidelity,optimistic_fidelity";
    for (double p : cfg.p_dep_grid) {
        ChainConfig chain = cfg.chain;
        chain.p_dep = p;
        chain.seed = cfg.seed;
        InnerErrorModel inner = estimate_inner_for(cfg, p);
        auto raw = rate_model(chain, RateStrategy::Raw, 1, cfg.timing, &inner);
        auto base = rate_model(chain, RateStrategy::Baseline, cfg.copies, cfg.timing, &inner);
        auto opt = rate_model(chain, RateStrategy::Optimistic, cfg.copies, cfg.timing, &inner);
        csv.body << fmt(p) << ',' << fmt(raw.pairs_per_second) << ','
                 << fmt(base.pairs_per_second) << ',' << fmt(opt.pairs_per_second) << ','
                 << fmt(opt.pairs_per_second / base.pairs_per_second) << ','
                 << fmt(raw.pairs_per_second / opt.pairs_per_second) << ','
                 << fmt(raw.fidelity) << ',' << fmt(opt.fidelity) << "\n";
    }
    write_file(out_dir + "/results.csv", csv.render());
    ScenarioResult res;
    res.summary = "rate-compare: " + std::to_string(cfg.p_dep_grid.size()) + " grid points";
    res.results_csv_path = out_dir + "/results.csv";
    return res;
}

ScenarioResult run_comm_cost(const ScenarioConfig& cfg, const std::string& out_dir) {
    CsvWriter csv(cfg);
    csv.header =
        "separation_km,stations,one_stage_end_node_bits,two_stage_end_node_bits,"
        "per_absa_bits,ratio";
    for (double sep : cfg.separation_grid_km) {
        ChainConfig chain = cfg.chain;
        chain.hops = std::max(1, static_cast<int>(sep / chain.spacing_km));
        auto one = classical_bit_count(chain, CorrectionMethod::OneStage);
        auto two = classical_bit_count(chain, CorrectionMethod::TwoStage);
        csv.body << fmt(sep) << ',' << chain.hops << ',' << one.end_node_bits << ','
                 << two.end_node_bits << ',' << two.per_absa_bits << ','
                 << fmt(double(one.end_node_bits) / double(two.end_node_bits)) << "\n";
    }
    write_file(out_dir + "/results.csv", csv.render());
    ScenarioResult res;
    res.summary = "comm-cost: " + std::to_string(cfg.separation_grid_km.size()) + " separations";
    res.results_csv_path = out_dir + "/results.csv";
    return res;
}

ScenarioResult run_link_model(const ScenarioConfig& cfg, const std::string& out_dir) {
    CsvWriter csv(cfg);
    csv.header = "sweep,value,batched_time_s,per_pair_time_s,swap_fidelity,werner_fidelity";
    // symmetric link, growing memory banks
    for (int m : cfg.n_mem_grid) {
        MimLinkParams p = cfg.mim;
        p.n_mem = m;
        auto t = batched_link_time(p);
        double seq = per_pair_link_time(p.total_length_km(), p.c_km_per_s, p.p_succ,
                                            p.n_bell);
        csv.body << "n_mem," << m << ',' << fmt(t.total_s) << ',' << fmt(seq) << ','
                 << fmt(pauli_swap_fidelity(cfg.noise.p_g, cfg.noise.p_m)) << ','
                 << fmt(werner_swap(0.95, 0.95, cfg.noise.p_g, cfg.noise.p_m)) << "\n";
    }
    // single memory, analyzer swept along the link
    for (double frac : cfg.bsa_position_grid) {
        MimLinkParams p = cfg.mim;
        double total = p.total_length_km();
        p.l_a_km = frac * total;
        p.l_b_km = total - p.l_a_km;
        p.n_mem = 1;
        auto t = batched_link_time(p);
        double seq = per_pair_link_time(total, p.c_km_per_s, p.p_succ, p.n_bell);
        csv.body << "bsa_position," << fmt(frac) << ',' << fmt(t.total_s) << ',' << fmt(seq)
                 << ',' << fmt(pauli_swap_fidelity(cfg.noise.p_g, cfg.noise.p_m)) << ','
                 << fmt(werner_swap(0.95, 0.95, cfg.noise.p_g, cfg.noise.p_m)) << "\n";
    }
    write_file(out_dir + "/results.csv", csv.render());
    ScenarioResult res;
    res.summary = "link-model: wrote timing and fidelity sweeps";
    res.results_csv_path = out_dir + "/results.csv";
    return res;
}

}  // namespace

ScenarioConfig ScenarioConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config parse error: ") + e.what());
    }
    reject_unknown(j,
                   {"scenario", "seed", "trials", "threads", "out_dir", "chain", "timing",
                    "oracle", "mim", "noise", "trial_mode", "plan", "copies", "p_dep_grid",
                    "separation_grid_km", "n_mem_grid", "bsa_position_grid"},
                   "config");
    ScenarioConfig c;
    c.scenario = j.value("scenario", std::string());
    c.seed = j.value("seed", c.seed);
    c.trials = j.value("trials", c.trials);
    c.threads = j.value("threads", c.threads);
    c.out_dir = j.value("out_dir", c.out_dir);
    if (j.contains("chain")) c.chain = chain_from_json(j["chain"]);
    if (j.contains("timing")) {
        const json& t = j["timing"];
        reject_unknown(t,
                       {"emission_period_s", "fiber_km_per_s", "station_proc_s",
                        "heralding_rounds_baseline"},
                       "timing");
        c.timing.emission_period_s = t.value("emission_period_s", c.timing.emission_period_s);
        c.timing.fiber_km_per_s = t.value("fiber_km_per_s", c.timing.fiber_km_per_s);
        c.timing.station_proc_s = t.value("station_proc_s", c.timing.station_proc_s);
        c.timing.heralding_rounds_baseline =
            t.value("heralding_rounds_baseline", c.timing.heralding_rounds_baseline);
    }
    if (j.contains("oracle")) {
        const json& o = j["oracle"];
        reject_unknown(o, {"n_max", "cases", "ops_per_case", "exhaustive"}, "oracle");
        c.oracle.n_max = o.value("n_max", c.oracle.n_max);
        c.oracle.cases = o.value("cases", c.oracle.cases);
        c.oracle.ops_per_case = o.value("ops_per_case", c.oracle.ops_per_case);
        c.oracle.exhaustive_outcomes = o.value("exhaustive", c.oracle.exhaustive_outcomes);
    }
    if (j.contains("mim")) {
        const json& m = j["mim"];
        reject_unknown(m, {"l_a_km", "l_b_km", "c_km_per_s", "t_sep_s", "n_mem", "p_succ",
                           "n_bell"},
                       "mim");
        c.mim.l_a_km = m.value("l_a_km", c.mim.l_a_km);
        c.mim.l_b_km = m.value("l_b_km", c.mim.l_b_km);
        c.mim.c_km_per_s = m.value("c_km_per_s", c.mim.c_km_per_s);
        c.mim.t_sep_s = m.value("t_sep_s", c.mim.t_sep_s);
        c.mim.n_mem = m.value("n_mem", c.mim.n_mem);
        c.mim.p_succ = m.value("p_succ", c.mim.p_succ);
        c.mim.n_bell = m.value("n_bell", c.mim.n_bell);
    }
    if (j.contains("noise")) {
        const json& n = j["noise"];
        reject_unknown(n, {"p_g", "p_m", "coherence_s", "dt_s"}, "noise");
        c.noise.p_g = n.value("p_g", c.noise.p_g);
        c.noise.p_m = n.value("p_m", c.noise.p_m);
        c.noise.coherence_s = n.value("coherence_s", c.noise.coherence_s);
        c.noise.dt_s = n.value("dt_s", c.noise.dt_s);
    }
    c.trial_mode = j.value("trial_mode", c.trial_mode);
    c.plan_text = j.value("plan", c.plan_text);
    c.copies = j.value("copies", c.copies);
    if (j.contains("p_dep_grid")) c.p_dep_grid = j["p_dep_grid"].get<std::vector<double>>();
    if (j.contains("separation_grid_km")) {
        c.separation_grid_km = j["separation_grid_km"].get<std::vector<double>>();
    }
    if (j.contains("n_mem_grid")) c.n_mem_grid = j["n_mem_grid"].get<std::vector<int>>();
    if (j.contains("bsa_position_grid")) {
        c.bsa_position_grid = j["bsa_position_grid"].get<std::vector<double>>();
    }
    return c;
}

ScenarioConfig ScenarioConfig::preset(const std::string& name) {
    ScenarioConfig c;
    if (name == "eval-10hop") {
        // repeater-chain evaluation grid: 2 km spacing, 18 arms, tree
        // (16,14,1), depolarizing swept to one percent
        c.scenario = "fidelity-curve";
        c.chain = ChainConfig::ten_hop_preset();
        c.trials = 100000;
    } else if (name == "rate-40km") {
        c.scenario = "rate-compare";
        c.chain = ChainConfig::ten_hop_preset();
        c.chain.spacing_km = 4.0;  // 40 km end to end over 10 hops
        c.p_dep_grid = {0.0, 0.00125, 0.0025, 0.00375, 0.005};
    } else if (name == "comm-cost-14-arms") {
        c.scenario = "comm-cost";
        c.chain.spec = HalfRgsSpec{14, TreeSpec{{10, 5}}};
        c.chain.spacing_km = 2.0;
    } else if (name == "link-mim-1000") {
        c.scenario = "link-model";
        c.mim.l_a_km = 5;
        c.mim.l_b_km = 5;
        c.mim.n_bell = 1000;
        c.noise.p_g = 0.05;
        c.noise.p_m = 0.1;
    } else if (name == "oracle-default") {
        c.scenario = "validate-oracle";
        c.oracle = OracleConfig{};
    } else if (name == "chain-small-exact") {
        c.scenario = "chain-sim";
        c.chain.hops = 3;
        c.chain.spec = HalfRgsSpec{2, TreeSpec{{2, 2}}};
        c.chain.spacing_km = 6.0;
        c.trials = 1000;
    } else {
        throw std::invalid_argument("unknown preset '" + name + "'");
    }
    return c;
}

std::string ScenarioConfig::to_json_text() const {
    json j{{"scenario", scenario},
           {"seed", seed},
           {"trials", trials},
           {"threads", threads},
           {"out_dir", out_dir},
           {"chain", chain_to_json(chain)},
           {"timing",
            {{"emission_period_s", timing.emission_period_s},
             {"fiber_km_per_s", timing.fiber_km_per_s},
             {"station_proc_s", timing.station_proc_s},
             {"heralding_rounds_baseline", timing.heralding_rounds_baseline}}},
           {"oracle",
            {{"n_max", oracle.n_max},
             {"cases", oracle.cases},
             {"ops_per_case", oracle.ops_per_case},
             {"exhaustive", oracle.exhaustive_outcomes}}},
           {"mim",
            {{"l_a_km", mim.l_a_km},
             {"l_b_km", mim.l_b_km},
             {"c_km_per_s", mim.c_km_per_s},
             {"t_sep_s", mim.t_sep_s},
             {"n_mem", mim.n_mem},
             {"p_succ", mim.p_succ},
             {"n_bell", mim.n_bell}}},
           {"noise",
            {{"p_g", noise.p_g},
             {"p_m", noise.p_m},
             {"coherence_s", noise.coherence_s},
             {"dt_s", noise.dt_s}}},
           {"trial_mode", trial_mode},
           {"plan", plan_text},
           {"copies", copies},
           {"p_dep_grid", p_dep_grid},
           {"separation_grid_km", separation_grid_km},
           {"n_mem_grid", n_mem_grid},
           {"bsa_position_grid", bsa_position_grid}};
    return j.dump(2);
}

uint64_t ScenarioConfig::config_hash() const {
    // hash the scientific parameters only: where the results land and how
    // many workers ran must not change the recorded identity
    ScenarioConfig c = *this;
    c.out_dir.clear();
    c.threads = 1;
    std::string text = c.to_json_text();
    uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : text) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
    ScenarioResult res;
    try {
        std::filesystem::create_directories(cfg.out_dir);
        write_file(cfg.out_dir + "/config-echo.json", cfg.to_json_text() + "\n");
        if (cfg.scenario == "validate-oracle") return run_validate_oracle(cfg, cfg.out_dir);
        if (cfg.scenario == "chain-sim") return run_chain_sim(cfg, cfg.out_dir);
        if (cfg.scenario == "fidelity-curve") return run_fidelity_curve(cfg, cfg.out_dir);
        if (cfg.scenario == "rate-compare") return run_rate_compare(cfg, cfg.out_dir);
        if (cfg.scenario == "comm-cost") return run_comm_cost(cfg, cfg.out_dir);
        if (cfg.scenario == "link-model") return run_link_model(cfg, cfg.out_dir);
        res.exit_code = kExitConfigError;
        res.summary = "unknown scenario '" + cfg.scenario + "'";
    } catch (const std::invalid_argument& e) {
        res.exit_code = kExitConfigError;
        res.summary = std::string("config error: ") + e.what();
    } catch (const std::exception& e) {
        res.exit_code = kExitCheckFailed;
        res.summary = std::string("run failed: ") + e.what();
    }
    return res;
}

}  // namespace rgs
