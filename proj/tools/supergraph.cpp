#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "supergraph/harness.hpp"

namespace {

int cmd_run(const std::string& config_path, std::uint64_t seed, bool seed_set, int threads,
            const std::string& out_dir) {
    supergraph::CampaignConfig config = supergraph::load_campaign_config(config_path);
    if (seed_set) {
        config.seed = seed;
        config.echo["seed"] = seed;
    }
    if (threads >= 0) config.threads = threads;
    if (!out_dir.empty()) config.output_dir = out_dir;

    const auto result = supergraph::run_campaign(config);
    if (!config.output_dir.empty()) {
        const auto manifest = supergraph::emit_outputs(result, config.output_dir);
        std::cout << "wrote " << manifest.size() << " files to " << config.output_dir << "\n";
    } else {
        std::cout << supergraph::summary_json(result).dump(2) << "\n";
    }
    if (result.conditions && !result.conditions_ok)
        std::cerr << "warning: moment conditions violated (deliberate-violation run?)\n";
    if (result.truncated) {
        std::cerr << "warning: campaign truncated by budget after " << result.records.size()
                  << " replicates\n";
        return 3;
    }
    return 0;
}

int cmd_motif_info(const std::string& spec) {
    supergraph::Motif motif;
    if (std::filesystem::exists(spec)) {
        std::ifstream in(spec);
        std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
        motif = supergraph::motif_from_text(text);
    } else {
        motif = supergraph::motif_from_name(spec);
    }
    nlohmann::ordered_json j;
    j["name"] = motif.name();
    j["v_f"] = motif.vertices;
    j["e_f"] = motif.edge_count;
    j["a_f"] = motif.copies_in_complete;
    j["automorphisms"] = motif.automorphism_count;
    j["m_f"] = motif.max_subgraph_density;
    j["two_connected"] = motif.two_connected;
    j["balanced"] = motif.balanced;
    j["max_degree"] = motif.max_degree;
    nlohmann::ordered_json edges = nlohmann::ordered_json::array();
    for (const auto& [u, v] : motif.edges) edges.push_back({u + 1, v + 1});
    j["edges"] = edges;
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_hf(const std::string& config_path) {
    const auto config = supergraph::load_campaign_config(config_path);
    const long long m = config.resolved_m();
    const double hf = supergraph::h_f_exact(config.motif, config.n, m, config.law);
    double choose = 1.0;
    for (int i = 0; i < config.motif.vertices; ++i)
        choose *= static_cast<double>(config.n - i) / static_cast<double>(i + 1);
    nlohmann::ordered_json j;
    j["n"] = config.n;
    j["m"] = m;
    j["motif"] = config.motif.name();
    j["h_f"] = hf;
    j["expected_poly_star"] = choose * static_cast<double>(config.motif.copies_in_complete) * hf;
    std::cout << j.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"supergraph: simulator and statistical workbench for superpositions of "
                 "Bernoulli random graphs"};
    app.require_subcommand(1);

    std::string config_path, out_dir, motif_spec;
    std::uint64_t seed = 0;
    int threads = -1;

    auto* run = app.add_subcommand("run", "run a campaign from a config file");
    run->add_option("--config", config_path, "campaign config (JSON)")->required();
    auto* seed_opt = run->add_option("--seed", seed, "override the seed");
    run->add_option("--threads", threads, "worker threads (0 = hardware)");
    run->add_option("--out", out_dir, "output directory (overrides config)");

    auto* verify = app.add_subcommand("verify", "run the combinatorial verification battery");

    auto* motif_info = app.add_subcommand("motif-info", "analyze a motif (name or file)");
    motif_info->add_option("motif", motif_spec, "motif name (K3..K7, C3..C9) or file")
        ->required();

    std::string hf_config;
    auto* hf = app.add_subcommand("hf", "evaluate the exact polychromatic copy rate h_F");
    hf->add_option("--config", hf_config, "campaign config (JSON)")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return cmd_run(config_path, seed, seed_opt->count() > 0, threads, out_dir);
        if (verify->parsed()) {
            const int failures = supergraph::verify_all(std::cout);
            std::cout << (failures == 0 ? "verification passed" : "verification FAILED")
                      << "\n";
            return failures == 0 ? 0 : 1;
        }
        if (motif_info->parsed()) return cmd_motif_info(motif_spec);
        if (hf->parsed()) return cmd_hf(hf_config);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
