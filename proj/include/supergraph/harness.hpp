#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "supergraph/combinatorics.hpp"
#include "supergraph/graph_core.hpp"
#include "supergraph/layer_model.hpp"
#include "supergraph/limits.hpp"
#include "supergraph/motif.hpp"

namespace supergraph {

struct Budgets {
    long long max_host_vertices = 10000;
    long long max_replicate_ms = 0;  // 0 = unlimited
};

struct Toggles {
    bool dump_graphs = false;
    bool compute_hf = false;
    bool compute_clustering = false;
    // Off by default so reruns with the same seed are byte-identical; when on,
    // measured wall times land in the CSV and summary.
    bool record_timings = false;
};

struct CampaignConfig {
    long long n = 0;
    std::optional<long long> m;
    std::optional<double> nu;  // m = round(nu * n)
    Motif motif;
    std::string motif_label;
    LayerTypeLaw law = LayerTypeLaw::deterministic(1, 1.0);
    long long replicates = 0;
    Regime regime = Regime::none;
    double alpha = 0.0;
    std::uint64_t seed = 0;
    std::string output_dir;
    int threads = 0;  // 0 = hardware concurrency
    Budgets budgets;
    Toggles toggles;
    SigmaMethod sigma_method = SigmaMethod::exact_small;
    long long sigma_mc_draws = 20000;
    long long hill_k = 0;  // 0 = default_hill_k
    nlohmann::ordered_json echo;

    long long resolved_m() const;
};

CampaignConfig parse_campaign_config(const nlohmann::json& j);
// Reads a JSON config file; SUPERGRAPH_SEED, when set, overrides the seed.
CampaignConfig load_campaign_config(const std::string& path);

LayerTypeLaw parse_law(const nlohmann::json& j);
Motif parse_motif(const nlohmann::json& j, std::string* label = nullptr);

struct ReplicateRecord {
    long long index = 0;
    std::uint64_t seed = 0;
    CountReport counts;
    double s_f_star = 0.0;
    double normalized = 0.0;
    long long overflow = 0;
    long long runtime_ms = 0;
    double clustering = 0.0;
    bool clustering_defined = false;
};

struct HfDiagnostic {
    double h_f = 0.0;
    double predicted_poly_star_mean = 0.0;  // C(n, v_F) a_F h_F
    double empirical_poly_star_mean = 0.0;
    double empirical_se = 0.0;
};

struct CampaignResult {
    CampaignConfig config;
    long long m = 0;
    std::vector<ReplicateRecord> records;
    bool truncated = false;

    std::optional<ConditionReport> conditions;
    bool conditions_ok = true;

    std::optional<SigmaEstimate> sigma;
    Normalization norm;
    double mean_n_f_star = 0.0;  // E N_F*, +inf when divergent

    // diagnostics
    double ks = std::numeric_limits<double>::quiet_NaN();
    std::optional<TailDiagnostics> tail;    // pooled N_F* (stable regime)
    std::optional<double> hill_n_f;         // Hill on the N_F replicate sample
    std::vector<double> s_f_star_batch;     // independent batch, normalized (stable)
    std::vector<std::pair<double, double>> qq;

    std::optional<HfDiagnostic> hf;
    std::optional<double> clustering_mean;

    long long total_runtime_ms = 0;  // populated only with record_timings
};

CampaignResult run_campaign(const CampaignConfig& config);

struct ManifestEntry {
    std::string file;
    std::string sha256;
    std::uint64_t bytes = 0;
};

// Writes replicates.csv, summary.json, optional qq.csv and graph dumps into
// dir; returns the manifest (also written as manifest.json).
std::vector<ManifestEntry> emit_outputs(const CampaignResult& result, const std::string& dir);

// Full verification battery; returns the number of failures, logging one line
// per battery.
int verify_all(std::ostream& log);

nlohmann::ordered_json condition_report_to_json(const ConditionReport& report);
nlohmann::ordered_json diagnostics_record(const CampaignResult& result);
nlohmann::ordered_json summary_json(const CampaignResult& result);

// 17 significant digits, locale-independent.
std::string format_real(double v);

}  // namespace supergraph
