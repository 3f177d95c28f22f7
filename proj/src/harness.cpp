#include "supergraph/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

#include "supergraph/bruteforce.hpp"
#include "supergraph/errors.hpp"
#include "supergraph/sha256.hpp"

namespace supergraph {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

long long CampaignConfig::resolved_m() const {
    if (m) return *m;
    return std::llround(*nu * static_cast<double>(n));
}

// ---- parsing ----------------------------------------------------------------

namespace {

[[noreturn]] void bad_config(const std::string& msg) { throw ConfigInvalid(msg); }

XLaw parse_x_law(const json& j) {
    const std::string type = j.value("type", "");
    if (type == "constant") return XLaw::constant(j.at("value").get<long long>());
    if (type == "zeta")
        return XLaw::zeta(j.at("gamma").get<double>(), j.value("x_min", 1LL));
    if (type == "uniform")
        return XLaw::uniform(j.at("lo").get<long long>(), j.at("hi").get<long long>());
    if (type == "table")
        return XLaw::table(j.at("values").get<std::vector<long long>>(),
                           j.at("weights").get<std::vector<double>>());
    bad_config("unknown x law type '" + type + "'");
}

QLaw parse_q_law(const json& j) {
    const std::string type = j.value("type", "");
    if (type == "constant") return QLaw::constant(j.at("value").get<double>());
    if (type == "beta") return QLaw::beta(j.at("a").get<double>(), j.at("b").get<double>());
    if (type == "table")
        return QLaw::table(j.at("values").get<std::vector<double>>(),
                           j.at("weights").get<std::vector<double>>());
    bad_config("unknown q law type '" + type + "'");
}

}  // namespace

LayerTypeLaw parse_law(const json& j) {
    const std::string kind = j.value("kind", "");
    if (kind == "deterministic")
        return LayerTypeLaw::deterministic(j.at("x").get<long long>(), j.at("q").get<double>());
    if (kind == "independent_product")
        return LayerTypeLaw::independent(parse_x_law(j.at("x")), parse_q_law(j.at("q")));
    if (kind == "power_law_coupled") {
        const auto& c = j.at("coupling");
        return LayerTypeLaw::coupled(parse_x_law(j.at("x")), c.at("b").get<double>(),
                                     c.at("beta").get<double>());
    }
    if (kind == "empirical_table") {
        std::vector<EmpiricalEntry> entries;
        for (const auto& e : j.at("entries"))
            entries.push_back({e.at("x").get<long long>(), e.at("q").get<double>(),
                               e.at("weight").get<double>()});
        return LayerTypeLaw::empirical(std::move(entries));
    }
    bad_config("unknown law kind '" + kind + "'");
}

Motif parse_motif(const json& j, std::string* label) {
    if (j.is_string()) {
        if (label) *label = j.get<std::string>();
        return motif_from_name(j.get<std::string>());
    }
    if (j.is_object() && j.contains("file")) {
        const std::string path = j.at("file").get<std::string>();
        std::ifstream in(path);
        if (!in) throw IoFailure("cannot read motif file '" + path + "'");
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        Motif m = motif_from_text(text);
        if (label) *label = m.name();
        return m;
    }
    if (j.is_object() && j.contains("vertices")) {
        const int v = j.at("vertices").get<int>();
        std::vector<Edge> edges;
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2) bad_config("motif edge must be [u, v]");
            edges.push_back(make_edge(e[0].get<int>() - 1, e[1].get<int>() - 1));
        }
        Motif m = analyze_motif(v, edges);
        if (label) *label = m.name();
        return m;
    }
    bad_config("motif must be a name, {vertices, edges}, or {file}");
}

CampaignConfig parse_campaign_config(const json& j) {
    CampaignConfig c;
    c.echo = j;
    if (!j.contains("n")) bad_config("missing n");
    c.n = j.at("n").get<long long>();
    if (c.n < 1) bad_config("n must be >= 1");

    if (j.contains("m") == j.contains("nu")) bad_config("exactly one of m or nu is required");
    if (j.contains("m")) {
        c.m = j.at("m").get<long long>();
        if (*c.m < 1) bad_config("m must be >= 1");
    } else {
        c.nu = j.at("nu").get<double>();
        if (!(*c.nu > 0.0)) bad_config("nu must be > 0");
        if (c.resolved_m() < 1) bad_config("nu * n rounds to zero layers");
    }

    c.motif = parse_motif(j.at("motif"), &c.motif_label);
    c.law = parse_law(j.at("law"));

    c.replicates = j.at("replicates").get<long long>();
    if (c.replicates < 1) bad_config("replicates must be >= 1");

    const std::string regime = j.value("regime", "none");
    if (regime == "normal")
        c.regime = Regime::normal;
    else if (regime == "stable")
        c.regime = Regime::stable;
    else if (regime == "none")
        c.regime = Regime::none;
    else
        bad_config("regime must be normal, stable, or none");

    if (c.regime == Regime::stable) {
        if (!j.contains("alpha")) bad_config("stable regime requires alpha");
        c.alpha = j.at("alpha").get<double>();
        if (c.alpha == 1.0)
            throw AlphaOneUnsupported("alpha = 1 centering constant is not supported");
        if (!(c.alpha > 0.0 && c.alpha < 2.0))
            throw AlphaOutOfRange("alpha must lie in (0,2)");
    }

    c.seed = j.value("seed", 0ULL);
    c.output_dir = j.value("output_dir", std::string{});
    c.threads = j.value("threads", 0);

    if (j.contains("budgets")) {
        const auto& b = j.at("budgets");
        c.budgets.max_host_vertices = b.value("max_host_vertices", c.budgets.max_host_vertices);
        c.budgets.max_replicate_ms = b.value("max_replicate_ms", c.budgets.max_replicate_ms);
    }
    if (j.contains("toggles")) {
        const auto& t = j.at("toggles");
        c.toggles.dump_graphs = t.value("dump_graphs", false);
        c.toggles.compute_hf = t.value("compute_hf", false);
        c.toggles.compute_clustering = t.value("compute_clustering", false);
        c.toggles.record_timings = t.value("record_timings", false);
    }
    if (c.toggles.dump_graphs && c.output_dir.empty())
        bad_config("dump_graphs requires output_dir");

    const std::string sigma = j.value("sigma_method", "exact_small");
    if (sigma == "exact_small")
        c.sigma_method = SigmaMethod::exact_small;
    else if (sigma == "monte_carlo")
        c.sigma_method = SigmaMethod::monte_carlo;
    else
        bad_config("sigma_method must be exact_small or monte_carlo");
    c.sigma_mc_draws = j.value("sigma_mc_draws", 20000LL);
    c.hill_k = j.value("hill_k", 0LL);
    return c;
}

CampaignConfig load_campaign_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoFailure("cannot read config file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ConfigInvalid(std::string("config is not valid JSON: ") + e.what());
    }
    CampaignConfig c = parse_campaign_config(j);
    if (const char* env = std::getenv("SUPERGRAPH_SEED")) {
        c.seed = std::strtoull(env, nullptr, 10);
        c.echo["seed"] = c.seed;
    }
    return c;
}

// ---- campaign ------------------------------------------------------------------

namespace {

constexpr std::uint64_t kSigmaStream = 0x5349474d41ull;   // sigma pre-pass
constexpr std::uint64_t kBatchStream = 0x5346535441ull;   // independent S_F* batch

std::string csv_row(const ReplicateRecord& r) {
    std::string row;
    row += std::to_string(r.index);
    row += ',';
    row += std::to_string(r.seed);
    row += ',';
    row += std::to_string(r.counts.n_f);
    row += ',';
    row += std::to_string(r.counts.mono);
    row += ',';
    row += std::to_string(r.counts.poly);
    row += ',';
    row += std::to_string(r.counts.poly_star);
    row += ',';
    row += std::to_string(r.counts.s_tilde);
    row += ',';
    row += format_real(r.s_f_star);
    row += ',';
    row += format_real(r.normalized);
    row += ',';
    row += std::to_string(r.overflow);
    row += ',';
    row += std::to_string(r.runtime_ms);
    row += "\r\n";
    return row;
}

const char* kCsvHeader = "replicate,seed,n_f,mono,poly,poly_star,s_tilde,s_f_star,normalized,overflow,runtime_ms\r\n";

double mean_n_f_star_of(const Motif& motif, const LayerTypeLaw& law) {
    long long vf_fact = 1;
    for (int i = 2; i <= motif.vertices; ++i) vf_fact *= i;
    const double fm =
        factorial_moment(law, motif.vertices, static_cast<double>(motif.edge_count));
    return fm * static_cast<double>(motif.copies_in_complete) / static_cast<double>(vf_fact);
}

}  // namespace

CampaignResult run_campaign(const CampaignConfig& config) {
    CampaignResult result;
    result.config = config;
    const long long m = config.resolved_m();
    result.m = m;
    const long long R = config.replicates;
    const Motif& motif = config.motif;

    // condition checkers run first; failing conditions only warn
    if (config.regime == Regime::normal)
        result.conditions = check_normal_conditions(config.law, motif);
    else if (config.regime == Regime::stable)
        result.conditions = check_stable_conditions(config.law, motif, config.alpha);
    if (result.conditions) result.conditions_ok = result.conditions->all_satisfied();

    result.mean_n_f_star = mean_n_f_star_of(motif, config.law);

    if (config.regime == Regime::normal) {
        result.sigma = sigma_f_squared(motif, config.law, config.sigma_method,
                                       config.sigma_mc_draws,
                                       derive_seed(config.seed ^ kSigmaStream, 0));
        if (result.sigma->finite && !result.sigma->degenerate) {
            const double centering =
                std::isfinite(result.mean_n_f_star) ? result.mean_n_f_star : 0.0;
            result.norm =
                make_normal_normalization(std::sqrt(result.sigma->value), m, centering);
        }
    } else if (config.regime == Regime::stable) {
        const double centering =
            std::isfinite(result.mean_n_f_star) ? result.mean_n_f_star : 0.0;
        result.norm = make_stable_normalization(config.alpha, m, centering);
    }

    // replicate execution
    result.records.resize(R);
    std::vector<std::vector<double>> pooled_nfstar;
    const bool pool_layer_stats = config.regime == Regime::stable;
    if (pool_layer_stats) pooled_nfstar.resize(R);

    fs::path graphs_dir;
    std::ofstream csv_stream;
    if (!config.output_dir.empty()) {
        fs::create_directories(config.output_dir);
        if (config.toggles.dump_graphs) {
            graphs_dir = fs::path(config.output_dir) / "graphs";
            fs::create_directories(graphs_dir);
        }
        csv_stream.open(fs::path(config.output_dir) / "replicates.csv",
                        std::ios::binary | std::ios::trunc);
        if (!csv_stream) throw IoFailure("cannot open replicates.csv for writing");
        csv_stream << kCsvHeader;
        csv_stream.flush();
    }

    std::atomic<long long> next{0};
    std::atomic<bool> stop{false};
    std::vector<char> done(R, 0);
    std::mutex mu;
    std::condition_variable cv;
    std::exception_ptr worker_error;
    int workers_finished = 0;

    auto run_one = [&](long long index) {
        ReplicateRecord rec;
        rec.index = index;
        rec.seed = derive_seed(config.seed, static_cast<std::uint64_t>(index));
        const auto t0 = std::chrono::steady_clock::now();
        RandomSource rng(rec.seed);
        const ColoredMultigraph g =
            generate_supergraph(static_cast<int>(config.n), static_cast<int>(m), config.law, rng);
        rec.counts = count_report(motif, g, config.budgets.max_host_vertices);
        if (!rec.counts.invariants_hold())
            throw Error("count report invariants violated in replicate " +
                        std::to_string(index));
        double s_star = 0.0;
        for (const auto& layer : g.layers) {
            const double star = n_f_star(motif, layer.x_drawn, layer.q_drawn);
            s_star += star;
            if (pool_layer_stats) pooled_nfstar[index].push_back(star);
        }
        rec.s_f_star = s_star;
        rec.normalized =
            (static_cast<double>(rec.counts.n_f) - result.norm.b_m) / result.norm.scale;
        rec.overflow = max_layer_overflow(g);
        if (config.toggles.compute_clustering) {
            const auto cc = clustering_coefficient(g.flat);
            rec.clustering = cc.value;
            rec.clustering_defined = cc.defined;
        }
        if (config.toggles.dump_graphs) {
            char name[48];
            std::snprintf(name, sizeof(name), "replicate_%06lld.txt", index);
            std::ofstream out(graphs_dir / name, std::ios::binary);
            ColoredMultigraph dumped = g;
            dumped.seed = rec.seed;
            out << dump_supergraph(dumped);
        }
        const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                                 std::chrono::steady_clock::now() - t0)
                                 .count();
        rec.runtime_ms = config.toggles.record_timings ? elapsed : 0;
        if (config.budgets.max_replicate_ms > 0 && elapsed > config.budgets.max_replicate_ms)
            stop.store(true);
        return rec;
    };

    auto worker = [&] {
        for (;;) {
            const long long index = next.fetch_add(1);
            if (index >= R || stop.load()) break;
            try {
                ReplicateRecord rec = run_one(index);
                std::lock_guard<std::mutex> lock(mu);
                result.records[static_cast<std::size_t>(index)] = std::move(rec);
                done[static_cast<std::size_t>(index)] = 1;
                cv.notify_all();
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!worker_error) worker_error = std::current_exception();
                stop.store(true);
                cv.notify_all();
                break;
            }
        }
        std::lock_guard<std::mutex> lock(mu);
        ++workers_finished;
        cv.notify_all();
    };

    int n_threads = config.threads > 0
                        ? config.threads
                        : static_cast<int>(std::thread::hardware_concurrency());
    if (n_threads < 1) n_threads = 1;
    n_threads = static_cast<int>(std::min<long long>(n_threads, R));

    std::vector<std::thread> threads;
    threads.reserve(n_threads);
    const auto campaign_t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < n_threads; ++i) threads.emplace_back(worker);

    // ordered incremental persistence: flush the contiguous completed prefix
    long long written = 0;
    {
        std::unique_lock<std::mutex> lock(mu);
        for (;;) {
            while (written < R && done[static_cast<std::size_t>(written)]) {
                if (csv_stream.is_open()) {
                    csv_stream << csv_row(result.records[static_cast<std::size_t>(written)]);
                    csv_stream.flush();
                }
                ++written;
            }
            if (written >= R || workers_finished == n_threads) break;
            cv.wait_for(lock, std::chrono::milliseconds(50));
        }
    }
    for (auto& t : threads) t.join();
    {
        std::lock_guard<std::mutex> lock(mu);
        while (written < R && done[static_cast<std::size_t>(written)]) {
            if (csv_stream.is_open())
                csv_stream << csv_row(result.records[static_cast<std::size_t>(written)]);
            ++written;
        }
        if (csv_stream.is_open()) csv_stream.flush();
    }
    if (worker_error) std::rethrow_exception(worker_error);

    if (written < R) {
        result.truncated = true;
        result.records.resize(static_cast<std::size_t>(written));
        if (pool_layer_stats) pooled_nfstar.resize(static_cast<std::size_t>(written));
    }
    if (config.toggles.record_timings)
        result.total_runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                      std::chrono::steady_clock::now() - campaign_t0)
                                      .count();

    // ---- aggregates and diagnostics ----
    const long long completed = static_cast<long long>(result.records.size());
    if (completed == 0) return result;

    std::vector<double> n_f_values;
    n_f_values.reserve(completed);
    for (const auto& rec : result.records)
        n_f_values.push_back(static_cast<double>(rec.counts.n_f));

    if (config.regime == Regime::normal && result.sigma && result.sigma->finite &&
        !result.sigma->degenerate && completed >= 2) {
        const double sample_center = sample_mean(n_f_values);
        const double scale =
            std::sqrt(result.sigma->value) * std::sqrt(static_cast<double>(m));
        std::vector<double> z;
        z.reserve(completed);
        for (double v : n_f_values) z.push_back((v - sample_center) / scale);
        result.ks = ks_one_sample_normal(z);
        std::vector<double> sorted_z = z;
        std::sort(sorted_z.begin(), sorted_z.end());
        for (long long i = 0; i < completed; ++i) {
            const double p = (static_cast<double>(i) + 0.5) / static_cast<double>(completed);
            result.qq.emplace_back(standard_normal_quantile(p),
                                   sorted_z[static_cast<std::size_t>(i)]);
        }
    }

    if (config.regime == Regime::stable && completed >= 2) {
        std::vector<double> z_nf = normalize(n_f_values, result.norm);
        // independent batch of S_F* sums
        const std::uint64_t batch_master = config.seed ^ kBatchStream;
        result.s_f_star_batch.reserve(completed);
        for (long long j = 0; j < completed; ++j) {
            RandomSource rng(derive_seed(batch_master, static_cast<std::uint64_t>(j)));
            double sum = 0.0;
            for (long long i = 0; i < m; ++i) {
                const auto [x, q] = sample_layer_type(config.law, rng);
                sum += n_f_star(motif, x, q);
            }
            result.s_f_star_batch.push_back((sum - result.norm.b_m) / result.norm.scale);
        }
        result.ks = ks_two_sample(z_nf, result.s_f_star_batch);

        std::vector<double> pooled;
        for (const auto& v : pooled_nfstar) pooled.insert(pooled.end(), v.begin(), v.end());
        long long positive = 0;
        for (double v : pooled) positive += (v > 0.0);
        TailDiagnostics tail;
        tail.k_order = config.hill_k > 0 ? config.hill_k : default_hill_k(positive);
        try {
            tail.hill_estimate = hill_estimator(pooled, tail.k_order);
            tail.ks_distance = result.ks;
            result.tail = tail;
        } catch (const Error&) {
            // too few positive layer statistics; tail diagnostics omitted
        }
        try {
            long long pos_nf = 0;
            for (double v : n_f_values) pos_nf += (v > 0.0);
            result.hill_n_f = hill_estimator(n_f_values, default_hill_k(pos_nf));
        } catch (const Error&) {
        }

        std::vector<double> sorted_nf = z_nf, sorted_batch = result.s_f_star_batch;
        std::sort(sorted_nf.begin(), sorted_nf.end());
        std::sort(sorted_batch.begin(), sorted_batch.end());
        for (long long i = 0; i < completed; ++i)
            result.qq.emplace_back(sorted_batch[static_cast<std::size_t>(i)],
                                   sorted_nf[static_cast<std::size_t>(i)]);
        if (result.tail) result.tail->qq_points = result.qq;
    }

    if (config.toggles.compute_hf) {
        HfDiagnostic hf;
        hf.h_f = h_f_exact(motif, config.n, m, config.law);
        double choose = 1.0;
        for (int i = 0; i < motif.vertices; ++i)
            choose *= static_cast<double>(config.n - i) / static_cast<double>(i + 1);
        hf.predicted_poly_star_mean =
            choose * static_cast<double>(motif.copies_in_complete) * hf.h_f;
        std::vector<double> ps;
        ps.reserve(completed);
        for (const auto& rec : result.records)
            ps.push_back(static_cast<double>(rec.counts.poly_star));
        hf.empirical_poly_star_mean = sample_mean(ps);
        if (completed >= 2)
            hf.empirical_se =
                std::sqrt(sample_variance(ps) / static_cast<double>(completed));
        result.hf = hf;
    }

    if (config.toggles.compute_clustering) {
        std::vector<double> ccs;
        for (const auto& rec : result.records)
            if (rec.clustering_defined) ccs.push_back(rec.clustering);
        if (!ccs.empty()) result.clustering_mean = sample_mean(ccs);
    }

    return result;
}

// ---- serialization ----------------------------------------------------------------

ordered_json condition_report_to_json(const ConditionReport& report) {
    ordered_json j;
    j["all_satisfied"] = report.all_satisfied();
    ordered_json checks = ordered_json::array();
    for (const auto& c : report.checks) {
        ordered_json e;
        e["name"] = c.name;
        e["status"] = c.status == ConditionStatus::satisfied
                          ? "satisfied"
                          : c.status == ConditionStatus::violated ? "violated"
                                                                  : "not_applicable";
        if (std::isfinite(c.value))
            e["value"] = c.value;
        else
            e["value"] = "infinite";
        checks.push_back(e);
    }
    j["checks"] = checks;
    if (report.alpha) j["alpha"] = *report.alpha;
    if (report.gamma) j["gamma"] = *report.gamma;
    if (report.tail_scale_a) j["tail_scale_a"] = *report.tail_scale_a;
    return j;
}

ordered_json diagnostics_record(const CampaignResult& result) {
    ordered_json d;
    d["regime"] = result.config.regime == Regime::normal
                      ? "normal"
                      : result.config.regime == Regime::stable ? "stable" : "none";
    d["alpha"] = result.config.regime == Regime::stable ? ordered_json(result.config.alpha)
                                                        : ordered_json(nullptr);
    d["sigma_f"] = result.sigma && result.sigma->finite
                       ? ordered_json(std::sqrt(result.sigma->value))
                       : ordered_json(nullptr);
    d["b_m"] = result.norm.b_m;
    d["scale"] = result.norm.scale;
    d["ks"] = std::isfinite(result.ks) ? ordered_json(result.ks) : ordered_json(nullptr);
    if (result.tail) {
        d["hill"] = {{"estimate", result.tail->hill_estimate}, {"k", result.tail->k_order}};
    } else {
        d["hill"] = nullptr;
    }
    ordered_json qq = ordered_json::array();
    for (const auto& [t, e] : result.qq) qq.push_back({t, e});
    d["qq"] = qq;
    return d;
}

ordered_json summary_json(const CampaignResult& result) {
    const auto& config = result.config;
    ordered_json j;
    j["schema_version"] = 1;
    j["config"] = config.echo;
    j["seed_used"] = config.seed;
    j["n"] = config.n;
    j["m"] = result.m;
    j["replicates_completed"] = result.records.size();
    j["truncated"] = result.truncated;

    ordered_json motif;
    motif["name"] = config.motif_label.empty() ? config.motif.name() : config.motif_label;
    motif["v_f"] = config.motif.vertices;
    motif["e_f"] = config.motif.edge_count;
    motif["a_f"] = config.motif.copies_in_complete;
    motif["automorphisms"] = config.motif.automorphism_count;
    motif["m_f"] = config.motif.max_subgraph_density;
    motif["two_connected"] = config.motif.two_connected;
    motif["balanced"] = config.motif.balanced;
    motif["max_degree"] = config.motif.max_degree;
    j["motif"] = motif;
    j["law"] = config.law.describe();

    j["conditions"] =
        result.conditions ? condition_report_to_json(*result.conditions) : ordered_json(nullptr);
    j["conditions_ok"] = result.conditions_ok;

    if (result.sigma) {
        ordered_json s;
        s["method"] =
            result.sigma->method == SigmaMethod::exact_small ? "exact_small" : "monte_carlo";
        s["variance"] = result.sigma->finite ? ordered_json(result.sigma->value)
                                             : ordered_json("infinite");
        s["std_error"] = result.sigma->std_error;
        s["var_n_f_star"] = result.sigma->var_n_f_star;
        s["mean_conditional_var"] = result.sigma->mean_conditional_var;
        s["degenerate"] = result.sigma->degenerate;
        j["sigma"] = s;
    } else {
        j["sigma"] = nullptr;
    }

    ordered_json centering;
    centering["mean_n_f_star"] = std::isfinite(result.mean_n_f_star)
                                     ? ordered_json(result.mean_n_f_star)
                                     : ordered_json("infinite");
    centering["b_m"] = result.norm.b_m;
    if (!result.records.empty()) {
        std::vector<double> nf;
        for (const auto& r : result.records) nf.push_back(static_cast<double>(r.counts.n_f));
        centering["sample_mean_n_f"] = sample_mean(nf);
    }
    j["centering"] = centering;

    j["diagnostics"] = diagnostics_record(result);
    if (result.hill_n_f) j["hill_n_f"] = *result.hill_n_f;

    if (!result.records.empty()) {
        auto stats_of = [&](auto getter) {
            std::vector<double> v;
            v.reserve(result.records.size());
            for (const auto& r : result.records) v.push_back(getter(r));
            ordered_json s;
            s["mean"] = sample_mean(v);
            if (v.size() >= 2) s["variance"] = sample_variance(v);
            s["min"] = *std::min_element(v.begin(), v.end());
            s["max"] = *std::max_element(v.begin(), v.end());
            return s;
        };
        ordered_json agg;
        agg["n_f"] = stats_of([](const ReplicateRecord& r) {
            return static_cast<double>(r.counts.n_f);
        });
        agg["s_tilde"] = stats_of([](const ReplicateRecord& r) {
            return static_cast<double>(r.counts.s_tilde);
        });
        agg["s_f_star"] = stats_of([](const ReplicateRecord& r) { return r.s_f_star; });
        agg["poly_star"] = stats_of([](const ReplicateRecord& r) {
            return static_cast<double>(r.counts.poly_star);
        });
        agg["mono"] = stats_of([](const ReplicateRecord& r) {
            return static_cast<double>(r.counts.mono);
        });
        long long overflow_total = 0;
        for (const auto& r : result.records) overflow_total += r.overflow;
        agg["overflow_total"] = overflow_total;
        j["aggregates"] = agg;
    }

    if (result.hf) {
        ordered_json hf;
        hf["h_f"] = result.hf->h_f;
        hf["predicted_poly_star_mean"] = result.hf->predicted_poly_star_mean;
        hf["empirical_poly_star_mean"] = result.hf->empirical_poly_star_mean;
        hf["empirical_se"] = result.hf->empirical_se;
        j["h_f"] = hf;
    }
    if (result.clustering_mean) j["clustering_mean"] = *result.clustering_mean;
    if (config.toggles.record_timings) j["total_runtime_ms"] = result.total_runtime_ms;
    return j;
}

// ---- outputs -------------------------------------------------------------------

namespace {

ManifestEntry write_file(const fs::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoFailure("cannot write " + path.string());
    out << contents;
    out.close();
    return {path.filename().string(), sha256_hex(contents),
            static_cast<std::uint64_t>(contents.size())};
}

}  // namespace

std::vector<ManifestEntry> emit_outputs(const CampaignResult& result, const std::string& dir) {
    if (dir.empty()) throw ConfigInvalid("emit_outputs needs a target directory");
    fs::create_directories(dir);
    std::vector<ManifestEntry> manifest;

    std::string csv = kCsvHeader;
    for (const auto& rec : result.records) csv += csv_row(rec);
    manifest.push_back(write_file(fs::path(dir) / "replicates.csv", csv));

    manifest.push_back(
        write_file(fs::path(dir) / "summary.json", summary_json(result).dump(2) + "\n"));

    if (!result.qq.empty()) {
        std::string qq = "theoretical,empirical\r\n";
        for (const auto& [t, e] : result.qq)
            qq += format_real(t) + "," + format_real(e) + "\r\n";
        manifest.push_back(write_file(fs::path(dir) / "qq.csv", qq));
    }

    const fs::path graphs_dir = fs::path(dir) / "graphs";
    if (fs::is_directory(graphs_dir)) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(graphs_dir))
            if (entry.is_regular_file()) files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        for (const auto& f : files) {
            std::ifstream in(f, std::ios::binary);
            std::string contents((std::istreambuf_iterator<char>(in)),
                                 std::istreambuf_iterator<char>());
            manifest.push_back({"graphs/" + f.filename().string(), sha256_hex(contents),
                                static_cast<std::uint64_t>(contents.size())});
        }
    }

    ordered_json mj = ordered_json::array();
    for (const auto& e : manifest)
        mj.push_back({{"file", e.file}, {"sha256", e.sha256}, {"bytes", e.bytes}});
    write_file(fs::path(dir) / "manifest.json", mj.dump(2) + "\n");
    return manifest;
}

// ---- verification battery -----------------------------------------------------------

int verify_all(std::ostream& log) {
    int failures = 0;
    auto report = [&](const std::string& name, bool ok, const std::string& detail = "") {
        log << (ok ? "[PASS] " : "[FAIL] ") << name;
        if (!detail.empty()) log << " (" << detail << ")";
        log << "\n";
        if (!ok) ++failures;
    };

    // b* closed form vs exhaustive search, plus extremal graph shape
    {
        bool ok = true;
        std::string detail;
        for (long long b = 1; b <= 15 && ok; ++b) {
            const BStar bs = b_star(b);
            const long long brute = bruteforce::min_vertices_with_edges(b);
            std::vector<int> verts;
            for (const auto& [u, v] : bs.h_b) {
                verts.push_back(u);
                verts.push_back(v);
            }
            std::sort(verts.begin(), verts.end());
            verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
            if (bs.b_star != brute || static_cast<long long>(bs.h_b.size()) != b ||
                static_cast<long long>(verts.size()) != bs.b_star) {
                ok = false;
                detail = "b=" + std::to_string(b);
            }
        }
        report("b_star minimality (exhaustive, b <= 15)", ok, detail);
    }

    {
        const auto bad = verify_superadditivity(40);
        report("superadditivity s*+t* >= (s+t-1)*+2 (s,t <= 40)", bad.empty(),
               bad.empty() ? "" : "counterexamples: " + std::to_string(bad.size()));
    }

    for (int k = 3; k <= 5; ++k) {
        const auto bad = verify_clique_partition_bound(k);
        report("clique edge-partition bound k=" + std::to_string(k), bad.empty(),
               bad.empty() ? "" : "counterexamples: " + std::to_string(bad.size()));
    }

    // randomized small instances vs the brute-force oracle
    {
        const std::vector<Motif> motifs = {motif_from_name("K3"), motif_from_name("C4"),
                                           motif_from_name("K4")};
        std::vector<LayerTypeLaw> laws;
        laws.push_back(LayerTypeLaw::deterministic(4, 0.7));
        laws.push_back(LayerTypeLaw::independent(XLaw::uniform(0, 6), QLaw::constant(0.5)));
        laws.push_back(LayerTypeLaw::coupled(XLaw::zeta(2.5, 1), 1.0, 1.0));
        laws.push_back(LayerTypeLaw::empirical(
            {{2, 0.9, 0.25}, {5, 0.4, 0.5}, {8, 0.2, 0.25}}));
        RandomSource rng(0x5eedULL);
        bool ok = true;
        std::string detail;
        for (int trial = 0; trial < 100 && ok; ++trial) {
            const int n = 4 + static_cast<int>(rng.below(7));   // 4..10
            const int m = 1 + static_cast<int>(rng.below(4));   // 1..4
            const auto& motif = motifs[trial % motifs.size()];
            const auto& law = laws[trial % laws.size()];
            const ColoredMultigraph g = generate_supergraph(n, m, law, rng);
            const CountReport fast = count_report(motif, g);
            const auto oracle =
                bruteforce::count_report_oracle(motif.vertices, motif.edges, g);
            if (fast.n_f != oracle.n_f || fast.mono != oracle.mono ||
                fast.poly != oracle.poly || fast.poly_star != oracle.poly_star ||
                fast.s_tilde != oracle.s_tilde || fast.per_layer != oracle.per_layer ||
                !fast.invariants_hold()) {
                ok = false;
                detail = "trial " + std::to_string(trial);
            }
        }
        report("randomized count reports vs brute-force oracle (100 instances)", ok, detail);
    }

    return failures;
}

}  // namespace supergraph
