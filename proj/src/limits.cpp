#include "supergraph/limits.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "supergraph/errors.hpp"
#include "supergraph/graph_core.hpp"

namespace supergraph {

namespace {

constexpr double kPi = 3.14159265358979323846;

double binom_double(long long x, int k) {
    if (x < k) return 0.0;
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= static_cast<double>(x - i) / static_cast<double>(i + 1);
    return r;
}

}  // namespace

double n_f_star(const Motif& motif, long long x, double q) {
    if (!(q >= 0.0 && q <= 1.0)) throw ConfigInvalid("n_f_star needs q in [0,1]");
    if (x < motif.vertices || q == 0.0) return 0.0;
    return static_cast<double>(motif.copies_in_complete) * binom_double(x, motif.vertices) *
           std::pow(q, static_cast<double>(motif.edge_count));
}

ConditionalStats conditional_stats(const Motif& motif, long long x, double q) {
    ConditionalStats cs;
    cs.n_f_star = n_f_star(motif, x, q);
    if (x <= 0 || q <= 0.0) return cs;
    const auto d = density_functionals(motif, static_cast<double>(x), q);
    cs.psi = d.psi;
    cs.phi = d.phi;
    return cs;
}

// ---- variance --------------------------------------------------------------

namespace {

struct Atom {
    long long x = 0;
    double weight = 0.0;
    std::function<double(double)> q_moment;  // t -> E[Q^t | atom]
};

std::vector<Atom> bounded_atoms(const LayerTypeLaw& law, long long max_x) {
    std::vector<Atom> atoms;
    auto push_x_atoms = [&](const std::function<double(long long, double)>& q_mom) {
        const auto& xl = law.x_law();
        auto add = [&](long long x, double w) {
            atoms.push_back({x, w, [x, q_mom](double t) { return q_mom(x, t); }});
        };
        switch (xl.type) {
            case XLaw::Type::constant:
                add(xl.constant_value, 1.0);
                break;
            case XLaw::Type::uniform:
                for (long long x = xl.uniform_lo; x <= xl.uniform_hi; ++x)
                    add(x, 1.0 / static_cast<double>(xl.uniform_hi - xl.uniform_lo + 1));
                break;
            case XLaw::Type::table:
                for (std::size_t i = 0; i < xl.table_values.size(); ++i)
                    add(xl.table_values[i], xl.table_weights[i]);
                break;
            case XLaw::Type::zeta:
                throw MethodBudgetExceeded("exact_small needs bounded X support");
        }
    };

    switch (law.kind()) {
        case LawKind::deterministic:
        case LawKind::independent_product:
            push_x_atoms([&law](long long, double t) { return law.q_law().moment(t); });
            break;
        case LawKind::power_law_coupled:
            push_x_atoms(
                [&law](long long x, double t) { return std::pow(law.coupled_q(x), t); });
            break;
        case LawKind::empirical_table:
            for (const auto& e : law.entries())
                atoms.push_back({e.x, e.weight,
                                 [q = e.q](double t) { return std::pow(q, t); }});
            break;
    }
    for (const auto& a : atoms)
        if (a.x > max_x)
            throw MethodBudgetExceeded("exact_small budgeted to X <= " + std::to_string(max_x));
    return atoms;
}

// D_w: for copies F'' of F in K_{v_F + w} that use all w outside vertices and
// share at least one edge with the canonical copy F_0 on {0..v_F-1}, counts
// grouped by u = |E_0 union E''|.
std::vector<std::map<int, long long>> overlap_class_table(const Motif& motif) {
    const int vf = motif.vertices;
    std::vector<std::map<int, long long>> d_tables(std::max(0, vf - 1));
    std::vector<Edge> f0_edges = motif.edges;  // already sorted

    for (int w = 0; w <= vf - 2; ++w) {
        const int host_n = vf + w;
        SimpleGraph host(host_n);
        for (int u = 0; u < host_n; ++u)
            for (int v = u + 1; v < host_n; ++v) {
                host.adj[u].push_back(v);
                host.adj[v].push_back(u);
            }
        enumerate_copies(motif, host, [&](const std::vector<int>& verts,
                                          const std::vector<Edge>& edges) {
            int outside = 0;
            for (int v : verts) outside += (v >= vf);
            if (outside != w) return;
            int shared = 0;
            for (auto e : edges) {
                if (std::binary_search(f0_edges.begin(), f0_edges.end(), make_edge(e.first, e.second)))
                    ++shared;
            }
            if (shared == 0) return;
            const int u = static_cast<int>(2 * motif.edge_count) - shared;
            d_tables[w][u] += 1;
        });
    }
    return d_tables;
}

SimpleGraph bernoulli_graph(long long x, double q, RandomSource& rng) {
    const int n = static_cast<int>(x);
    SimpleGraph g(std::max(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.bernoulli(q)) {
                g.adj[i].push_back(j);
                g.adj[j].push_back(i);
            }
    g.sort_adjacency();
    return g;
}

}  // namespace

SigmaEstimate sigma_f_squared(const Motif& motif, const LayerTypeLaw& law, SigmaMethod method,
                              long long mc_draws, std::uint64_t seed) {
    SigmaEstimate est;
    est.method = method;

    // finite-variance surrogate for balanced motifs; infinite -> flag, no throw
    if (motif.balanced) {
        const double surrogate =
            mixed_moment(law, {2.0 * motif.vertices, 2.0 * static_cast<double>(motif.edge_count)});
        if (!std::isfinite(surrogate)) {
            est.finite = false;
            est.value = std::numeric_limits<double>::infinity();
            return est;
        }
    }

    if (method == SigmaMethod::exact_small) {
        const auto atoms = bounded_atoms(law, 30);
        const auto d_tables = overlap_class_table(motif);
        const int vf = motif.vertices;
        const double af = static_cast<double>(motif.copies_in_complete);
        const double two_ef = 2.0 * static_cast<double>(motif.edge_count);

        double mean_star = 0.0, mean_star_sq = 0.0, mean_cond_var = 0.0;
        for (const auto& atom : atoms) {
            const double ncop = af * binom_double(atom.x, vf);
            const double q_e = atom.q_moment(static_cast<double>(motif.edge_count));
            const double q_2e = atom.q_moment(two_ef);
            mean_star += atom.weight * ncop * q_e;
            mean_star_sq += atom.weight * ncop * ncop * q_2e;
            if (atom.x < vf) continue;
            double t_sum = 0.0;
            for (int w = 0; w < static_cast<int>(d_tables.size()); ++w) {
                const double choose_outside = binom_double(atom.x - vf, w);
                if (choose_outside == 0.0) continue;
                double dw = 0.0;
                for (const auto& [u, cnt] : d_tables[w])
                    dw += static_cast<double>(cnt) *
                          (atom.q_moment(static_cast<double>(u)) - q_2e);
                t_sum += choose_outside * dw;
            }
            mean_cond_var += atom.weight * ncop * t_sum;
        }
        est.var_n_f_star = mean_star_sq - mean_star * mean_star;
        if (est.var_n_f_star < 0.0 && est.var_n_f_star > -1e-9) est.var_n_f_star = 0.0;
        est.mean_conditional_var = mean_cond_var;
        est.value = est.var_n_f_star + est.mean_conditional_var;
        est.degenerate = est.value <= 0.0;
        return est;
    }

    // monte_carlo
    if (mc_draws < 8) throw ConfigInvalid("monte_carlo variance needs >= 8 draws");
    RandomSource rng(seed);
    std::vector<double> counts;
    counts.reserve(mc_draws);
    for (long long i = 0; i < mc_draws; ++i) {
        const auto [x, q] = sample_layer_type(law, rng);
        if (x > 20000) throw MethodBudgetExceeded("monte_carlo draw with X > 20000");
        const SimpleGraph g = bernoulli_graph(x, q, rng);
        counts.push_back(static_cast<double>(count_in_graph(motif, g)));
    }
    const double n = static_cast<double>(mc_draws);
    const double mu = sample_mean(counts);
    double ss = 0.0;
    for (double y : counts) ss += (y - mu) * (y - mu);
    const double s2 = ss / (n - 1.0);
    // jackknife over leave-one-out sample variances
    std::vector<double> loo(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const double d = counts[i] - mu;
        const double ss_i = ss - d * d * n / (n - 1.0);
        loo[i] = ss_i / (n - 2.0);
    }
    const double loo_mean = sample_mean(loo);
    double jack = 0.0;
    for (double v : loo) jack += (v - loo_mean) * (v - loo_mean);
    est.value = s2;
    est.std_error = std::sqrt(jack * (n - 1.0) / n);
    est.degenerate = s2 <= 0.0;
    return est;
}

// ---- normalization -----------------------------------------------------------

Normalization make_normal_normalization(double sigma_f, long long m, double mean_n_f_star) {
    if (!(sigma_f > 0.0)) throw ZeroScale("normal normalization needs sigma_f > 0");
    Normalization norm;
    norm.regime = Regime::normal;
    norm.sigma_f = sigma_f;
    norm.b_m = static_cast<double>(m) * mean_n_f_star;
    norm.scale = sigma_f * std::sqrt(static_cast<double>(m));
    return norm;
}

Normalization make_stable_normalization(double alpha, long long m, double mean_n_f_star) {
    if (!(alpha > 0.0 && alpha < 2.0)) throw AlphaOutOfRange("alpha must lie in (0,2)");
    if (alpha == 1.0)
        throw AlphaOneUnsupported("alpha = 1 centering needs an unsupported constant");
    Normalization norm;
    norm.regime = Regime::stable;
    norm.alpha = alpha;
    norm.b_m = alpha > 1.0 ? static_cast<double>(m) * mean_n_f_star : 0.0;
    norm.scale = std::pow(static_cast<double>(m), 1.0 / alpha);
    return norm;
}

std::vector<double> normalize(const std::vector<double>& counts, const Normalization& norm) {
    if (!(norm.scale > 0.0)) throw ZeroScale("normalize needs scale > 0");
    std::vector<double> out;
    out.reserve(counts.size());
    for (double c : counts) out.push_back((c - norm.b_m) / norm.scale);
    return out;
}

// ---- stable sampler ------------------------------------------------------------

std::vector<double> sample_positive_stable(double alpha, double skew_scale, long long count,
                                           RandomSource& rng) {
    if (!(alpha > 0.0 && alpha < 2.0)) throw AlphaOutOfRange("alpha must lie in (0,2)");
    if (alpha == 1.0) throw AlphaOneUnsupported("CMS transform excludes alpha = 1");
    if (count < 1) throw ConfigInvalid("sample count must be >= 1");

    const double zeta = std::tan(kPi * alpha / 2.0);  // beta = +1
    const double b_shift = std::atan(zeta) / alpha;
    const double s_scale = std::pow(1.0 + zeta * zeta, 1.0 / (2.0 * alpha));

    std::vector<double> out;
    out.reserve(count);
    for (long long i = 0; i < count; ++i) {
        const double u = kPi * (rng.uniform01() - 0.5);
        const double w = rng.exponential();
        const double t = alpha * (u + b_shift);
        const double x = s_scale * std::sin(t) / std::pow(std::cos(u), 1.0 / alpha) *
                         std::pow(std::cos(u - t) / w, (1.0 - alpha) / alpha);
        out.push_back(skew_scale * x);
    }
    return out;
}

// ---- tail and distribution diagnostics ------------------------------------------

long long default_hill_k(long long positive_count) {
    if (positive_count < 8) return 2;
    return static_cast<long long>(std::floor(std::pow(static_cast<double>(positive_count), 0.6)));
}

double hill_estimator(const std::vector<double>& samples, long long k_order) {
    if (k_order < 2) throw InsufficientSamples("hill estimator needs k_order >= 2");
    std::vector<double> positive;
    positive.reserve(samples.size());
    for (double s : samples)
        if (s > 0.0) positive.push_back(s);
    if (static_cast<long long>(positive.size()) < k_order + 1)
        throw InsufficientSamples("hill estimator needs at least k_order+1 positive samples");
    std::sort(positive.begin(), positive.end(), std::greater<>());
    const double threshold = positive[static_cast<std::size_t>(k_order)];
    double log_sum = 0.0;
    for (long long i = 0; i < k_order; ++i)
        log_sum += std::log(positive[static_cast<std::size_t>(i)] / threshold);
    if (log_sum <= 0.0) throw DegenerateSample("hill estimator: zero log-excess sum");
    return static_cast<double>(k_order) / log_sum;
}

double ks_two_sample(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) throw EmptySample("ks_two_sample needs nonempty samples");
    std::vector<double> sa = a, sb = b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < sa.size() && j < sb.size()) {
        const double v = std::min(sa[i], sb[j]);
        while (i < sa.size() && sa[i] <= v) ++i;
        while (j < sb.size() && sb[j] <= v) ++j;
        const double fa = static_cast<double>(i) / static_cast<double>(sa.size());
        const double fb = static_cast<double>(j) / static_cast<double>(sb.size());
        d = std::max(d, std::abs(fa - fb));
    }
    return d;
}

double standard_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double ks_one_sample_normal(const std::vector<double>& samples) {
    if (samples.empty()) throw EmptySample("ks_one_sample_normal needs a nonempty sample");
    std::vector<double> s = samples;
    std::sort(s.begin(), s.end());
    const double n = static_cast<double>(s.size());
    double d = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double f = standard_normal_cdf(s[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    }
    return d;
}

double standard_normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw ConfigInvalid("normal quantile needs p in (0,1)");
    // Acklam's rational approximation with one Halley refinement
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double p_low = 0.02425;
    double x;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double e = standard_normal_cdf(x) - p;
    const double u = e * std::sqrt(2.0 * kPi) * std::exp(x * x / 2.0);
    x = x - u / (1.0 + x * u / 2.0);
    return x;
}

// ---- deterministic reductions ----------------------------------------------------

namespace {
double pairwise_sum_range(const double* data, std::size_t n) {
    if (n <= 32) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += data[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum_range(data, half) + pairwise_sum_range(data + half, n - half);
}
}  // namespace

double pairwise_sum(const std::vector<double>& values) {
    return pairwise_sum_range(values.data(), values.size());
}

double sample_mean(const std::vector<double>& values) {
    if (values.empty()) throw EmptySample("sample_mean of empty vector");
    return pairwise_sum(values) / static_cast<double>(values.size());
}

double sample_variance(const std::vector<double>& values) {
    if (values.size() < 2) throw InsufficientSamples("sample_variance needs >= 2 values");
    const double mu = sample_mean(values);
    std::vector<double> sq;
    sq.reserve(values.size());
    for (double v : values) sq.push_back((v - mu) * (v - mu));
    return pairwise_sum(sq) / static_cast<double>(values.size() - 1);
}

}  // namespace supergraph
