#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "supergraph/layer_model.hpp"
#include "supergraph/motif.hpp"
#include "supergraph/rng.hpp"

namespace supergraph {

// N_F* = a_F C(x, v_F) q^{e_F}, the conditional expectation of the per-layer
// count given (X, Q).
double n_f_star(const Motif& motif, long long x, double q);

struct ConditionalStats {
    double n_f_star = 0.0;
    double psi = 0.0;
    double phi = 0.0;
};

ConditionalStats conditional_stats(const Motif& motif, long long x, double q);

enum class SigmaMethod { exact_small, monte_carlo };

struct SigmaEstimate {
    double value = 0.0;       // Var N_F (infinite -> value = +inf, finite = false)
    double std_error = 0.0;   // 0 for exact_small; jackknife SE for monte_carlo
    double var_n_f_star = 0.0;
    double mean_conditional_var = 0.0;
    bool finite = true;
    bool degenerate = false;  // value == 0
    SigmaMethod method = SigmaMethod::exact_small;
};

// Var N_F for a single layer G(X,Q). exact_small enumerates overlap classes
// of ordered copy pairs and needs bounded X <= 30 (MethodBudgetExceeded
// otherwise); monte_carlo simulates `draws` layers and reports a jackknife SE.
SigmaEstimate sigma_f_squared(const Motif& motif, const LayerTypeLaw& law, SigmaMethod method,
                              long long mc_draws = 20000, std::uint64_t seed = 1);

enum class Regime { normal, stable, none };

struct Normalization {
    Regime regime = Regime::none;
    double alpha = 0.0;    // stable only
    double sigma_f = 0.0;  // normal only
    double b_m = 0.0;      // centering
    double scale = 1.0;
};

Normalization make_normal_normalization(double sigma_f, long long m, double mean_n_f_star);
Normalization make_stable_normalization(double alpha, long long m, double mean_n_f_star);

std::vector<double> normalize(const std::vector<double>& counts, const Normalization& norm);

// i.i.d. draws from the totally skewed (beta = +1) alpha-stable law via the
// Chambers-Mallows-Stuck transform, multiplied by skew_scale. alpha != 1.
std::vector<double> sample_positive_stable(double alpha, double skew_scale, long long count,
                                           RandomSource& rng);

// Hill tail-index estimator from the k largest of the positive samples.
double hill_estimator(const std::vector<double>& samples, long long k_order);

// Default k used by the harness: floor(p^0.6) for p positive samples.
long long default_hill_k(long long positive_count);

double ks_two_sample(const std::vector<double>& a, const std::vector<double>& b);
double ks_one_sample_normal(const std::vector<double>& samples);

double standard_normal_cdf(double x);
double standard_normal_quantile(double p);

// Deterministic pairwise summation; used wherever reductions must not depend
// on thread count.
double pairwise_sum(const std::vector<double>& values);
double sample_mean(const std::vector<double>& values);
double sample_variance(const std::vector<double>& values);  // ddof = 1

struct TailDiagnostics {
    double hill_estimate = 0.0;
    long long k_order = 0;
    double ks_distance = 0.0;
    std::vector<std::pair<double, double>> qq_points;  // (theoretical, empirical)
};

}  // namespace supergraph
