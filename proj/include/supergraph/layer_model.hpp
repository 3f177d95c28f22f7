#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "supergraph/motif.hpp"
#include "supergraph/rng.hpp"

namespace supergraph {

// Marginal law of the community size X on {0,1,2,...}.
struct XLaw {
    enum class Type { constant, zeta, uniform, table };
    Type type = Type::constant;

    long long constant_value = 0;

    // zeta: P{X = x} proportional to x^{-(gamma+1)} for x >= x_min, so that
    // P{X > t} ~ tail_scale * t^{-gamma}.
    double gamma = 0.0;
    long long x_min = 1;

    long long uniform_lo = 0, uniform_hi = 0;

    std::vector<long long> table_values;
    std::vector<double> table_weights;

    static XLaw constant(long long x);
    static XLaw zeta(double gamma, long long x_min = 1);
    static XLaw uniform(long long lo, long long hi);
    static XLaw table(std::vector<long long> values, std::vector<double> weights);

    double pmf(long long x) const;
    // b such that P{X > t} = (b + o(1)) t^{-gamma}; zeta laws only.
    double tail_scale() const;
    // largest support point, or nullopt for unbounded support
    std::optional<long long> support_max() const;

    // filled by the factory functions
    double zeta_norm = 0.0;                // sum of x^{-(gamma+1)} over support
    std::vector<double> zeta_cdf;          // P{X <= x_min + i}, sampling cache
};

// Marginal law of the edge-probability Q on [0,1] (independent_product only).
struct QLaw {
    enum class Type { constant, beta, table };
    Type type = Type::constant;
    double constant_value = 1.0;
    double beta_a = 1.0, beta_b = 1.0;
    std::vector<double> table_values;
    std::vector<double> table_weights;

    static QLaw constant(double q);
    static QLaw beta(double a, double b);
    static QLaw table(std::vector<double> values, std::vector<double> weights);

    double moment(double t) const;  // E[Q^t], t >= 0
    double sample(RandomSource& rng) const;
};

enum class LawKind { deterministic, independent_product, power_law_coupled, empirical_table };

struct EmpiricalEntry {
    long long x = 0;
    double q = 0.0;
    double weight = 0.0;
};

// Joint law of the layer type (X, Q). Immutable after construction.
class LayerTypeLaw {
public:
    static LayerTypeLaw deterministic(long long x, double q);
    static LayerTypeLaw independent(XLaw x_law, QLaw q_law);
    // Q = min{1, b * X^{-beta}}
    static LayerTypeLaw coupled(XLaw x_law, double b, double beta);
    static LayerTypeLaw empirical(std::vector<EmpiricalEntry> entries);

    LawKind kind() const { return kind_; }
    const XLaw& x_law() const { return x_; }
    const QLaw& q_law() const { return q_; }
    double coupling_b() const { return coupling_b_; }
    double coupling_beta() const { return coupling_beta_; }
    const std::vector<EmpiricalEntry>& entries() const { return entries_; }

    double coupled_q(long long x) const;  // min{1, b x^{-beta}}

    std::string describe() const;

private:
    LayerTypeLaw() = default;
    LawKind kind_ = LawKind::deterministic;
    XLaw x_;
    QLaw q_;
    double coupling_b_ = 0.0, coupling_beta_ = 0.0;
    std::vector<EmpiricalEntry> entries_;
    std::vector<double> entry_cdf_;

    friend std::pair<long long, double> sample_layer_type(const LayerTypeLaw&, RandomSource&);
};

struct MomentSpec {
    double s = 0.0;                          // exponent on X
    double t = 0.0;                          // exponent on Q
    std::optional<long long> truncation;     // X replaced by min{X, n}

    MomentSpec(double s_exp, double t_exp) : s(s_exp), t(t_exp) {}
    MomentSpec(double s_exp, double t_exp, long long n) : s(s_exp), t(t_exp), truncation(n) {}
};

// One draw of (X, Q).
std::pair<long long, double> sample_layer_type(const LayerTypeLaw& law, RandomSource& rng);

// E[X^s Q^t] (truncation applied if present). Returns +infinity when the
// defining series diverges. Parametric series are summed to relative error
// <= 1e-10; throws NonConvergent if the iteration budget is exhausted first.
double mixed_moment(const LayerTypeLaw& law, const MomentSpec& spec);

// E[(X)_v Q^t] with the falling factorial (X)_v; same conventions.
double factorial_moment(const LayerTypeLaw& law, int v, double t,
                        std::optional<long long> truncation = std::nullopt);

inline bool is_finite_moment(double m) { return std::isfinite(m); }

enum class ConditionStatus { satisfied, violated, not_applicable };

struct ConditionCheck {
    std::string name;
    ConditionStatus status = ConditionStatus::not_applicable;
    double value = 0.0;  // the checked moment / quantity when meaningful
};

struct ConditionReport {
    std::vector<ConditionCheck> checks;
    // stable-regime extras (independent marginals with power-law X)
    std::optional<double> alpha;
    std::optional<double> gamma;
    std::optional<double> tail_scale_a;  // a of P{N_F* > t} ~ a t^{-alpha}

    bool all_satisfied() const {
        for (const auto& c : checks)
            if (c.status == ConditionStatus::violated) return false;
        return true;
    }
    const ConditionCheck* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
};

// Moment conditions for the normal limit: E X, the second-moment surrogate
// for balanced F, the overlap conditions for s = 1..v_F-1, and the sharper
// clique variant when F is complete.
ConditionReport check_normal_conditions(const LayerTypeLaw& law, const Motif& motif);

// Moment conditions for the alpha-stable limit, plus the independent
// power-law diagnostics (gamma = alpha v_F, the tail-exponent inequality, and
// the tail scale a).
ConditionReport check_stable_conditions(const LayerTypeLaw& law, const Motif& motif,
                                        double alpha);

}  // namespace supergraph
