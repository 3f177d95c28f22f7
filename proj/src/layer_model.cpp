#include "supergraph/layer_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "supergraph/errors.hpp"

namespace supergraph {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr long long kZetaCacheSize = 1 << 16;
constexpr long long kSeriesBudget = 20'000'000;

// Kahan-compensated accumulator for long series.
struct Accum {
    double sum = 0.0, c = 0.0;
    void add(double x) {
        const double y = x - c;
        const double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

// Formal Euler-Maclaurin expansion of sum_{x=N}^infty x^{-s} through the B_6
// term, without the leading integral. Differences of eval() give finite-range
// sums for any s; the full tail needs s > 1.
struct EmExpansion {
    double s;
    double correction(double n) const {
        const double n1 = 1.0 / n;
        const double fn = std::pow(n, -s);
        double t = 0.5 * fn;
        t += (s / 12.0) * fn * n1;
        t -= (s * (s + 1) * (s + 2) / 720.0) * fn * n1 * n1 * n1;
        t += (s * (s + 1) * (s + 2) * (s + 3) * (s + 4) / 30240.0) * fn * n1 * n1 * n1 * n1 *
             n1;
        return t;
    }
};

// sum_{x=N}^infty x^{-s}, s > 1, N >= 16; relative error far below 1e-12 for
// N >= 1e3.
double power_tail_sum(double s, double n) {
    return std::pow(n, 1.0 - s) / (s - 1.0) + EmExpansion{s}.correction(n);
}

// sum_{x=a}^{b-1} x^{-s} for large a; any s.
double power_range_sum(double s, double a, double b) {
    if (b <= a) return 0.0;
    const EmExpansion em{s};
    double integral;
    if (s == 1.0)
        integral = std::log(b / a);
    else
        integral = (std::pow(a, 1.0 - s) - std::pow(b, 1.0 - s)) / (s - 1.0);
    return integral + em.correction(a) - em.correction(b);
}

double falling_factorial(double x, int v) {
    double r = 1.0;
    for (int i = 0; i < v; ++i) r *= (x - i);
    return r;
}

// coefficients of (x)_v = sum_j coef[j] x^j
std::vector<double> falling_factorial_coeffs(int v) {
    std::vector<double> coef{1.0};
    for (int i = 0; i < v; ++i) {
        std::vector<double> next(coef.size() + 1, 0.0);
        for (std::size_t j = 0; j < coef.size(); ++j) {
            next[j + 1] += coef[j];
            next[j] -= coef[j] * i;
        }
        coef = std::move(next);
    }
    return coef;
}

struct XWeight {
    bool factorial = false;
    double s = 0.0;  // power exponent
    int v = 0;       // falling factorial order

    double degree() const { return factorial ? v : s; }
    double at(double x) const { return factorial ? falling_factorial(x, v) : std::pow(x, s); }
};

}  // namespace

// ---- XLaw ------------------------------------------------------------------

XLaw XLaw::constant(long long x) {
    if (x < 0) throw ConfigInvalid("constant X must be >= 0");
    XLaw l;
    l.type = Type::constant;
    l.constant_value = x;
    return l;
}

XLaw XLaw::zeta(double gamma, long long x_min) {
    if (!(gamma > 0.0)) throw ConfigInvalid("zeta X law needs gamma > 0");
    if (x_min < 1) throw ConfigInvalid("zeta X law needs x_min >= 1");
    XLaw l;
    l.type = Type::zeta;
    l.gamma = gamma;
    l.x_min = x_min;

    Accum z;
    const long long loop_end = x_min + kZetaCacheSize;
    for (long long x = x_min; x < loop_end; ++x) z.add(std::pow(static_cast<double>(x), -(gamma + 1.0)));
    l.zeta_norm = z.sum + power_tail_sum(gamma + 1.0, static_cast<double>(loop_end));

    l.zeta_cdf.reserve(kZetaCacheSize);
    Accum cum;
    for (long long x = x_min; x < loop_end; ++x) {
        cum.add(std::pow(static_cast<double>(x), -(gamma + 1.0)) / l.zeta_norm);
        l.zeta_cdf.push_back(cum.sum);
    }
    return l;
}

XLaw XLaw::uniform(long long lo, long long hi) {
    if (lo < 0 || hi < lo) throw ConfigInvalid("uniform X law needs 0 <= lo <= hi");
    XLaw l;
    l.type = Type::uniform;
    l.uniform_lo = lo;
    l.uniform_hi = hi;
    return l;
}

XLaw XLaw::table(std::vector<long long> values, std::vector<double> weights) {
    if (values.empty() || values.size() != weights.size())
        throw ConfigInvalid("X table needs matching nonempty values/weights");
    double total = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] < 0) throw ConfigInvalid("X table values must be >= 0");
        if (!(weights[i] > 0.0)) throw ConfigInvalid("X table weights must be > 0");
        total += weights[i];
    }
    XLaw l;
    l.type = Type::table;
    l.table_values = std::move(values);
    for (double w : weights) l.table_weights.push_back(w / total);
    return l;
}

double XLaw::pmf(long long x) const {
    switch (type) {
        case Type::constant:
            return x == constant_value ? 1.0 : 0.0;
        case Type::zeta:
            if (x < x_min) return 0.0;
            return std::pow(static_cast<double>(x), -(gamma + 1.0)) / zeta_norm;
        case Type::uniform:
            if (x < uniform_lo || x > uniform_hi) return 0.0;
            return 1.0 / static_cast<double>(uniform_hi - uniform_lo + 1);
        case Type::table: {
            double p = 0.0;
            for (std::size_t i = 0; i < table_values.size(); ++i)
                if (table_values[i] == x) p += table_weights[i];
            return p;
        }
    }
    return 0.0;
}

double XLaw::tail_scale() const {
    if (type != Type::zeta) throw Error("tail_scale is defined for zeta X laws only");
    return 1.0 / (gamma * zeta_norm);
}

std::optional<long long> XLaw::support_max() const {
    switch (type) {
        case Type::constant:
            return constant_value;
        case Type::uniform:
            return uniform_hi;
        case Type::table:
            return *std::max_element(table_values.begin(), table_values.end());
        case Type::zeta:
            return std::nullopt;
    }
    return std::nullopt;
}

// ---- QLaw ------------------------------------------------------------------

QLaw QLaw::constant(double q) {
    if (!(q >= 0.0 && q <= 1.0)) throw ConfigInvalid("constant Q must lie in [0,1]");
    QLaw l;
    l.type = Type::constant;
    l.constant_value = q;
    return l;
}

QLaw QLaw::beta(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw ConfigInvalid("beta Q law needs a,b > 0");
    QLaw l;
    l.type = Type::beta;
    l.beta_a = a;
    l.beta_b = b;
    return l;
}

QLaw QLaw::table(std::vector<double> values, std::vector<double> weights) {
    if (values.empty() || values.size() != weights.size())
        throw ConfigInvalid("Q table needs matching nonempty values/weights");
    double total = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] >= 0.0 && values[i] <= 1.0))
            throw ConfigInvalid("Q table values must lie in [0,1]");
        if (!(weights[i] > 0.0)) throw ConfigInvalid("Q table weights must be > 0");
        total += weights[i];
    }
    QLaw l;
    l.type = Type::table;
    l.table_values = std::move(values);
    for (double w : weights) l.table_weights.push_back(w / total);
    return l;
}

double QLaw::moment(double t) const {
    if (t == 0.0) return 1.0;
    switch (type) {
        case Type::constant:
            return std::pow(constant_value, t);
        case Type::beta:
            return std::exp(std::lgamma(beta_a + t) - std::lgamma(beta_a) +
                            std::lgamma(beta_a + beta_b) - std::lgamma(beta_a + beta_b + t));
        case Type::table: {
            double m = 0.0;
            for (std::size_t i = 0; i < table_values.size(); ++i)
                m += table_weights[i] * std::pow(table_values[i], t);
            return m;
        }
    }
    return 0.0;
}

namespace {

double sample_gamma_dist(double shape, RandomSource& rng) {
    if (shape < 1.0)
        return sample_gamma_dist(shape + 1.0, rng) *
               std::pow(rng.uniform01_open(), 1.0 / shape);
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = rng.normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform01_open();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

}  // namespace

double QLaw::sample(RandomSource& rng) const {
    switch (type) {
        case Type::constant:
            return constant_value;
        case Type::beta: {
            const double ga = sample_gamma_dist(beta_a, rng);
            const double gb = sample_gamma_dist(beta_b, rng);
            return ga / (ga + gb);
        }
        case Type::table: {
            const double u = rng.uniform01();
            double cum = 0.0;
            for (std::size_t i = 0; i < table_values.size(); ++i) {
                cum += table_weights[i];
                if (u < cum) return table_values[i];
            }
            return table_values.back();
        }
    }
    return 0.0;
}

// ---- LayerTypeLaw ------------------------------------------------------------

LayerTypeLaw LayerTypeLaw::deterministic(long long x, double q) {
    if (x < 0) throw ConfigInvalid("deterministic law needs X >= 0");
    if (!(q >= 0.0 && q <= 1.0)) throw ConfigInvalid("deterministic law needs Q in [0,1]");
    LayerTypeLaw law;
    law.kind_ = LawKind::deterministic;
    law.x_ = XLaw::constant(x);
    law.q_ = QLaw::constant(q);
    return law;
}

LayerTypeLaw LayerTypeLaw::independent(XLaw x_law, QLaw q_law) {
    LayerTypeLaw law;
    law.kind_ = LawKind::independent_product;
    law.x_ = std::move(x_law);
    law.q_ = std::move(q_law);
    return law;
}

LayerTypeLaw LayerTypeLaw::coupled(XLaw x_law, double b, double beta) {
    if (!(b >= 0.0)) throw ConfigInvalid("coupling needs b >= 0");
    if (!(beta >= 0.0)) throw ConfigInvalid("coupling needs beta >= 0");
    LayerTypeLaw law;
    law.kind_ = LawKind::power_law_coupled;
    law.x_ = std::move(x_law);
    law.coupling_b_ = b;
    law.coupling_beta_ = beta;
    return law;
}

LayerTypeLaw LayerTypeLaw::empirical(std::vector<EmpiricalEntry> entries) {
    if (entries.empty()) throw ConfigInvalid("empirical law needs at least one entry");
    double total = 0.0;
    for (const auto& e : entries) {
        if (e.x < 0) throw ConfigInvalid("empirical entry needs x >= 0");
        if (!(e.q >= 0.0 && e.q <= 1.0)) throw ConfigInvalid("empirical entry needs q in [0,1]");
        if (!(e.weight > 0.0)) throw ConfigInvalid("empirical entry needs weight > 0");
        total += e.weight;
    }
    LayerTypeLaw law;
    law.kind_ = LawKind::empirical_table;
    law.entries_ = std::move(entries);
    double cum = 0.0;
    for (auto& e : law.entries_) {
        e.weight /= total;
        cum += e.weight;
        law.entry_cdf_.push_back(cum);
    }
    return law;
}

double LayerTypeLaw::coupled_q(long long x) const {
    if (x <= 0) return coupling_beta_ > 0.0 ? 1.0 : std::min(1.0, coupling_b_);
    return std::min(1.0, coupling_b_ * std::pow(static_cast<double>(x), -coupling_beta_));
}

std::string LayerTypeLaw::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case LawKind::deterministic:
            os << "deterministic(X=" << x_.constant_value << ", Q=" << q_.constant_value << ")";
            break;
        case LawKind::independent_product:
            os << "independent(X ";
            switch (x_.type) {
                case XLaw::Type::constant: os << "const " << x_.constant_value; break;
                case XLaw::Type::zeta: os << "zeta gamma=" << x_.gamma << " x_min=" << x_.x_min; break;
                case XLaw::Type::uniform:
                    os << "uniform[" << x_.uniform_lo << "," << x_.uniform_hi << "]";
                    break;
                case XLaw::Type::table: os << "table[" << x_.table_values.size() << "]"; break;
            }
            os << "; Q ";
            switch (q_.type) {
                case QLaw::Type::constant: os << "const " << q_.constant_value; break;
                case QLaw::Type::beta: os << "beta(" << q_.beta_a << "," << q_.beta_b << ")"; break;
                case QLaw::Type::table: os << "table[" << q_.table_values.size() << "]"; break;
            }
            os << ")";
            break;
        case LawKind::power_law_coupled:
            os << "coupled(Q=min{1," << coupling_b_ << "*X^-" << coupling_beta_ << "})";
            break;
        case LawKind::empirical_table:
            os << "empirical[" << entries_.size() << "]";
            break;
    }
    return os.str();
}

// ---- sampling ----------------------------------------------------------------

namespace {

long long sample_x(const XLaw& xl, RandomSource& rng) {
    switch (xl.type) {
        case XLaw::Type::constant:
            return xl.constant_value;
        case XLaw::Type::uniform:
            return xl.uniform_lo +
                   static_cast<long long>(rng.below(
                       static_cast<std::uint64_t>(xl.uniform_hi - xl.uniform_lo + 1)));
        case XLaw::Type::table: {
            const double u = rng.uniform01();
            double cum = 0.0;
            for (std::size_t i = 0; i < xl.table_values.size(); ++i) {
                cum += xl.table_weights[i];
                if (u < cum) return xl.table_values[i];
            }
            return xl.table_values.back();
        }
        case XLaw::Type::zeta: {
            const double u = rng.uniform01();
            const auto& cdf = xl.zeta_cdf;
            if (u < cdf.back()) {
                const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
                return xl.x_min + (it - cdf.begin());
            }
            // rare deep-tail draw: extend the cumulative sum on the fly
            long long x = xl.x_min + static_cast<long long>(cdf.size());
            long double cum = cdf.back();
            for (;;) {
                const long double p = xl.pmf(x);
                cum += p;
                if (u < static_cast<double>(cum) || p < 1e-300) return x;
                ++x;
            }
        }
    }
    return 0;
}

}  // namespace

std::pair<long long, double> sample_layer_type(const LayerTypeLaw& law, RandomSource& rng) {
    switch (law.kind()) {
        case LawKind::deterministic:
            return {law.x_law().constant_value, law.q_law().constant_value};
        case LawKind::independent_product: {
            const long long x = sample_x(law.x_law(), rng);
            return {x, law.q_law().sample(rng)};
        }
        case LawKind::power_law_coupled: {
            const long long x = sample_x(law.x_law(), rng);
            return {x, law.coupled_q(x)};
        }
        case LawKind::empirical_table: {
            const double u = rng.uniform01();
            const auto it =
                std::upper_bound(law.entry_cdf_.begin(), law.entry_cdf_.end(), u);
            const std::size_t i = std::min<std::size_t>(it - law.entry_cdf_.begin(),
                                                        law.entries_.size() - 1);
            return {law.entries_[i].x, law.entries_[i].q};
        }
    }
    return {0, 0.0};
}

// ---- moment engine -------------------------------------------------------------

namespace {

// Expectation over a zeta X law of W(min(x,n)) * qc(x)^t, where qc is the
// coupling factor (or identically 1). Exact summation up to the last
// breakpoint, analytic power sums beyond it.
double zeta_expectation(const XLaw& xl, const XWeight& w, bool coupled, double cb,
                        double cbeta, double t, std::optional<long long> trunc) {
    const double gamma = xl.gamma;
    const bool q_active = coupled && t > 0.0;
    if (q_active && cb == 0.0) return 0.0;

    // tail exponent of the q factor once b x^-beta <= 1
    const double beta_t = q_active ? cbeta * t : 0.0;
    if (!trunc && w.degree() - beta_t >= gamma) return kInf;

    long long cross = xl.x_min;
    if (q_active && cbeta > 0.0 && cb > 1.0) {
        const double c = std::pow(cb, 1.0 / cbeta);
        if (c > static_cast<double>(kSeriesBudget))
            throw NonConvergent("coupling crossover beyond summation budget");
        cross = std::max<long long>(cross, static_cast<long long>(std::ceil(c)));
    }
    long long loop_end = std::max(xl.x_min + kZetaCacheSize, cross + 16);
    // extend the exact loop over a nearby truncation point; far ones are
    // handled analytically to keep the cost flat in n
    if (trunc && *trunc + 1 > loop_end && *trunc + 1 - loop_end < (1 << 18))
        loop_end = *trunc + 1;
    if (loop_end - xl.x_min > kSeriesBudget)
        throw NonConvergent("series summation budget exceeded");

    Accum acc;
    for (long long x = xl.x_min; x < loop_end; ++x) {
        const double xe = trunc ? static_cast<double>(std::min(x, *trunc)) : static_cast<double>(x);
        double term = w.at(xe) * std::pow(static_cast<double>(x), -(gamma + 1.0));
        if (q_active) {
            const double q = std::min(1.0, cb * std::pow(static_cast<double>(x), -cbeta));
            term *= std::pow(q, t);
        }
        acc.add(term);
    }

    // beyond loop_end the q factor is the pure power b^t x^{-beta t}
    const double qfac = q_active ? std::pow(cb, t) : 1.0;
    const double nd = static_cast<double>(loop_end);
    double tail = 0.0;
    auto weight_power_sums = [&](double from, double to_infinity_or) {
        // sum of W(x) x^{-(gamma+1+beta_t)} over [from, to) with W untruncated
        double r = 0.0;
        if (!w.factorial) {
            const double c = gamma + 1.0 + beta_t - w.s;
            r = to_infinity_or < 0 ? power_tail_sum(c, from) : power_range_sum(c, from, to_infinity_or);
        } else {
            const auto coef = falling_factorial_coeffs(w.v);
            for (std::size_t j = 0; j < coef.size(); ++j) {
                if (coef[j] == 0.0) continue;
                const double c = gamma + 1.0 + beta_t - static_cast<double>(j);
                r += coef[j] *
                     (to_infinity_or < 0 ? power_tail_sum(c, from)
                                         : power_range_sum(c, from, to_infinity_or));
            }
        }
        return r;
    };
    if (!trunc) {
        tail = qfac * weight_power_sums(nd, -1.0);
    } else if (*trunc < loop_end) {
        // weight already constant at W(n) for every x >= loop_end
        tail = w.at(static_cast<double>(*trunc)) * qfac *
               power_tail_sum(gamma + 1.0 + beta_t, nd);
    } else {
        // mid-range with live weight, then constant weight from the cutoff
        const double cut = static_cast<double>(*trunc);
        tail = qfac * weight_power_sums(nd, cut + 1.0);
        tail += w.at(cut) * qfac * power_tail_sum(gamma + 1.0 + beta_t, cut + 1.0);
    }
    return (acc.sum + tail) / xl.zeta_norm;
}

double bounded_x_expectation(const XLaw& xl, const XWeight& w, std::optional<long long> trunc) {
    auto weight_of = [&](long long x) {
        const long long xe = trunc ? std::min(x, *trunc) : x;
        return w.at(static_cast<double>(xe));
    };
    switch (xl.type) {
        case XLaw::Type::constant:
            return weight_of(xl.constant_value);
        case XLaw::Type::uniform: {
            Accum acc;
            for (long long x = xl.uniform_lo; x <= xl.uniform_hi; ++x) acc.add(weight_of(x));
            return acc.sum / static_cast<double>(xl.uniform_hi - xl.uniform_lo + 1);
        }
        case XLaw::Type::table: {
            double m = 0.0;
            for (std::size_t i = 0; i < xl.table_values.size(); ++i)
                m += xl.table_weights[i] * weight_of(xl.table_values[i]);
            return m;
        }
        case XLaw::Type::zeta:
            throw Error("bounded_x_expectation called on zeta law");
    }
    return 0.0;
}

double law_expectation(const LayerTypeLaw& law, const XWeight& w, double t,
                       std::optional<long long> trunc) {
    switch (law.kind()) {
        case LawKind::deterministic:
        case LawKind::independent_product: {
            const double eq = law.q_law().moment(t);
            if (eq == 0.0) return 0.0;
            const double ex = law.x_law().type == XLaw::Type::zeta
                                  ? zeta_expectation(law.x_law(), w, false, 0, 0, 0, trunc)
                                  : bounded_x_expectation(law.x_law(), w, trunc);
            return ex * eq;
        }
        case LawKind::power_law_coupled: {
            if (law.x_law().type == XLaw::Type::zeta)
                return zeta_expectation(law.x_law(), w, true, law.coupling_b(),
                                        law.coupling_beta(), t, trunc);
            // bounded support: direct sum
            double m = 0.0;
            const auto& xl = law.x_law();
            auto add = [&](long long x, double weight) {
                const long long xe = trunc ? std::min(x, *trunc) : x;
                m += weight * w.at(static_cast<double>(xe)) * std::pow(law.coupled_q(x), t);
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
                    break;  // handled above
            }
            return m;
        }
        case LawKind::empirical_table: {
            double m = 0.0;
            for (const auto& e : law.entries()) {
                const long long xe = trunc ? std::min(e.x, *trunc) : e.x;
                m += e.weight * w.at(static_cast<double>(xe)) * std::pow(e.q, t);
            }
            return m;
        }
    }
    return 0.0;
}

}  // namespace

double mixed_moment(const LayerTypeLaw& law, const MomentSpec& spec) {
    if (!(spec.s >= 0.0) || !(spec.t >= 0.0))
        throw ConfigInvalid("MomentSpec needs s >= 0 and t >= 0");
    XWeight w;
    w.factorial = false;
    w.s = spec.s;
    return law_expectation(law, w, spec.t, spec.truncation);
}

double factorial_moment(const LayerTypeLaw& law, int v, double t,
                        std::optional<long long> truncation) {
    if (v < 0 || !(t >= 0.0)) throw ConfigInvalid("factorial_moment needs v >= 0, t >= 0");
    XWeight w;
    w.factorial = true;
    w.v = v;
    return law_expectation(law, w, t, truncation);
}

// ---- condition checks -----------------------------------------------------------

namespace {

void require_two_connected(const Motif& motif) {
    if (!motif.two_connected || motif.vertices < 3)
        throw NotTwoConnected("condition checks need a 2-connected motif with v_F >= 3");
}

ConditionStatus status_of(double moment) {
    return std::isfinite(moment) ? ConditionStatus::satisfied : ConditionStatus::violated;
}

long long binom2(long long k) { return k * (k - 1) / 2; }

}  // namespace

ConditionReport check_normal_conditions(const LayerTypeLaw& law, const Motif& motif) {
    require_two_connected(motif);
    ConditionReport report;
    const double vf = motif.vertices;
    const double ef = static_cast<double>(motif.edge_count);

    const double ex = mixed_moment(law, {1.0, 0.0});
    report.checks.push_back({"E[X] finite", status_of(ex), ex});

    if (motif.balanced) {
        const double m2 = mixed_moment(law, {2.0 * vf, 2.0 * ef});
        report.checks.push_back({"variance surrogate E[X^{2v}Q^{2e}] finite", status_of(m2), m2});
    } else {
        report.checks.push_back({"variance surrogate E[X^{2v}Q^{2e}] finite",
                                 ConditionStatus::not_applicable, 0.0});
    }

    for (int s = 1; s <= motif.vertices - 1; ++s) {
        const double expo = 1.0 + s * (1.0 - 1.0 / (2.0 * ef));
        const double m = mixed_moment(law, {expo, static_cast<double>(s)});
        report.checks.push_back(
            {"overlap moment s=" + std::to_string(s), status_of(m), m});
    }

    if (motif.is_clique()) {
        const int k = motif.vertices;
        for (int r = 2; r <= k; ++r) {
            const long long r_hat = binom2(r - 1) + 1;
            const double expo = r - static_cast<double>(r_hat) / (static_cast<double>(k) * (k - 1));
            const double m = mixed_moment(law, {expo, static_cast<double>(r_hat)});
            report.checks.push_back(
                {"clique overlap moment r=" + std::to_string(r), status_of(m), m});
        }
    }
    return report;
}

ConditionReport check_stable_conditions(const LayerTypeLaw& law, const Motif& motif,
                                        double alpha) {
    if (!(alpha > 0.0 && alpha < 2.0))
        throw AlphaOutOfRange("alpha must lie in (0,2), got " + std::to_string(alpha));
    require_two_connected(motif);
    if (!motif.balanced) throw NotBalanced("stable limit needs a balanced motif");

    ConditionReport report;
    report.alpha = alpha;
    const double vf = motif.vertices;
    const double ef = static_cast<double>(motif.edge_count);

    const double ex = mixed_moment(law, {1.0, 0.0});
    report.checks.push_back({"E[X] finite", status_of(ex), ex});

    for (int s = 1; s <= motif.vertices - 1; ++s) {
        const double expo = 1.0 + s * (1.0 - 1.0 / (alpha * ef));
        const double m = mixed_moment(law, {expo, static_cast<double>(s)});
        report.checks.push_back(
            {"overlap moment s=" + std::to_string(s), status_of(m), m});
    }

    if (motif.is_clique()) {
        const int k = motif.vertices;
        for (int r = 2; r <= k; ++r) {
            const long long r_hat = binom2(r - 1) + 1;
            const double expo =
                r - static_cast<double>(r_hat) * 2.0 / (alpha * static_cast<double>(k) * (k - 1));
            const double m = mixed_moment(law, {expo, static_cast<double>(r_hat)});
            report.checks.push_back(
                {"clique overlap moment r=" + std::to_string(r), status_of(m), m});
        }
    }

    // independent marginals with power-law X: tail-exponent diagnostics
    if (law.kind() == LawKind::independent_product &&
        law.x_law().type == XLaw::Type::zeta) {
        const double gamma = law.x_law().gamma;
        report.gamma = gamma;
        const double implied = alpha * vf;
        const bool match = std::abs(gamma - implied) <= 1e-12 * std::max(1.0, std::abs(gamma));
        report.checks.push_back({"gamma equals alpha*v_F",
                                 match ? ConditionStatus::satisfied : ConditionStatus::violated,
                                 implied});
        const double lhs = 1.0 + (vf - 1.0) * (1.0 - 1.0 / (alpha * ef));
        report.checks.push_back({"tail exponent inequality",
                                 lhs < gamma ? ConditionStatus::satisfied
                                             : ConditionStatus::violated,
                                 lhs});
        long long vf_factorial = 1;
        for (int i = 2; i <= motif.vertices; ++i) vf_factorial *= i;
        const double eq = law.q_law().moment(gamma * ef / vf);
        const double a =
            law.x_law().tail_scale() *
            std::pow(static_cast<double>(motif.copies_in_complete) /
                         static_cast<double>(vf_factorial),
                     gamma / vf) *
            eq;
        report.tail_scale_a = a;
        report.checks.push_back({"tail scale a", status_of(a), a});
    }
    return report;
}

}  // namespace supergraph
