/*
   Copyright 2026 The fareylab authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "fareylab/minkowski.hpp"
#include "fareylab/philox.hpp"

namespace fareylab {

/**
 * \brief Finitely supported step measure on SL(2,R).
 *
 * Atom probabilities are exact rationals and must sum to exactly 1;
 * matrices are doubles with |det - 1| <= 1e-9.
 */
struct WalkMeasure {
    struct Atom {
        std::array<double, 4> m{1, 0, 0, 1};  // row-major [[a,b],[c,d]]
        Rational prob;
    };
    std::vector<Atom> atoms;

    void validate() const {
        if (atoms.empty()) throw ValidationError("walk measure needs at least one atom");
        Rational total(0);
        for (const Atom& atom : atoms) {
            if (!(atom.prob > Rational(0)))
                throw ValidationError("atom probabilities must be positive");
            total = total + atom.prob;
            const double det = atom.m[0] * atom.m[3] - atom.m[1] * atom.m[2];
            if (std::abs(det - 1.0) > 1e-9)
                throw ValidationError("atom determinant deviates from 1 by more than 1e-9");
        }
        if (!(total == Rational(1)))
            throw ValidationError("atom probabilities must sum to exactly 1, got " + total.str());
    }

    /// Cumulative probabilities as doubles, used for deterministic sampling.
    std::vector<double> cumulative() const {
        std::vector<double> cum;
        cum.reserve(atoms.size());
        Rational run(0);
        for (const Atom& atom : atoms) {
            run = run + atom.prob;
            cum.push_back(run.to_double());
        }
        cum.back() = 1.0;
        return cum;
    }

    /// The uniform measure on the three Farey involutions.
    static WalkMeasure farey() {
        WalkMeasure mu;
        const Rational third(1, 3);
        mu.atoms.push_back({{1, -2, 1, -1}, third});
        mu.atoms.push_back({{0, -1, 1, 0}, third});
        mu.atoms.push_back({{1, -1, 2, -1}, third});
        return mu;
    }

    static WalkMeasure from_json(const std::string& text) {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw ValidationError(std::string("measure file is not valid JSON: ") + e.what());
        }
        if (!j.is_object() || !j.contains("atoms") || !j["atoms"].is_array())
            throw ValidationError("measure file must be an object with an \"atoms\" array");
        WalkMeasure mu;
        for (const auto& ja : j["atoms"]) {
            if (!ja.contains("matrix") || !ja.contains("prob"))
                throw ValidationError("each atom needs \"matrix\" and \"prob\"");
            const auto& jm = ja["matrix"];
            if (!jm.is_array() || jm.size() != 2 || !jm[0].is_array() || jm[0].size() != 2 ||
                !jm[1].is_array() || jm[1].size() != 2)
                throw ValidationError("atom matrix must be [[a,b],[c,d]]");
            Atom atom;
            atom.m = {jm[0][0].get<double>(), jm[0][1].get<double>(), jm[1][0].get<double>(),
                      jm[1][1].get<double>()};
            if (!ja["prob"].is_string())
                throw ValidationError("atom prob must be an exact rational string like \"1/3\"");
            atom.prob = Rational::parse(ja["prob"].get<std::string>());
            mu.atoms.push_back(std::move(atom));
        }
        mu.validate();
        return mu;
    }

    std::string to_json() const {
        nlohmann::json j;
        j["atoms"] = nlohmann::json::array();
        for (const Atom& atom : atoms) {
            nlohmann::json ja;
            ja["matrix"] = {{atom.m[0], atom.m[1]}, {atom.m[2], atom.m[3]}};
            ja["prob"] = atom.prob.str();
            j["atoms"].push_back(std::move(ja));
        }
        return j.dump(2);
    }
};

struct WalkConfig {
    unsigned steps = 1;
    std::uint64_t walks = 1;
    std::uint64_t seed = 0;
    std::array<double, 2> x0{1.0, 0.0};
    unsigned workers = 1;
    std::uint64_t walks_cap = kWalksCap;
};

struct WalkRecord {
    double log_radius = 0.0;  // log |g x0| accumulated step by step
    double direction = 0.0;   // x/y of the final vector; +inf encodes ∞
};

struct EnsembleStats {
    WalkConfig config;
    std::vector<WalkRecord> records;
};

/// Deterministic atom pick: first index whose cumulative probability
/// exceeds u. Part of the reproducibility contract together with the
/// per-walk stream derivation CounterRng(seed, walk_index).
inline std::size_t pick_atom(const std::vector<double>& cumulative, double u) {
    for (std::size_t i = 0; i + 1 < cumulative.size(); ++i)
        if (u < cumulative[i]) return i;
    return cumulative.size() - 1;
}

namespace detail {

inline WalkRecord simulate_walk(const std::vector<std::array<double, 4>>& mats,
                                const std::vector<double>& cum, const WalkConfig& cfg,
                                double base_log, double v0, double v1, std::uint64_t walk_index) {
    CounterRng rng(cfg.seed, walk_index);
    double ell = 0.0;
    for (unsigned s = 0; s < cfg.steps; ++s) {
        const auto& m = mats[pick_atom(cum, rng.next_double())];
        const double w0 = m[0] * v0 + m[1] * v1;
        const double w1 = m[2] * v0 + m[3] * v1;
        const double r = std::sqrt(w0 * w0 + w1 * w1);
        ell += std::log(r);
        v0 = w0 / r;
        v1 = w1 / r;
    }
    double dir = v0 / v1;
    if (!std::isfinite(dir)) dir = std::numeric_limits<double>::infinity();
    return WalkRecord{base_log + ell, dir};
}

}  // namespace detail

/**
 * Runs the ensemble of independent walks. Each walk keeps a unit direction
 * vector and accumulates log-norm increments, so the matrix product itself
 * is never formed and 120 steps of exponential growth stay in range.
 * Output is bit-identical for a fixed (measure, config) regardless of the
 * worker count: walk i always consumes the stream CounterRng(seed, i).
 */
inline EnsembleStats run_ensemble(const WalkMeasure& measure, const WalkConfig& config) {
    measure.validate();
    if (config.steps < 1) throw ValidationError("steps must be >= 1");
    if (config.walks < 1) throw ValidationError("walks must be >= 1");
    if (config.walks > config.walks_cap)
        throw ResourceLimitError("walks " + std::to_string(config.walks) + " exceeds cap " +
                                 std::to_string(config.walks_cap));
    const double norm0 = std::sqrt(config.x0[0] * config.x0[0] + config.x0[1] * config.x0[1]);
    if (!(norm0 > 0.0) || !std::isfinite(norm0))
        throw ValidationError("base vector x0 must be nonzero and finite");
    const double base_log = std::log(norm0);
    const double v0 = config.x0[0] / norm0;
    const double v1 = config.x0[1] / norm0;

    std::vector<std::array<double, 4>> mats;
    mats.reserve(measure.atoms.size());
    for (const auto& atom : measure.atoms) mats.push_back(atom.m);
    const std::vector<double> cum = measure.cumulative();

    EnsembleStats stats;
    stats.config = config;
    stats.records.resize(config.walks);

    const unsigned workers = std::max(1u, config.workers);
    auto run_range = [&](std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t i = lo; i < hi; ++i)
            stats.records[i] = detail::simulate_walk(mats, cum, config, base_log, v0, v1, i);
    };
    if (workers == 1) {
        run_range(0, config.walks);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        const std::uint64_t chunk = (config.walks + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t lo = std::min<std::uint64_t>(w * chunk, config.walks);
            const std::uint64_t hi = std::min<std::uint64_t>(lo + chunk, config.walks);
            if (lo < hi) pool.emplace_back(run_range, lo, hi);
        }
        for (auto& t : pool) t.join();
    }
    return stats;
}

/// (lambda_hat, s_hat): mean log radius per step and sample standard
/// deviation scaled by sqrt(n).
inline std::pair<double, double> estimate_lyapunov(const EnsembleStats& stats) {
    const auto& rec = stats.records;
    if (rec.size() < 2) throw ValidationError("lyapunov estimate needs at least 2 walks");
    const double n = static_cast<double>(stats.config.steps);
    double mean = 0.0;
    for (const auto& r : rec) mean += r.log_radius;
    mean /= static_cast<double>(rec.size());
    double ss = 0.0;
    for (const auto& r : rec) {
        const double d = r.log_radius - mean;
        ss += d * d;
    }
    const double sd = std::sqrt(ss / (static_cast<double>(rec.size()) - 1.0));
    return {mean / n, sd / std::sqrt(n)};
}

struct RadialProfile {
    double lo = 0.0, hi = 0.0;
    std::vector<std::uint64_t> counts;
    std::vector<double> mass;   // counts / total walks
    double slope = 0.0;         // least-squares slope of log(mass) over bin centers
    bool slope_defined = false; // needs >= 2 non-empty bins
    bool empty_window = false;

    double bin_width() const { return (hi - lo) / static_cast<double>(counts.size()); }
    double center(std::size_t i) const { return lo + (static_cast<double>(i) + 0.5) * bin_width(); }
};

/**
 * Histogram of the rescaled log radii ell_i - alpha * n over [lo, hi), with
 * the fitted slope of log-mass against the bin center. With alpha equal to
 * the Lyapunov exponent the profile is flat; shifting alpha tilts the
 * log-density linearly with slope (lambda - alpha) / s^2 near 0.
 */
inline RadialProfile radial_profile(const EnsembleStats& stats, double alpha, double lo, double hi,
                                    unsigned bins) {
    if (bins < 1) throw ValidationError("radial profile needs bins >= 1");
    if (!(lo < hi)) throw ValidationError("radial profile needs lo < hi");
    RadialProfile prof;
    prof.lo = lo;
    prof.hi = hi;
    prof.counts.assign(bins, 0);
    const double n = static_cast<double>(stats.config.steps);
    const double width = (hi - lo) / bins;
    for (const auto& r : stats.records) {
        const double y = r.log_radius - alpha * n;
        if (y < lo || y >= hi) continue;
        auto idx = static_cast<std::size_t>((y - lo) / width);
        if (idx >= bins) idx = bins - 1;
        ++prof.counts[idx];
    }
    const double total = static_cast<double>(stats.records.size());
    prof.mass.resize(bins);
    for (unsigned i = 0; i < bins; ++i) prof.mass[i] = static_cast<double>(prof.counts[i]) / total;

    std::uint64_t inside = 0;
    for (auto c : prof.counts) inside += c;
    prof.empty_window = inside == 0;

    // unweighted least squares over non-empty bins
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    unsigned k = 0;
    for (unsigned i = 0; i < bins; ++i) {
        if (prof.counts[i] == 0) continue;
        const double x = prof.center(i);
        const double y = std::log(prof.mass[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++k;
    }
    if (k >= 2) {
        const double det = k * sxx - sx * sx;
        if (det != 0.0) {
            prof.slope = (k * sxy - sx * sy) / det;
            prof.slope_defined = true;
        }
    }
    return prof;
}

/**
 * \brief Empirical CDF over R ∪ {∞} with the circle cut at ∞.
 *
 * Finite samples are sorted; samples at ∞ count toward the total but sit
 * above every finite argument.
 */
struct Ecdf {
    std::vector<double> finite;  // sorted
    std::uint64_t infinite = 0;

    std::uint64_t total() const { return finite.size() + infinite; }

    double operator()(double t) const {
        const auto it = std::upper_bound(finite.begin(), finite.end(), t);
        return static_cast<double>(it - finite.begin()) / static_cast<double>(total());
    }
};

/**
 * ECDF of walk directions, optionally restricted to a log-radius window
 * and/or a direction range (both closed). Requires at least 100 surviving
 * samples.
 */
inline Ecdf angular_ecdf(const EnsembleStats& stats,
                         std::optional<std::pair<double, double>> log_radius_window = std::nullopt,
                         std::optional<std::pair<double, double>> direction_range = std::nullopt) {
    Ecdf ecdf;
    for (const auto& r : stats.records) {
        if (log_radius_window &&
            (r.log_radius < log_radius_window->first || r.log_radius > log_radius_window->second))
            continue;
        if (std::isinf(r.direction)) {
            if (direction_range) continue;
            ++ecdf.infinite;
        } else {
            if (direction_range &&
                (r.direction < direction_range->first || r.direction > direction_range->second))
                continue;
            ecdf.finite.push_back(r.direction);
        }
    }
    if (ecdf.total() < 100)
        throw ValidationError("angular ECDF kept only " + std::to_string(ecdf.total()) +
                              " samples after conditioning; need at least 100");
    std::sort(ecdf.finite.begin(), ecdf.finite.end());
    return ecdf;
}

using ReferenceCdf = std::function<double(double)>;

/// Kolmogorov-Smirnov statistic of an ECDF against a monotone reference CDF
/// with limits 0 and 1, evaluated at the sample jump points (both sides) and
/// at the upper cut when mass sits at ∞.
inline double ks_distance(const Ecdf& ecdf, const ReferenceCdf& reference) {
    const double n = static_cast<double>(ecdf.total());
    double d = 0.0;
    for (std::size_t i = 0; i < ecdf.finite.size(); ++i) {
        const double f = reference(ecdf.finite[i]);
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
        d = std::max(d, std::abs(static_cast<double>(i) / n - f));
    }
    if (ecdf.infinite > 0)
        d = std::max(d, static_cast<double>(ecdf.infinite) / n);  // ECDF below ∞ vs reference -> 1
    return d;
}

// ----- double-precision question-mark evaluators (float path) -----

/// ?(x) for x in [0,1], exact continued fraction of the (dyadic) double,
/// alternating sum in double precision. Terms vanish once the exponent
/// passes the subnormal range, so the loop is short.
inline double question_mark_d(double x) {
    if (!(x > 0.0)) return 0.0;
    if (x >= 1.0) return 1.0;
    // Exact rational decomposition of the double.
    int exp2 = 0;
    const double mant = std::frexp(x, &exp2);
    const auto mant_int = static_cast<std::int64_t>(std::ldexp(mant, 53));
    const int shift = 53 - exp2;
    BigInt num = mant_int;
    BigInt den = BigInt(1) << shift;
    // continued fraction of num/den in (0,1): invert and run Euclid
    double acc = 0.0;
    double sign = 1.0;
    long total = 0;
    BigInt a = den, b = num;  // evaluating den/num = 1/x
    while (b != 0) {
        const BigInt q = a / b;
        if (q + total > 1080) break;  // this and all later terms underflow double
        total += q.convert_to<long>();
        acc += sign * std::ldexp(1.0, -static_cast<int>(total));
        sign = -sign;
        BigInt r = a % b;
        a = b;
        b = std::move(r);
    }
    return 2.0 * acc;
}

/// mbar in double precision for any real argument (including ±inf limits).
inline double mbar_d(double x) {
    if (std::isnan(x)) throw ValidationError("mbar_d: NaN argument");
    if (std::isinf(x)) return x > 0 ? 1.0 : 0.0;
    double mf = std::floor(x);
    if (mf >= 1080) return 1.0;
    if (mf <= -1080) return 0.0;
    const int m = static_cast<int>(mf);
    const double frac = x - mf;
    const double tail = m <= 0 ? std::ldexp(1.0, m) : 3.0 - std::ldexp(1.0, 1 - m);
    return (tail + question_mark_d(frac) * std::ldexp(1.0, -std::abs(m))) / 3.0;
}

inline ReferenceCdf question_mark_cdf() {
    return [](double t) { return question_mark_d(t); };
}

inline ReferenceCdf mbar_cdf() {
    return [](double t) { return mbar_d(t); };
}

// ----- normal-comparison report -----

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

inline double normal_quantile(double p) {
    double lo = -10.0, hi = 10.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (normal_cdf(mid) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

struct CltReport {
    bool degenerate = false;  // deterministic radial growth, s == 0
    double ks = 0.0;
    std::array<double, 9> decile_errors{};  // |empirical - Phi^-1(k/10)|
};

/**
 * Standardizes z_i = (ell_i - lambda_hat n) / (s_hat sqrt(n)) and reports
 * the KS distance to the standard normal plus the nine decile errors.
 */
inline CltReport clt_check(const EnsembleStats& stats) {
    if (stats.records.size() < 1000) throw ValidationError("clt check needs at least 1000 walks");
    const auto [lambda, s] = estimate_lyapunov(stats);
    CltReport report;
    if (s < 1e-12) {
        report.degenerate = true;
        return report;
    }
    const double n = static_cast<double>(stats.config.steps);
    std::vector<double> z;
    z.reserve(stats.records.size());
    for (const auto& r : stats.records)
        z.push_back((r.log_radius - lambda * n) / (s * std::sqrt(n)));
    std::sort(z.begin(), z.end());
    const double count = static_cast<double>(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        const double f = normal_cdf(z[i]);
        report.ks = std::max(report.ks, std::abs(static_cast<double>(i + 1) / count - f));
        report.ks = std::max(report.ks, std::abs(static_cast<double>(i) / count - f));
    }
    for (int k = 1; k <= 9; ++k) {
        const double p = k / 10.0;
        const auto idx = static_cast<std::size_t>(p * count);
        report.decile_errors[k - 1] = std::abs(z[std::min(idx, z.size() - 1)] - normal_quantile(p));
    }
    return report;
}

}  // namespace fareylab
