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
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fareylab/farey.hpp"
#include "fareylab/manifest.hpp"
#include "fareylab/minkowski.hpp"
#include "fareylab/orbit.hpp"
#include "fareylab/stats_io.hpp"
#include "fareylab/walk.hpp"

using namespace fareylab;

namespace {

std::string resolve_out_path(const std::string& path) {
    if (path.empty() || path.front() == '/') return path;
    const char* dir = std::getenv("FAREYLAB_OUT_DIR");
    if (dir == nullptr || *dir == '\0') return path;
    std::string d(dir);
    if (d.back() != '/') d += '/';
    return d + path;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write file: " + path);
    out << body;
}

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

/// Writes the payload to --out (prefixed with the manifest comment line)
/// plus a .manifest.json sidecar; without --out prints the payload.
void deliver(const std::string& payload, RunManifest manifest, const Timer& timer,
             const std::string& out) {
    manifest.duration_ms = timer.ms();
    if (out.empty()) {
        std::cout << payload;
        return;
    }
    const std::string path = resolve_out_path(out);
    write_file(path, manifest.comment_line() + "\n" + payload);
    write_file(path + ".manifest.json", manifest.to_json());
    std::cout << "wrote " << path << "\n";
}

std::string render(const Table& table, const std::string& format) {
    return format == "json" ? table.to_json() : table.to_csv();
}

std::vector<Rational> read_points_file(const std::string& path) {
    std::istringstream in(read_file(path));
    std::vector<Rational> points;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        points.push_back(Rational::parse(line));
    }
    if (points.empty()) throw ValidationError("points file holds no rationals: " + path);
    return points;
}

std::array<double, 2> parse_vec2(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw ValidationError("expected x0 as 'a,b', got '" + text + "'");
    try {
        return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
    } catch (const std::exception&) {
        throw ValidationError("bad x0 components in '" + text + "'");
    }
}

std::pair<double, double> parse_window(const std::string& text) {
    const auto pos = text.find("..");
    if (pos == std::string::npos)
        throw ValidationError("expected window as 'lo..hi', got '" + text + "'");
    try {
        return {std::stod(text.substr(0, pos)), std::stod(text.substr(pos + 2))};
    } catch (const std::exception&) {
        throw ValidationError("bad window bounds in '" + text + "'");
    }
}

std::string maybe_float(const Rational& r, bool want_float) {
    if (!want_float) return r.str();
    std::string s = r.str();
    s += " ";
    s += format_double(r.to_double());
    return s;
}

// shared run/load options for the walk analysis subcommands
struct WalkSource {
    std::string stats_path;
    std::string measure_path;
    unsigned steps = 120;
    std::uint64_t walks = 100000;
    std::uint64_t seed = 0;
    std::string x0 = "1,0";
    unsigned workers = 1;
    std::uint64_t max_walks = kWalksCap;

    void attach(CLI::App* cmd) {
        cmd->add_option("--stats", stats_path, "stats CSV produced by `walk run`");
        cmd->add_option("--measure", measure_path, "measure JSON (runs a fresh ensemble)");
        cmd->add_option("--steps", steps, "steps per walk for a fresh ensemble");
        cmd->add_option("--walks", walks, "number of walks for a fresh ensemble");
        cmd->add_option("--seed", seed, "seed for a fresh ensemble");
        cmd->add_option("--x0", x0, "base vector 'a,b'");
        cmd->add_option("--workers", workers, "worker threads");
        cmd->add_option("--max-walks", max_walks, "override the walk-count cap");
    }

    EnsembleStats load() const {
        if (!stats_path.empty() && !measure_path.empty())
            throw ValidationError("give either --stats or --measure, not both");
        if (!stats_path.empty()) {
            std::istringstream in(read_file(stats_path));
            return stats_from_csv(in);
        }
        if (measure_path.empty())
            throw ValidationError("need --stats FILE or --measure FILE to get an ensemble");
        WalkMeasure mu = WalkMeasure::from_json(read_file(measure_path));
        WalkConfig cfg;
        cfg.steps = steps;
        cfg.walks = walks;
        cfg.seed = seed;
        cfg.x0 = parse_vec2(x0);
        cfg.workers = workers;
        cfg.walks_cap = max_walks;
        return run_ensemble(mu, cfg);
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Farey / question-mark computations and SL(2,R) random-walk statistics"};
    app.require_subcommand(1);

    std::string format = "csv";
    std::string out;
    bool want_float = false;

    // ---------- farey ----------
    auto* farey = app.add_subcommand("farey", "mediant-interleaved sequences");
    farey->require_subcommand(1);

    auto* seq = farey->add_subcommand("seq", "emit the level-n sequence, one rational per line");
    unsigned seq_level = 0;
    unsigned seq_cap = kFareyLevelCap;
    seq->add_option("--level", seq_level, "sequence level")->required();
    seq->add_option("--max-level", seq_cap, "override the level cap");
    seq->add_option("--format", format, "csv or json (file output)");
    seq->add_option("--out", out, "output file");
    seq->callback([&] {
        Timer timer;
        FareySequence f = farey_sequence(seq_level, seq_cap);
        if (out.empty()) {
            std::string lines;
            for (const Rational& t : f.terms) lines += t.str() + "\n";
            std::cout << lines;
            return;
        }
        Table table;
        table.columns = {"index", "value"};
        for (std::size_t i = 0; i < f.terms.size(); ++i)
            table.rows.push_back({std::to_string(i), f.terms[i].str()});
        RunManifest manifest;
        manifest.subcommand = "farey seq";
        manifest.set_flag("level", std::to_string(seq_level));
        manifest.set_flag("format", format);
        deliver(render(table, format), std::move(manifest), timer, out);
    });

    auto* pair_level = farey->add_subcommand("pair-level", "least level where p,q are consecutive");
    std::string pl_p, pl_q;
    pair_level->add_option("p", pl_p, "lower endpoint")->required();
    pair_level->add_option("q", pl_q, "upper endpoint")->required();
    pair_level->callback([&] {
        auto level = farey_pair_level(Rational::parse(pl_p), Rational::parse(pl_q));
        if (level)
            std::cout << *level << "\n";
        else
            std::cout << "none\n";
    });

    // ---------- mink ----------
    auto* mink = app.add_subcommand("mink", "question-mark function and its measure");
    mink->require_subcommand(1);
    mink->add_flag("--float", want_float, "append a decimal approximation")->configurable(false);

    auto* mink_eval = mink->add_subcommand("eval", "?(x) for rational x in [0,1]");
    std::string mink_x;
    mink_eval->add_option("x", mink_x, "rational argument")->required();
    mink_eval->add_flag("--float", want_float, "append a decimal approximation");
    mink_eval->callback([&] {
        Rational x = Rational::parse(mink_x);
        if (x.is_infinity() || x < Rational(0) || x > Rational(1))
            throw ValidationError("mink eval: argument must be a rational in [0,1]");
        std::cout << maybe_float(question_mark(x).to_rational(), want_float) << "\n";
    });

    auto* mink_mbar = mink->add_subcommand("mbar", "extended CDF value at a rational (or 1/0)");
    std::string mbar_x;
    mink_mbar->add_option("x", mbar_x, "rational argument or 1/0")->required();
    mink_mbar->add_flag("--float", want_float, "append a decimal approximation");
    mink_mbar->callback([&] {
        std::cout << maybe_float(mbar(Rational::parse(mbar_x)), want_float) << "\n";
    });

    auto* mink_measure = mink->add_subcommand("measure", "exact arc mass under the extended CDF");
    std::string measure_arc_text;
    mink_measure->add_option("arc", measure_arc_text, "arc start..end")->required();
    mink_measure->add_flag("--float", want_float, "append a decimal approximation");
    mink_measure->callback([&] {
        std::cout << maybe_float(measure_arc(Arc::parse(measure_arc_text)), want_float) << "\n";
    });

    auto* mink_inverse = mink->add_subcommand("inverse", "preimage of a dyadic in (0,1)");
    std::string inv_d;
    mink_inverse->add_option("d", inv_d, "dyadic k/2^n in (0,1)")->required();
    mink_inverse->add_flag("--float", want_float, "append a decimal approximation");
    mink_inverse->callback([&] {
        Rational d = Rational::parse(inv_d);
        if (d.is_infinity() || !(d > Rational(0) && d < Rational(1)))
            throw ValidationError("mink inverse: need a value strictly inside (0,1)");
        const BigInt& den = d.den();
        BigInt probe = den;
        while (probe % 2 == 0) probe >>= 1;
        if (probe != 1)
            throw ValidationError("mink inverse: denominator must be a power of two, got " +
                                  den.str());
        unsigned exp = 0;
        while ((BigInt(1) << exp) < den) ++exp;
        std::cout << maybe_float(question_mark_inverse(Dyadic(d.num(), exp)), want_float) << "\n";
    });

    // ---------- group ----------
    auto* group = app.add_subcommand("group", "the group of the three involutions");
    group->require_subcommand(1);

    auto* gs = group->add_subcommand("sphere", "all elements of word length n");
    unsigned gs_n = 0;
    unsigned gs_cap = kSphereCap;
    bool gs_count_only = false;
    gs->add_option("--n", gs_n, "word length")->required();
    gs->add_option("--max-n", gs_cap, "override the radius cap");
    gs->add_flag("--count-only", gs_count_only, "print only the element count");
    gs->add_option("--format", format, "csv or json");
    gs->add_option("--out", out, "output file");
    gs->callback([&] {
        Timer timer;
        if (gs_count_only) {
            std::uint64_t count = 0;
            for_each_sphere_element(gs_n, [&](const Mat2&, std::string_view) { ++count; }, gs_cap);
            std::cout << count << "\n";
            return;
        }
        Table table;
        table.columns = {"word", "a", "b", "c", "d", "v0", "v1", "v2"};
        for_each_sphere_element(
            gs_n,
            [&](const Mat2& m, std::string_view w) {
                Tile t = tile_of(m);
                table.rows.push_back({std::string(w), m.a().str(), m.b().str(), m.c().str(),
                                      m.d().str(), t.v[0].str(), t.v[1].str(), t.v[2].str()});
            },
            gs_cap);
        RunManifest manifest;
        manifest.subcommand = "group sphere";
        manifest.set_flag("n", std::to_string(gs_n));
        manifest.set_flag("format", format);
        deliver(render(table, format), std::move(manifest), timer, out);
    });

    // ---------- orbit ----------
    auto* orbit = app.add_subcommand("orbit", "exact word-metric orbit statistics");
    orbit->require_subcommand(1);

    auto* ol = orbit->add_subcommand("limit", "normalized orbit counts against the arc mass");
    std::string ol_arc, ol_base = "0/1";
    unsigned ol_nmax = 12;
    unsigned ol_cap = kSphereCap;
    ol->add_option("--arc", ol_arc, "arc start..end")->required();
    ol->add_option("--base", ol_base, "base point (rational or 1/0)");
    ol->add_option("--nmax", ol_nmax, "largest word length");
    ol->add_option("--max-n", ol_cap, "override the radius cap");
    ol->add_option("--format", format, "csv or json");
    ol->add_option("--out", out, "output file");
    ol->callback([&] {
        Timer timer;
        WordLimitTable wt =
            word_limit_table(Arc::parse(ol_arc), Rational::parse(ol_base), ol_nmax, ol_cap);
        Table table;
        table.columns = {"n", "count", "ratio_num", "ratio_den", "target"};
        for (const auto& row : wt.rows)
            table.rows.push_back({std::to_string(row.n), std::to_string(row.count),
                                  row.ratio.num().str(), row.ratio.den().str(), wt.target.str()});
        RunManifest manifest;
        manifest.subcommand = "orbit limit";
        manifest.set_flag("arc", ol_arc);
        manifest.set_flag("base", ol_base);
        manifest.set_flag("nmax", std::to_string(ol_nmax));
        manifest.set_flag("format", format);
        deliver(render(table, format), std::move(manifest), timer, out);
    });

    auto* os = orbit->add_subcommand("stationarity", "one-step invariance of the arc mass");
    std::string os_arc;
    os->add_option("--arc", os_arc, "arc start..end")->required();
    os->callback([&] {
        StationarityResult r = stationarity_check(Arc::parse(os_arc));
        std::cout << "lhs " << r.lhs.str() << "\n"
                  << "rhs " << r.rhs.str() << "\n"
                  << (r.exact_match() ? "exact match" : "MISMATCH") << "\n";
    });

    auto* oc = orbit->add_subcommand("convolution", "exact n-step walk CDF at query points");
    unsigned oc_n = 10;
    std::string oc_x0 = "0/1", oc_points;
    unsigned oc_cap = kSphereCap;
    oc->add_option("--n", oc_n, "convolution power")->required();
    oc->add_option("--x0", oc_x0, "start point (rational or 1/0)");
    oc->add_option("--points", oc_points, "file with one rational query point per line")->required();
    oc->add_option("--max-n", oc_cap, "override the radius cap");
    oc->add_option("--format", format, "csv or json");
    oc->add_option("--out", out, "output file");
    oc->callback([&] {
        Timer timer;
        std::vector<Rational> points = read_points_file(oc_points);
        std::vector<Rational> cdf = convolution_cdf(oc_n, Rational::parse(oc_x0), points, oc_cap);
        Table table;
        table.columns = {"t", "cdf"};
        for (std::size_t i = 0; i < points.size(); ++i)
            table.rows.push_back({points[i].str(), cdf[i].str()});
        RunManifest manifest;
        manifest.subcommand = "orbit convolution";
        manifest.set_flag("n", std::to_string(oc_n));
        manifest.set_flag("x0", oc_x0);
        manifest.set_flag("points", oc_points);
        manifest.set_flag("format", format);
        deliver(render(table, format), std::move(manifest), timer, out);
    });

    // ---------- walk ----------
    auto* walk = app.add_subcommand("walk", "Monte Carlo walks of 2x2 matrices on the plane");
    walk->require_subcommand(1);

    auto* wr = walk->add_subcommand("run", "sample an ensemble and write per-walk stats");
    std::string wr_measure, wr_x0 = "1,0";
    unsigned wr_steps = 120;
    std::uint64_t wr_walks = 100000, wr_seed = 0, wr_max_walks = kWalksCap;
    unsigned wr_workers = 1;
    wr->add_option("--measure", wr_measure, "measure JSON file")->required();
    wr->add_option("--steps", wr_steps, "steps per walk");
    wr->add_option("--walks", wr_walks, "number of walks");
    wr->add_option("--seed", wr_seed, "RNG seed");
    wr->add_option("--x0", wr_x0, "base vector 'a,b'");
    wr->add_option("--workers", wr_workers, "worker threads");
    wr->add_option("--max-walks", wr_max_walks, "override the walk-count cap");
    wr->add_option("--out", out, "stats CSV file")->required();
    wr->callback([&] {
        Timer timer;
        WalkMeasure mu = WalkMeasure::from_json(read_file(wr_measure));
        WalkConfig cfg;
        cfg.steps = wr_steps;
        cfg.walks = wr_walks;
        cfg.seed = wr_seed;
        cfg.x0 = parse_vec2(wr_x0);
        cfg.workers = wr_workers;
        cfg.walks_cap = wr_max_walks;
        EnsembleStats stats = run_ensemble(mu, cfg);
        auto [lambda, s] = estimate_lyapunov(stats);
        RunManifest manifest;
        manifest.subcommand = "walk run";
        manifest.set_flag("measure", wr_measure);
        manifest.set_flag("steps", std::to_string(wr_steps));
        manifest.set_flag("walks", std::to_string(wr_walks));
        manifest.set_flag("x0", wr_x0);
        manifest.seed = wr_seed;
        deliver(stats_to_csv(stats), std::move(manifest), timer, out);
        std::cout << "lambda_hat " << format_double(lambda) << "\n"
                  << "s_hat " << format_double(s) << "\n";
    });

    auto* wl = walk->add_subcommand("lyapunov", "growth-rate estimates from an ensemble");
    WalkSource wl_src;
    wl_src.attach(wl);
    wl->callback([&] {
        auto [lambda, s] = estimate_lyapunov(wl_src.load());
        std::cout << "lambda_hat " << format_double(lambda) << "\n"
                  << "s_hat " << format_double(s) << "\n";
    });

    auto* wrad = walk->add_subcommand("radial", "histogram of rescaled log radii");
    WalkSource wrad_src;
    wrad_src.attach(wrad);
    double wrad_alpha = 0.0, wrad_lo = -3.0, wrad_hi = 3.0;
    unsigned wrad_bins = 12;
    bool wrad_alpha_set = false;
    auto* alpha_opt = wrad->add_option("--alpha", wrad_alpha, "rescaling exponent (default: lambda_hat)");
    wrad->add_option("--lo", wrad_lo, "window low edge");
    wrad->add_option("--hi", wrad_hi, "window high edge");
    wrad->add_option("--bins", wrad_bins, "bin count");
    wrad->add_option("--format", format, "csv or json");
    wrad->add_option("--out", out, "output file");
    wrad->callback([&] {
        Timer timer;
        EnsembleStats stats = wrad_src.load();
        wrad_alpha_set = alpha_opt->count() > 0;
        const double alpha = wrad_alpha_set ? wrad_alpha : estimate_lyapunov(stats).first;
        RadialProfile prof = radial_profile(stats, alpha, wrad_lo, wrad_hi, wrad_bins);
        if (prof.empty_window) std::cerr << "warning: no samples fell inside the window\n";
        Table table;
        table.columns = {"bin_lo", "bin_hi", "count", "mass"};
        for (std::size_t i = 0; i < prof.counts.size(); ++i)
            table.rows.push_back({format_double(prof.lo + i * prof.bin_width()),
                                  format_double(prof.lo + (i + 1) * prof.bin_width()),
                                  std::to_string(prof.counts[i]), format_double(prof.mass[i])});
        RunManifest manifest;
        manifest.subcommand = "walk radial";
        manifest.set_flag("alpha", format_double(alpha));
        manifest.set_flag("lo", format_double(wrad_lo));
        manifest.set_flag("hi", format_double(wrad_hi));
        manifest.set_flag("bins", std::to_string(wrad_bins));
        deliver(render(table, format), std::move(manifest), timer, out);
        std::cout << "alpha " << format_double(alpha) << "\n";
        if (prof.slope_defined) std::cout << "slope " << format_double(prof.slope) << "\n";
    });

    auto* wang = walk->add_subcommand("angular", "direction ECDF against a reference CDF");
    WalkSource wang_src;
    wang_src.attach(wang);
    std::string wang_window, wang_reference = "mbar";
    wang->add_option("--window", wang_window, "log-radius window lo..hi");
    wang->add_option("--reference", wang_reference, "mink (conditioned to [0,1]) or mbar");
    wang->add_option("--format", format, "csv or json");
    wang->add_option("--out", out, "output file (ECDF table)");
    wang->callback([&] {
        Timer timer;
        EnsembleStats stats = wang_src.load();
        std::optional<std::pair<double, double>> window;
        if (!wang_window.empty()) window = parse_window(wang_window);
        std::optional<std::pair<double, double>> range;
        ReferenceCdf reference;
        if (wang_reference == "mink") {
            range = std::make_pair(0.0, 1.0);
            reference = question_mark_cdf();
        } else if (wang_reference == "mbar") {
            reference = mbar_cdf();
        } else {
            throw ValidationError("--reference must be mink or mbar");
        }
        Ecdf ecdf = angular_ecdf(stats, window, range);
        const double ks = ks_distance(ecdf, reference);
        if (!out.empty()) {
            Table table;
            table.columns = {"direction", "ecdf"};
            for (std::size_t i = 0; i < ecdf.finite.size(); ++i)
                table.rows.push_back(
                    {format_double(ecdf.finite[i]),
                     format_double(static_cast<double>(i + 1) / static_cast<double>(ecdf.total()))});
            RunManifest manifest;
            manifest.subcommand = "walk angular";
            manifest.set_flag("reference", wang_reference);
            if (!wang_window.empty()) manifest.set_flag("window", wang_window);
            deliver(render(table, format), std::move(manifest), timer, out);
        }
        std::cout << "samples " << ecdf.total() << "\n"
                  << "ks " << format_double(ks) << "\n";
    });

    auto* wclt = walk->add_subcommand("clt", "standardized log radii against the normal law");
    WalkSource wclt_src;
    wclt_src.attach(wclt);
    wclt->callback([&] {
        CltReport report = clt_check(wclt_src.load());
        if (report.degenerate) {
            std::cout << "degenerate (deterministic radial growth)\n";
            return;
        }
        std::cout << "ks " << format_double(report.ks) << "\n";
        for (int k = 1; k <= 9; ++k)
            std::cout << "decile_err_" << k * 10 << " " << format_double(report.decile_errors[k - 1])
                      << "\n";
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ResourceLimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
