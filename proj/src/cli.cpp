#include "thinsets/cli.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>

#include "thinsets/config.hpp"
#include "thinsets/czd.hpp"
#include "thinsets/ergodic.hpp"
#include "thinsets/expsum.hpp"
#include "thinsets/io.hpp"
#include "thinsets/kernels.hpp"
#include "thinsets/operators.hpp"
#include "thinsets/suite.hpp"

namespace thinsets::cli {

namespace {

struct Common {
    std::string config;
    int threads = 0;
    uint64_t seed = 12345;
};

void add_common(CLI::App* cmd, Common& c, bool need_config = true) {
    auto* opt = cmd->add_option("--config", c.config, "set-spec JSON file");
    if (need_config) opt->required();
    cmd->add_option("--threads", c.threads, "OpenMP thread cap (0 = default)");
    cmd->add_option("--seed", c.seed, "seed for randomized commands");
}

ThinSetSpec spec_of(const Common& c) { return load_set_config(c.config); }

void apply_threads(const Common& c) {
    if (c.threads > 0) omp_set_num_threads(c.threads);
}

ScalePlan plan_of(const std::string& name, const ThinSet& ts) {
    if (name == "all") return make_plan_all(ts);
    if (name == "dyadic") return make_plan_dyadic(ts.N);
    if (name.rfind("tau:", 0) == 0) return make_plan_tau(std::stod(name.substr(4)), ts.N);
    fail(Errc::config_error, "plan must be all | dyadic | tau:<value>");
}

AvgOp op_of(const std::string& name) {
    if (name == "M") return AvgOp::M;
    if (name == "A") return AvgOp::A;
    if (name == "D") return AvgOp::D;
    if (name == "H") return AvgOp::H;
    if (name == "sd") return AvgOp::smooth_dyadic;
    fail(Errc::config_error, "op must be M | A | D | H | sd");
}

double theta_of(const std::string& name) {
    if (name == "sqrt2m1") return std::numbers::sqrt2 - 1.0;
    if (name == "golden") return (std::sqrt(5.0) - 1.0) / 2.0;
    try {
        return std::stod(name);
    } catch (const std::exception&) {
        fail(Errc::config_error, "theta must be sqrt2m1 | golden | a number in (0,1)");
    }
}

std::vector<int64_t> parse_int_list(const std::string& csv) {
    std::vector<int64_t> out;
    size_t pos = 0;
    while (pos < csv.size()) {
        size_t comma = csv.find(',', pos);
        if (comma == std::string::npos) comma = csv.size();
        out.push_back(std::stoll(csv.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    if (out.empty()) fail(Errc::config_error, "empty integer list");
    return out;
}

int exit_code_for(const Error& e) {
    switch (e.code()) {
        case Errc::config_error:
        case Errc::inadmissible_exponent:
        case Errc::inadmissible_slowly_varying:
        case Errc::domain_too_small:
        case Errc::dimension_too_large:
        case Errc::bad_cut_points:
            return 2;
        case Errc::io_error:
            return 4;
        default:
            return 3;  // invariant/assertion-level failures
    }
}

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"thin deterministic sets: membership, kernels, operators, verification"};
    app.require_subcommand(1);

    Common c_gen, c_count, c_stats, c_exp, c_ker, c_ops, c_czd, c_wt, c_erg, c_suite;

    // gen
    auto* gen = app.add_subcommand("gen", "materialize B and emit one element per line");
    int64_t gen_N = 0;
    std::string gen_out;
    bool gen_stats = false;
    add_common(gen, c_gen);
    gen->add_option("--N", gen_N, "horizon")->required();
    gen->add_option("--out", gen_out, "output CSV path")->required();
    gen->add_flag("--stats", gen_stats, "emit run-stats JSON instead of elements");

    // count
    auto* count = app.add_subcommand("count", "print |B cap [1,t]|");
    int64_t count_N = 0, count_t = 0;
    add_common(count, c_count);
    count->add_option("--N", count_N, "horizon")->required();
    count->add_option("--t", count_t, "count point")->required();

    // stats
    auto* stats = app.add_subcommand("stats", "run-structure statistics as JSON");
    int64_t stats_N = 0;
    std::string stats_out;
    add_common(stats, c_stats);
    stats->add_option("--N", stats_N, "horizon")->required();
    stats->add_option("--out", stats_out, "output path (default stdout)");

    // expsum scan
    auto* expsum = app.add_subcommand("expsum", "exponential-sum machinery");
    auto* scan = expsum->add_subcommand("scan", "kernel-vs-weight identity scan");
    int64_t scan_nmin = 1024, scan_nmax = 1 << 20;
    int scan_farey = 64;
    std::string scan_out, scan_svg;
    add_common(scan, c_exp);
    scan->add_option("--nmin", scan_nmin, "smallest N (rounded to powers of two)");
    scan->add_option("--nmax", scan_nmax, "largest N");
    scan->add_option("--farey", scan_farey, "Farey order of the xi grid");
    scan->add_option("--out", scan_out, "output CSV")->required();
    scan->add_option("--svg", scan_svg, "optional decay chart");

    // kernels autocorr
    auto* kernels = app.add_subcommand("kernels", "smooth dyadic kernels");
    auto* ac = kernels->add_subcommand("autocorr", "correlation and its smooth split");
    int64_t ac_N = 1 << 12;
    std::string ac_out;
    add_common(ac, c_ker);
    ac->add_option("--N", ac_N, "kernel scale (horizon 4N is enumerated)");
    ac->add_option("--out", ac_out, "output CSV: x, kk, g, e")->required();

    // ops maximal / oscillation
    auto* ops = app.add_subcommand("ops", "averaging operators");
    auto* mx = ops->add_subcommand("maximal", "pointwise sup over a scale plan");
    std::string mx_f, mx_plan = "all", mx_op = "M", mx_out;
    int64_t mx_horizon = 1 << 14;
    add_common(mx, c_ops);
    mx->add_option("--f", mx_f, "input signal CSV (x,value)")->required();
    mx->add_option("--plan", mx_plan, "all | dyadic | tau:<v>");
    mx->add_option("--op", mx_op, "M | A | D | H | sd");
    mx->add_option("--horizon", mx_horizon, "set horizon");
    mx->add_option("--out", mx_out, "output CSV")->required();
    auto* osc = ops->add_subcommand("oscillation", "O^2 over cut windows");
    std::string osc_f, osc_cuts, osc_op = "M", osc_out;
    int64_t osc_horizon = 1 << 14;
    Common c_osc;
    add_common(osc, c_osc);
    osc->add_option("--f", osc_f, "input signal CSV")->required();
    osc->add_option("--cuts", osc_cuts, "comma-separated cut points")->required();
    osc->add_option("--op", osc_op, "M | A | D | H");
    osc->add_option("--horizon", osc_horizon, "set horizon");
    osc->add_option("--out", osc_out, "output CSV")->required();

    // czd weaktype / absthm / decompose
    auto* czd = app.add_subcommand("czd", "decomposition and weak-type harness");
    auto* wt = czd->add_subcommand("weaktype", "weak-type statistic over random trials");
    int wt_trials = 20, wt_deltas = 100;
    int64_t wt_horizon = 1 << 20;
    std::string wt_out;
    add_common(wt, c_czd);
    wt->add_option("--trials", wt_trials, "number of random trials");
    wt->add_option("--deltas", wt_deltas, "random +-deltas per trial");
    wt->add_option("--horizon", wt_horizon, "set horizon");
    wt->add_option("--out", wt_out, "output CSV")->required();
    auto* absthm = czd->add_subcommand("absthm", "hypothesis measurements per scale");
    int ab_nmin = 8, ab_nmax = 14;
    std::string ab_out;
    Common c_ab;
    add_common(absthm, c_ab);
    absthm->add_option("--nmin", ab_nmin, "smallest dyadic exponent");
    absthm->add_option("--nmax", ab_nmax, "largest dyadic exponent");
    absthm->add_option("--out", ab_out, "output CSV")->required();
    auto* dec = czd->add_subcommand("decompose", "dyadic decomposition of a signal");
    std::string dec_f, dec_out;
    double dec_alpha = 1.0;
    dec->add_option("--f", dec_f, "input signal CSV")->required();
    dec->add_option("--alpha", dec_alpha, "level")->required();
    dec->add_option("--out", dec_out, "output CSV of cubes")->required();

    // weaktype alias at the top level
    auto* wt2 = app.add_subcommand("weaktype", "alias of 'czd weaktype'");
    int wt2_trials = 20, wt2_deltas = 100;
    int64_t wt2_horizon = 1 << 20;
    std::string wt2_out;
    add_common(wt2, c_wt);
    wt2->add_option("--trials", wt2_trials, "number of random trials");
    wt2->add_option("--deltas", wt2_deltas, "random +-deltas per trial");
    wt2->add_option("--horizon", wt2_horizon, "set horizon");
    wt2->add_option("--out", wt2_out, "output CSV")->required();

    // ergodic trace
    auto* ergodic = app.add_subcommand("ergodic", "averages along rotations");
    auto* trace = ergodic->add_subcommand("trace", "convergence trace on an N grid");
    std::string tr_theta = "sqrt2m1", tr_f = "indicator:0,0.5", tr_out, tr_svg;
    int64_t tr_N = 1 << 20;
    double tr_x0 = 0.0;
    add_common(trace, c_erg);
    trace->add_option("--theta", tr_theta, "sqrt2m1 | golden | number");
    trace->add_option("--f", tr_f, "observable: indicator:a,b | cos | sin | const:c");
    trace->add_option("--N", tr_N, "largest N");
    trace->add_option("--x0", tr_x0, "starting point");
    trace->add_option("--out", tr_out, "output CSV")->required();
    trace->add_option("--svg", tr_svg, "optional deviation chart");

    // suite
    auto* suite = app.add_subcommand("suite", "acceptance battery, JSON summary");
    bool suite_quick = false;
    std::string suite_out;
    add_common(suite, c_suite, /*need_config=*/false);
    suite->add_flag("--quick", suite_quick, "reduced horizons");
    suite->add_option("--out", suite_out, "JSON output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed()) {
            apply_threads(c_gen);
            auto ts = enumerate_set(spec_of(c_gen), gen_N);
            if (gen_stats) {
                std::ofstream out(gen_out, std::ios::binary);
                if (!out) fail(Errc::io_error, "cannot open '" + gen_out + "'");
                out << run_stats_json(run_stats(ts)) << "\n";
            } else {
                CsvWriter w(gen_out, {"n"});
                for (int64_t n : ts.elements) w.row({CsvWriter::num(n)});
            }
        } else if (count->parsed()) {
            auto ts = enumerate_set(spec_of(c_count), count_N);
            std::cout << ts.count(count_t) << "\n";
        } else if (stats->parsed()) {
            apply_threads(c_stats);
            auto ts = enumerate_set(spec_of(c_stats), stats_N);
            std::string json = run_stats_json(run_stats(ts));
            if (stats_out.empty()) {
                std::cout << json << "\n";
            } else {
                std::ofstream out(stats_out, std::ios::binary);
                if (!out) fail(Errc::io_error, "cannot open '" + stats_out + "'");
                out << json << "\n";
            }
        } else if (scan->parsed()) {
            apply_threads(c_exp);
            auto spec = spec_of(c_exp);
            auto ts = enumerate_set(spec, scan_nmax);
            std::vector<int64_t> Ns;
            for (int64_t N = scan_nmin; N <= scan_nmax; N *= 2) Ns.push_back(N);
            auto rep = trest_scan(ts, Ns, default_xi_grid(scan_farey));
            CsvWriter w(scan_out, {"N", "xi", "abs_error", "normalized_error"});
            for (size_t i = 0; i < rep.N_grid.size(); ++i) {
                double phi2 = spec.phi2_at(static_cast<double>(rep.N_grid[i]));
                for (size_t j = 0; j < rep.xi_grid.size(); ++j)
                    w.row({CsvWriter::num(rep.N_grid[i]), CsvWriter::num(rep.xi_grid[j]),
                           CsvWriter::num(rep.abs_err[i][j]),
                           CsvWriter::num(rep.abs_err[i][j] / phi2)});
            }
            std::cout << "slope " << fmt_double(rep.slope.slope) << " residual "
                      << fmt_double(rep.slope.residual) << " max/median "
                      << fmt_double(rep.max_over_median) << "\n";
            if (!scan_svg.empty()) {
                std::vector<double> xs, ys;
                for (size_t i = 0; i < rep.N_grid.size(); ++i) {
                    xs.push_back(static_cast<double>(rep.N_grid[i]));
                    ys.push_back(rep.sup_err_norm[i]);
                }
                write_svg_line_chart(scan_svg, "normalized sup error vs N", xs, ys, true, true);
            }
        } else if (ac->parsed()) {
            apply_threads(c_ker);
            auto ts = enumerate_set(spec_of(c_ker), 4 * ac_N);
            auto rep = gn_en_split(ts, ac_N);
            CsvWriter w(ac_out, {"x", "kk", "g", "e"});
            for (int64_t x = rep.kk.lo(); x <= rep.kk.hi(); ++x)
                w.row({CsvWriter::num(x), CsvWriter::num(rep.kk.at(x)), CsvWriter::num(rep.g.at(x)),
                       CsvWriter::num(rep.e.at(x))});
            std::cout << "c_small " << fmt_double(rep.c_small) << " e_max "
                      << fmt_double(rep.e_max) << " lipschitz " << fmt_double(rep.lipschitz)
                      << (rep.warn_outside_hypotheses ? " (config outside the weak-type hypotheses)" : "")
                      << "\n";
        } else if (mx->parsed()) {
            apply_threads(c_ops);
            auto ts = enumerate_set(spec_of(c_ops), mx_horizon);
            Signal f = read_signal_csv(mx_f);
            auto out = maximal(ts, f, plan_of(mx_plan, ts), op_of(mx_op));
            write_signal_csv(mx_out, out, "maximal");
        } else if (osc->parsed()) {
            apply_threads(c_osc);
            auto ts = enumerate_set(spec_of(c_osc), osc_horizon);
            Signal f = read_signal_csv(osc_f);
            auto rep = oscillation(ts, f, parse_int_list(osc_cuts), op_of(osc_op));
            write_signal_csv(osc_out, rep.osc, "osc2");
            for (auto& [p, norm] : rep.norms)
                std::cout << "p " << fmt_double(p) << " norm " << fmt_double(norm) << "\n";
        } else if (wt->parsed() || wt2->parsed()) {
            const Common& cc = wt->parsed() ? c_czd : c_wt;
            int trials = wt->parsed() ? wt_trials : wt2_trials;
            int deltas = wt->parsed() ? wt_deltas : wt2_deltas;
            int64_t horizon = wt->parsed() ? wt_horizon : wt2_horizon;
            const std::string& out_path = wt->parsed() ? wt_out : wt2_out;
            apply_threads(cc);
            auto ts = enumerate_set(spec_of(cc), horizon);
            auto plan = make_plan_all(ts);
            std::mt19937_64 rng(cc.seed);
            std::uniform_int_distribution<int64_t> upos(0, horizon - 1);
            CsvWriter w(out_path, {"trial", "sup_stat"});
            double worst = 0.0;
            for (int t = 0; t < trials; ++t) {
                Signal f = Signal::zeros(0, horizon - 1);
                for (int i = 0; i < deltas; ++i) f.ref(upos(rng)) += (rng() & 1) ? 1.0 : -1.0;
                if (f.l1() == 0.0) continue;
                auto rep = weaktype_scan(ts, f, {0.5}, plan);
                w.row({CsvWriter::num(static_cast<int64_t>(t)), CsvWriter::num(rep.sup_stat)});
                worst = std::max(worst, rep.sup_stat);
            }
            std::cout << "worst " << fmt_double(worst) << "\n";
        } else if (absthm->parsed()) {
            apply_threads(c_ab);
            auto ts = enumerate_set(spec_of(c_ab), int64_t(1) << (ab_nmax + 2));
            auto h = verify_absthm_hypotheses(ts, ab_nmin, ab_nmax);
            CsvWriter w(ab_out, {"n", "d_n", "D_n", "e_sup", "small_stat", "large_stat",
                                 "lipschitz"});
            for (size_t i = 0; i < h.n.size(); ++i)
                w.row({CsvWriter::num(h.n[i]), CsvWriter::num(h.d[i]), CsvWriter::num(h.D[i]),
                       CsvWriter::num(h.e_sup[i]), CsvWriter::num(h.small_stat[i]),
                       CsvWriter::num(h.large_stat[i]), CsvWriter::num(h.lipschitz[i])});
            std::cout << "eps1 " << fmt_double(h.eps1) << " eps0 " << fmt_double(h.eps0)
                      << " lacunarity_d " << fmt_double(h.lacunarity_d)
                      << (h.warn_outside_hypotheses ? " (config outside the weak-type hypotheses)" : "")
                      << "\n";
        } else if (dec->parsed()) {
            Signal f = read_signal_csv(dec_f);
            auto d = cz_decompose(f, dec_alpha);
            CsvWriter w(dec_out, {"s", "j", "lo", "hi", "mean"});
            for (const auto& q : d.cubes)
                w.row({CsvWriter::num(q.s), CsvWriter::num(q.j), CsvWriter::num(q.lo()),
                       CsvWriter::num(q.hi()), CsvWriter::num(q.mean)});
            std::cout << "cubes " << d.cubes.size() << " g_linf " << fmt_double(d.g.linf())
                      << "\n";
        } else if (trace->parsed()) {
            apply_threads(c_erg);
            auto ts = enumerate_set(spec_of(c_erg), tr_N);
            auto sys = make_rotation({theta_of(tr_theta)}, {parse_observable(tr_f)});
            std::vector<int64_t> grid;
            for (int64_t N = 64; N <= tr_N; N *= 2) grid.push_back(N);
            if (grid.empty() || grid.back() != tr_N) grid.push_back(tr_N);
            auto tr = convergence_trace(ts, sys, tr_x0, grid);
            CsvWriter w(tr_out, {"N", "average", "deviation"});
            for (size_t i = 0; i < tr.N_grid.size(); ++i)
                w.row({CsvWriter::num(tr.N_grid[i]), CsvWriter::num(tr.averages[i]),
                       CsvWriter::num(tr.deviations[i])});
            std::cout << "final_deviation " << fmt_double(tr.deviations.back()) << "\n";
            if (!tr_svg.empty()) {
                std::vector<double> xs, ys;
                for (size_t i = 0; i < tr.N_grid.size(); ++i) {
                    xs.push_back(static_cast<double>(tr.N_grid[i]));
                    ys.push_back(tr.averages[i]);
                }
                write_svg_line_chart(tr_svg, "ergodic average vs N", xs, ys, true, false);
            }
        } else if (suite->parsed()) {
            SuiteOptions opts;
            opts.quick = suite_quick;
            opts.seed = c_suite.seed;
            opts.threads = c_suite.threads;
            auto results = run_suite(opts);
            std::string json = suite_json(results);
            if (suite_out.empty()) {
                std::cout << json << "\n";
            } else {
                std::ofstream out(suite_out, std::ios::binary);
                if (!out) fail(Errc::io_error, "cannot open '" + suite_out + "'");
                out << json << "\n";
            }
            if (!suite_all_pass(results)) {
                for (const auto& r : results)
                    if (!r.pass) std::cerr << "failed: " << r.id << " (" << r.note << ")\n";
                return 3;
            }
        }
    } catch (const Error& e) {
        std::cerr << errc_name(e.code()) << ": " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

}  // namespace thinsets::cli
