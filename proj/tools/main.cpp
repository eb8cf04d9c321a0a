#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qcss/experiment.hpp"

namespace {

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw qcss::ConfigError("cannot write " + path);
    out << content;
}

std::vector<qcss::CatalogEntry> load_extra(const std::string& path) {
    if (path.empty()) return {};
    std::ifstream in(path, std::ios::binary);
    if (!in) throw qcss::ConfigError("cannot open catalog " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return qcss::parse_catalog(ss.str());
}

qcss::ColumnPick pick_from(const std::string& s) {
    if (s == "lightest") return qcss::ColumnPick::lightest;
    if (s == "heaviest") return qcss::ColumnPick::heaviest;
    throw qcss::ConfigError("bad --pick value '" + s + "'");
}

std::vector<std::pair<double, double>> parse_references(
    const std::vector<std::string>& raw) {
    std::vector<std::pair<double, double>> refs;
    for (const auto& r : raw) {
        const auto colon = r.find(':');
        if (colon == std::string::npos)
            throw qcss::ConfigError("--reference wants crossover:value, got '" +
                                    r + "'");
        try {
            refs.emplace_back(std::stod(r.substr(0, colon)),
                              std::stod(r.substr(colon + 1)));
        } catch (const std::exception&) {
            throw qcss::ConfigError("bad --reference '" + r + "'");
        }
    }
    return refs;
}

int cmd_construct(const std::string& id, const std::string& outdir, bool css,
                  const std::string& pick, const std::string& catalog) {
    const auto entry = qcss::find_code(id, load_extra(catalog));
    if (!entry) throw qcss::ConfigError("unknown code id '" + id + "'");
    const qcss::BuiltCode built = qcss::build_code(*entry);
    const std::string base = outdir + "/" + id;
    qcss::save_matrix(built.h(), base + ".h.txt");
    std::cout << id << ": " << built.h().rows() << "x" << built.h().cols()
              << " written to " << base << ".h.txt\n";
    if (!css) return 0;

    const qcss::CssPair pair = qcss::build_pair(built, pick_from(pick));
    qcss::save_matrix(pair.h1, base + ".h1.txt");
    qcss::save_matrix(pair.h2, base + ".h2.txt");
    std::ostringstream info;
    info << "code " << id << "\n"
         << "n " << pair.n() << "\nm " << pair.m() << "\n"
         << "rank_h2 " << pair.rank_h2 << "\n"
         << "css_dimension " << pair.css_dimension() << "\n"
         << "selected_columns";
    for (const auto c : pair.selected_columns) info << ' ' << c;
    info << '\n';
    write_file(base + ".css.txt", info.str());
    std::cout << id << ": css pair written, dimension "
              << pair.css_dimension() << "\n";
    return 0;
}

int cmd_verify() {
    const qcss::CatalogReport rep = qcss::verify_catalog();
    std::cout << rep.text();
    return rep.pass ? 0 : 2;
}

int cmd_sweep(const std::string& config, const std::string& out,
              const std::string& trials_out, const std::string& catalog) {
    qcss::SweepConfig cfg = qcss::load_sweep_config(config);
    if (!trials_out.empty()) cfg.per_trial_rows = true;
    const qcss::SweepResult res = qcss::run_sweep(cfg, load_extra(catalog));
    if (out.empty())
        std::cout << res.summary_csv();
    else
        write_file(out, res.summary_csv());
    if (cfg.per_trial_rows && !trials_out.empty())
        write_file(trials_out, res.trials_csv());
    return 0;
}

int cmd_eve(const std::string& c1_config, const std::string& c2_config,
            std::size_t key_len, const std::vector<std::string>& raw_refs,
            const std::string& catalog) {
    const auto extra = load_extra(catalog);
    const qcss::SweepConfig cfg1 = qcss::load_sweep_config(c1_config);
    const qcss::SweepConfig cfg2 = qcss::load_sweep_config(c2_config);
    const bool c1_mode = cfg1.mode == qcss::EvalMode::c1_plain ||
                         cfg1.mode == qcss::EvalMode::c1_coset;
    const bool c2_mode = cfg2.mode == qcss::EvalMode::c2perp_plain ||
                         cfg2.mode == qcss::EvalMode::c2perp_coset;
    if (!c1_mode || !c2_mode)
        throw qcss::ConfigError(
            "eve wants a C1-mode config first and a C2perp-mode config second");
    if (cfg1.code_id != cfg2.code_id)
        throw qcss::ConfigError("eve: the two configs use different codes");

    if (key_len == 0) {
        const auto entry = qcss::find_code(cfg1.code_id, extra);
        if (!entry) throw qcss::ConfigError("unknown code id '" + cfg1.code_id + "'");
        key_len = qcss::build_pair(qcss::build_code(*entry), cfg1.column_pick)
                      .css_dimension();
    }
    const qcss::SweepResult r1 = qcss::run_sweep(cfg1, extra);
    const qcss::SweepResult r2 = qcss::run_sweep(cfg2, extra);
    const qcss::EveReport rep =
        qcss::report_eve(r1, r2, key_len, parse_references(raw_refs));
    std::cout << rep.text();
    return 0;
}

int cmd_table1(const std::string& id, const std::vector<double>& crossovers,
               std::size_t trials, std::uint64_t seed,
               const std::string& decoder, std::size_t max_iter,
               std::size_t threads, const std::string& catalog) {
    qcss::SweepConfig cfg;
    cfg.code_id = id;
    cfg.mode = qcss::EvalMode::c2perp_coset;
    cfg.decoder = decoder;
    cfg.max_iter = max_iter;
    cfg.crossovers = crossovers;
    cfg.trials = trials;
    cfg.seed = seed;
    cfg.threads = threads;
    cfg.capture_words = true;
    const auto extra = load_extra(catalog);
    const auto entry = qcss::find_code(id, extra);
    if (!entry) throw qcss::ConfigError("unknown code id '" + id + "'");
    const qcss::CssPair pair = qcss::build_pair(qcss::build_code(*entry));
    const qcss::SweepResult res = qcss::run_sweep(cfg, extra);
    const auto stats = qcss::coset_coverage_stats(pair, res.coverage_trials);

    std::cout << "crossover  trials  failures  to_codeword  covered  coverage\n";
    for (const auto& s : stats) {
        char line[160];
        const double cov = s.coverage();
        std::snprintf(line, sizeof line, "%-9g  %-6zu  %-8zu  %-11zu  %-7zu  %s\n",
                      s.crossover, s.trials, s.plain_failures, s.codeword_failures,
                      s.covered,
                      std::isnan(cov)
                          ? std::string("na").c_str()
                          : (std::to_string(100.0 * cov).substr(0, 5) + "%").c_str());
        std::cout << line;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"irregular LDPC and CSS code pairs for key reconciliation"};
    app.require_subcommand(1);
    std::string catalog;
    app.add_option("--catalog", catalog, "extra catalog file (INI format)");

    auto* construct = app.add_subcommand("construct", "build a code, write matrix files");
    std::string c_id, c_out = ".", c_pick = "lightest";
    bool c_css = false;
    construct->add_option("id", c_id, "catalog code id")->required();
    construct->add_option("--out", c_out, "output directory");
    construct->add_flag("--css", c_css, "also derive and write the CSS pair");
    construct->add_option("--pick", c_pick, "column selection: lightest|heaviest");

    auto* verify = app.add_subcommand("verify", "verify the builtin catalog");

    auto* sweep = app.add_subcommand("sweep", "run a block error rate sweep");
    std::string s_config, s_out, s_trials_out;
    sweep->add_option("config", s_config, "sweep config file")->required();
    sweep->add_option("--out", s_out, "summary CSV path (default stdout)");
    sweep->add_option("--trials-out", s_trials_out, "per-trial CSV path");

    auto* eve = app.add_subcommand("eve", "security bound from a pair of sweeps");
    std::string e_c1, e_c2;
    std::size_t e_key_len = 0;
    std::vector<std::string> e_refs;
    eve->add_option("c1-config", e_c1, "C1-mode sweep config")->required();
    eve->add_option("c2perp-config", e_c2, "C2perp-mode sweep config")->required();
    eve->add_option("--key-len", e_key_len, "override key length (default: derived)");
    eve->add_option("--reference", e_refs, "crossover:value pairs to print alongside");

    auto* table1 = app.add_subcommand("table1", "coset coverage table for a code");
    std::string t_id, t_decoder = "sum-product";
    std::vector<double> t_cross;
    std::size_t t_trials = 500, t_max_iter = 256, t_threads = 1;
    std::uint64_t t_seed = 1;
    table1->add_option("id", t_id, "catalog code id")->required();
    table1->add_option("--crossover", t_cross, "crossover probabilities")->required();
    table1->add_option("--trials", t_trials, "trials per point");
    table1->add_option("--seed", t_seed, "master seed");
    table1->add_option("--decoder", t_decoder, "decoder name");
    table1->add_option("--max-iter", t_max_iter, "iteration cap");
    table1->add_option("--threads", t_threads, "worker threads");

    try {
        app.parse(argc, argv);
        if (construct->parsed())
            return cmd_construct(c_id, c_out, c_css, c_pick, catalog);
        if (verify->parsed()) return cmd_verify();
        if (sweep->parsed()) return cmd_sweep(s_config, s_out, s_trials_out, catalog);
        if (eve->parsed())
            return cmd_eve(e_c1, e_c2, e_key_len, e_refs, catalog);
        if (table1->parsed())
            return cmd_table1(t_id, t_cross, t_trials, t_seed, t_decoder,
                              t_max_iter, t_threads, catalog);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    } catch (const qcss::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
