#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qcss/bb84.hpp"
#include "qcss/construct.hpp"
#include "qcss/css.hpp"
#include "qcss/decode.hpp"

namespace qcss {

/// Bad user input (config file, catalog id, parameter range). The CLI maps
/// this to exit code 1; verification failures use exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- catalog ---------------------------------------------------------------

struct CatalogEntry {
    std::string id;
    bool near_regular = false;
    // structured codes
    std::uint32_t p = 0, j = 0, k = 0;
    std::string mask_id;  // empty = unmasked
    // near-regular codes
    std::size_t n = 0, col_weight = 0, row_weight = 0;
    std::uint64_t seed = 0;
};

/// Codes shipped with the library: the six appendix codes (a082, a34, a23,
/// a055, b08, b055), small-p variants of two of them (mini08, mini055), the
/// (3,15) length-480 comparison code (reg480) and the p=3 toy code (toy).
const std::vector<CatalogEntry>& builtin_catalog();

/// Parses a catalog file: "[code <id>]" sections with key = value lines.
std::vector<CatalogEntry> parse_catalog(std::string_view text);

/// Builtin entries first, then extras; extras may shadow builtin ids.
std::optional<CatalogEntry> find_code(const std::string& id,
                                      const std::vector<CatalogEntry>& extra = {});

/// A constructed code with a matching encoder (back-substitution for
/// structured codes, Gaussian elimination otherwise).
struct BuiltCode {
    CatalogEntry entry;
    LdpcCode code;  // p == 0 for near-regular codes; h always set
    std::unique_ptr<Encoder> encoder;

    const BinMatrix& h() const { return code.h; }
};

BuiltCode build_code(const CatalogEntry& entry);
CssPair build_pair(const BuiltCode& code,
                   ColumnPick pick = ColumnPick::lightest);

// --- sweeps ----------------------------------------------------------------

enum class EvalMode { c1_plain, c1_coset, c2perp_plain, c2perp_coset };
std::string to_string(EvalMode mode);
EvalMode eval_mode_from_string(std::string_view s);

/// Decoder names accepted by sweeps: sum-product, bit-serial,
/// combined-original, combined-modified, approximative (C2perp only).
struct SweepConfig {
    std::string code_id;
    EvalMode mode = EvalMode::c1_plain;
    std::string decoder = "sum-product";
    std::size_t max_iter = 100;
    std::size_t osd_order = 2;
    std::vector<double> crossovers;  // each in [0, 0.5)
    std::size_t trials = 500;
    std::uint64_t seed = 1;
    std::size_t threads = 1;
    bool per_trial_rows = false;
    bool capture_words = false;  // keep (transmitted, decoded) for coverage
    ColumnPick column_pick = ColumnPick::lightest;
};

SweepConfig parse_sweep_config(std::string_view text);
SweepConfig load_sweep_config(const std::string& path);

struct TrialRecord {
    std::size_t index = 0;
    double crossover = 0.0;
    std::uint64_t trial_seed = 0;
    std::size_t error_weight = 0;
    std::size_t errors_high_density = 0;  // error columns heavier than the median
    bool converged = false;
    bool plain_success = false;
    bool coset_success = false;
    std::size_t iterations = 0;
};

struct PointSummary {
    double crossover = 0.0;
    std::size_t trials = 0;
    std::size_t plain_failures = 0;
    std::size_t coset_failures = 0;
    std::size_t converged = 0;
    double coverage = 0.0;  // NaN when no converged failures
    double mean_iters = 0.0;
};

inline constexpr const char* kSummarySchema = "qcss-sweep-v1";
inline constexpr const char* kTrialsSchema = "qcss-trials-v1";

struct SweepResult {
    SweepConfig cfg;
    std::vector<PointSummary> points;
    std::vector<TrialRecord> records;          // ordered by (point, trial)
    std::vector<CoverageTrial> coverage_trials;  // only with capture_words

    std::string summary_csv() const;
    std::string trials_csv() const;
};

/// Monte-Carlo block error sweep; bit-reproducible for a fixed config.
SweepResult run_sweep(const SweepConfig& cfg,
                      const std::vector<CatalogEntry>& extra = {});

// --- reports ---------------------------------------------------------------

struct EvePoint {
    double crossover = 0.0;
    std::size_t trials = 0;
    std::size_t worse_failures = 0;  // max coset failures of the two sweeps
    double delta = 0.0;              // point estimate (rule of three when 0)
    bool rule_of_three = false;
    double delta_upper = 0.0;        // 95% Wilson upper bound
    double bound = 0.0;              // eve_bound(delta)
    double bound_upper = 0.0;        // eve_bound(delta_upper)
    std::optional<double> reference;  // user-supplied comparison value
};

struct EveReport {
    std::size_t key_len = 0;
    std::vector<EvePoint> points;
    std::string text() const;
};

/// Per crossover point, delta = the worse coset failure rate of the two
/// sweeps. references maps crossover -> externally supplied bound values
/// to print side by side.
EveReport report_eve(const SweepResult& c1, const SweepResult& c2perp,
                     std::size_t key_len,
                     const std::vector<std::pair<double, double>>& references = {});

/// 95% one-sided upper confidence bound on p from f failures in t trials
/// (Wilson score; rule of three at f = 0).
double failure_rate_upper(std::size_t failures, std::size_t trials);

// --- catalog verification --------------------------------------------------

struct CodeCheck {
    std::string code_id;
    std::size_t rows = 0, cols = 0;
    Rational rate;         // (n-m)/n
    Rational css;          // css_rate of the built pair
    std::size_t rank_h2 = 0;
    bool pass = false;
    std::vector<std::string> failures;
};

struct CatalogReport {
    bool pass = false;
    std::vector<CodeCheck> codes;
    std::string text() const;
};

/// Rebuilds every catalog code, checks shapes, rates, mask checksums, full
/// row rank and the CSS identity, and compares against the shipped values.
CatalogReport verify_catalog();

}  // namespace qcss
