#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wittenlab/arrhenius.hpp"
#include "wittenlab/landscape.hpp"
#include "wittenlab/spectra.hpp"

namespace wittenlab {

struct Scenario {
    std::string name;                 // builtin name, or a label for file input
    std::string input;                // field file path (empty -> builtin)
    std::optional<LevelWindow> window;  // empty -> full
    std::vector<double> h;            // strictly decreasing, positive
    std::vector<int> degrees;         // d-blocks to solve (default by topology)
    std::string prefactor_model;      // auto|morse|degenerate|piecewise|circulant|submanifold|none
    std::string out_dir;              // report output directory ("" -> no files)
    uint64_t seed = 1;
    int64_t field_coeff = 2;
    int kwell_k = 4;                  // kwell_symmetric parameter
    double delta = 0.0;               // degenerate_min parameter

    void validate() const;
};

Scenario parse_config(const std::string& path);
Scenario parse_config_text(const std::string& text, const std::string& origin = "<config>");
std::string serialize_config(const Scenario& s);

// Builtin landscapes.  Every builtin documents its grid and the closed-form
// data (critical values, Hessians, slopes) that the verification step uses.
bool is_builtin(const std::string& name);
std::vector<std::string> builtin_names();
SampledField builtin_field(const Scenario& s);

// Designed landscapes with exact critical data (shared with the test suites).
DesignedLandscape double_well_landscape();
DesignedLandscape degenerate_min_landscape(double delta);
double piecewise_affine_eval(double x);  // period-4 zigzag

// Randomized designed landscapes for counting experiments: every critical
// value is a knot, gaps >= 0.45, bar lengths <= 1.05, curvatures in [1,2.5].
DesignedLandscape random_1d_landscape(uint64_t seed);
// 2D product landscape g(x)+w(y) on the torus with 8 distinct critical values.
FieldExpr random_torus_landscape(uint64_t seed, double* min_curvature = nullptr);

// ---- pipeline ------------------------------------------------------------

struct BlockRun {
    int block = 0;                // degree p of the d-block
    int zero_count = 0;           // expected kernel dimension of the block Gram
    std::vector<double> rates;    // descending
    std::vector<int> bar_ids;
    std::vector<BlockObservation> obs;
    FitSummary fit;
    std::vector<CountReport> counts;  // per h
    bool iterative = false;
    double sigma_max = 0;
    double accuracy_floor = 0;
};

struct RunResult {
    int exit_code = 0;            // 0 pass; documented nonzero codes otherwise
    std::string message;
    BarCode bc;
    CriticalLevels levels;
    SpectralPrediction prediction;
    std::vector<BlockRun> blocks;
    std::map<std::string, double> metrics;  // scenario-specific check values
};

// Exit codes of the pipeline (also the CLI process codes).
enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kConfigError = 2,
    kFieldError = 3,
    kWindowError = 4,
    kCountMismatch = 5,
    kThresholdFail = 6,
    kIoError = 7,
    kSolverFail = 8,
};

RunResult run_scenario(const Scenario& s);

// Predicted (zero_count, rates, bars) of a d-block: the kernel of the block
// Gram lives in degree p (node side) for d^0 and degree p+1 (face side) for
// the torus d^1.
void block_prediction(const SpectralPrediction& pred, const GridTopology& topo, int block,
                      int& zero_count, std::vector<double>& rates, std::vector<int>& bars);

int thread_cap_from_env();  // WITTENLAB_THREADS, 0 = no cap

}  // namespace wittenlab
