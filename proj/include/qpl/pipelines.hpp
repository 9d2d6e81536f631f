#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qpl/types.hpp"

namespace qpl::pipelines {

inline constexpr const char* kVersion = "qpl 0.1.0";

// Parsed experiment configuration.  The JSON schema mirrors the fields
// below; unknown pipelines and malformed values raise config_error with the
// offending field named.
struct ExperimentConfig {
    std::vector<i64> a, b;  // coefficient system (optional for some pipelines)
    std::vector<i64> P_list{4};
    std::optional<i64> R;
    std::optional<double> eta;
    bool sharp = false;  // R >= P: smoothness off (the default when nothing is given)
    i64 M = 0;           // 0: per-P default grid
    std::optional<double> Q_override;
    double delta = 0.1;
    double X = 16.0;
    i64 nmax = 0;  // 0: M/4
    u64 seed = 1;
    i64 depth = 9;
    i64 attempts = 200;
    std::vector<i64> t_list{2, 4, 6, 8, 10, 12};
    std::vector<std::array<i64, 4>> tuples{{1, 1, 1, 1}, {1, 1, 2, 1}, {2, 3, 1, 1}};
    std::string out_dir = ".";

    static ExperimentConfig from_json_file(const std::string& path);
    static ExperimentConfig from_json_text(const std::string& text);

    bool has_system() const { return !a.empty(); }
    QuarticPairSystem system() const;
    SmoothParams smooth_for(i64 P) const;
    i64 grid_for(i64 P) const;

    std::string canonical_json() const;  // effective config echo, sorted keys
    std::string config_hash() const;     // FNV-1a 64 of the canonical echo, hex
};

// Known pipeline names, in the CLI's order.
const std::vector<std::string>& pipeline_names();

// Runs one pipeline, writing <pipeline>.json (and .csv where tabular) into
// cfg.out_dir.  Returns 0 on success, 2 on guard or config violations, 3 on
// invariant failures.
int run_experiment(const std::string& pipeline, const ExperimentConfig& cfg);

}  // namespace qpl::pipelines
