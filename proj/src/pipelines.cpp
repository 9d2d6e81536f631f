// pipelines.cpp
//
// Experiment driver: JSON config in, CSV/JSON artifacts out.  Every output
// embeds the effective config, its hash, and any guard or override notices,
// and repeated runs with the same config are byte-identical (fixed seeds,
// deterministic reductions, no timestamps).

#include "qpl/pipelines.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "qpl/arith.hpp"
#include "qpl/circle.hpp"
#include "qpl/counter.hpp"
#include "qpl/forms.hpp"
#include "qpl/fourier.hpp"
#include "qpl/largevalues.hpp"
#include "qpl/local.hpp"
#include "qpl/weylsum.hpp"

namespace qpl::pipelines {

using nlohmann::json;

namespace {

std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// doubles enter JSON pre-rounded to 12 significant digits
double r12(double v) { return std::strtod(fmt12(v).c_str(), nullptr); }

void require_field(bool ok, const std::string& field, const std::string& what) {
    if (!ok) throw config_error("config field '" + field + "' " + what);
}

struct CsvWriter {
    std::ofstream out;
    explicit CsvWriter(const std::filesystem::path& path) : out(path) {
        if (!out) throw guard_error("cannot open " + path.string());
    }
    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out << ',';
            out << cells[i];
        }
        out << '\n';
    }
};

json provenance(const ExperimentConfig& cfg, const std::vector<std::string>& notes) {
    json j;
    j["version"] = kVersion;
    j["config"] = json::parse(cfg.canonical_json());
    j["config_hash"] = cfg.config_hash();
    j["notes"] = notes;
    return j;
}

void write_json(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw guard_error("cannot open " + path.string());
    out << j.dump(2) << '\n';
}

std::string status_name(local::Status st) {
    switch (st) {
        case local::Status::Soluble: return "soluble";
        case local::Status::Insoluble: return "insoluble";
        case local::Status::Assumed: return "assumed";
        case local::Status::Unknown: return "unknown";
    }
    return "unknown";
}

// ---------------------------------------------------------------------------
// pipelines
// ---------------------------------------------------------------------------

void run_moments(const ExperimentConfig& cfg, std::vector<std::string>& notes, json& out,
                 CsvWriter& csv) {
    csv.row({"P", "R", "cardA", "t", "exact", "numeric", "rel_err"});
    json rows = json::array();
    for (i64 P : cfg.P_list) {
        const auto sp = cfg.smooth_for(P);
        const i64 M = cfg.grid_for(P);
        const auto grid = weylsum::eval_h_grid(sp, M);
        const double card = static_cast<double>(arith::smooth_set(sp).size());
        for (i64 t : cfg.t_list) {
            double exact = -1.0, rel = -1.0;
            const double numeric = weylsum::numeric_moment(grid, static_cast<double>(t));
            if (t % 2 == 0) {
                exact = static_cast<double>(weylsum::exact_even_moment(sp, t));
                rel = std::abs(numeric - exact) / std::max(exact, 1e-300);
            }
            csv.row({std::to_string(P), std::to_string(sp.R), fmt12(card), std::to_string(t),
                     fmt12(exact), fmt12(numeric), fmt12(rel)});
            rows.push_back({{"P", P},
                            {"R", sp.R},
                            {"t", t},
                            {"exact", r12(exact)},
                            {"numeric", r12(numeric)},
                            {"rel_err", r12(rel)}});
        }
        rows.back()["smooth_density"] = r12(card / static_cast<double>(P));
    }
    out["rows"] = rows;
    (void)notes;
}

void run_psi(const ExperimentConfig& cfg, std::vector<std::string>& notes, json& out,
             CsvWriter& csv) {
    const i64 P = cfg.P_list.front();
    const auto sp = cfg.smooth_for(P);
    const i64 M = cfg.grid_for(P);
    const auto grid = weylsum::eval_h_grid(sp, M);
    const i64 nmax = cfg.nmax > 0 ? cfg.nmax : M / 4;
    const auto table = fourier::psi_table(grid, nmax);

    csv.row({"n", "psi_n"});
    for (i64 n = 0; n <= table.nmax; ++n) csv.row({std::to_string(n), fmt12(table.psi(n))});

    const double C = fourier::decay_constant(table);
    out["P"] = P;
    out["M"] = M;
    out["nmax"] = table.nmax;
    out["psi0"] = r12(table.psi0());
    out["aliasing_estimate"] = r12(table.aliasing_estimate);
    out["decay_constant"] = r12(C);
    out["cubic_moment_floor1"] = r12(fourier::cubic_moment(table, 1.0));
    out["cubic_tail_bound"] = r12(fourier::cubic_tail_bound(table, std::max(C, 1e-300)));
    notes.push_back("tail bound uses the n^-2 decay rate with the constant calibrated in-table");
}

void run_cubic_identity(const ExperimentConfig& cfg, std::vector<std::string>& notes, json& out) {
    json reports = json::array();
    for (const auto& t : cfg.tuples) {
        const auto [a, b, c, d] = t;
        for (i64 P : cfg.P_list) {
            const auto sp = cfg.smooth_for(P);
            const i64 maxcoef =
                std::max(std::max(std::llabs(a), std::llabs(b)), std::max(std::llabs(c),
                                                                          std::llabs(d)));
            i64 M = cfg.grid_for(P);
            const i64 needed = 2 * maxcoef * P * P * P * P;
            if (cfg.M == 0 && M < needed) {
                while (M < needed) M *= 2;
                notes.push_back("grid raised to M=" + std::to_string(M) +
                                " for the anti-aliasing guard at (a,b,c,d)=(" +
                                std::to_string(a) + "," + std::to_string(b) + "," +
                                std::to_string(c) + "," + std::to_string(d) + ")");
            }
            const auto rep = fourier::verify_correlation_identity(a, b, c, d, sp, M);
            reports.push_back({{"a", a},
                               {"b", b},
                               {"c", c},
                               {"d", d},
                               {"P", P},
                               {"M", rep.M},
                               {"nmax", rep.nmax},
                               {"lhs_quadrature", r12(rep.lhs_quadrature)},
                               {"rhs_psi_sum", r12(rep.rhs_psi_sum)},
                               {"abs_residual", r12(rep.abs_residual)},
                               {"rel_residual", r12(rep.rel_residual)},
                               {"aliasing_estimate", r12(rep.aliasing_estimate)}});
        }
    }
    out["identities"] = reports;
}

void run_large_values(const ExperimentConfig& cfg, std::vector<std::string>& notes, json& out,
                      CsvWriter& csv) {
    csv.row({"P", "T", "Z", "sum_abs_psi", "int_h7K", "rel_residual", "TZ", "h4K2", "bound_P3Z",
             "bound_P2Z32", "B1", "B2"});
    const AdmissibleExponents exps;
    json rows = json::array();
    for (i64 P : cfg.P_list) {
        const auto sp = cfg.smooth_for(P);
        const i64 M = cfg.grid_for(P);
        const auto grid = weylsum::eval_h_grid(sp, M);
        const auto table = fourier::psi_table(grid, cfg.nmax > 0 ? cfg.nmax : M / 4);
        for (double T = table.psi0() * 0.51; T > 1e-4 * table.psi0(); T *= 0.5) {
            const auto set = largevalues::build_Z(table, T);
            if (set.Z == 0) continue;
            const auto K = largevalues::K_grid(set, M);
            const auto id = largevalues::verify_kernel_identity(grid, set, K, table);
            const auto mm = largevalues::mixed_moment_h4K2(grid, K, set);
            const auto bounds =
                largevalues::large_value_bounds(static_cast<double>(set.Z), T,
                                            static_cast<double>(P), exps);
            csv.row({std::to_string(P), fmt12(T), std::to_string(set.Z), fmt12(id.sum_abs_psi),
                     fmt12(id.integral_h7K), fmt12(id.rel_residual), fmt12(id.TZ),
                     fmt12(mm.value), fmt12(mm.bound_P3Z), fmt12(mm.bound_P2Z32), fmt12(bounds.B1),
                     fmt12(bounds.B2)});
            rows.push_back({{"P", P},
                            {"T", r12(T)},
                            {"Z", set.Z},
                            {"rel_residual", r12(id.rel_residual)},
                            {"strict_gt", id.strict_gt}});
        }
    }
    out["shells"] = rows;
    notes.push_back("inequality checks are ratio reports; only the kernel identity is strict");
}

void run_forms_check(const ExperimentConfig& cfg, std::vector<std::string>& notes, json& out) {
    const auto sys = cfg.system();
    json violations = json::array();
    for (const auto& v : forms::validate_system(sys))
        violations.push_back({{"index", v.index}, {"what", v.what}, {"fatal", v.fatal}});
    out["violations"] = violations;

    const auto rank = forms::rank_condition(sys);
    out["rank_condition"] = {{"pass", rank.pass},
                             {"witness_c", rank.direction.first},
                             {"witness_d", rank.direction.second},
                             {"annihilated", rank.annihilated}};

    const auto ec = forms::equivalence_classes(sys);
    json classes = json::array();
    for (std::size_t k = 0; k < ec.classes.size(); ++k)
        classes.push_back({{"canonical", {ec.canonical[k].first, ec.canonical[k].second}},
                           {"members", ec.classes[k]},
                           {"multiplicity", ec.multiplicities[k]}});
    out["classes"] = classes;

    if (sys.s() >= 22 && rank.pass) {
        const auto sel = forms::select_S21(sys);
        out["S21"] = {{"indices", sel.indices}, {"r", sel.r}, {"t", sel.t}};
        const auto shuffle = forms::shuffle_schedule(sel.r);
        out["shuffle"] = {{"reachable_states", shuffle.reachable_states},
                          {"max_path_length", shuffle.max_path_length},
                          {"terminates_at_777", shuffle.all_terminate_at_777}};
    } else {
        notes.push_back("S21 selection skipped: needs s >= 22 and the rank condition");
    }

    for (i64 i = 0; i < sys.s(); ++i) {
        bool done = false;
        for (i64 j = i + 1; j < sys.s() && !done; ++j) {
            if (sys.a(i) * sys.b(j) - sys.a(j) * sys.b(i) == 0) continue;
            const auto fr = forms::normalize_frame(sys, i, j);
            json pairs = json::array();
            for (const auto& pr : fr.system.pairs) pairs.push_back({pr.first, pr.second});
            out["normalized_frame"] = {{"pivot_i", i},
                                       {"pivot_j", j},
                                       {"already_normalized", fr.already_normalized},
                                       {"pairs", pairs},
                                       {"variable_order", fr.variable_order}};
            done = true;
        }
        if (done) break;
    }
}

void run_local(const ExperimentConfig& cfg, std::vector<std::string>& notes, json& out) {
    const auto sys = cfg.system();
    const auto rep = local::local_solubility_report(sys, cfg.depth, cfg.attempts, cfg.seed);

    if (rep.real) {
        json theta = json::array();
        for (double t : rep.real->theta) theta.push_back(r12(t));
        out["real"] = {{"status", "soluble"},
                       {"theta", theta},
                       {"residual1", r12(rep.real->residual1)},
                       {"residual2", r12(rep.real->residual2)},
                       {"jacobian_minor", r12(rep.real->jacobian_minor)},
                       {"pivot_i", rep.real->pivot_i},
                       {"pivot_j", rep.real->pivot_j}};
    } else {
        out["real"] = {{"status", "inconclusive"}};
        notes.push_back("real search exhausted the attempt budget; this is not insolubility");
    }

    json primes = json::array();
    for (const auto& v : rep.primes) {
        json entry = {{"p", v.p}, {"status", status_name(v.status)}, {"note", v.note}};
        if (v.status == local::Status::Soluble) {
            entry["witness"] = v.witness;
            entry["modulus"] = v.modulus;
            entry["tau"] = v.tau;
            entry["pivot_i"] = v.pivot_i;
            entry["pivot_j"] = v.pivot_j;
            entry["reverified"] = local::verify_padic_certificate(sys, v);
        }
        primes.push_back(entry);
    }
    out["primes"] = primes;
    out["assumed_range"] = rep.assumed_note;
    switch (rep.overall) {
        case local::SolubilityReport::Overall::Satisfied: out["overall"] = "satisfied"; break;
        case local::SolubilityReport::Overall::Violated: out["overall"] = "violated"; break;
        case local::SolubilityReport::Overall::Unknown: out["overall"] = "unknown"; break;
    }
}

void run_singular_series(const ExperimentConfig& cfg, std::vector<std::string>& notes, json& out,
                         CsvWriter& csv) {
    const auto sys = cfg.system();
    const auto series = circle::singular_series(sys, cfg.X);
    csv.row({"q", "A_q", "A_q_times_q_11_4"});
    for (const auto& row : series.rows)
        csv.row({std::to_string(row.q), fmt12(row.A_q), fmt12(row.decay)});

    out["X"] = r12(cfg.X);
    out["S_X"] = r12(series.value);
    out["positive"] = series.value > 0.0;

    // dyadic convergence: |S(2Y) - S(Y)| * Y from the partial sums
    json conv = json::array();
    auto partial = [&](double Y) {
        double s = 0.0;
        for (const auto& row : series.rows)
            if (static_cast<double>(row.q) <= Y) s += row.A_q;
        return s;
    };
    for (double Y = 8.0; 2.0 * Y <= cfg.X; Y *= 2.0)
        conv.push_back({{"Y", r12(Y)},
                        {"increment_times_Y", r12(std::abs(partial(2.0 * Y) - partial(Y)) * Y)}});
    out["dyadic_convergence"] = conv;
    notes.push_back("series truncation reads S(X) as the sum over q <= X");
}

void run_singular_integral(const ExperimentConfig& cfg, std::vector<std::string>& notes,
                           json& out, CsvWriter& csv) {
    const auto sys = cfg.system();
    const auto J = circle::singular_integral(sys, cfg.X, cfg.delta);
    csv.row({"X", "J_over_P_pow", "increment_times_X"});
    json conv = json::array();
    for (std::size_t i = 0; i < J.by_X.size(); ++i) {
        double inc = -1.0;
        if (i + 1 < J.by_X.size())
            inc = std::abs(J.by_X[i + 1].second - J.by_X[i].second) * J.by_X[i].first;
        csv.row({fmt12(J.by_X[i].first), fmt12(J.by_X[i].second), fmt12(inc)});
        conv.push_back({{"X", r12(J.by_X[i].first)},
                        {"value", r12(J.by_X[i].second)},
                        {"increment_times_X", r12(inc)}});
    }
    out["X"] = r12(cfg.X);
    out["delta"] = r12(cfg.delta);
    out["value"] = r12(J.value);
    out["by_X"] = conv;
    (void)notes;
}

void run_count(const ExperimentConfig& cfg, std::vector<std::string>& notes, json& out,
               CsvWriter& csv) {
    const auto sys = cfg.system();
    const auto rows = counter::growth_report(sys, cfg.P_list);
    csv.row({"P", "N", "P_pow", "N_over_P_pow", "predicted", "ratio"});
    json jr = json::array();
    for (const auto& r : rows) {
        csv.row({std::to_string(r.P), std::to_string(r.N), fmt12(r.P_pow), fmt12(r.normalized),
                 fmt12(r.predicted), fmt12(r.ratio)});
        jr.push_back({{"P", r.P},
                      {"N", r.N},
                      {"P_pow", r12(r.P_pow)},
                      {"N_over_P_pow", r12(r.normalized)}});
    }
    out["rows"] = jr;
    notes.push_back("no pass/fail: the asymptotic regime is unreachable at desk scale");
}

void run_predict(const ExperimentConfig& cfg, std::vector<std::string>& notes, json& out,
                 CsvWriter& csv) {
    const auto sys = cfg.system();
    csv.row({"P", "rho", "S_X", "J_over_P_pow", "leading", "predicted_N", "exact_N", "ratio"});
    json rows = json::array();
    for (i64 P : cfg.P_list) {
        const auto sp = cfg.smooth_for(P);
        const auto rep = circle::main_term_prediction(sys, sp, cfg.X, cfg.delta);
        double exactN = -1.0, ratio = -1.0;
        try {
            exactN = static_cast<double>(counter::exact_count_N(sys, P));
            if (rep.predicted_N != 0.0) ratio = exactN / rep.predicted_N;
        } catch (const guard_error& e) {
            notes.push_back("exact N skipped at P=" + std::to_string(P) + ": " + e.what());
        }
        if (rep.scope_warning) notes.push_back("s < 22: below the intended range of the method");
        csv.row({std::to_string(P), fmt12(rep.rho), fmt12(rep.series_X), fmt12(rep.integral_X),
                 fmt12(rep.leading), fmt12(rep.predicted_N), fmt12(exactN), fmt12(ratio)});
        rows.push_back({{"P", P},
                        {"rho", r12(rep.rho)},
                        {"S_X", r12(rep.series_X)},
                        {"J_over_P_pow", r12(rep.integral_X)},
                        {"leading", r12(rep.leading)},
                        {"predicted_N", r12(rep.predicted_N)},
                        {"exact_N", r12(exactN)},
                        {"ratio", r12(ratio)}});
    }
    out["rows"] = rows;
    notes.push_back("rho convention: (card A(P,R)/P)^(s-1), 1 when R >= P");
}

}  // namespace

// ---------------------------------------------------------------------------
// config
// ---------------------------------------------------------------------------

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot read config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw config_error(std::string("config is not valid JSON: ") + e.what());
    }
    ExperimentConfig cfg;
    if (j.contains("system")) {
        require_field(j["system"].contains("a") && j["system"].contains("b"), "system",
                      "needs arrays 'a' and 'b'");
        cfg.a = j["system"]["a"].get<std::vector<i64>>();
        cfg.b = j["system"]["b"].get<std::vector<i64>>();
        require_field(cfg.a.size() == cfg.b.size(), "system", "arrays must have equal length");
    }
    if (j.contains("P")) {
        if (j["P"].is_array())
            cfg.P_list = j["P"].get<std::vector<i64>>();
        else
            cfg.P_list = {j["P"].get<i64>()};
        require_field(!cfg.P_list.empty(), "P", "must not be empty");
        for (i64 P : cfg.P_list) require_field(P >= 1, "P", "entries must be >= 1");
    }
    int r_modes = 0;
    if (j.contains("R")) {
        cfg.R = j["R"].get<i64>();
        require_field(*cfg.R >= 1, "R", "must be >= 1");
        ++r_modes;
    }
    if (j.contains("eta")) {
        cfg.eta = j["eta"].get<double>();
        require_field(*cfg.eta >= 0.0, "eta", "must be >= 0");
        ++r_modes;
    }
    if (j.contains("sharp")) {
        cfg.sharp = j["sharp"].get<bool>();
        if (cfg.sharp) ++r_modes;
    }
    require_field(r_modes <= 1, "R/eta/sharp", "are mutually exclusive");
    if (j.contains("M")) {
        cfg.M = j["M"].get<i64>();
        require_field(cfg.M >= 2 && (cfg.M & (cfg.M - 1)) == 0, "M", "must be a power of two");
    }
    if (j.contains("Q")) {
        cfg.Q_override = j["Q"].get<double>();
        require_field(*cfg.Q_override >= 1.0, "Q", "must be >= 1");
    }
    if (j.contains("delta")) {
        cfg.delta = j["delta"].get<double>();
        require_field(cfg.delta > 0.0 && cfg.delta < 1.0, "delta", "must lie in (0,1)");
    }
    if (j.contains("X")) {
        cfg.X = j["X"].get<double>();
        require_field(cfg.X >= 1.0, "X", "must be >= 1");
    }
    if (j.contains("nmax")) {
        cfg.nmax = j["nmax"].get<i64>();
        require_field(cfg.nmax >= 0, "nmax", "must be >= 0");
        if (cfg.M > 0)
            require_field(cfg.nmax < cfg.M / 2, "nmax", "must be below M/2");
    }
    if (j.contains("seed")) cfg.seed = j["seed"].get<u64>();
    if (j.contains("depth")) {
        cfg.depth = j["depth"].get<i64>();
        require_field(cfg.depth >= 1, "depth", "must be >= 1");
    }
    if (j.contains("attempts")) {
        cfg.attempts = j["attempts"].get<i64>();
        require_field(cfg.attempts >= 1, "attempts", "must be >= 1");
    }
    if (j.contains("t")) {
        cfg.t_list = j["t"].get<std::vector<i64>>();
        for (i64 t : cfg.t_list) require_field(t >= 1, "t", "entries must be >= 1");
    }
    if (j.contains("tuples")) {
        cfg.tuples.clear();
        for (const auto& row : j["tuples"]) {
            require_field(row.is_array() && row.size() == 4, "tuples",
                          "entries must be 4-vectors");
            cfg.tuples.push_back({row[0].get<i64>(), row[1].get<i64>(), row[2].get<i64>(),
                                  row[3].get<i64>()});
        }
    }
    if (j.contains("out")) cfg.out_dir = j["out"].get<std::string>();
    return cfg;
}

QuarticPairSystem ExperimentConfig::system() const {
    if (!has_system()) throw config_error("this pipeline needs a 'system' in the config");
    QuarticPairSystem sys(a, b);
    sys.require_valid();
    return sys;
}

SmoothParams ExperimentConfig::smooth_for(i64 P) const {
    if (R) return SmoothParams(P, *R);
    if (eta) return SmoothParams::from_eta(P, *eta);
    return SmoothParams::sharp(P);  // default: smoothness off
}

i64 ExperimentConfig::grid_for(i64 P) const {
    return M > 0 ? M : weylsum::default_grid_size(P);
}

std::string ExperimentConfig::canonical_json() const {
    json j;
    if (has_system()) j["system"] = {{"a", a}, {"b", b}};
    j["P"] = P_list;
    if (R) j["R"] = *R;
    if (eta) j["eta"] = *eta;
    j["sharp"] = !R && !eta;  // effective smoothness switch
    j["M"] = M;
    if (Q_override) j["Q"] = *Q_override;
    j["delta"] = delta;
    j["X"] = X;
    j["nmax"] = nmax;
    j["seed"] = seed;
    j["depth"] = depth;
    j["attempts"] = attempts;
    j["t"] = t_list;
    json tup = json::array();
    for (const auto& t : tuples) tup.push_back({t[0], t[1], t[2], t[3]});
    j["tuples"] = tup;
    return j.dump();
}

std::string ExperimentConfig::config_hash() const {
    const std::string s = canonical_json();
    u64 h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

const std::vector<std::string>& pipeline_names() {
    static const std::vector<std::string> names = {
        "moments",      "psi",             "cubic-identity",    "large-values", "forms-check",
        "local",        "singular-series", "singular-integral", "count",        "predict"};
    return names;
}

int run_experiment(const std::string& pipeline, const ExperimentConfig& cfg) {
    try {
        std::filesystem::create_directories(cfg.out_dir);
        std::vector<std::string> notes;
        if (!cfg.R && !cfg.eta && !cfg.sharp)
            notes.push_back("no R/eta given: defaulting to R = P (smoothness off)");
        if (cfg.Q_override)
            notes.push_back("Q override in effect: Q = " + fmt12(*cfg.Q_override));

        json out;
        const std::filesystem::path dir(cfg.out_dir);
        const auto csv_path = dir / (pipeline + ".csv");

        if (pipeline == "moments") {
            CsvWriter csv(csv_path);
            run_moments(cfg, notes, out, csv);
        } else if (pipeline == "psi") {
            CsvWriter csv(csv_path);
            run_psi(cfg, notes, out, csv);
        } else if (pipeline == "cubic-identity") {
            run_cubic_identity(cfg, notes, out);
        } else if (pipeline == "large-values") {
            CsvWriter csv(csv_path);
            run_large_values(cfg, notes, out, csv);
        } else if (pipeline == "forms-check") {
            run_forms_check(cfg, notes, out);
        } else if (pipeline == "local") {
            run_local(cfg, notes, out);
        } else if (pipeline == "singular-series") {
            CsvWriter csv(csv_path);
            run_singular_series(cfg, notes, out, csv);
        } else if (pipeline == "singular-integral") {
            CsvWriter csv(csv_path);
            run_singular_integral(cfg, notes, out, csv);
        } else if (pipeline == "count") {
            CsvWriter csv(csv_path);
            run_count(cfg, notes, out, csv);
        } else if (pipeline == "predict") {
            CsvWriter csv(csv_path);
            run_predict(cfg, notes, out, csv);
        } else {
            throw config_error("unknown pipeline '" + pipeline + "'");
        }

        json doc = provenance(cfg, notes);
        doc["pipeline"] = pipeline;
        doc["result"] = out;
        write_json(dir / (pipeline + ".json"), doc);
        return 0;
    } catch (const invariant_error& e) {
        std::fprintf(stderr, "invariant failure: %s\n", e.what());
        return 3;
    } catch (const config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const guard_error& e) {
        std::fprintf(stderr, "guard violation: %s\n", e.what());
        return 2;
    } catch (const truncation_error& e) {
        std::fprintf(stderr, "truncation error: %s\n", e.what());
        return 2;
    }
}

}  // namespace qpl::pipelines
