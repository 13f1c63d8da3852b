#include "dirac/io.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dirac/analysis.hpp"
#include "dirac/ci.hpp"
#include "dirac/errors.hpp"
#include "dirac/oracle.hpp"
#include "dirac/rsi.hpp"

namespace dirac {

namespace fs = std::filesystem;

static constexpr const char* kVersion = "1.0.0";

std::string format_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, const std::string& ctx) {
    // from_chars rather than stod: subnormal values must parse, not throw
    char* end = nullptr;
    errno = 0;
    const double d = std::strtod(v.c_str(), &end);
    if (end == v.c_str()) {
        throw ConfigError(ctx + ": cannot parse number '" + v + "'");
    }
    if (*end != '\0') {
        throw ConfigError(ctx + ": trailing characters in number '" + v + "'");
    }
    if (errno == ERANGE && (d == HUGE_VAL || d == -HUGE_VAL)) {
        throw ConfigError(ctx + ": number out of range '" + v + "'");
    }
    return d;
}

std::size_t parse_size(const std::string& v, const std::string& ctx) {
    const double d = parse_double(v, ctx);
    if (d < 0 || d != std::floor(d)) {
        throw ConfigError(ctx + ": expected a nonnegative integer, got '" + v +
                          "'");
    }
    return static_cast<std::size_t>(d);
}

SpinorField read_field_csv(const fs::path& path, const Grid1D& grid) {
    const auto rows = read_csv(path);
    if (rows.size() != grid.size()) {
        throw ConfigError("final-state file " + path.string() + " has " +
                          std::to_string(rows.size()) + " rows, expected " +
                          std::to_string(grid.size()));
    }
    SpinorField f(grid, 0.0);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != 5) {
            throw ConfigError("final-state file: row " + std::to_string(i) +
                              " must be x,re1,im1,re2,im2");
        }
        f.up[i] = {rows[i][1], rows[i][2]};
        f.dn[i] = {rows[i][3], rows[i][4]};
    }
    f.check_valid();
    return f;
}

}  // namespace

Scenario parse_scenario_text(std::istream& in, const std::string& source_name) {
    // collected raw values, applied after all lines are read so the grid can
    // be rebuilt once
    double x_min = -80.0, x_max = 80.0;
    std::size_t n = 4096;
    Scenario sc;
    std::optional<std::string> final_path;

    std::string line, section = "scenario";
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string where =
            source_name + ":" + std::to_string(line_no);
        std::string t = trim(line);
        if (const auto h = t.find('#'); h != std::string::npos) {
            t = trim(t.substr(0, h));
        }
        if (t.empty()) continue;
        if (t.front() == '[') {
            if (t.back() != ']') throw ConfigError(where + ": malformed section");
            section = trim(t.substr(1, t.size() - 2));
            if (section != "grid" && section != "physics" &&
                section != "scenario" && section != "output") {
                throw ConfigError(where + ": unknown section [" + section + "]");
            }
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(where + ": expected key = value");
        }
        const std::string key = trim(t.substr(0, eq));
        const std::string val = trim(t.substr(eq + 1));
        const std::string ctx = where + " (" + section + "." + key + ")";

        if (section == "grid") {
            if (key == "x_min") x_min = parse_double(val, ctx);
            else if (key == "x_max") x_max = parse_double(val, ctx);
            else if (key == "n") n = parse_size(val, ctx);
            else throw ConfigError(ctx + ": unknown key");
        } else if (section == "physics") {
            if (key == "mass") sc.params.mass = parse_double(val, ctx);
            else if (key == "c") sc.params.c = parse_double(val, ctx);
            else if (key == "hbar") sc.params.hbar = parse_double(val, ctx);
            else if (key == "mass_term") {
                if (val == "sigma_z") sc.params.mass_term = MassTerm::SigmaZ;
                else if (val == "identity")
                    sc.params.mass_term = MassTerm::Identity;
                else
                    throw ConfigError(ctx +
                                      ": expected 'sigma_z' or 'identity'");
            } else throw ConfigError(ctx + ": unknown key");
        } else if (section == "scenario") {
            if (key == "sigma") sc.sigma = parse_double(val, ctx);
            else if (key == "t_i") sc.t_i = parse_double(val, ctx);
            else if (key == "t_f") sc.t_f = parse_double(val, ctx);
            else if (key == "n_steps") sc.n_steps = parse_size(val, ctx);
            else if (key == "snapshot_stride")
                sc.snapshot_stride = parse_size(val, ctx);
            else if (key == "w1_re") sc.weight1.real(parse_double(val, ctx));
            else if (key == "w1_im") sc.weight1.imag(parse_double(val, ctx));
            else if (key == "w2_re") sc.weight2.real(parse_double(val, ctx));
            else if (key == "w2_im") sc.weight2.imag(parse_double(val, ctx));
            else if (key == "final_state") {
                if (val == "same-as-initial") final_path.reset();
                else if (val.rfind("file ", 0) == 0)
                    final_path = trim(val.substr(5));
                else
                    throw ConfigError(
                        ctx + ": expected 'same-as-initial' or 'file <path>'");
            } else throw ConfigError(ctx + ": unknown key");
        } else {  // output
            throw ConfigError(ctx + ": unknown key");
        }
    }

    sc.grid = Grid1D(x_min, x_max, n);
    if (final_path) sc.final_state = read_field_csv(*final_path, sc.grid);
    sc.validate();
    return sc;
}

Scenario parse_scenario(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file " + path.string());
    return parse_scenario_text(in, path.filename().string());
}

std::vector<std::vector<double>> read_csv(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (!line.empty() && !(std::isdigit(static_cast<unsigned char>(line[0])) ||
                               line[0] == '-' || line[0] == '+' ||
                               line[0] == '.')) {
            continue;  // header
        }
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            row.push_back(parse_double(trim(cell), path.string()));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

class CsvWriter {
  public:
    CsvWriter(const fs::path& path, const std::string& header) : path_(path) {
        out_.open(path);
        if (!out_) throw IoError("cannot write " + path.string());
        out_ << header << "\n";
    }
    void row(const std::vector<double>& vals) {
        for (std::size_t i = 0; i < vals.size(); ++i) {
            if (i) out_ << ",";
            out_ << format_value(vals[i]);
        }
        out_ << "\n";
        ++rows_;
    }
    std::size_t rows() const { return rows_; }
    std::string name() const { return path_.filename().string(); }

  private:
    fs::path path_;
    std::ofstream out_;
    std::size_t rows_ = 0;
};

void emit_profile(const fs::path& dir, const std::string& name,
                  const Grid1D& grid, const std::vector<cplx>& values,
                  RunManifest& manifest) {
    CsvWriter w(dir / name, "x,re,im");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        w.row({grid.x(i), values[i].real(), values[i].imag()});
    }
    manifest.outputs.push_back({name, "profile", w.rows()});
}

std::vector<cplx> record_density(const TimeSeries& series, double t) {
    for (const auto& rec : series.records) {
        if (std::abs(rec.t - t) < 1e-9) return rec.density;
    }
    throw NumericError("no snapshot at t = " + std::to_string(t));
}

void append_warnings(RunManifest& manifest, const std::vector<std::string>& w) {
    manifest.warnings.insert(manifest.warnings.end(), w.begin(), w.end());
}

// trajectory over the first zitterbewegung cycle t in [t_i, t_i + 2*pi]
TrajectoryReport window_trajectory(const TimeSeries& series, const Grid1D& grid,
                                   double t_i, bool use_abs) {
    TimeSeries cut;
    cut.fingerprint = series.fingerprint;
    cut.kind = series.kind;
    for (const auto& rec : series.records) {
        if (rec.t <= t_i + 2.0 * std::numbers::pi + 1e-9) {
            cut.records.push_back(rec);
        }
    }
    return trajectory(cut, grid, use_abs);
}

void cmd_simulate_ci(const Scenario& sc, const fs::path& dir,
                     RunManifest& manifest) {
    auto res = run_ci(sc);
    append_warnings(manifest, res.warnings);
    CsvWriter w(dir / "ci_observables.csv", "t,norm,mean_x");
    for (const auto& rec : res.series.records) {
        w.row({rec.t, rec.scalars.at("norm"), rec.scalars.at("mean_x")});
    }
    manifest.outputs.push_back({"ci_observables.csv", "time-series", w.rows()});
    manifest.scalars["A_re"] = res.amplitude.real();
    manifest.scalars["A_im"] = res.amplitude.imag();
    manifest.scalars["P"] = res.probability;
}

void cmd_simulate_rsi(const Scenario& sc, const fs::path& dir, int channel,
                      RunManifest& manifest) {
    auto res = run_rsi(sc, channel);
    append_warnings(manifest, res.warnings);
    CsvWriter w(dir / "rsi_observables.csv", "t,As_re,As_im,mean_x_abs");
    for (const auto& rec : res.series.records) {
        w.row({rec.t, rec.scalars.at("As_re"), rec.scalars.at("As_im"),
               rec.scalars.at("mean_x_abs")});
    }
    manifest.outputs.push_back({"rsi_observables.csv", "time-series", w.rows()});
    manifest.scalars["As_re"] = res.amplitude.real();
    manifest.scalars["As_im"] = res.amplitude.imag();
    manifest.scalars["Ps"] = res.probability;
}

void cmd_compare(const Scenario& sc, const fs::path& dir,
                 RunManifest& manifest) {
    auto ci = run_ci(sc);
    auto rsi = run_rsi(sc, +1);
    append_warnings(manifest, ci.warnings);
    append_warnings(manifest, rsi.warnings);

    const auto ci_traj = trajectory(ci.series, sc.grid, false);
    const auto rsi_traj = trajectory(rsi.series, sc.grid, true);
    CsvWriter w(dir / "fig2_trajectories.csv",
                "t,ci_mean_x,ci_detrended,rsi_mean_x,rsi_detrended");
    for (std::size_t i = 0; i < ci_traj.times.size(); ++i) {
        w.row({ci_traj.times[i], ci_traj.mean_x[i], ci_traj.detrended[i],
               rsi_traj.mean_x[i], rsi_traj.detrended[i]});
    }
    manifest.outputs.push_back({"fig2_trajectories.csv", "time-series",
                                w.rows()});

    const auto ci_win = window_trajectory(ci.series, sc.grid, sc.t_i, false);
    const auto rsi_win = window_trajectory(rsi.series, sc.grid, sc.t_i, true);

    const double t_mid = 0.5 * (sc.t_i + sc.t_f);
    const auto ci_mid = record_density(ci.series, t_mid);
    const auto rsi_mid = record_density(rsi.series, t_mid);
    const auto asym_ci = asymmetry_metric(ci_mid, sc.grid);
    const auto asym_rsi = asymmetry_metric(rsi_mid, sc.grid);

    manifest.scalars["A_re"] = ci.amplitude.real();
    manifest.scalars["A_im"] = ci.amplitude.imag();
    manifest.scalars["P"] = ci.probability;
    manifest.scalars["As_re"] = rsi.amplitude.real();
    manifest.scalars["As_im"] = rsi.amplitude.imag();
    manifest.scalars["Ps"] = rsi.probability;
    manifest.scalars["zitter_amplitude_ci"] = ci_win.amplitude;
    manifest.scalars["zitter_omega_ci"] = ci_win.dominant_omega;
    manifest.scalars["zitter_amplitude_rsi"] = rsi_win.amplitude;
    manifest.scalars["asymmetry_ci_mid"] = asym_ci.raw;
    manifest.scalars["asymmetry_rsi_mid"] = asym_rsi.raw;
    manifest.scalars["asymmetry_rsi_mid_abs"] = asym_rsi.magnitude;

    {
        std::ofstream out(dir / "scalars.csv");
        if (!out) throw IoError("cannot write scalars.csv");
        out << "name,value\n";
        for (const auto& [k, v] : manifest.scalars) {
            out << k << "," << format_value(v) << "\n";
        }
    }
    manifest.outputs.push_back({"scalars.csv", "scalar-table",
                                manifest.scalars.size()});
}

void cmd_emit_figures(const Scenario& sc, const fs::path& dir,
                      RunManifest& manifest) {
    auto ci = run_ci(sc);
    auto rsi = run_rsi(sc, +1);
    append_warnings(manifest, ci.warnings);
    append_warnings(manifest, rsi.warnings);

    const double t_mid = 0.5 * (sc.t_i + sc.t_f);
    auto as_cplx = [](const std::vector<double>& v) {
        return std::vector<cplx>(v.begin(), v.end());
    };

    // (a-d): CI probability density at t_i, mid, t_f- (pre-collapse),
    // t_f+ (post-collapse)
    emit_profile(dir, "fig1_a.csv", sc.grid,
                 record_density(ci.series, sc.t_i), manifest);
    emit_profile(dir, "fig1_b.csv", sc.grid, record_density(ci.series, t_mid),
                 manifest);
    emit_profile(dir, "fig1_c.csv", sc.grid,
                 as_cplx(probability_density(ci.collapse.pre)), manifest);
    emit_profile(dir, "fig1_d.csv", sc.grid,
                 as_cplx(probability_density(ci.collapse.post)), manifest);

    // (e-h): RSI amplitude density at the same times; no collapse, so the
    // last two panels coincide by construction
    emit_profile(dir, "fig1_e.csv", sc.grid,
                 record_density(rsi.series, sc.t_i), manifest);
    emit_profile(dir, "fig1_f.csv", sc.grid, record_density(rsi.series, t_mid),
                 manifest);
    const auto rsi_end = record_density(rsi.series, sc.t_f);
    emit_profile(dir, "fig1_g.csv", sc.grid, rsi_end, manifest);
    emit_profile(dir, "fig1_h.csv", sc.grid, rsi_end, manifest);

    manifest.scalars["A_re"] = ci.amplitude.real();
    manifest.scalars["A_im"] = ci.amplitude.imag();
    manifest.scalars["As_re"] = rsi.amplitude.real();
    manifest.scalars["As_im"] = rsi.amplitude.imag();
}

void cmd_validate(const Scenario& sc, const fs::path& dir,
                  RunManifest& manifest) {
    // oracle convergence on a desk-scale instance
    const Grid1D small_grid(-20.0, 20.0, 512);
    const auto conv = validate_against_spectral(small_grid, sc.params, sc.sigma,
                                                2.0, {1e-2, 5e-3, 2.5e-3}, 4);
    CsvWriter w(dir / "validate_report.csv", "dt,linf,l2");
    for (std::size_t i = 0; i < conv.dts.size(); ++i) {
        w.row({conv.dts[i], conv.linf[i], conv.l2[i]});
    }
    manifest.outputs.push_back({"validate_report.csv", "report", w.rows()});
    for (std::size_t i = 0; i < conv.orders.size(); ++i) {
        manifest.scalars["cn_order_" + std::to_string(i)] = conv.orders[i];
        if (std::abs(conv.orders[i] - 2.0) > 0.2) {
            throw NumericError("oracle convergence order " +
                               format_value(conv.orders[i]) +
                               " outside 2.0 +- 0.2");
        }
    }
    manifest.scalars["cn_final_linf"] = conv.linf.back();

    // invariant battery on the configured scenario
    auto ci = run_ci(sc);
    append_warnings(manifest, ci.warnings);
    double max_norm_drift = 0.0;
    for (const auto& rec : ci.series.records) {
        max_norm_drift =
            std::max(max_norm_drift, std::abs(rec.scalars.at("norm") - 1.0));
    }
    manifest.scalars["max_norm_drift"] = max_norm_drift;
    if (max_norm_drift > 1e-12) {
        throw NumericError("norm drift " + format_value(max_norm_drift) +
                           " exceeds 1e-12");
    }

    auto rsi = run_rsi(sc, +1);
    append_warnings(manifest, rsi.warnings);
    double max_as_drift = 0.0;
    for (const auto& [t, a] : rsi.amplitude_trace) {
        max_as_drift = std::max(max_as_drift, std::abs(a - rsi.amplitude));
    }
    manifest.scalars["max_As_drift"] = max_as_drift;
    if (max_as_drift > 1e-10) {
        throw NumericError("A_s drift " + format_value(max_as_drift) +
                           " exceeds 1e-10");
    }
}

}  // namespace

RunManifest run_command(const std::string& command, const Scenario& scenario,
                        const fs::path& out_dir, const CommandOptions& options) {
    Scenario sc = scenario;
    if (options.grid_n) {
        sc.grid = Grid1D(sc.grid.x_min(), sc.grid.x_max(), *options.grid_n);
        sc.final_state.reset();
    }
    sc.validate();
    if (options.channel != +1 && options.channel != -1) {
        throw ConfigError("channel must be + or -");
    }

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec || !fs::is_directory(out_dir)) {
        throw IoError("cannot create output directory " + out_dir.string());
    }

    RunManifest manifest;
    manifest.config_digest = sc.fingerprint();
    manifest.artifact_version = kVersion;
    manifest.command = command;

    if (command == "simulate-ci") {
        cmd_simulate_ci(sc, out_dir, manifest);
    } else if (command == "simulate-rsi") {
        cmd_simulate_rsi(sc, out_dir, options.channel, manifest);
    } else if (command == "compare") {
        cmd_compare(sc, out_dir, manifest);
    } else if (command == "emit-figures") {
        cmd_emit_figures(sc, out_dir, manifest);
    } else if (command == "validate") {
        cmd_validate(sc, out_dir, manifest);
    } else {
        throw ConfigError("unknown command '" + command + "'");
    }

    if (options.strict && !manifest.warnings.empty()) {
        throw NumericError("strict mode: " + manifest.warnings.front());
    }
    write_manifest(manifest, out_dir / "manifest.json");
    return manifest;
}

void write_manifest(const RunManifest& manifest, const fs::path& path) {
    nlohmann::ordered_json j;
    char digest[32];
    std::snprintf(digest, sizeof(digest), "%016llx",
                  static_cast<unsigned long long>(manifest.config_digest));
    j["config_digest"] = digest;
    j["artifact_version"] = manifest.artifact_version;
    j["command"] = manifest.command;
    j["outputs"] = nlohmann::ordered_json::array();
    for (const auto& o : manifest.outputs) {
        j["outputs"].push_back(
            {{"path", o.path}, {"kind", o.kind}, {"rows", o.rows}});
    }
    j["scalars"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : manifest.scalars) j["scalars"][k] = format_value(v);
    j["warnings"] = manifest.warnings;
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << j.dump(2) << "\n";
}

}  // namespace dirac
