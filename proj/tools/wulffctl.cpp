// wulffctl: one binary with a subcommand per module.
//
//   wulffctl <subcommand> [flags] [--config FILE]
//   wulffctl --replay manifest.json
//
// Exit codes: 0 success, 1 contract or verification failure, 2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "wulff/acceptance/suite.hpp"
#include "wulff/convex/wulff.hpp"
#include "wulff/dual/dual_wulff.hpp"
#include "wulff/ensemble/sampler.hpp"
#include "wulff/io/emit.hpp"
#include "wulff/ising/dynamics.hpp"
#include "wulff/partition/partition.hpp"
#include "wulff/skyscraper/generating.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace wulff;

namespace {

constexpr const char* kArtifactVersion = "wulffctl/1";
constexpr const char* kOutputDirEnv = "WULFF_OUTPUT_DIR";

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::uint64_t seed = acceptance::kAcceptanceSeed;
    int workers = 1;
    std::string out = ".";
    std::vector<std::string> emit;
    std::string manifest = "manifest.json";
};

std::string extension(const std::string& name) { return fs::path(name).extension().string(); }

std::string read_text(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot read " + path);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    return s.substr(a, s.find_last_not_of(" \t\r") - a + 1);
}

/// Rows of a direction table: "angle,value" or "nx,ny,value". A non-numeric first row is a header.
std::vector<std::pair<double, double>> read_angle_table(const std::string& path) {
    std::vector<std::pair<double, double>> rows;
    std::istringstream in(read_text(path));
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> v;
        std::stringstream ss(line);
        std::string cell;
        try {
            while (std::getline(ss, cell, ',')) v.push_back(std::stod(cell));
        } catch (const std::exception&) {
            if (rows.empty()) continue;
            throw UsageError(path + ": non-numeric row '" + line + "'");
        }
        if (v.size() == 2) rows.emplace_back(v[0], v[1]);
        else if (v.size() == 3) rows.emplace_back(std::atan2(v[1], v[0]), v[2]);
        else throw UsageError(path + ": expected 2 or 3 columns");
    }
    return rows;
}

bool is_table(const std::string& spec) { return extension(spec) == ".csv"; }

convex::DirectionField direction_field(const std::string& spec, int dim) {
    if (is_table(spec)) {
        if (dim != 2) throw UsageError("tabulated direction fields are 2D only");
        return convex::DirectionField::tabulated(read_angle_table(spec), spec);
    }
    return convex::DirectionField::named(spec, dim);
}

dual::OctantField octant_field(const std::string& spec) {
    if (is_table(spec)) return dual::OctantField::tabulated(read_angle_table(spec), spec);
    if (spec.rfind("constant:", 0) == 0) return dual::OctantField::constant(std::stod(spec.substr(9)));
    return dual::OctantField::named(spec);
}

double reach(const std::vector<Vec2>& pts) {
    double r = 0.0;
    for (const Vec2& p : pts) r = std::max({r, std::abs(p.x), std::abs(p.y)});
    return r > 0.0 ? r : 1.0;
}

json big_int_json(const BigInt& v) {
    if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max()) {
        return static_cast<long long>(v);
    }
    return v.str();
}

json coefficients_json(const std::vector<BigInt>& c) {
    json a = json::array();
    for (const auto& v : c) a.push_back(big_int_json(v));
    return a;
}

/// Artifacts requested by --emit, keyed by file name; the run fills in their contents.
class Artifacts {
public:
    Artifacts(const Common& c, std::vector<std::string> supported) : common_(c) {
        for (const auto& name : c.emit) {
            const std::string ext = extension(name);
            if (std::find(supported.begin(), supported.end(), ext) == supported.end() &&
                std::find(supported.begin(), supported.end(), name) == supported.end()) {
                std::string list;
                for (const auto& s : supported) list += (list.empty() ? "" : ", ") + s;
                throw UsageError("cannot emit '" + name + "' here (supported: " + list + ")");
            }
        }
    }

    /// Requested names matching an extension (".csv") or a full name ("stats.json").
    std::vector<std::string> wanted(const std::string& key) const {
        std::vector<std::string> out;
        for (const auto& name : common_.emit) {
            if (name == key || (key.front() == '.' && extension(name) == key)) out.push_back(name);
        }
        return out;
    }

    void write(const std::string& name, const std::string& bytes) {
        const fs::path path = fs::path(common_.out) / name;
        written_.push_back({name, io::write_artifact(path, bytes)});
    }

    const std::vector<std::pair<std::string, std::string>>& written() const { return written_; }

private:
    const Common& common_;
    std::vector<std::pair<std::string, std::string>> written_;
};

// ---------------------------------------------------------------------------------------------

struct WulffArgs {
    std::string tau = "isotropic";
    int dim = 2;
    int resolution = 0;
    double volume = 0.0;
    double field = 0.0;
    double m_star = 1.0;
};

json run_wulff(const WulffArgs& a, Artifacts& art) {
    const auto tau = direction_field(a.tau, a.dim);
    const int res = a.resolution > 0 ? a.resolution : (a.dim == 2 ? convex::kDefaultResolution2D : convex::kDefaultIcosphereLevel);
    const auto body = convex::wulff_body(tau, res);
    const convex::DropletSurface shape = a.volume > 0.0 ? convex::scaled_minimizer(tau, a.volume, res) : body.boundary();
    json r = {{"tau", tau.name()}, {"dim", a.dim}, {"resolution", res}, {"volume", shape.volume()},
              {"surface_energy", convex::surface_energy(shape, tau)}};
    if (a.dim == 2) r["volume_identity_residual"] = convex::volume_identity_check(tau, res);
    if (a.field > 0.0) {
        const auto s = convex::saddle_droplet(tau, a.field, a.m_star, res);
        r["saddle"] = {{"radius", s.radius}, {"phi", s.phi}, {"relative_gradient", s.relative_gradient}};
    }
    for (const auto& name : art.wanted(".csv")) {
        art.write(name, a.dim == 2 ? io::points_csv(shape.polygon()) : io::points_csv(shape.mesh().vertices));
    }
    for (const auto& name : art.wanted(".svg")) {
        if (a.dim != 2) throw UsageError("svg output is 2D only");
        art.write(name, io::svg({{shape.polygon(), true}}, reach(shape.polygon())));
    }
    return r;
}

struct DualArgs {
    std::string eta = "staircase-entropy";
    int resolution = dual::kDefaultDualResolution;
    bool maximize = false;
};

json run_dual(const DualArgs& a, Artifacts& art) {
    const auto eta = octant_field(a.eta);
    const auto g = a.maximize ? dual::maximizer(eta, a.resolution) : dual::dual_body_graph(eta, a.resolution);
    json r = {{"eta", eta.name()}, {"resolution", a.resolution}, {"maximized", a.maximize}, {"radius", g.radius},
              {"volume", g.volume()}, {"functional", dual::dual_functional(g, eta)}};
    if (a.maximize) r["diagonal_point"] = ensemble::diagonal_crossing(g.points);
    for (const auto& name : art.wanted(".csv")) art.write(name, io::points_csv(g.points));
    for (const auto& name : art.wanted(".svg")) {
        auto pts = g.points;
        pts.push_back({g.radius, 0.0});
        pts.push_back({0.0, 0.0});
        art.write(name, io::svg({{pts, true}}, reach(pts)));
    }
    return r;
}

struct FacetArgs {
    std::string kind = "wulff";
    std::string derivative = "isotropic";
    std::vector<double> normal{0.0, 0.0, 1.0};
    int resolution = convex::kDefaultResolution2D;
};

json run_facet(const FacetArgs& a, Artifacts& art) {
    std::optional<std::vector<Vec2>> curve;
    bool closed = true;
    json r = {{"kind", a.kind}, {"derivative", a.derivative}};
    if (a.kind == "wulff") {
        if (a.normal.size() != 3) throw UsageError("--normal takes three components");
        const auto f = convex::facet_shape(direction_field(a.derivative, 2), {a.normal[0], a.normal[1], a.normal[2]}, a.resolution);
        if (f) {
            curve = f->boundary().polygon();
            r["area"] = f->volume();
        }
    } else if (a.kind == "skyscraper") {
        curve = dual::skyscraper_facet_curve(octant_field(a.derivative));
        closed = false;
    } else {
        throw UsageError("--kind must be wulff or skyscraper");
    }
    r["facet"] = curve.has_value();
    if (!curve) {
        if (!art.wanted(".csv").empty() || !art.wanted(".svg").empty()) throw ContractViolation("no facet: nothing to emit");
        return r;
    }
    r["vertices"] = curve->size();
    for (const auto& name : art.wanted(".csv")) art.write(name, io::points_csv(*curve));
    for (const auto& name : art.wanted(".svg")) art.write(name, io::svg({{*curve, closed}}, reach(*curve)));
    return r;
}

struct PartitionArgs {
    int degree = 50;
    bool strict = false;
    int bounded = 0;
    int enumerate = -1;
};

json run_partitions(const PartitionArgs& a, Artifacts& art) {
    const auto s = a.bounded > 0 ? partition::bounded_parts_series(a.bounded, a.degree) : partition::euler_series(a.degree, a.strict);
    json r = {{"degree", a.degree}, {"strict", a.strict}, {"bounded_parts", a.bounded}, {"top_coefficient", big_int_json(s[a.degree])}};
    if (a.degree >= 1) r["hrr_gap"] = partition::log_big(s[a.degree]) - partition::hrr_log_asymptote(a.degree);
    for (const auto& name : art.wanted(".csv")) art.write(name, io::coefficients_csv(s.coeffs()));
    const auto json_out = art.wanted(".json");
    if (!json_out.empty()) {
        if (a.enumerate < 0) throw UsageError("partitions.json needs --enumerate N");
        partition::EnumerateOptions opts;
        opts.strict = a.strict;
        std::string text = "[";
        const auto all = partition::enumerate_partitions(a.enumerate, opts);
        for (std::size_t i = 0; i < all.size(); ++i) text += (i ? ",\n " : "\n ") + all[i].to_json();
        text += "\n]\n";
        for (const auto& name : json_out) art.write(name, text);
        r["enumerated"] = all.size();
    }
    return r;
}

struct SkyscraperArgs {
    std::string shape = "2x2";
    std::string hole;
    int series_degree = 20;
    bool pedestal_poly = false;
    bool allow_large = false;
};

std::vector<int> parse_shape(const std::string& s) {
    std::vector<int> dims;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, 'x')) {
        try {
            dims.push_back(std::stoi(part));
        } catch (const std::exception&) {
            throw UsageError("--shape expects mxn or mxnxk, got '" + s + "'");
        }
    }
    if (dims.size() != 2 && dims.size() != 3) throw UsageError("--shape expects mxn or mxnxk, got '" + s + "'");
    return dims;
}

json run_skyscraper(const SkyscraperArgs& a, Artifacts& art) {
    const auto dims = parse_shape(a.shape);
    TruncatedIntSeries series(0);
    Polynomial pedestal;
    if (dims.size() == 2) {
        skyscraper::Diagram hole;
        if (!a.hole.empty()) {
            const auto rows = json::parse(read_text(a.hole));
            if (!rows.is_array()) throw UsageError(a.hole + ": expected a JSON array of row lengths");
            hole = skyscraper::Diagram(rows.get<std::vector<int>>());
        }
        const auto outer = skyscraper::Diagram::rectangle(dims[0], dims[1]);
        series = skyscraper::skew_series(outer, hole, a.series_degree);
        pedestal = skyscraper::pedestal_polynomial(outer, hole);
    } else {
        if (!a.hole.empty()) throw UsageError("--hole applies to 2D shapes only");
        series = skyscraper::spatial_series(dims[0], dims[1], dims[2], a.series_degree, a.allow_large);
        pedestal = skyscraper::spatial_pedestal_polynomial(dims[0], dims[1], dims[2], a.allow_large);
    }
    if (a.pedestal_poly) std::cout << pedestal.to_string() << '\n';
    json r = {{"shape", a.shape},
              {"series_degree", a.series_degree},
              {"series", coefficients_json(series.coeffs())},
              {"pedestal_degree", pedestal.degree()},
              {"pedestal_count", big_int_json(pedestal.value_at_one())}};
    for (const auto& name : art.wanted(".csv")) art.write(name, io::coefficients_csv(series.coeffs()));
    for (const auto& name : art.wanted(".json")) {
        const json p = {{"shape", a.shape}, {"coefficients", coefficients_json(pedestal.coeffs())}};
        art.write(name, p.dump(2) + "\n");
    }
    return r;
}

struct SampleArgs {
    std::string model = "young";
    long long n_target = 2500;
    int samples = 200;
    double window = 0.1;
};

json run_sample(const SampleArgs& a, const Common& c, Artifacts& art) {
    if (a.model == "young") {
        const auto st = ensemble::limit_shape_experiment(a.n_target, a.samples, c.seed, a.window, c.workers);
        json stats = {{"model", "young"},       {"n_target", a.n_target},
                      {"seed", c.seed},         {"fugacity", st.fugacity},
                      {"window", st.window},    {"window_enlarged", st.window_enlarged},
                      {"attempts", st.attempts}, {"acceptance_rate", st.acceptance_rate()},
                      {"mean", st.mean},        {"median", st.median},
                      {"q10", st.q10},          {"q90", st.q90},
                      {"diagonal_mean", st.diagonal_mean}, {"distances", st.distances},
                      {"volumes", st.volumes}};
        const auto spec = ensemble::GrandCanonicalSpec::make(ensemble::Model::young, st.fugacity, c.seed);
        std::vector<std::vector<Vec2>> profiles;
        if (!art.wanted(".csv").empty() || !art.wanted(".svg").empty()) {
            for (auto idx : st.indices) profiles.push_back(partition::scaled_profile(ensemble::sample_young(spec, idx)));
        }
        for (const auto& name : art.wanted(".csv")) {
            io::CsvWriter w({"sample", "x", "y"});
            for (std::size_t k = 0; k < profiles.size(); ++k) {
                for (const Vec2& p : profiles[k]) w.row(std::vector<std::string>{std::to_string(k), io::number(p.x), io::number(p.y)});
            }
            art.write(name, w.str());
        }
        for (const auto& name : art.wanted(".svg")) {
            std::vector<io::SvgPath> paths;
            for (std::size_t k = 0; k < profiles.size() && k < 20; ++k) paths.push_back({profiles[k], false, "grey"});
            std::vector<Vec2> vk;
            for (const Vec2& p : dual::vershik_kerov_curve(4000)) {
                if (p.x <= 4.0 && p.y <= 4.0) vk.push_back(p);
            }
            paths.push_back({vk, false, "red"});
            art.write(name, io::svg(paths, 4.0));
        }
        for (const auto& name : art.wanted(".json")) art.write(name, stats.dump(2) + "\n");
        json r = stats;
        r.erase("distances");
        r.erase("volumes");
        return r;
    }
    if (a.model != "plane") throw UsageError("--model must be young or plane");
    if (!art.wanted(".svg").empty()) throw UsageError("the overlay compares Young diagrams only");
    const double x = ensemble::solve_fugacity(static_cast<double>(a.n_target), ensemble::Model::plane);
    const auto spec = ensemble::GrandCanonicalSpec::make(ensemble::Model::plane, x, c.seed);
    io::CsvWriter w({"sample", "i", "j", "count"});
    std::vector<long long> volumes;
    for (int k = 0; k < a.samples; ++k) {
        const auto s = ensemble::sample_plane_partition(spec, static_cast<std::uint64_t>(k));
        volumes.push_back(s.volume);
        for (std::size_t i = 0; i < s.zeta.size(); ++i) {
            for (std::size_t j = 0; j < s.zeta[i].size(); ++j) {
                if (s.zeta[i][j]) w.row(std::vector<std::string>{std::to_string(k), std::to_string(i + 1), std::to_string(j + 1), std::to_string(s.zeta[i][j])});
            }
        }
    }
    double mean = 0.0;
    for (long long v : volumes) mean += static_cast<double>(v);
    mean /= static_cast<double>(volumes.size());
    json stats = {{"model", "plane"}, {"n_target", a.n_target}, {"seed", c.seed}, {"fugacity", x},
                  {"expected_volume", ensemble::expected_volume(x, ensemble::Model::plane)}, {"mean_volume", mean},
                  {"volumes", volumes}};
    for (const auto& name : art.wanted(".csv")) art.write(name, w.str());
    for (const auto& name : art.wanted(".json")) art.write(name, stats.dump(2) + "\n");
    stats.erase("volumes");
    return stats;
}

struct IsingArgs {
    int size = 32;
    std::string topology = "torus";
    std::string bc = "+";
    double beta = 0.7;
    double field = 0.0;
    std::string rate = "metropolis";
    long long sweeps = 1000;
    int initial = -1;
    bool no_contours = false;
};

json run_ising(const IsingArgs& a, const Common& c, Artifacts& art) {
    ising::Topology topo;
    if (a.topology == "torus") topo = ising::Topology::torus;
    else if (a.topology == "box") topo = ising::Topology::box;
    else throw UsageError("--topology must be torus or box");
    if (a.initial != 1 && a.initial != -1) throw UsageError("--initial must be 1 or -1");
    const ising::SpinLattice L(a.size, topo, ising::BoundaryCondition::parse(a.bc), a.field, a.beta, a.initial);
    const auto t = ising::glauber_trajectory(L, a.sweeps, ising::parse_rate(a.rate), c.seed, !a.no_contours);
    const auto& last = t.trace.back();
    json r = {{"size", a.size}, {"topology", a.topology}, {"bc", a.bc}, {"beta", a.beta}, {"field", a.field},
              {"rate", a.rate}, {"sweeps", a.sweeps}, {"seed", c.seed}, {"final_magnetization", last.magnetization},
              {"final_energy", last.energy}};
    for (const auto& name : art.wanted(".csv")) {
        io::CsvWriter w({"sweep", "magnetization", "energy", "largest_contour_area"});
        for (const auto& row : t.trace) {
            w.row(std::vector<std::string>{std::to_string(row.sweep), io::number(row.magnetization), io::number(row.energy),
                                           std::to_string(row.largest_contour_area)});
        }
        art.write(name, w.str());
    }
    for (const auto& name : art.wanted(".pgm")) art.write(name, io::pgm(t.final_state.spins(), a.size));
    return r;
}

// ---------------------------------------------------------------------------------------------

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--seed", c.seed, "RNG seed (recorded in the manifest)");
    sub->add_option("--workers", c.workers, "worker threads for modules that parallelize")->check(CLI::PositiveNumber);
    sub->add_option("--out", c.out, std::string("output directory (default: $") + kOutputDirEnv + " or .)");
    sub->add_option("--emit", c.emit, "artifacts to write; the format follows the file extension");
    sub->add_option("--manifest", c.manifest, "manifest file name inside --out");
}

json option_value(const CLI::Option* opt) {
    if (opt->get_expected_min() == 0) return opt->count() > 0;
    if (opt->count() == 0) return opt->get_default_str();
    const auto& res = opt->results();
    if (opt->get_expected_max() > 1) return res;
    return res.empty() ? std::string() : res.back();
}

json parameters_of(const CLI::App* sub) {
    json p = json::object();
    for (const CLI::Option* opt : sub->get_options()) {
        if (opt == sub->get_help_ptr() || opt->get_lnames().empty()) continue;
        p[opt->get_lnames().front()] = option_value(opt);
    }
    return p;
}

/// Turns a manifest back into an argument list.
std::vector<std::string> replay_tokens(const std::string& path) {
    const auto m = json::parse(read_text(path));
    std::vector<std::string> tokens{m.at("subcommand").get<std::string>()};
    for (const auto& [key, value] : m.at("parameters").items()) {
        if (value.is_boolean()) {
            if (value.get<bool>()) tokens.push_back("--" + key);
        } else if (value.is_array()) {
            if (value.empty()) continue;
            tokens.push_back("--" + key);
            for (const auto& v : value) tokens.push_back(v.get<std::string>());
        } else if (!value.get<std::string>().empty()) {
            tokens.push_back("--" + key);
            tokens.push_back(value.get<std::string>());
        }
    }
    return tokens;
}

/// Removes `--name FILE` / `--name=FILE` from tokens and returns FILE.
std::optional<std::string> take_option(std::vector<std::string>& tokens, const std::string& name) {
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (tokens[i] == name) {
            if (i + 1 >= tokens.size()) throw UsageError(name + " needs a file argument");
            std::string v = tokens[i + 1];
            tokens.erase(tokens.begin() + static_cast<long>(i), tokens.begin() + static_cast<long>(i) + 2);
            return v;
        }
        if (tokens[i].rfind(name + "=", 0) == 0) {
            std::string v = tokens[i].substr(name.size() + 1);
            tokens.erase(tokens.begin() + static_cast<long>(i));
            return v;
        }
    }
    return std::nullopt;
}

bool given(const std::vector<std::string>& tokens, const std::string& flag) {
    return std::any_of(tokens.begin(), tokens.end(), [&](const std::string& t) { return t == flag || t.rfind(flag + "=", 0) == 0; });
}

/// Inserts `key = value` lines from a config file right after the subcommand, skipping keys
/// the command line already sets, so explicit flags win.
void apply_config(std::vector<std::string>& tokens, const std::string& path, CLI::App& app) {
    if (tokens.empty()) throw UsageError("--config needs a subcommand");
    CLI::App* sub = app.get_subcommand_no_throw(tokens.front());
    if (!sub) throw UsageError("unknown subcommand '" + tokens.front() + "'");
    std::vector<std::string> injected;
    std::istringstream in(read_text(path));
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw UsageError(path + ": expected 'key = value', got '" + line + "'");
        std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.rfind("--", 0) == 0) key = key.substr(2);
        const CLI::Option* opt = sub->get_option_no_throw("--" + key);
        if (!opt) throw UsageError(path + ": '" + key + "' is not a flag of " + tokens.front());
        if (given(tokens, "--" + key)) continue;
        if (opt->get_expected_min() == 0) {
            if (value == "true" || value == "1" || value == "yes" || value.empty()) injected.push_back("--" + key);
            continue;
        }
        injected.push_back("--" + key);
        std::istringstream vs(value);
        for (std::string v; vs >> v;) injected.push_back(v);
    }
    tokens.insert(tokens.begin() + 1, injected.begin(), injected.end());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wulff shapes, partitions, skyscrapers, samplers and Ising dynamics"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();

    Common common;
    if (const char* env = std::getenv(kOutputDirEnv)) common.out = env;

    WulffArgs wa;
    auto* wulff_cmd = app.add_subcommand("wulff", "Wulff body of a direction field");
    wulff_cmd->add_option("--tau", wa.tau, "isotropic | l1 | cos4 | table.csv");
    wulff_cmd->add_option("--dim", wa.dim, "ambient dimension")->check(CLI::IsMember({2, 3}));
    wulff_cmd->add_option("--resolution", wa.resolution, "directions (2D) or icosphere level (3D); 0 = default");
    wulff_cmd->add_option("--volume", wa.volume, "rescale to this volume (0 = unscaled)");
    wulff_cmd->add_option("--field", wa.field, "also report the saddle droplet at this h > 0");
    wulff_cmd->add_option("--m-star", wa.m_star, "spontaneous magnetization for the saddle droplet");

    DualArgs da;
    auto* dual_cmd = app.add_subcommand("dual", "dual (maximizing) body of an octant field");
    dual_cmd->add_option("--eta", da.eta, "staircase-entropy | product | constant:c | table.csv");
    dual_cmd->add_option("--resolution", da.resolution, "graph abscissae");
    dual_cmd->add_flag("--maximize", da.maximize, "rescale to the unit-volume maximizer");

    FacetArgs fa;
    auto* facet_cmd = app.add_subcommand("facet", "facet at a cusp of tau, or a skyscraper facet");
    facet_cmd->add_option("--kind", fa.kind, "wulff | skyscraper")->check(CLI::IsMember({"wulff", "skyscraper"}));
    facet_cmd->add_option("--derivative", fa.derivative, "directional derivative field (name or table.csv)");
    facet_cmd->add_option("--normal", fa.normal, "cusp normal n0 (wulff kind)")->expected(3)->delimiter(',');
    facet_cmd->add_option("--resolution", fa.resolution, "directions");

    PartitionArgs pa;
    auto* part_cmd = app.add_subcommand("partitions", "partition generating functions");
    part_cmd->add_option("--degree", pa.degree, "series degree")->check(CLI::NonNegativeNumber);
    part_cmd->add_flag("--strict", pa.strict, "distinct parts");
    part_cmd->add_option("--bounded-parts", pa.bounded, "at most k parts (0 = unbounded)");
    part_cmd->add_option("--enumerate", pa.enumerate, "list partitions of N into the .json artifact");

    SkyscraperArgs sa;
    auto* sky_cmd = app.add_subcommand("skyscraper", "skyscraper series and pedestal polynomials");
    sky_cmd->add_option("--shape", sa.shape, "mxn (plane) or mxnxk (spatial)");
    sky_cmd->add_option("--hole", sa.hole, "JSON array of row lengths removed from the mxn box");
    sky_cmd->add_option("--series-degree", sa.series_degree, "series degree")->check(CLI::NonNegativeNumber);
    sky_cmd->add_flag("--pedestal-poly", sa.pedestal_poly, "print the pedestal polynomial");
    sky_cmd->add_flag("--allow-large", sa.allow_large, "lift the enumeration guard");

    SampleArgs sma;
    auto* sample_cmd = app.add_subcommand("sample", "grand-canonical sampler");
    sample_cmd->add_option("--model", sma.model, "young | plane")->check(CLI::IsMember({"young", "plane"}));
    sample_cmd->add_option("--n-target", sma.n_target, "target volume N");
    sample_cmd->add_option("--samples", sma.samples, "accepted samples");
    sample_cmd->add_option("--window", sma.window, "relative volume window");

    IsingArgs ia;
    auto* ising_cmd = app.add_subcommand("ising", "Glauber dynamics of the 2D Ising model");
    ising_cmd->add_option("--size", ia.size, "side length l");
    ising_cmd->add_option("--topology", ia.topology, "torus | box")->check(CLI::IsMember({"torus", "box"}));
    ising_cmd->add_option("--bc", ia.bc, "+ | - | split:nx,ny (box only)");
    ising_cmd->add_option("--beta", ia.beta, "inverse temperature");
    ising_cmd->add_option("--field", ia.field, "external field h");
    ising_cmd->add_option("--rate", ia.rate, "metropolis | heatbath")->check(CLI::IsMember({"metropolis", "heatbath"}));
    ising_cmd->add_option("--sweeps", ia.sweeps, "sweeps of |Lambda| proposals");
    ising_cmd->add_option("--initial", ia.initial, "initial spin everywhere (1 or -1)");
    ising_cmd->add_flag("--no-contours", ia.no_contours, "skip the per-sweep largest contour area (reported as 0)");

    std::string suite = "all";
    auto* verify_cmd = app.add_subcommand("verify", "run the acceptance criteria");
    verify_cmd->add_option("--suite", suite, "all | combinatorics | geometry | ensemble | ising")
        ->check(CLI::IsMember(acceptance::suites()));

    for (auto* sub : {wulff_cmd, dual_cmd, facet_cmd, part_cmd, sky_cmd, sample_cmd, ising_cmd, verify_cmd}) add_common(sub, common);

    std::vector<std::string> tokens(argv + 1, argv + argc);
    try {
        if (auto replay = take_option(tokens, "--replay")) {
            if (!tokens.empty()) throw UsageError("--replay takes no other arguments");
            tokens = replay_tokens(*replay);
        }
        if (auto config = take_option(tokens, "--config")) apply_config(tokens, *config, app);
    } catch (const std::exception& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    }

    std::vector<std::string> args{argv[0]};
    args.insert(args.end(), tokens.begin(), tokens.end());
    std::vector<char*> cargs;
    for (auto& a : args) cargs.push_back(a.data());
    try {
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    try {
        json result;
        bool ok = true;
        std::map<std::string, std::vector<std::string>> formats = {
            {"wulff", {".csv", ".svg"}},         {"dual", {".csv", ".svg"}},
            {"facet", {".csv", ".svg"}},         {"partitions", {".csv", ".json"}},
            {"skyscraper", {".csv", ".json"}},   {"sample", {".csv", ".json", ".svg"}},
            {"ising", {".csv", ".pgm"}},         {"verify", {".csv"}},
        };
        Artifacts art(common, formats.at(name));
        if (name == "wulff") result = run_wulff(wa, art);
        else if (name == "dual") result = run_dual(da, art);
        else if (name == "facet") result = run_facet(fa, art);
        else if (name == "partitions") result = run_partitions(pa, art);
        else if (name == "skyscraper") result = run_skyscraper(sa, art);
        else if (name == "sample") result = run_sample(sma, common, art);
        else if (name == "ising") result = run_ising(ia, common, art);
        else {
            const auto results = acceptance::run_suite(suite, std::cout, common.workers, common.seed);
            ok = acceptance::all_passed(results);
            io::CsvWriter w({"criterion", "title", "passed", "detail"});
            int passed = 0;
            for (const auto& r : results) {
                passed += r.passed;
                w.row(std::vector<std::string>{std::to_string(r.id), r.title, r.passed ? "true" : "false", r.detail});
            }
            for (const auto& file : art.wanted(".csv")) art.write(file, w.str());
            result = {{"suite", suite}, {"passed", passed}, {"total", results.size()}};
        }
        if (name != "verify") std::cout << result.dump(2) << '\n';
        else std::cout << result["passed"] << "/" << result["total"] << " criteria passed\n";

        if (!art.written().empty()) {
            json digests = json::object();
            for (const auto& [file, digest] : art.written()) digests[file] = digest;
            const json manifest = {{"subcommand", name},
                                   {"parameters", parameters_of(sub)},
                                   {"seed", common.seed},
                                   {"artifact_version", kArtifactVersion},
                                   {"digests", digests}};
            io::write_artifact(fs::path(common.out) / common.manifest, manifest.dump(2) + "\n");
        }
        return ok ? 0 : 1;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const wulff::Error& e) {
        std::cerr << name << ": " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << name << ": " << e.what() << '\n';
        return 1;
    }
}
