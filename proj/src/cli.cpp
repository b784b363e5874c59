#include "pwla/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <future>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "pwla/classifier.hpp"
#include "pwla/displacement.hpp"
#include "pwla/errors.hpp"
#include "pwla/halfmap.hpp"
#include "pwla/io.hpp"
#include "pwla/oracle.hpp"

namespace pwla::cli {

namespace {

using nlohmann::json;

struct Settings {
    double classify_tol = classifier::kDefaultTolerance;
    halfmap::Options halfmap;
    displacement::Tolerances displacement;
};

Settings settings_from(const RunConfig& config)
{
    Settings s;
    for (const auto& [name, value] : config.tolerances) {
        if (!(value > 0) || !std::isfinite(value)) {
            throw ParseError("tolerance '" + name + "' must be a positive number");
        }
        if (name == "classify") {
            s.classify_tol = value;
        } else if (name == "annulus") {
            s.displacement.annulus = value;
        } else if (name == "zero") {
            s.displacement.zero = value;
        } else if (name == "bisection") {
            s.displacement.bisection = value;
        } else if (name == "residual") {
            s.halfmap.residual_tol = value;
        } else {
            throw ParseError("unknown tolerance '" + name + "'");
        }
    }
    return s;
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string cell(double v) { return std::isnan(v) ? std::string() : io::format_number(v); }

void require_H(const SystemParams& p)
{
    const classifier::HCheck h = classifier::check_H(p);
    for (const auto& r : h.records) {
        if (!r.passed) {
            throw PreconditionError("condition (H) fails: clause " + r.name + " does not hold");
        }
    }
}

void run_classify(const SystemParams& p, const RunConfig& config, const Settings& s, std::ostream& out)
{
    const classifier::Classification c = classifier::classify(p, s.classify_tol);
    if (config.format == Format::Json) {
        out << io::to_json(c).dump(2) << '\n';
    } else {
        out << io::to_csv(c);
    }
}

// Grid end for one half-map domain: just below mu, or a span beyond lambda.
double grid_end(const halfmap::HalfMapDomain& d, double span)
{
    return d.mu_finite() ? d.lambda + (d.mu - d.lambda) * (1.0 - 1e-6) : d.lambda + span * std::max(1.0, d.lambda);
}

void run_halfmap(const SystemParams& p, const RunConfig& config, const Settings& s, std::ostream& out)
{
    require_H(p);
    const CanonicalSystem canon = to_canonical(p);
    const auto dl = halfmap::domain(canon.left, s.halfmap);
    const auto dr = halfmap::domain(canon.right, s.halfmap);
    const double span = config.span.value_or(10.0);
    const double lo = std::min(dl.lambda, dr.lambda);
    const double hi = std::max(grid_end(dl, span), grid_end(dr, span));

    auto value = [&](const HalfSystem& h, const halfmap::HalfMapDomain& d, double y0) {
        return d.contains(y0) ? halfmap::eval(h, y0, s.halfmap) : std::nan("");
    };
    auto slope = [&](const HalfSystem& h, const halfmap::HalfMapDomain& d, double y0, double y1) {
        return d.interior(y0) && y1 < 0 ? halfmap::derivative(h, y0, s.halfmap) : std::nan("");
    };

    json rows = json::array();
    std::ostringstream csv;
    csv << "y0,yL,yR,dyL,dyR\n";
    for (int i = 0; i < config.grid; ++i) {
        const double y0 = lo + (hi - lo) * i / (config.grid - 1);
        const double yl = value(canon.left, dl, y0);
        const double yr = value(canon.right, dr, y0);
        const double dyl = slope(canon.left, dl, y0, yl);
        const double dyr = slope(canon.right, dr, y0, yr);
        rows.push_back({{"y0", y0}, {"yL", number_or_null(yl)}, {"yR", number_or_null(yr)},
                        {"dyL", number_or_null(dyl)}, {"dyR", number_or_null(dyr)}});
        csv << cell(y0) << ',' << cell(yl) << ',' << cell(yr) << ',' << cell(dyl) << ',' << cell(dyr) << '\n';
    }
    if (config.format == Format::Json) {
        json j;
        j["left_domain"] = {{"lambda", dl.lambda}, {"mu", number_or_null(dl.mu)}};
        j["right_domain"] = {{"lambda", dr.lambda}, {"mu", number_or_null(dr.mu)}};
        j["rows"] = std::move(rows);
        out << j.dump(2) << '\n';
    } else {
        out << csv.str();
    }
}

void run_displacement(const SystemParams& p, const RunConfig& config, const Settings& s, std::ostream& out)
{
    require_H(p);
    const CanonicalSystem canon = to_canonical(p);
    const displacement::Context ctx = displacement::make_context(canon, s.halfmap);
    displacement::ScanOptions scan;
    scan.grid_n = config.grid;
    scan.span_factor = config.span.value_or(10.0);
    scan.tol = s.displacement;

    json rows = json::array();
    json orbits = json::array();
    std::ostringstream csv;
    csv << "y0,delta,F_sign\n";
    for (double y0 : displacement::scan_grid(ctx, scan)) {
        const double d = displacement::delta(ctx, y0, s.halfmap);
        std::optional<int> f_sign;
        if (canon.b == 0.0) {
            const double f = ctx.coeffs.F(y0, halfmap::eval(ctx.left, y0, s.halfmap));
            f_sign = (f > 0) - (f < 0);
        }
        rows.push_back({{"y0", y0}, {"delta", d}, {"F_sign", f_sign ? json(*f_sign) : json(nullptr)}});
        csv << cell(y0) << ',' << cell(d) << ',' << (f_sign ? std::to_string(*f_sign) : "") << '\n';
    }
    for (const auto& o : displacement::find_crossing_orbits(ctx, scan, s.halfmap)) {
        orbits.push_back({{"y0", o.y0},
                          {"kind", o.kind == displacement::OrbitKind::Isolated ? "Isolated" : "AnnulusCandidate"}});
    }
    if (config.format == Format::Json) {
        json j;
        j["empty"] = ctx.empty;
        j["lambda_b"] = ctx.lambda_b;
        j["mu_b"] = number_or_null(ctx.mu_b);
        j["b"] = canon.b;
        j["coefficients"] = {{"c0", ctx.coeffs.c0}, {"c1", ctx.coeffs.c1}, {"c2", ctx.coeffs.c2}};
        j["rows"] = std::move(rows);
        j["orbits"] = std::move(orbits);
        out << j.dump(2) << '\n';
    } else {
        out << csv.str();
    }
}

void run_portrait(const SystemParams& p, const RunConfig& config, const Settings& s, std::ostream& out)
{
    const CanonicalSystem canon = to_canonical(p);
    std::vector<double> starts = config.y0;
    if (starts.empty()) {
        require_H(p);
        const displacement::Context ctx = displacement::make_context(canon, s.halfmap);
        displacement::ScanOptions scan;
        scan.span_factor = config.span.value_or(10.0);
        scan.grid_n = 6;
        starts = displacement::scan_grid(ctx, scan);
        if (starts.empty()) throw PreconditionError("displacement domain is empty; pass --y0 explicitly");
        // the endpoint orbit only touches the separation line
        starts.erase(starts.begin());
    }
    for (double y0 : starts) {
        if (!(y0 >= std::max(0.0, canon.b))) {
            throw PreconditionError("portrait start ordinates must satisfy y0 >= max(0, b)");
        }
    }
    json orbits = json::array();
    std::ostringstream csv;
    csv << "orbit,t,x,y\n";
    for (std::size_t k = 0; k < starts.size(); ++k) {
        const oracle::Trajectory tr = oracle::sample_orbit(canon, starts[k], config.passages, config.grid);
        json samples = json::array();
        for (const auto& smp : tr.samples) {
            samples.push_back({smp.t, smp.x, smp.y});
            csv << k << ',' << cell(smp.t) << ',' << cell(smp.x) << ',' << cell(smp.y) << '\n';
        }
        orbits.push_back({{"y0", starts[k]},
                          {"stopped", tr.stopped ? json(*tr.stopped) : json(nullptr)},
                          {"samples", std::move(samples)}});
    }
    if (config.format == Format::Json) {
        out << orbits.dump(2) << '\n';
    } else {
        out << csv.str();
    }
}

// Uniform in [-1, 1) from the top 53 bits; fixed across standard library implementations.
double symmetric_unit(std::mt19937_64& rng) { return 2.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53 - 1.0; }

void run_sweep(const SystemParams& base, const RunConfig& config, const Settings& s, std::ostream& out)
{
    const double span = config.span.value_or(0.1);
    std::mt19937_64 rng(config.seed);
    auto jitter = [&](auto arr) {
        for (auto& v : arr) v += span * std::max(1.0, std::abs(v)) * symmetric_unit(rng);
        return arr;
    };
    std::vector<SystemParams> points;
    points.reserve(static_cast<std::size_t>(config.grid));
    for (int i = 0; i < config.grid; ++i) {
        const auto AL = jitter(base.AL());
        const auto bL = jitter(base.bL());
        const auto AR = jitter(base.AR());
        const auto bR = jitter(base.bR());
        points.emplace_back(AL, bL, AR, bR);
    }

    // instances are independent; results are stored by index so output order is fixed
    std::vector<classifier::Classification> results(points.size());
    const std::size_t workers = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
    std::vector<std::future<void>> jobs;
    for (std::size_t w = 0; w < workers; ++w) {
        jobs.push_back(std::async(std::launch::async, [&, w] {
            for (std::size_t i = w; i < points.size(); i += workers) {
                results[i] = classifier::classify(points[i], s.classify_tol);
            }
        }));
    }
    for (auto& j : jobs) j.get();

    if (config.format == Format::Json) {
        json arr = json::array();
        for (std::size_t i = 0; i < points.size(); ++i) {
            arr.push_back({{"index", i}, {"params", io::to_json(points[i])}, {"classification", io::to_json(results[i])}});
        }
        out << arr.dump(2) << '\n';
        return;
    }
    out << "index,verdict,failing_clause,aL11,aL12,aL21,aL22,bL1,bL2,aR11,aR12,aR21,aR22,bR1,bR2,xi0,xi_inf,beta\n";
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& p = points[i];
        const auto& c = results[i];
        out << i << ',' << classifier::to_string(c.verdict) << ',' << c.failing_clause.value_or("");
        for (double v : p.AL()) out << ',' << cell(v);
        for (double v : p.bL()) out << ',' << cell(v);
        for (double v : p.AR()) out << ',' << cell(v);
        for (double v : p.bR()) out << ',' << cell(v);
        out << ',' << cell(c.derived.xi0) << ',' << cell(c.derived.xiInf) << ',' << cell(c.derived.beta) << '\n';
    }
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    try {
        const Settings settings = settings_from(config);
        if (config.grid < 2) throw ParseError("--grid must be at least 2");
        const io::ParameterInput input = io::load_parameters(config.input);
        std::ostringstream buffer;
        switch (config.command) {
            case Command::Classify: run_classify(input.params, config, settings, buffer); break;
            case Command::Halfmap: run_halfmap(input.params, config, settings, buffer); break;
            case Command::Displacement: run_displacement(input.params, config, settings, buffer); break;
            case Command::Portrait: run_portrait(input.params, config, settings, buffer); break;
            case Command::Sweep: run_sweep(input.params, config, settings, buffer); break;
        }
        out << buffer.str();
        return kExitOk;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitMalformed;
    } catch (const Error& e) {
        err << "precondition failed: " << e.what() << '\n';
        return kExitPrecondition;
    }
}

namespace {

std::map<std::string, double> parse_tolerances(const std::vector<std::string>& items)
{
    std::map<std::string, double> out;
    for (const auto& item : items) {
        const auto eq = item.find('=');
        const std::string name = eq == std::string::npos ? "classify" : item.substr(0, eq);
        const std::string text = eq == std::string::npos ? item : item.substr(eq + 1);
        double v = 0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc() || ptr != text.data() + text.size()) {
            throw ParseError("malformed tolerance '" + item + "'");
        }
        out[name] = v;
    }
    return out;
}

}  // namespace

int main(int argc, char** argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Crossing period annuli of planar two-zone piecewise linear systems"};
    app.set_version_flag("--version", "pwla 1.0.0");

    RunConfig config;
    std::string command = "classify";
    std::string format = "json";
    std::vector<std::string> tolerances;
    std::string env = kEnvPrefix;

    app.add_option("-i,--input", config.input, "parameter file (JSON)")->required()->envname(env + "INPUT");
    app.add_option("-c,--cmd", command, "classify | halfmap | displacement | portrait | sweep")
        ->check(CLI::IsMember({"classify", "halfmap", "displacement", "portrait", "sweep"}))
        ->envname(env + "CMD");
    app.add_option("--tol", tolerances, "tolerance override: VALUE or NAME=VALUE (classify, annulus, zero, bisection, residual)")
        ->delimiter(',')
        ->envname(env + "TOL");
    app.add_option("--grid", config.grid, "grid points (scans, tables, samples per passage, sweep size)")
        ->check(CLI::Range(2, 10000000))
        ->envname(env + "GRID");
    app.add_option("--span", config.span, "scan span factor, or relative perturbation for sweep")->envname(env + "SPAN");
    app.add_option("--seed", config.seed, "random seed for sweep")->envname(env + "SEED");
    app.add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}))->envname(env + "FORMAT");
    app.add_option("--y0", config.y0, "portrait start ordinates")->delimiter(',')->envname(env + "Y0");
    app.add_option("--passages", config.passages, "zone passages per portrait orbit")
        ->check(CLI::Range(1, 100000))
        ->envname(env + "PASSAGES");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitMalformed;
    }

    try {
        config.tolerances = parse_tolerances(tolerances);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitMalformed;
    }
    const std::map<std::string, Command> commands = {{"classify", Command::Classify},
                                                     {"halfmap", Command::Halfmap},
                                                     {"displacement", Command::Displacement},
                                                     {"portrait", Command::Portrait},
                                                     {"sweep", Command::Sweep}};
    config.command = commands.at(command);
    config.format = format == "csv" ? Format::Csv : Format::Json;
    return run(config, out, err);
}

}  // namespace pwla::cli
