#include "vlt/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "vlt/beam.hpp"
#include "vlt/error.hpp"
#include "vlt/field_ops.hpp"
#include "vlt/io.hpp"
#include "vlt/metrics.hpp"
#include "vlt/parallel.hpp"
#include "vlt/phantom.hpp"
#include "vlt/radon.hpp"
#include "vlt/render.hpp"
#include "vlt/star.hpp"
#include "vlt/vline.hpp"

namespace vlt::cli {

namespace {

std::string real(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

// Key/value manifest written next to every output.
class Manifest {
public:
    explicit Manifest(std::string command) : command_(std::move(command)) {}

    void param(const std::string& key, const std::string& value) { params_.emplace_back(key, value); }
    void input(const std::string& path) { inputs_.push_back(path); }
    void output(const std::string& path) { outputs_.push_back(path); }
    void result(const std::string& key, const std::string& value) { results_.emplace_back(key, value); }

    void write(const std::string& path) const {
        std::ofstream out(path);
        if (!out) throw IoError("cannot open '" + path + "' for writing");
        out << "tool = vltomo\nversion = " << VLT_VERSION << "\ncommand = " << command_ << '\n';
        for (const auto& [k, v] : params_) out << "param." << k << " = " << v << '\n';
        for (const auto& [k, v] : results_) out << "result." << k << " = " << v << '\n';
        for (const auto& p : inputs_) out << "input." << p << " = sha256:" << io::sha256_file(p) << '\n';
        for (const auto& p : outputs_) out << "output." << p << " = sha256:" << io::sha256_file(p) << '\n';
        if (!out) throw IoError("write to '" + path + "' failed");
    }

private:
    std::string command_;
    std::vector<std::pair<std::string, std::string>> params_;
    std::vector<std::pair<std::string, std::string>> results_;
    std::vector<std::string> inputs_;
    std::vector<std::string> outputs_;
};

// Records every option of a subcommand, given or defaulted.
void record_options(const CLI::App& app, Manifest& m) {
    for (const CLI::Option* opt : app.get_options()) {
        if (opt->get_lnames().empty()) continue;
        const std::string& name = opt->get_lnames().front();
        if (name == "help") continue;
        std::string value;
        if (opt->count() > 0) {
            for (const auto& r : opt->results()) value += (value.empty() ? "" : ",") + r;
        } else {
            value = opt->get_default_str();
        }
        m.param(name, value);
    }
}

Vec2 parse_point(const std::string& text) {
    const auto v = io::parse_reals(text);
    if (v.size() != 2) throw ConfigError("expected x,y but got '" + text + "'");
    return {v[0], v[1]};
}

struct Geometry {
    std::optional<VLineGeometry> vline;
    std::optional<StarGeometry> star;

    std::vector<Vec2> rays() const { return vline ? vline->rays() : star->rays(); }
    double min_r2(double r1) const { return vline ? vline->min_r2(r1) : star->min_r2(r1); }
};

Geometry load_geometry(const std::string& path, std::ostream& err) {
    Geometry g;
    std::vector<std::string> warnings;
    if (path.empty()) {
        g.vline.emplace(Direction(1.0, 0.0), Direction(0.0, 1.0));
    } else if (io::is_star_geometry_file(path)) {
        g.star.emplace(io::read_star_geometry(path, &warnings));
    } else {
        g.vline.emplace(io::read_vline_geometry(path, &warnings));
    }
    for (const auto& w : warnings) err << "warning: " << path << ": " << w << '\n';
    return g;
}

VLineGeometry require_vline(const Geometry& g) {
    if (!g.vline) throw ConfigError("this operation needs a V-line geometry (u = ..., v = ...)");
    return *g.vline;
}

StarGeometry require_star(const Geometry& g) {
    if (!g.star) throw ConfigError("this operation needs a star geometry (ray = gx,gy,c lines)");
    return *g.star;
}

ScalarField smooth(ScalarField h, int passes) {
    const Grid2D& g = h.grid();
    for (int p = 0; p < passes; ++p) {
        ScalarField out = h;
        for (int j = 1; j < g.ny - 1; ++j)
            for (int i = 1; i < g.nx - 1; ++i) {
                double s = 4.0 * h(i, j);
                s += 2.0 * (h(i - 1, j) + h(i + 1, j) + h(i, j - 1) + h(i, j + 1));
                s += h(i - 1, j - 1) + h(i + 1, j - 1) + h(i - 1, j + 1) + h(i + 1, j + 1);
                out(i, j) = s / 16.0;
            }
        h = std::move(out);
    }
    return h;
}

TransformField load_transform(const std::string& path, TransformKind kind, int passes, Manifest& m) {
    if (path.empty()) throw ConfigError("missing " + to_string(kind) + " transform input");
    auto comps = io::read_field(path);
    m.input(path);
    const int want = kind == TransformKind::star ? 2 : 1;
    if (static_cast<int>(comps.size()) != want)
        throw IoError("'" + path + "' must hold " + std::to_string(want) + " component(s)");
    TransformField t;
    t.kind = kind;
    for (auto& c : comps) t.components.push_back(smooth(std::move(c), passes));
    return t;
}

void write_report(const std::string& path, const std::vector<ScalarField>& value,
                  const std::vector<ScalarField>& oracle, double radius, std::ostream& out) {
    if (value.size() != oracle.size()) throw ConfigError("reconstruction and oracle have different component counts");
    std::ostringstream rep;
    for (std::size_t c = 0; c < value.size(); ++c) {
        const ErrorNorms n = error_norms(value[c], oracle[c], radius);
        const std::string p = "component" + std::to_string(c + 1) + ".";
        rep << p << "rel_l1 = " << real(n.rel_l1) << '\n'
            << p << "rel_l2 = " << real(n.rel_l2) << '\n'
            << p << "rel_linf = " << real(n.rel_linf) << '\n'
            << p << "abs_l2 = " << real(n.abs_l2) << '\n';
    }
    out << rep.str();
    if (!path.empty()) {
        std::ofstream f(path);
        if (!f) throw IoError("cannot open '" + path + "' for writing");
        f << "mask_radius = " << real(radius) << '\n' << rep.str();
        if (!f) throw IoError("write to '" + path + "' failed");
    }
}

// Options given in a --config file are appended unless the same option is
// already on the command line, so explicit flags always win.
std::vector<std::string> merge_config(std::vector<std::string> args) {
    std::string config;
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) config = args[i + 1];
        if (args[i].rfind("--config=", 0) == 0) config = args[i].substr(9);
    }
    if (config.empty()) return args;
    const auto kv = io::read_key_values(config);
    for (const auto& [key, value] : kv) {
        if (key == "config") continue;
        const std::string flag = "--" + key;
        const bool given = std::any_of(args.begin() + 1, args.end(), [&](const std::string& a) {
            return a == flag || a.rfind(flag + "=", 0) == 0;
        });
        if (!given) args.push_back(flag + "=" + value);
    }
    return args;
}

}  // namespace

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ConfigError*>(&e)) return config_error;
    if (dynamic_cast<const GeometryError*>(&e)) return math_error;
    if (dynamic_cast<const SolverError*>(&e)) return math_error;
    if (dynamic_cast<const IoError*>(&e)) return io_error;
    if (dynamic_cast<const CLI::ParseError*>(&e)) return config_error;
    return unexpected;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Generalized V-line and star transforms of planar vector fields", "vltomo"};
    app.require_subcommand(1);
    app.fallthrough();
    int threads = 0;
    std::string config;
    app.add_option("--threads", threads, "Worker threads (0 = runtime default); never changes results");
    app.add_option("--config", config, "key = value file supplying defaults for any option");
    app.set_version_flag("--version", std::string(VLT_VERSION));

    // phantom
    auto* ph = app.add_subcommand("phantom", "Write an analytic phantom and its oracle fields");
    std::string ph_kind = "potential", ph_center = "0,0", ph_geometry, ph_out;
    double ph_scale = 0.0, ph_amp = 1.0, ph_r1 = 1.0, ph_r2 = 0.0;
    int ph_nx = 256, ph_margin = 3;
    bool ph_csv = false;
    ph->add_option("--kind", ph_kind, "potential | solenoidal | mixed")->capture_default_str();
    ph->add_option("--center", ph_center, "Bump center x,y")->capture_default_str();
    ph->add_option("--scale", ph_scale, "Bump radius (0 = r1 - |center|)")->capture_default_str();
    ph->add_option("--amplitude", ph_amp, "Bump amplitude")->capture_default_str();
    ph->add_option("--nx", ph_nx, "Samples per axis")->capture_default_str();
    ph->add_option("--r1", ph_r1, "Support radius")->capture_default_str();
    ph->add_option("--r2", ph_r2, "Data radius (0 = smallest valid for the geometry)")->capture_default_str();
    ph->add_option("--margin", ph_margin, "Samples between the r2-circle and the grid edge")->capture_default_str();
    ph->add_option("--geometry", ph_geometry, "Geometry file that fixes the default r2");
    ph->add_flag("--csv", ph_csv, "Also write the field as CSV");
    ph->add_option("--out", ph_out, "Output prefix")->required();

    // forward
    auto* fw = app.add_subcommand("forward", "Apply a forward transform to a field file");
    std::string fw_transform, fw_field, fw_geometry, fw_out;
    int fw_component = 0;
    double fw_step = 0.0, fw_noise = 0.0;
    std::uint64_t fw_seed = 0;
    fw->add_option("--transform", fw_transform, "L | T | I | J | star | signed")->required();
    fw->add_option("--field", fw_field, "Input VLT1 field")->required();
    fw->add_option("--geometry", fw_geometry, "Geometry file (default u = 1,0 and v = 0,1)");
    fw->add_option("--component", fw_component, "Vector component (1 or 2) for the signed transform")
        ->capture_default_str();
    fw->add_option("--step", fw_step, "Ray quadrature step (0 = h/2)")->capture_default_str();
    fw->add_option("--noise", fw_noise, "Gaussian noise sigma relative to max |data|")->capture_default_str();
    fw->add_option("--seed", fw_seed, "Noise seed")->capture_default_str();
    fw->add_option("--out", fw_out, "Output VLT1 file")->required();

    // invert
    auto* inv = app.add_subcommand("invert", "Reconstruct from transform data");
    std::string iv_pipeline, iv_L, iv_T, iv_I, iv_J, iv_star, iv_signed, iv_geometry, iv_oracle, iv_out;
    int iv_angles = 360, iv_smooth = 0;
    double iv_guard = 2.0, iv_step = 0.0;
    bool iv_hann = false;
    inv->add_option("--pipeline", iv_pipeline, "lt | li | tj | star | potential | stream | curl | div | signed")
        ->required();
    inv->add_option("--L", iv_L, "L f data");
    inv->add_option("--T", iv_T, "T f data");
    inv->add_option("--I", iv_I, "I f data");
    inv->add_option("--J", iv_J, "J f data");
    inv->add_option("--star", iv_star, "Star transform data (two components)");
    inv->add_option("--signed", iv_signed, "Signed V-line data");
    inv->add_option("--geometry", iv_geometry, "Geometry file (default u = 1,0 and v = 0,1)");
    inv->add_option("--angles", iv_angles, "Star inversion angles on [0, pi)")->capture_default_str();
    inv->add_option("--guard", iv_guard, "Guard band around singular directions, degrees")->capture_default_str();
    inv->add_flag("--hann", iv_hann, "Hann-apodized ramp filter");
    inv->add_option("--step", iv_step, "Ray quadrature step (0 = h/2)")->capture_default_str();
    inv->add_option("--smooth", iv_smooth, "Binomial 3x3 smoothing passes applied to the data")->capture_default_str();
    inv->add_option("--oracle", iv_oracle, "Reference field for the error report");
    inv->add_option("--out", iv_out, "Output VLT1 file")->required();

    // radon
    auto* rd = app.add_subcommand("radon", "Radon transform of each component of a field");
    std::string rd_input, rd_geometry, rd_out;
    int rd_angles = 360, rd_offsets = 0;
    double rd_ds = 0.0, rd_step = 0.0;
    bool rd_full = false, rd_dds = false;
    rd->add_option("--input", rd_input, "Input VLT1 file")->required();
    rd->add_option("--geometry", rd_geometry, "Treat the input as transform data of this geometry");
    rd->add_option("--angles", rd_angles, "Number of angles")->capture_default_str();
    rd->add_option("--offsets", rd_offsets, "Number of offsets (0 = cover [-r2, r2])")->capture_default_str();
    rd->add_option("--ds", rd_ds, "Offset spacing (0 = h)")->capture_default_str();
    rd->add_option("--step", rd_step, "Spacing along lines (0 = h/2)")->capture_default_str();
    rd->add_flag("--full-circle", rd_full, "Angles on [0, 2 pi)");
    rd->add_flag("--dds", rd_dds, "Differentiate in the offset");
    rd->add_option("--out", rd_out, "Output VLS1 file")->required();

    // render
    auto* rn = app.add_subcommand("render", "Export a field as PGM/PPM images");
    std::string rn_input, rn_out;
    rn->add_option("--input", rn_input, "Input VLT1 file")->required();
    rn->add_option("--out", rn_out, "Output prefix")->required();

    // report
    auto* rp = app.add_subcommand("report", "Error norms of a field against an oracle over D1");
    std::string rp_field, rp_oracle, rp_out;
    rp->add_option("--field", rp_field, "Field file")->required();
    rp->add_option("--oracle", rp_oracle, "Oracle file")->required();
    rp->add_option("--out", rp_out, "Report file (also printed)");

    std::vector<std::string> args;
    try {
        args = merge_config(raw_args);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
    std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForVersion&) {
        out << VLT_VERSION << '\n';
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return config_error;
    }

    try {
        if (threads < 0) throw ConfigError("--threads must be non-negative");
        if (threads > 0) par::set_threads(threads);

        if (*ph) {
            Manifest m("phantom");
            record_options(*ph, m);
            const Vec2 center = parse_point(ph_center);
            double r2 = ph_r2;
            if (r2 <= 0.0) r2 = load_geometry(ph_geometry, err).min_r2(ph_r1);
            const Grid2D grid = Grid2D::centered(ph_nx, ph_r1, r2, ph_margin);
            const double scale = ph_scale > 0.0 ? ph_scale : ph_r1 - norm(center);
            const Phantom p = make_phantom(parse_phantom_kind(ph_kind), center, scale, grid, ph_amp);
            const std::vector<std::pair<std::string, std::vector<ScalarField>>> files = {
                {ph_out + ".field.vlt", {p.field.f1, p.field.f2}},
                {ph_out + ".div.vlt", {p.div}},
                {ph_out + ".curl.vlt", {p.curl}},
                {ph_out + ".potential.vlt", {p.potential}},
                {ph_out + ".stream.vlt", {p.stream}},
            };
            for (const auto& [path, comps] : files) {
                io::write_field(path, comps);
                m.output(path);
            }
            if (ph_csv) {
                io::write_csv(ph_out + ".field.csv", {p.field.f1, p.field.f2});
                m.output(ph_out + ".field.csv");
            }
            m.result("h", real(grid.h));
            m.result("r2", real(grid.r2));
            m.write(ph_out + ".manifest");
            out << "wrote " << ph_out << ".{field,div,curl,potential,stream}.vlt (h = " << real(grid.h) << ")\n";
        } else if (*fw) {
            Manifest m("forward");
            record_options(*fw, m);
            const Geometry geo = load_geometry(fw_geometry, err);
            if (!fw_geometry.empty()) m.input(fw_geometry);
            auto comps = io::read_field(fw_field);
            m.input(fw_field);
            const RayQuadrature q{fw_step};
            const TransformKind kind = parse_transform_kind(fw_transform);
            TransformField t;
            if (kind == TransformKind::Ts) {
                const VLineGeometry g = require_vline(geo);
                g.check_grid(comps[0].grid());
                int c = fw_component;
                if (comps.size() == 1 && c == 0) c = 1;
                if (c < 1 || c > static_cast<int>(comps.size()))
                    throw ConfigError("--component must select one of the field's components");
                t = signed_vline(comps[static_cast<std::size_t>(c - 1)], g, q);
            } else {
                if (comps.size() != 2) throw ConfigError("transform " + fw_transform + " needs a vector field");
                const VectorField f(std::move(comps[0]), std::move(comps[1]));
                switch (kind) {
                    case TransformKind::L: t = forward_L(f, require_vline(geo), q); break;
                    case TransformKind::T: t = forward_T(f, require_vline(geo), q); break;
                    case TransformKind::I: t = forward_I(f, require_vline(geo), q); break;
                    case TransformKind::J: t = forward_J(f, require_vline(geo), q); break;
                    default: t = forward_star(f, require_star(geo), q); break;
                }
            }
            if (fw_noise < 0.0) throw ConfigError("--noise must be non-negative");
            if (fw_noise > 0.0) {
                double scale = 0.0;
                for (const auto& c : t.components) scale = std::max(scale, c.max_abs());
                std::mt19937_64 rng(fw_seed);
                std::normal_distribution<double> gauss(0.0, fw_noise * scale);
                for (auto& c : t.components)
                    for (double& v : c.values()) v += gauss(rng);
                m.result("noise_abs_sigma", real(fw_noise * scale));
            }
            io::write_field(fw_out, t.components);
            m.output(fw_out);
            m.write(fw_out + ".manifest");
            out << "wrote " << fw_out << " (" << to_string(kind) << ")\n";
        } else if (*inv) {
            Manifest m("invert");
            record_options(*inv, m);
            const Geometry geo = load_geometry(iv_geometry, err);
            if (!iv_geometry.empty()) m.input(iv_geometry);
            const RayQuadrature q{iv_step};
            std::vector<ScalarField> result;
            if (iv_pipeline == "star") {
                const StarGeometry sg = require_star(geo);
                if (classify(sg) == StarClass::symmetric)
                    throw NonInvertibleError("symmetric star configuration: the transform is not invertible");
                const TransformField sf = load_transform(iv_star, TransformKind::star, iv_smooth, m);
                StarInversionOptions opt;
                opt.n_angles = iv_angles;
                opt.guard_degrees = iv_guard;
                opt.quadrature = q;
                opt.fbp.hann = iv_hann;
                const VectorField f = invert_star(sf, sg, opt);
                result = {f.f1, f.f2};
                const Sinogram layout = make_sinogram(sf.grid(), RadonOptions{opt.n_angles});
                const std::vector<char> guarded = guarded_angles(sg, layout, opt.guard_degrees);
                double gain = 0.0;
                int dropped = 0;
                for (int a = 0; a < layout.n_angles; ++a) {
                    if (guarded[static_cast<std::size_t>(a)]) {
                        ++dropped;
                        continue;
                    }
                    gain = std::max(gain, q_gain(sg, Direction::from_angle(layout.angle(a)).vec()));
                }
                m.result("guarded_angles", std::to_string(dropped));
                m.result("max_q_gain", real(gain));
            } else {
                const VLineGeometry g = require_vline(geo);
                auto L = [&] { return load_transform(iv_L, TransformKind::L, iv_smooth, m); };
                auto T = [&] { return load_transform(iv_T, TransformKind::T, iv_smooth, m); };
                if (iv_pipeline == "lt") {
                    const VectorField f = recover_field_LT(L(), T(), g);
                    result = {f.f1, f.f2};
                } else if (iv_pipeline == "li") {
                    const VectorField f =
                        recover_field_LI(L(), load_transform(iv_I, TransformKind::I, iv_smooth, m), g, q);
                    result = {f.f1, f.f2};
                } else if (iv_pipeline == "tj") {
                    const VectorField f =
                        recover_field_TJ(T(), load_transform(iv_J, TransformKind::J, iv_smooth, m), g, q);
                    result = {f.f1, f.f2};
                } else if (iv_pipeline == "potential" || iv_pipeline == "stream") {
                    const PoissonResult r = iv_pipeline == "potential" ? recover_potential(T(), g)
                                                                       : recover_stream(L(), g);
                    m.result("cg_iterations", std::to_string(r.iterations));
                    m.result("cg_residual", real(r.residual));
                    result = {r.solution};
                } else if (iv_pipeline == "curl") {
                    result = {recover_curl(L(), g)};
                } else if (iv_pipeline == "div") {
                    result = {recover_div(T(), g)};
                } else if (iv_pipeline == "signed") {
                    result = {invert_signed(load_transform(iv_signed, TransformKind::Ts, iv_smooth, m), g, q)};
                } else {
                    throw ConfigError("unknown pipeline '" + iv_pipeline + "'");
                }
            }
            io::write_field(iv_out, result);
            m.output(iv_out);
            if (!iv_oracle.empty()) {
                const auto oracle = io::read_field(iv_oracle);
                m.input(iv_oracle);
                write_report(iv_out + ".report", result, oracle, result[0].grid().r1, out);
                m.output(iv_out + ".report");
            }
            m.write(iv_out + ".manifest");
            out << "wrote " << iv_out << " (" << iv_pipeline << ")\n";
        } else if (*rd) {
            Manifest m("radon");
            record_options(*rd, m);
            auto comps = io::read_field(rd_input);
            m.input(rd_input);
            RadonOptions opt;
            opt.n_angles = rd_angles;
            opt.n_offsets = rd_offsets;
            opt.ds = rd_ds;
            opt.step = rd_step;
            opt.full_circle = rd_full;
            std::vector<Sinogram> sgs;
            std::optional<Geometry> geo;
            if (!rd_geometry.empty()) {
                geo = load_geometry(rd_geometry, err);
                m.input(rd_geometry);
            }
            for (const auto& c : comps) {
                if (geo) {
                    const StripExtension ext(c, geo->rays());
                    sgs.push_back(radon_forward(ext, opt));
                } else {
                    sgs.push_back(radon_forward(c, opt));
                }
                if (rd_dds) sgs.back() = sinogram_dds(sgs.back());
            }
            const Sinogram sg = sgs.size() == 2 ? stack_components(sgs[0], sgs[1]) : sgs[0];
            io::write_sinogram(rd_out, sg);
            m.output(rd_out);
            m.write(rd_out + ".manifest");
            out << "wrote " << rd_out << " (" << sg.n_angles << " x " << sg.n_offsets << ")\n";
        } else if (*rn) {
            Manifest m("render");
            record_options(*rn, m);
            const auto comps = io::read_field(rn_input);
            m.input(rn_input);
            if (comps.size() == 1) {
                render::write_pnm(rn_out + ".pgm", render::scalar_image(comps[0]));
                m.output(rn_out + ".pgm");
            } else {
                const VectorField f(comps[0], comps[1]);
                render::write_pnm(rn_out + ".mag.pgm", render::magnitude_image(f));
                render::write_pnm(rn_out + ".dir.ppm", render::direction_image(f));
                m.output(rn_out + ".mag.pgm");
                m.output(rn_out + ".dir.ppm");
            }
            m.write(rn_out + ".manifest");
            out << "wrote images with prefix " << rn_out << '\n';
        } else if (*rp) {
            const auto value = io::read_field(rp_field);
            const auto oracle = io::read_field(rp_oracle);
            if (!value[0].grid().same_lattice(oracle[0].grid())) throw ConfigError("field and oracle grids differ");
            write_report(rp_out, value, oracle, value[0].grid().r1, out);
            if (!rp_out.empty()) {
                Manifest m("report");
                record_options(*rp, m);
                m.input(rp_field);
                m.input(rp_oracle);
                m.output(rp_out);
                m.write(rp_out + ".manifest");
            }
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
    return ok;
}

}  // namespace vlt::cli
