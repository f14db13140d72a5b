#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "support.hpp"
#include "vlt/cli.hpp"
#include "vlt/io.hpp"

using namespace vlt;
namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("vlt_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    int run(std::vector<std::string> args) {
        args.insert(args.begin(), "vltomo");
        out_.str("");
        err_.str("");
        return cli::run(args, out_, err_);
    }

    static std::string slurp(const std::string& p) {
        std::ifstream in(p, std::ios::binary);
        return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    }

    /// Value of "key = value" in a report or manifest text.
    static double value_of(const std::string& text, const std::string& key) {
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line))
            if (line.rfind(key + " = ", 0) == 0) return std::stod(line.substr(key.size() + 3));
        ADD_FAILURE() << "no key " << key;
        return NAN;
    }

    void phantom(const std::string& kind, int nx, const std::string& prefix) {
        ASSERT_EQ(run({"phantom", "--kind", kind, "--nx", std::to_string(nx), "--out", path(prefix)}), 0) << err_.str();
    }

    fs::path dir_;
    std::ostringstream out_, err_;
};

}  // namespace

TEST_F(Cli, PhantomWritesFieldOraclesAndManifest) {
    phantom("mixed", 64, "p");
    for (const char* suffix : {".field.vlt", ".div.vlt", ".curl.vlt", ".potential.vlt", ".stream.vlt", ".manifest"})
        EXPECT_TRUE(fs::exists(path(std::string("p") + suffix))) << suffix;
    const std::string manifest = slurp(path("p.manifest"));
    EXPECT_NE(manifest.find("command = phantom"), std::string::npos);
    EXPECT_NE(manifest.find("param.kind = mixed"), std::string::npos);
    EXPECT_NE(manifest.find("output." + path("p.field.vlt") + " = sha256:" + io::sha256_file(path("p.field.vlt"))),
              std::string::npos);
}

TEST_F(Cli, PhantomOracles) {
    phantom("potential", 64, "pot");
    EXPECT_EQ(io::read_scalar(path("pot.curl.vlt")).max_abs(), 0.0);
    const ScalarField div = io::read_scalar(path("pot.div.vlt"));
    int i = 0, j = 0;
    div.grid().nearest({0, 0}, i, j);
    EXPECT_NEAR(div(i, j), -12.0, 1e-12);
}

TEST_F(Cli, MixedPhantomIsTheSumOfItsParts) {
    // The mixed phantom places its bumps at +-0.4 (cos 30deg, sin 30deg) with scale 0.6.
    phantom("mixed", 64, "mix");
    ASSERT_EQ(run({"phantom", "--kind", "potential", "--nx", "64", "--center", "0.34641016151377546,0.2", "--scale", "0.6",
                   "--out", path("pot")}),
              0)
        << err_.str();
    ASSERT_EQ(run({"phantom", "--kind", "solenoidal", "--nx", "64", "--center", "-0.34641016151377546,-0.2", "--scale",
                   "0.6", "--out", path("sol")}),
              0)
        << err_.str();
    const VectorField mix = io::read_vector(path("mix.field.vlt"));
    const VectorField parts = io::read_vector(path("pot.field.vlt")) + io::read_vector(path("sol.field.vlt"));
    EXPECT_LT(test::max_rel_diff(mix.f1, parts.f1), 1e-12);
    EXPECT_LT(test::max_rel_diff(mix.f2, parts.f2), 1e-12);
}

TEST_F(Cli, ZeroFieldGivesZeroTransform) {
    phantom("mixed", 48, "p");
    VectorField zero(io::read_vector(path("p.field.vlt")).grid());
    io::write_vector(path("zero.vlt"), zero);
    for (const char* t : {"L", "T", "I", "J"}) {
        ASSERT_EQ(run({"forward", "--transform", t, "--field", path("zero.vlt"), "--out", path("z.vlt")}), 0) << err_.str();
        EXPECT_EQ(io::read_scalar(path("z.vlt")).max_abs(), 0.0) << t;
    }
}

TEST_F(Cli, SeededNoiseIsReproducibleWithRequestedLevel) {
    phantom("mixed", 64, "p");
    ASSERT_EQ(run({"forward", "--transform", "L", "--field", path("p.field.vlt"), "--out", path("clean.vlt")}), 0);
    for (const char* name : {"a.vlt", "b.vlt"})
        ASSERT_EQ(run({"forward", "--transform", "L", "--field", path("p.field.vlt"), "--noise", "0.1", "--seed", "7",
                       "--out", path(name)}),
                  0);
    EXPECT_EQ(slurp(path("a.vlt")), slurp(path("b.vlt")));
    ASSERT_EQ(run({"forward", "--transform", "L", "--field", path("p.field.vlt"), "--noise", "0.1", "--seed", "8",
                   "--out", path("c.vlt")}),
              0);
    EXPECT_NE(slurp(path("a.vlt")), slurp(path("c.vlt")));

    const ScalarField clean = io::read_scalar(path("clean.vlt")), noisy = io::read_scalar(path("a.vlt"));
    double sum = 0.0, sq = 0.0;
    const std::size_t n = clean.values().size();
    for (std::size_t k = 0; k < n; ++k) {
        const double d = noisy[k] - clean[k];
        sum += d;
        sq += d * d;
    }
    const double mean = sum / static_cast<double>(n);
    const double sigma = std::sqrt(sq / static_cast<double>(n) - mean * mean) / clean.max_abs();
    EXPECT_NEAR(sigma, 0.1, 0.005);
}

TEST_F(Cli, LtPipelineReportsSmallError) {
    phantom("mixed", 256, "p");
    ASSERT_EQ(run({"forward", "--transform", "L", "--field", path("p.field.vlt"), "--out", path("L.vlt")}), 0);
    ASSERT_EQ(run({"forward", "--transform", "T", "--field", path("p.field.vlt"), "--out", path("T.vlt")}), 0);
    ASSERT_EQ(run({"invert", "--pipeline", "lt", "--L", path("L.vlt"), "--T", path("T.vlt"), "--oracle", path("p.field.vlt"),
                   "--out", path("f.vlt")}),
              0)
        << err_.str();
    const std::string report = slurp(path("f.vlt.report"));
    EXPECT_LT(value_of(report, "component1.rel_l2"), 0.1);
    EXPECT_LT(value_of(report, "component2.rel_l2"), 0.1);
    EXPECT_NE(out_.str().find("component1.rel_l2"), std::string::npos);
}

TEST_F(Cli, SymmetricStarIsAMathError) {
    phantom("mixed", 48, "p");
    std::ofstream(path("sym.txt")) << "ray = 1,0,1\nray = -1,0,-1\n";
    std::ofstream(path("ok.txt")) << "ray = 1,0,1\nray = -0.5,0.8660254037844386,1\nray = -0.5,-0.8660254037844386,1\n";
    ASSERT_EQ(run({"phantom", "--kind", "mixed", "--nx", "64", "--geometry", path("ok.txt"), "--out", path("q")}), 0);
    ASSERT_EQ(run({"forward", "--transform", "star", "--field", path("q.field.vlt"), "--geometry", path("ok.txt"), "--out",
                   path("s.vlt")}),
              0)
        << err_.str();
    EXPECT_EQ(run({"invert", "--pipeline", "star", "--star", path("s.vlt"), "--geometry", path("sym.txt"), "--out", path("f.vlt")}),
              cli::math_error);
    EXPECT_FALSE(err_.str().empty());
}

TEST_F(Cli, ExitCodes) {
    EXPECT_EQ(run({}), cli::config_error);
    EXPECT_EQ(run({"frobnicate"}), cli::config_error);
    EXPECT_EQ(run({"forward", "--transform", "L", "--field", path("missing.vlt"), "--out", path("x.vlt")}), cli::io_error);
    phantom("mixed", 48, "p");
    EXPECT_EQ(run({"forward", "--transform", "Q", "--field", path("p.field.vlt"), "--out", path("x.vlt")}), cli::config_error);
    EXPECT_EQ(run({"--version"}), cli::ok);
    EXPECT_FALSE(out_.str().empty());
}

TEST_F(Cli, ReportOfIdenticalFilesIsZero) {
    phantom("mixed", 48, "p");
    ASSERT_EQ(run({"report", "--field", path("p.field.vlt"), "--oracle", path("p.field.vlt"), "--out", path("r.txt")}), 0);
    const std::string r = slurp(path("r.txt"));
    for (const char* key : {"component1.rel_l1", "component1.rel_l2", "component1.rel_linf", "component2.abs_l2"})
        EXPECT_EQ(value_of(r, key), 0.0) << key;
}

TEST_F(Cli, RenderZeroFieldAndStability) {
    phantom("mixed", 48, "p");
    VectorField zero(io::read_vector(path("p.field.vlt")).grid());
    io::write_vector(path("zero.vlt"), zero);
    ASSERT_EQ(run({"render", "--input", path("zero.vlt"), "--out", path("z")}), 0);
    const std::string pgm = slurp(path("z.mag.pgm"));
    const std::string header = "P5\n48 48\n255\n";
    ASSERT_EQ(pgm.substr(0, header.size()), header);
    for (std::size_t k = header.size(); k < pgm.size(); ++k) EXPECT_EQ(static_cast<unsigned char>(pgm[k]), 128);
    ASSERT_EQ(run({"render", "--input", path("p.field.vlt"), "--out", path("a")}), 0);
    ASSERT_EQ(run({"render", "--input", path("p.field.vlt"), "--out", path("b")}), 0);
    EXPECT_EQ(slurp(path("a.mag.pgm")), slurp(path("b.mag.pgm")));
    EXPECT_EQ(slurp(path("a.dir.ppm")), slurp(path("b.dir.ppm")));
}

TEST_F(Cli, ConfigFileSuppliesDefaultsAndFlagsWin) {
    std::ofstream(path("c.cfg")) << "kind = potential\nnx = 40\n";
    ASSERT_EQ(run({"--config", path("c.cfg"), "phantom", "--nx", "48", "--out", path("p")}), 0) << err_.str();
    const VectorField f = io::read_vector(path("p.field.vlt"));
    EXPECT_EQ(f.grid().nx, 48);
    EXPECT_EQ(io::read_scalar(path("p.curl.vlt")).max_abs(), 0.0);
}

TEST_F(Cli, ThreadCountDoesNotChangeOutput) {
    phantom("mixed", 64, "p");
    ASSERT_EQ(run({"--threads", "1", "forward", "--transform", "T", "--field", path("p.field.vlt"), "--out", path("a.vlt")}), 0);
    ASSERT_EQ(run({"--threads", "4", "forward", "--transform", "T", "--field", path("p.field.vlt"), "--out", path("b.vlt")}), 0);
    EXPECT_EQ(slurp(path("a.vlt")), slurp(path("b.vlt")));
}

TEST_F(Cli, RadonAndSignedCommands) {
    phantom("mixed", 64, "p");
    ASSERT_EQ(run({"radon", "--input", path("p.field.vlt"), "--angles", "30", "--out", path("s.vls")}), 0) << err_.str();
    const Sinogram sg = io::read_sinogram(path("s.vls"));
    EXPECT_EQ(sg.n_angles, 30);
    EXPECT_EQ(sg.ncomp, 2);
    ASSERT_EQ(run({"forward", "--transform", "signed", "--component", "1", "--field", path("p.field.vlt"), "--out",
                   path("ts.vlt")}),
              0)
        << err_.str();
    ASSERT_EQ(run({"invert", "--pipeline", "signed", "--signed", path("ts.vlt"), "--out", path("f1.vlt")}), 0) << err_.str();
    EXPECT_LT(relative_l2(io::read_scalar(path("f1.vlt")), io::read_vector(path("p.field.vlt")).f1, 1.0), 0.05);
}
