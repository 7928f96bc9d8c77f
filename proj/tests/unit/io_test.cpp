#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "dcd/errors.hpp"
#include "dcd/harness.hpp"
#include "dcd/io.hpp"
#include "test_support.hpp"

namespace {

namespace fs = std::filesystem;
using dcd::Boundary;
using dcd::GridFunction;

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("dcd_io_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

TEST(FormatDouble, ShortestRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 123456789.0, 0.0}) {
    EXPECT_EQ(std::stod(dcd::format_double(v)), v);
  }
  EXPECT_EQ(dcd::format_double(0.1), "0.1");
}

TEST(ParseCoefficient, DecimalsAndFractions) {
  EXPECT_EQ(dcd::parse_coefficient("1.25"), 1.25);
  EXPECT_EQ(dcd::parse_coefficient("-3e-2"), -0.03);
  EXPECT_EQ(dcd::parse_coefficient("1/3"), 1.0 / 3.0);
  EXPECT_EQ(dcd::parse_coefficient("-1/2"), -0.5);
  EXPECT_THROW(dcd::parse_coefficient("1/0"), dcd::ConfigError);
  EXPECT_THROW(dcd::parse_coefficient("abc"), dcd::ConfigError);
  EXPECT_THROW(dcd::parse_coefficient("1.5x"), dcd::ConfigError);
}

TEST(ModelJson, RoundTripIsLossless) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    dcd::ScalarModel m = dcd::testing::random_model(seed, seed % 2 ? 1 : 2);
    std::string text = dcd::model_to_json(m);
    dcd::ScalarModel back = dcd::model_from_json(text);
    EXPECT_EQ(dcd::model_to_json(back), text);
    for (std::size_t i = 0; i < m.flux().size(); ++i) EXPECT_TRUE(back.flux(i).same_function(m.flux(i), 0.0));
  }
}

TEST(ModelJson, RejectsUnknownKeysAndBadShapes) {
  EXPECT_THROW(dcd::model_from_json(R"({"dim":1,"urange":[-1,1],"flux":[{"breakpoints":[-1,1],"pieces":[[0]]}],
    "diffusion":[{"breakpoints":[-1,1],"pieces":[[0]]}],"colour":1})"), dcd::ConfigError);
  EXPECT_THROW(dcd::model_from_json(R"({"dim":1,"urange":[-1,1],"flux":[],
    "diffusion":[{"breakpoints":[-1,1],"pieces":[[0]]}]})"), dcd::ConfigError);
  EXPECT_THROW(dcd::piecewise_from_json(R"({"breakpoints":[-1,1],"pieces":[[0]],"extension":"wrap"})"),
               dcd::ConfigError);
}

TEST(ModelJson, FractionsAndCenters) {
  auto p = dcd::piecewise_from_json(R"({"breakpoints":["-1","1/2",1],"pieces":[["1/4",1],[0]],"centers":[0,"1/2"]})");
  EXPECT_EQ(p.breakpoints()[1], 0.5);
  EXPECT_EQ(p(0.0), 0.25);
  EXPECT_EQ(p.pieces()[1].center(), 0.5);
  auto m = dcd::load_model(fs::path(DCD_TEST_DATA_DIR) / "chi_diffusion.json");
  EXPECT_EQ(m.diffusion(0, 0)(0.6), 1.0);
  EXPECT_EQ(m.diffusion(0, 0)(0.0), 0.0);
}

TEST(GridCsv, RoundTripIsBitwise) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    int dim = seed % 2 ? 1 : 2;
    Boundary bc = seed % 3 ? Boundary::far_field(0.1 * seed) : Boundary::periodic();
    GridFunction g = dcd::testing::random_grid(seed, dim, {-1.0 / 3.0, 2.0}, dim == 1 ? 77 : 9, bc, -1, 1, 2);
    GridFunction back = dcd::grid_from_text(dcd::grid_csv(g), dcd::grid_sidecar(g));
    EXPECT_EQ(back.values(), g.values());
    EXPECT_EQ(back.origin(), g.origin());
    EXPECT_EQ(back.cell_size(), g.cell_size());
    EXPECT_EQ(back.shape(), g.shape());
    EXPECT_EQ(back.bc(), g.bc());
  }
}

TEST(GridCsv, FilesAndHeader) {
  fs::path dir = scratch("grid");
  GridFunction g = GridFunction::on_box(2, {0.0, 1.0}, 3, 0.5, Boundary::periodic());
  dcd::write_grid(dir / "g.csv", g);
  EXPECT_TRUE(fs::exists(dir / "g.csv.json"));
  std::string csv = dcd::read_file(dir / "g.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "x,y,value");
  EXPECT_EQ(dcd::read_grid(dir / "g.csv").values(), g.values());
  EXPECT_THROW(dcd::grid_from_text("x,value\n0.5,1\n", dcd::grid_sidecar(g)), dcd::Error);
}

TEST(DecayCsv, RoundTrip) {
  dcd::DecaySeries s{{0.0, 0.5, 1.0}, {1.0, 0.7, 0.1 + 0.2}, {2.0, 1.0 / 3.0, 0.0}, {0.0, 0.0, 0.0},
                     {1.0, 0.9, 0.8}, std::vector<double>{3.0, 2.0, 1.0}};
  auto back = dcd::decay_from_csv(dcd::decay_csv(s));
  EXPECT_EQ(back.t, s.t);
  EXPECT_EQ(back.x_norm, s.x_norm);
  EXPECT_EQ(back.l1_norm, s.l1_norm);
  EXPECT_EQ(back.bound_rhs, s.bound_rhs);
  s.bound_rhs.reset();
  std::string text = dcd::decay_csv(s);
  EXPECT_EQ(text.substr(0, text.find('\n')), "t,x_norm,l1_norm,min,max");
  EXPECT_FALSE(dcd::decay_from_csv(text).bound_rhs.has_value());
  EXPECT_THROW(dcd::decay_from_csv(""), dcd::Error);
}

TEST(ReportJson, CarriesChecksAndHashes) {
  dcd::PropertyReport r;
  r.add("a", 0.5, 0.0, "fine");
  r.add_flag("b", false, -std::numeric_limits<double>::infinity());
  r.inputs.push_back({"u0", "abc"});
  std::string text = dcd::report_to_json(r);
  EXPECT_NE(text.find("\"a\""), std::string::npos);
  EXPECT_NE(text.find("\"-inf\""), std::string::npos);
  EXPECT_NE(text.find("abc"), std::string::npos);
}

TEST(Hashing, KnownVectors) {
  EXPECT_EQ(dcd::fnv1a(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(dcd::fnv1a("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(dcd::hash_hex("a"), "af63dc4c8601ec8c");
}

TEST(AtomicWrite, ReplacesWithoutLeftovers) {
  fs::path dir = scratch("atomic");
  dcd::atomic_write(dir / "f.txt", "one");
  dcd::atomic_write(dir / "f.txt", "two");
  EXPECT_EQ(dcd::read_file(dir / "f.txt"), "two");
  std::size_t n = 0;
  for ([[maybe_unused]] auto& e : fs::directory_iterator(dir)) ++n;
  EXPECT_EQ(n, 1u);
}

}  // namespace
