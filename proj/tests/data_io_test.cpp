#include <cstdio>
#include <filesystem>
#include <fstream>

#include <doctest.h>

#include "eigengame/data.hpp"
#include "eigengame/errors.hpp"
#include "eigengame/io.hpp"
#include "eigengame/linalg.hpp"
#include "test_util.hpp"

using namespace eigengame;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
  static const fs::path dir = [] {
    fs::path p = fs::temp_directory_path() /
                 ("eigengame_test_" + std::to_string(::getpid()));
    fs::create_directories(p);
    return p;
  }();
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("spectrum eigenvalues") {
  const Vec exp = Spectrum::exponential(3, 1.0, 0.5).eigenvalues();
  CHECK(exp == Vec{1.0, 0.5, 0.25});
  const Vec lin = Spectrum::linear(3, 3.0, 1.0).eigenvalues();
  CHECK(lin == Vec{3.0, 2.0, 1.0});

  CHECK_THROWS_AS(Spectrum::exponential(3, 1.0, 1.5).eigenvalues(), ConfigError);
  CHECK_THROWS_AS(Spectrum::linear(3, 1.0, 2.0).eigenvalues(), ConfigError);
  CHECK_THROWS_AS(Spectrum::linear(3, 1.0, -0.5).eigenvalues(), ConfigError);
}

TEST_CASE("synth_covariance recovers its spectrum through the oracle") {
  const SynthCovariance s =
      synth_covariance(Spectrum::exponential(3, 1.0, 0.5), 17);
  // exactly symmetric by construction
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c)
      CHECK(s.sigma(r, c) == s.sigma(c, r));

  const SymEig eig = jacobi_eigh(s.sigma);
  CHECK(std::abs(eig.eigenvalues[0] - 1.0) < 1e-10);
  CHECK(std::abs(eig.eigenvalues[1] - 0.5) < 1e-10);
  CHECK(std::abs(eig.eigenvalues[2] - 0.25) < 1e-10);
  CHECK(eig.eigenvalues[2] > 0.0);  // positive definite
}

TEST_CASE("synth_covariance identity rotation hook") {
  const SynthCovariance s =
      synth_covariance(Spectrum::linear(3, 3.0, 1.0), Mat::identity(3));
  Mat expect(3, 3);
  expect(0, 0) = 3.0;
  expect(1, 1) = 2.0;
  expect(2, 2) = 1.0;
  CHECK(s.sigma == expect);
}

TEST_CASE("sample_batch determinism and the sequential hook") {
  Philox rng(5);
  const Mat rows = eigengame::test::random_gaussian(10, 3, rng);
  const Dataset ds = Dataset::from_rows(rows);

  Philox a(99), b(99);
  CHECK(sample_batch(ds, 6, a) == sample_batch(ds, 6, b));

  Philox c(99);
  CHECK(sample_batch(ds, 10, c, /*sequential_full=*/true) == rows);
  Philox e(99);
  CHECK_THROWS_AS(sample_batch(ds, 4, e, true), ConfigError);
}

TEST_CASE("gaussian dataset matches its covariance empirically") {
  const SynthCovariance s =
      synth_covariance(Spectrum::exponential(4, 1.0, 0.6), 31);
  const Dataset ds = Dataset::gaussian(s.truth);
  Philox rng(7);
  const std::size_t n = 1000000;
  const Mat batch = sample_batch(ds, n, rng);
  Mat emp = matmul_tn(batch, batch);
  for (std::size_t i = 0; i < 16; ++i)
    emp.data()[i] /= static_cast<double>(n);
  Mat diff = emp;
  for (std::size_t i = 0; i < 16; ++i) diff.data()[i] -= s.sigma.data()[i];
  CHECK(frob_norm(diff) <= 1e-2 * frob_norm(s.sigma));
}

TEST_CASE("binary matrix format round trip") {
  Mat one(1, 1);
  one(0, 0) = 42.0;
  const fs::path p = temp_file("one.egm");
  save_matrix(p, one);
  CHECK(load_matrix(p) == one);

  // header layout for a 2x3 matrix
  Mat m(2, 3);
  for (std::size_t i = 0; i < 6; ++i) m.data()[i] = static_cast<double>(i) / 7.0;
  const fs::path p2 = temp_file("m23.egm");
  save_matrix(p2, m);
  const std::string bytes = slurp(p2);
  REQUIRE(bytes.size() == 4 + 8 + 8 + 6 * 8);
  CHECK(bytes.substr(0, 4) == "EGM1");
  const std::string rows_le("\x02\x00\x00\x00\x00\x00\x00\x00", 8);
  const std::string cols_le("\x03\x00\x00\x00\x00\x00\x00\x00", 8);
  CHECK(bytes.substr(4, 8) == rows_le);
  CHECK(bytes.substr(12, 8) == cols_le);

  CHECK(load_matrix(p2) == m);

  // re-save is byte identical
  const fs::path p3 = temp_file("m23b.egm");
  save_matrix(p3, load_matrix(p2));
  CHECK(slurp(p3) == bytes);
}

TEST_CASE("csv matrix format") {
  const fs::path p = temp_file("m.csv");
  {
    std::ofstream out(p);
    out << "1.5,2.0\n3.0,4.0\n";
  }
  Mat expect(2, 2);
  expect(0, 0) = 1.5;
  expect(0, 1) = 2.0;
  expect(1, 0) = 3.0;
  expect(1, 1) = 4.0;
  CHECK(load_matrix(p) == expect);

  Philox rng(3);
  const Mat m = eigengame::test::random_gaussian(4, 3, rng);
  const fs::path p2 = temp_file("rt.csv");
  save_matrix(p2, m);
  CHECK(load_matrix(p2) == m);  // 17 significant digits round-trip exactly
}

TEST_CASE("matrix parse errors carry a position") {
  const fs::path bad_magic = temp_file("bad.egm");
  {
    std::ofstream out(bad_magic, std::ios::binary);
    out << "NOPE";
  }
  CHECK_THROWS_AS(load_matrix(bad_magic), ParseError);

  const fs::path truncated = temp_file("trunc.egm");
  {
    Mat m(2, 2, 1.0);
    save_matrix(truncated, m);
    fs::resize_file(truncated, 30);
  }
  CHECK_THROWS_AS(load_matrix(truncated), ParseError);

  const fs::path bad_cell = temp_file("bad.csv");
  {
    std::ofstream out(bad_cell);
    out << "1.0,2.0\n3.0,oops\n";
  }
  try {
    load_matrix(bad_cell);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("edge list files") {
  const fs::path p = temp_file("a.edges");
  {
    std::ofstream out(p);
    out << "0 1\n";
  }
  const EdgeList e1 = load_edges(p);
  CHECK(e1.num_nodes() == 2);
  CHECK(e1.size() == 1);

  const fs::path p2 = temp_file("b.edges");
  {
    std::ofstream out(p2);
    out << "# nodes=5\n0 1\n";
  }
  CHECK(load_edges(p2).num_nodes() == 5);

  const fs::path p3 = temp_file("c.edges");
  {
    std::ofstream out(p3);
    out << "2 2\n";
  }
  CHECK_THROWS_AS(load_edges(p3), ParseError);

  const fs::path p4 = temp_file("d.edges");
  {
    std::ofstream out(p4);
    out << "0 1\nnot an edge\n";
  }
  try {
    load_edges(p4);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("key=value files and digests") {
  const fs::path p = temp_file("cfg.txt");
  save_kv(p, {{"steps", "100"}, {"rule", "mu"}});
  const KvPairs kv = load_kv(p);
  REQUIRE(kv.size() == 2);
  CHECK(kv[0].first == "steps");
  CHECK(kv[0].second == "100");

  const std::uint64_t h1 = fnv1a64_file(p);
  CHECK(h1 == fnv1a64_file(p));
  save_kv(p, {{"steps", "101"}});
  CHECK(h1 != fnv1a64_file(p));
}
