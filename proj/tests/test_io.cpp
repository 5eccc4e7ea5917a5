#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "latcliff/io.hpp"
#include "latcliff/rng.hpp"

using namespace latcliff;

namespace {
std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}
}  // namespace

TEST_CASE("atomic write leaves no temporary behind") {
  const std::string path = temp_path("latcliff_atomic.txt");
  io::atomic_write(path, "payload\n");
  std::ifstream is(path);
  std::string line;
  std::getline(is, line);
  CHECK(line == "payload");
  CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
  std::filesystem::remove(path);
}

TEST_CASE("field CSV round trip") {
  Rng rng(81);
  for (int n = 1; n <= 3; ++n) {
    const LatticeBox box = LatticeBox::cube(n, 0.5, -2, 2);
    const Field f = random_field(rng, box, true);
    const std::string path = temp_path("latcliff_field.csv");
    io::write_field_csv(f, path);
    const Field g = io::read_field_csv(path, 0.5);
    REQUIRE(g.n() == n);
    REQUIRE(g.valid() == f.valid());
    f.for_each_site([&](const std::vector<int>& k, const Multivector& v) {
      CHECK(max_abs_diff(v, g.at(k)) == 0.0);
    });
    std::filesystem::remove(path);
  }
}

TEST_CASE("field CSV format") {
  const LatticeBox box = LatticeBox::cube(1, 1.0, 0, 1);
  const Signature sig = Signature::neg_definite(1);
  Field f = Field::build(box, [&](const std::vector<int>& k) {
    // zero value at site 0, e_1 at site 1: zero entries are omitted
    return k[0] == 0 ? Multivector(sig) : Multivector::generator(sig, 1) * scalar_t{2.0, -1.0};
  });
  const std::string csv = io::field_to_csv(f);
  CHECK(csv == "k1,blade_mask,re,im\n1,1,2,-1\n");
}

TEST_CASE("field CSV errors") {
  CHECK_THROWS_AS(io::read_field_csv(temp_path("latcliff_missing.csv"), 1.0), io::io_error);
  const std::string path = temp_path("latcliff_empty.csv");
  io::atomic_write(path, "k1,blade_mask,re,im\n");
  CHECK_THROWS_AS(io::read_field_csv(path, 1.0), io::io_error);
  std::filesystem::remove(path);
}

TEST_CASE("check status logic") {
  Check tolerant{"id", "anchor", 1e-12, 1e-10, false};
  CHECK(tolerant.status() == CheckStatus::Pass);
  tolerant.max_residual = 1e-9;
  CHECK(tolerant.status() == CheckStatus::Fail);

  Check exact{"id", "anchor", 0.0, 0.0, true};
  CHECK(exact.status() == CheckStatus::Pass);
  exact.max_residual = 1e-300;
  CHECK(exact.status() == CheckStatus::Fail);

  Check reported{"id", "anchor", 123.0, 0.0, false, true};
  CHECK(reported.status() == CheckStatus::ReportOnly);

  Report rep;
  rep.suite = "demo";
  rep.checks = {Check{"a", "x", 0.0, 1e-9, false}, Check{"b", "y", 5.0, 0.0, false, true}};
  CHECK(rep.all_passed());
  const json j = rep.to_json();
  CHECK(j["schema"] == 1);
  CHECK(j["checks"].size() == 2);
  CHECK(j["checks"][0]["status"] == "pass");
  CHECK(j["checks"][1]["status"] == "report-only");
}
