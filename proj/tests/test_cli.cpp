#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "photon/commands.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;

  json parsed() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = photon::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() /
         ("photon_test_" + std::to_string(::getpid()) + "_" + name);
}

std::string write_descriptor(const std::string& name, const std::string& body) {
  const auto path = temp_path(name);
  std::ofstream(path) << body;
  return path.string();
}

const char* kPacket = R"({"kappa": [0, 0, 1], "sigma_k": 0.1, "helicity": 1, "units": "eV"})";

}  // namespace

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"verify", "--suite", "nope"}).code == 2);
  CHECK(run({"verify", "--trials", "0", "--suite", "wigner"}).code == 2);
  CHECK(run({"wigner", "spin"}).code == 2);
  CHECK(run({"fields", "--kappa", "-1"}).code == 2);
  CHECK(run({"localize", "--ratio", "0.5"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("localize") {
  const Run r = run({"localize", "--kappa", "3.3", "--ratio", "0.01"});
  REQUIRE(r.code == 0);
  const json j = r.parsed();
  CHECK(j["schema"] == 1);
  CHECK(j["command"] == "localize");
  CHECK(j["sigma_x_um"].get<double>() == doctest::Approx(2.99).epsilon(0.01));
}

TEST_CASE("verify") {
  const Run lg = run({"verify", "--suite", "little-group", "--trials", "1000", "--seed", "7"});
  REQUIRE(lg.code == 0);
  const json j = lg.parsed();
  CHECK(j["schema"] == 1);
  CHECK(j["pass"] == true);
  CHECK(j.contains("timestamp"));
  for (const auto& suite : j["suites"]) {
    CHECK(suite["trials"] == 1000);
    for (const auto& p : suite["properties"]) {
      CHECK(p["max_residual"].get<double>() < 1e-12);
    }
  }

  CHECK(run({"verify", "--suite", "wigner"}).code == 0);
  CHECK(run({"verify", "--suite", "polarization", "--trials", "200"}).code == 0);

  const Run a = run({"verify", "--suite", "wigner", "--trials", "50", "--seed", "3", "--no-timestamp"});
  const Run b = run({"verify", "--suite", "wigner", "--trials", "50", "--seed", "3", "--no-timestamp"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK_FALSE(a.parsed().contains("timestamp"));

  const Run strict = run({"verify", "--suite", "wigner", "--trials", "20", "--tol", "1e-300"});
  CHECK(strict.code == 1);
  CHECK(strict.parsed()["pass"] == false);
}

TEST_CASE("verify fields suite") {
  const Run r = run({"verify", "--suite", "fields", "--trials", "3", "--no-timestamp"});
  CHECK(r.code == 0);
  CHECK(r.parsed()["pass"] == true);
}

TEST_CASE("wigner") {
  SUBCASE("identity rotation") {
    const Run r = run({"wigner", "rotation", "--axis", "1,0,0", "--angle", "0", "--theta", "1", "--phi", "2"});
    REQUIRE(r.code == 0);
    const json j = r.parsed();
    CHECK(std::abs(j["w"].get<double>()) < 1e-12);
    CHECK(j["phase_re"].get<double>() == doctest::Approx(1));
  }
  SUBCASE("rotation about z") {
    const Run r = run({"wigner", "rotation", "--axis", "0,0,1", "--angle", "0.5", "--theta", "0.7", "--phi", "-1"});
    REQUIRE(r.code == 0);
    const json j = r.parsed();
    CHECK(j["w"].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(j["phase_im"].get<double>() == doctest::Approx(-std::sin(0.5)));
    const double hr = j["closed_form_half_phase"]["re"];
    const double hi = j["closed_form_half_phase"]["im"];
    CHECK(hr == doctest::Approx(std::cos(0.25)));
    CHECK(hi == doctest::Approx(-std::sin(0.25)));
  }
  SUBCASE("boost along z") {
    const Run r = run({"wigner", "boost", "--beta", "0,0,0.6", "--theta", "1.1", "--phi", "0.4", "--omega", "2"});
    REQUIRE(r.code == 0);
    const json j = r.parsed();
    CHECK(std::abs(j["w"].get<double>()) < 1e-10);
    CHECK(j["k"][0].get<double>() == doctest::Approx(2));
    CHECK(j["residual"].get<double>() < 1e-10);
  }
  SUBCASE("momentum on the axis has no closed form") {
    const Run r = run({"wigner", "rotation", "--axis", "1,0,0", "--angle", "0.3", "--theta", "0"});
    REQUIRE(r.code == 0);
    CHECK(r.parsed()["closed_form_half_phase"].is_null());
  }
  SUBCASE("superluminal boost") {
    CHECK(run({"wigner", "boost", "--beta", "0,0,1.2"}).code == 2);
  }
}

TEST_CASE("transform") {
  const std::string path = write_descriptor("packet.json", kPacket);

  SUBCASE("no operations") {
    const Run r = run({"transform", path});
    REQUIRE(r.code == 0);
    const json j = r.parsed();
    CHECK(j["schema"] == 1);
    CHECK(j["descriptor"]["ops"].empty());
    CHECK(j["after"] == j["before"]);
    CHECK(j["after"]["norm_squared"].get<double>() == doctest::Approx(1).epsilon(1e-9));
  }
  SUBCASE("boost") {
    const Run r = run({"transform", path, "--op", "boost:0,0,0.5"});
    REQUIRE(r.code == 0);
    const json j = r.parsed();
    const double g = 1 / std::sqrt(1 - 0.25);
    const double e0 = j["before"]["momentum"][0];
    const double p0 = j["before"]["momentum"][3];
    CHECK(j["after"]["momentum"][0].get<double>() == doctest::Approx(g * (e0 + 0.5 * p0)).epsilon(1e-6));
    CHECK(j["after"]["momentum"][3].get<double>() == doctest::Approx(g * (p0 + 0.5 * e0)).epsilon(1e-6));
    CHECK(j["after"]["norm_squared"].get<double>() == doctest::Approx(1).epsilon(1e-6));
    CHECK(j["descriptor"]["ops"][0]["type"] == "boost");
  }
  SUBCASE("parity flips helicity and replays") {
    const Run r = run({"transform", path, "--op", "parity", "--op", "rotate:0,1,0,0.4"});
    REQUIRE(r.code == 0);
    const json j = r.parsed();
    CHECK(j["helicity_before"] == 1);
    CHECK(j["helicity"] == -1);
    CHECK(j["after"]["helicity_weights"]["minus"].get<double>() == doctest::Approx(1).epsilon(1e-6));

    const std::string again = write_descriptor("again.json", j["descriptor"].dump());
    const Run r2 = run({"transform", again, "--op", "parity"});
    REQUIRE(r2.code == 0);
    const json j2 = r2.parsed();
    CHECK(j2["helicity_before"] == -1);
    CHECK(j2["helicity"] == 1);
    CHECK(j2["before"] == j["after"]);
    std::filesystem::remove(again);
  }
  SUBCASE("malformed input") {
    const std::string bad = write_descriptor("bad.json", "{\"kappa\": [0, 0");
    CHECK(run({"transform", bad}).code == 2);
    const std::string wrong = write_descriptor("wrong.json", R"({"kappa": [0, 0, 1], "sigma_k": -1, "helicity": 1, "units": "eV"})");
    CHECK(run({"transform", wrong}).code == 2);
    CHECK(run({"transform", path, "--op", "spin:1"}).code == 2);
    CHECK(run({"transform", path, "--op", "boost:0,0,1"}).code == 2);
    CHECK(run({"transform", temp_path("missing.json").string()}).code == 2);
    std::filesystem::remove(bad);
    std::filesystem::remove(wrong);
  }
  std::filesystem::remove(path);
}

TEST_CASE("fields command") {
  SUBCASE("narrowband energy") {
    const Run r = run({"fields", "--kappa", "3.3", "--ratio", "0.01"});
    REQUIRE(r.code == 0);
    const json j = r.parsed();
    CHECK(j["energy"].get<double>() == doctest::Approx(3.3).epsilon(0.01));
    CHECK(j["momentum"][2].get<double>() == doctest::Approx(3.3).epsilon(0.01));
    CHECK(j["energy_over_kappa"].get<double>() == doctest::Approx(1).epsilon(0.01));
  }
  SUBCASE("csv output") {
    const auto csv = temp_path("fields.csv");
    const Run r = run({"fields", "--kappa", "3.3", "--ratio", "0.05", "--n", "16", "--out", csv.string()});
    REQUIRE(r.code == 0);
    const json j = r.parsed();
    std::ifstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "x,y,z,Ex,Ey,Ez,Bx,By,Bz");
    std::size_t rows = 0;
    bool comma_decimal = false;
    while (std::getline(in, line)) {
      ++rows;
      std::size_t fields = 1;
      for (char c : line) {
        fields += c == ',';
      }
      comma_decimal = comma_decimal || fields != 9;
    }
    CHECK(rows == j["rows"].get<std::size_t>());
    CHECK(rows == std::size_t(16) * 16 * j["grid"]["dims"][2].get<std::size_t>());
    CHECK_FALSE(comma_decimal);
    std::filesystem::remove(csv);
  }
  SUBCASE("time moves the energy") {
    const Run r0 = run({"fields", "--kappa", "1", "--ratio", "0.05", "--n", "16"});
    const Run r1 = run({"fields", "--kappa", "1", "--ratio", "0.05", "--n", "16", "--time", "20"});
    REQUIRE(r0.code == 0);
    REQUIRE(r1.code == 0);
    const json a = r0.parsed();
    const json b = r1.parsed();
    CHECK(std::abs(a["energy_centroid"][2].get<double>()) < 1e-6);
    CHECK(b["energy_centroid"][2].get<double>() == doctest::Approx(20).epsilon(1e-3));
    CHECK(b["envelope_center"][2].get<double>() == doctest::Approx(20));
    CHECK(b["outside_window"] == false);
  }
  SUBCASE("exact and narrowband summaries agree") {
    const std::vector<std::string> base{"fields", "--kappa", "1", "--ratio", "0.05", "--n", "24", "--points", "32"};
    std::vector<std::string> exact = base;
    exact.insert(exact.end(), {"--mode", "exact"});
    const Run rn = run(base);
    const Run re = run(exact);
    REQUIRE(rn.code == 0);
    REQUIRE(re.code == 0);
    const double en = rn.parsed()["energy"];
    const double ee = re.parsed()["energy"];
    CHECK(std::abs(en - ee) / en < 3 * 0.05);
  }
  SUBCASE("under-resolved grid") {
    const Run r = run({"fields", "--kappa", "1", "--ratio", "0.01", "--nz", "100"});
    CHECK(r.code == 1);
    const json j = r.parsed();
    CHECK(j["schema"] == 1);
    CHECK(j["required_n"][2].get<int>() > 100);
    CHECK(j.contains("required_spacing"));
  }
}
