#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "opecsim/config.hpp"
#include "opecsim/scenario.hpp"

using namespace opecsim;

namespace {

namespace fs = std::filesystem;

// Writes a throwaway scenario file and returns its path.
class TempFile {
 public:
  explicit TempFile(const std::string& contents) {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("opecsim_test_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++) + ".cfg");
    std::ofstream out(path_);
    out << contents;
  }
  ~TempFile() { fs::remove(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

const std::string kValidBody =
    "n = 2\n"
    "horizon = 1000\n"
    "seed = 7\n"
    "v = 50\n"
    "arrivals = {0:0.2, 2:0.3, 3:0.5}\n"
    "link1 = {0:0.1, 1:0.2, 2:0.7}\n"
    "link2 = {0:0.7, 2:0.05, 4:0.05, 10:0.1, 20:0.1}\n"
    "p_c = 1.15\n"
    "p_w = 1.1\n"
    "p_av = 0.8\n";

}  // namespace

TEST_CASE("the bundled reference file matches the built-in scenario") {
  const fs::path path = fs::path(OPECSIM_CONFIG_DIR) / "reference.cfg";
  const LoadResult loaded = load_config(path);
  REQUIRE(std::holds_alternative<SimConfig>(loaded));
  CHECK(std::get<SimConfig>(loaded) == reference_scenario());
}

TEST_CASE("the bundled sweep file carries the default grid") {
  const fs::path path = fs::path(OPECSIM_CONFIG_DIR) / "reference_sweep.cfg";
  const LoadResult loaded = load_config(path);
  REQUIRE(std::holds_alternative<SweepSpec>(loaded));
  const SweepSpec& spec = std::get<SweepSpec>(loaded);
  CHECK(spec.v_values ==
        std::vector<double>{1, 5, 10, 20, 50, 100, 150, 200});
  CHECK(spec.policies == std::vector<std::string>{"opec"});
  CHECK(spec.base.horizon == 1000000);
  CHECK(spec.base.seed == 42);
  CHECK(spec.base.arrivals == reference_scenario().arrivals);
}

TEST_CASE("a plain file loads as a single simulation config") {
  TempFile file(kValidBody);
  const LoadResult loaded = load_config(file.path());
  REQUIRE(std::holds_alternative<SimConfig>(loaded));
  const SimConfig& cfg = std::get<SimConfig>(loaded);
  CHECK(cfg.links == 2);
  CHECK(cfg.horizon == 1000);
  CHECK(cfg.seed == 7);
  CHECK(cfg.v == 50.0);
  CHECK(cfg.initial_queue == 0);       // defaults
  CHECK(cfg.initial_virtual_queue == 0.0);
  CHECK(cfg.trace_every == 0);
  CHECK(base_config(loaded) == cfg);
}

TEST_CASE("comments, blank lines and spacing are tolerated") {
  TempFile file(
      "# header comment\n"
      "\n"
      "n=2   # inline comment\n"
      "horizon   =   1000\n"
      "arrivals={0:1.0}\n"
      "link1={0:1.0}\n"
      "link2={0:1.0}\n"
      "p_c=1.15\n"
      "p_w=1.1\n"
      "p_av=0.8\n");
  const LoadResult loaded = load_config(file.path());
  CHECK(std::get<SimConfig>(loaded).seed == kDefaultSeed);
}

TEST_CASE("missing file reports an io error with the path") {
  const char* missing = "/nonexistent/opecsim.cfg";
  try {
    load_config(missing);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.kind() == ConfigError::Kind::Io);
    CHECK(std::string(e.what()).find(missing) != std::string::npos);
  }
}

TEST_CASE("syntax errors carry the offending line number") {
  TempFile file("n = 2\nhorizon = 1000\nthis is not a key value pair\n");
  try {
    load_config(file.path());
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.kind() == ConfigError::Kind::Syntax);
    CHECK(std::string(e.what()).find(":3:") != std::string::npos);
  }
}

TEST_CASE("a distribution that does not normalize names itself") {
  std::string body = kValidBody;
  const std::string needle = "link2 = {0:0.7, 2:0.05, 4:0.05, 10:0.1, 20:0.1}";
  body.replace(body.find(needle), needle.size(),
               "link2 = {0:0.7, 2:0.05, 4:0.05, 10:0.1, 20:0.05}");
  TempFile file(body);
  try {
    load_config(file.path());
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.kind() == ConfigError::Kind::Invariant);
    const std::string what = e.what();
    CHECK(what.find("link2") != std::string::npos);
    CHECK(what.find("0.95") != std::string::npos);
    CHECK(what.find(":7:") != std::string::npos);
  }
}

TEST_CASE("negative V is rejected with the invariant spelled out") {
  TempFile file(kValidBody + "\n");
  std::string body = kValidBody;
  body.replace(body.find("v = 50"), 6, "v = -1");
  TempFile bad(body);
  try {
    load_config(bad.path());
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.kind() == ConfigError::Kind::Invariant);
    CHECK(std::string(e.what()).find("V must be >= 0") != std::string::npos);
  }
}

TEST_CASE("structural mistakes are each rejected") {
  auto expect_error = [](const std::string& body, const std::string& fragment) {
    CAPTURE(fragment);
    TempFile file(body);
    try {
      load_config(file.path());
      FAIL_CHECK("expected ConfigError for: " << fragment);
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find(fragment) != std::string::npos);
    }
  };

  expect_error(kValidBody + "n = 3\n", "duplicate key 'n'");
  expect_error(kValidBody + "mystery = 1\n", "unknown key 'mystery'");
  expect_error(kValidBody + "link3 = {0:1.0}\n", "unknown key 'link3'");

  std::string no_arrivals = kValidBody;
  no_arrivals.erase(no_arrivals.find("arrivals"),
                    no_arrivals.find("link1") - no_arrivals.find("arrivals"));
  expect_error(no_arrivals, "missing required key 'arrivals'");

  std::string zero_links = kValidBody;
  zero_links.replace(zero_links.find("n = 2"), 5, "n = 0");
  expect_error(zero_links, "'n'");

  std::string zero_horizon = kValidBody;
  zero_horizon.replace(zero_horizon.find("horizon = 1000"), 14, "horizon = 0");
  expect_error(zero_horizon, "'horizon'");

  std::string bad_number = kValidBody;
  bad_number.replace(bad_number.find("p_c = 1.15"), 10, "p_c = fast");
  expect_error(bad_number, "not a number");

  std::string bad_dist = kValidBody;
  bad_dist.replace(bad_dist.find("arrivals = {0:0.2, 2:0.3, 3:0.5}"), 32,
                   "arrivals = 0.2, 0.3, 0.5        ");
  expect_error(bad_dist, "must look like");

  std::string no_colon = kValidBody;
  no_colon.replace(no_colon.find("arrivals = {0:0.2, 2:0.3, 3:0.5}"), 32,
                   "arrivals = {0 0.2, 2:0.3, 3:0.5}");
  expect_error(no_colon, "lacks a ':'");

  expect_error(kValidBody + "q0 = -2\n", "'q0'");
  expect_error(kValidBody + "z0 = -0.5\n", "z0 must be >= 0");
  expect_error(kValidBody + "p_c =\n", "has no value");

  std::string negative_energy = kValidBody;
  negative_energy.replace(negative_energy.find("p_av = 0.8"), 10, "p_av = 0.0");
  expect_error(negative_energy, "p_av");
}

TEST_CASE("sweep plans parse and validate") {
  SUBCASE("explicit v_list and policies") {
    TempFile file(kValidBody + "v_list = 1, 5, 10\npolicies = opec, cellular\n");
    const LoadResult loaded = load_config(file.path());
    REQUIRE(std::holds_alternative<SweepSpec>(loaded));
    const SweepSpec& spec = std::get<SweepSpec>(loaded);
    CHECK(spec.v_values == std::vector<double>{1, 5, 10});
    CHECK(spec.policies == std::vector<std::string>{"opec", "cellular"});
    CHECK(base_config(loaded) == spec.base);
  }

  SUBCASE("v_list alone defaults policies to opec") {
    TempFile file(kValidBody + "v_list = 2, 4\n");
    const LoadResult loaded = load_config(file.path());
    CHECK(std::get<SweepSpec>(loaded).policies ==
          std::vector<std::string>{"opec"});
  }

  SUBCASE("policies alone defaults to the standard grid") {
    TempFile file(kValidBody + "policies = random\n");
    const LoadResult loaded = load_config(file.path());
    CHECK(std::get<SweepSpec>(loaded).v_values ==
          std::vector<double>(default_v_grid().begin(), default_v_grid().end()));
  }

  SUBCASE("non-increasing v_list is rejected") {
    TempFile file(kValidBody + "v_list = 5, 5, 10\n");
    CHECK_THROWS_AS(load_config(file.path()), ConfigError);
  }

  SUBCASE("negative v_list entries are rejected") {
    TempFile file(kValidBody + "v_list = -1, 10\n");
    try {
      load_config(file.path());
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("V must be >= 0") != std::string::npos);
    }
  }

  SUBCASE("unknown policy names are rejected") {
    TempFile file(kValidBody + "policies = opec, nonsense\n");
    try {
      load_config(file.path());
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("nonsense") != std::string::npos);
    }
  }
}
