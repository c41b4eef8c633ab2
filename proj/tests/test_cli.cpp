#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kData = BESS_DATA_DIR;

struct Run {
    int code;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class Sandbox {
public:
    Sandbox() {
        static int counter = 0;
        dir_ = fs::temp_directory_path() / ("bess_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    ~Sandbox() { fs::remove_all(dir_); }

    const fs::path& dir() const { return dir_; }
    fs::path path(const std::string& name) const { return dir_ / name; }

    fs::path write(const std::string& name, const std::string& content) const {
        std::ofstream(path(name), std::ios::binary) << content;
        return path(name);
    }

    Run run(const std::string& args, const std::string& env = "") const {
        const auto out = dir_ / ".stdout";
        const auto err = dir_ / ".stderr";
        const std::string cmd = env + " \"" BESS_CLI_PATH "\" " + args + " >\"" + out.string() + "\" 2>\"" +
                                err.string() + "\"";
        const int status = std::system(cmd.c_str());
        return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
    }

    Run bess(const std::string& args) const { return run("--out \"" + dir_.string() + "/out\" " + args); }
    std::string output(const std::string& name) const { return slurp(dir_ / "out" / name); }

private:
    fs::path dir_;
};

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

}  // namespace

TEST_CASE("score") {
    Sandbox s;
    SUBCASE("case-study fixture ranks Aakirkeby first") {
        const auto r = s.bess("score " + q(kData / "sites.csv"));
        CHECK(r.code == 0);
        CHECK(s.output("site_scores.csv").find("\n1,Aakirkeby,") != std::string::npos);
        CHECK(s.output("site_scores.md").find("Recommended site: **Aakirkeby** (23/24)") != std::string::npos);
    }
    SUBCASE("empty file") {
        const auto r = s.bess("score " + q(s.write("empty.csv", "")));
        CHECK(r.code == 2);
        CHECK(r.err.find("no sites") != std::string::npos);
    }
    SUBCASE("score out of range names the line") {
        const auto r = s.bess("score " + q(s.write("bad.csv", "# header\nA,2,2,2,2,2,2,2,2,2,2,2,2\nB,2,2,2,3,2,2,2,2,2,2,2,2\n")));
        CHECK(r.code == 2);
        CHECK(r.err.find("line 3") != std::string::npos);
    }
    SUBCASE("missing input file") {
        CHECK(s.bess("score " + q(s.path("absent.csv"))).code == 2);
    }
}

TEST_CASE("fees") {
    Sandbox s;
    const auto tariff = q(kData / "tariff_2024.json");
    SUBCASE("1 MW with the 2024 tariff") {
        CHECK(s.bess("fees --power-mw 1 --tariff " + tariff).code == 0);
        const auto csv = s.output("fees.csv");
        CHECK(csv.find("\n1,A-high,") != std::string::npos);
        CHECK(csv.find(",875000.00,DKK\n") != std::string::npos);
        CHECK(csv.find(",1062500.00,DKK\n") != std::string::npos);
        CHECK(csv.find(",1600000.00,DKK\n") != std::string::npos);
    }
    SUBCASE("0 MW gives zero fees") {
        CHECK(s.bess("fees --power-mw 0 --tariff " + tariff).code == 0);
        const auto csv = s.output("fees.csv");
        std::istringstream lines(csv);
        std::string line;
        std::getline(lines, line);
        int rows = 0;
        while (std::getline(lines, line)) {
            ++rows;
            CHECK(line.find(",0.00,DKK") != std::string::npos);
        }
        CHECK(rows == 5);
    }
    SUBCASE("tariff missing category C") {
        auto text = slurp(kData / "tariff_2024.json");
        text.erase(text.find(",\n    \"C\""), text.find("}\n  }") + 1 - text.find(",\n    \"C\""));
        const auto r = s.bess("fees --power-mw 1 --tariff " + q(s.write("t.json", text)));
        CHECK(r.code == 2);
        CHECK(r.err.find("category C") != std::string::npos);
    }
    SUBCASE("exchange rate from the environment") {
        s.run("fees --power-mw 1 --tariff " + tariff, "BESS_OUT_DIR=" + q(s.path("env")) + " BESS_DKK_PER_EUR=7.5");
        CHECK(slurp(s.path("env") / "fees.md").find("7.5000 DKK/EUR") != std::string::npos);
        CHECK(slurp(s.path("env") / "fees.md").find("116 666.67 EUR") != std::string::npos);
    }
}

TEST_CASE("simulate") {
    Sandbox s;
    SUBCASE("constant FCR-N fixture") {
        CHECK(s.bess("simulate --prices " + q(kData / "prices_constant_fcrn.csv")).code == 0);
        const auto j = nlohmann::json::parse(s.output("revenue.json"));
        CHECK(j["net"].get<double>() == 87600.0);
        CHECK(s.output("dispatch_log.csv").rfind("interval,", 0) == 0);
    }
    SUBCASE("peak-like fixture exceeds 800 kEUR") {
        CHECK(s.bess("simulate --prices " + q(kData / "prices_peak_like.csv")).code == 0);
        const auto j = nlohmann::json::parse(s.output("revenue.json"));
        CHECK(j["net"].get<double>() > 800000.0);
    }
    SUBCASE("empty price file") {
        const auto r = s.bess("simulate --prices " + q(s.write("p.csv", "fcr_n,fcr_d_up,fcr_d_down,ffr,spot\n")));
        CHECK(r.code == 2);
        CHECK(r.err.find("empty") != std::string::npos);
    }
    SUBCASE("malformed row names the line") {
        const auto r = s.bess("simulate --prices " + q(s.write("p.csv", "1,2,3,4,5\n1,2,x,4,5\n")));
        CHECK(r.code == 2);
        CHECK(r.err.find("line 2") != std::string::npos);
    }
    SUBCASE("invalid battery") {
        CHECK(s.bess("simulate --rte 1.5 --prices " + q(kData / "prices_constant_fcrn.csv")).code == 2);
    }
}

TEST_CASE("outputs are deterministic") {
    Sandbox s;
    const auto args = "simulate --prices " + q(kData / "prices_peak_like.csv");
    s.run("--out " + q(s.path("a/nested")) + " " + args);
    s.run("--out " + q(s.path("b")) + " " + args);
    for (const char* f : {"revenue.md", "revenue.json", "dispatch_log.csv"}) {
        const auto a = slurp(s.path("a/nested") / f);
        CHECK_FALSE(a.empty());
        CHECK(a == slurp(s.path("b") / f));
    }
}

TEST_CASE("project") {
    Sandbox s;
    const auto file = q(s.path("p.json"));
    REQUIRE(s.bess("project init " + file + " --name \"Bornholm BESS\"").code == 0);
    CHECK(s.bess("project status " + file).out.find("phase: Feasibility") != std::string::npos);
    CHECK(s.bess("project init " + file + " --name again").code == 2);

    SUBCASE("gate rejection names the missing fire certificate") {
        for (const char* k : {"SiteSelectionReport", "BusinessCase"})
            REQUIRE(s.bess("project record " + file + " --kind " + k).code == 0);
        REQUIRE(s.bess("project advance " + file).code == 0);
        REQUIRE(s.bess("project record " + file + " --kind ConnectionOffer --reference \"Trefor Elnet offer\"").code == 0);
        REQUIRE(s.bess("project record " + file + " --kind BuildingPermit --date 2024-03-01").code == 0);
        const auto before = slurp(s.path("p.json"));
        const auto r = s.bess("project advance " + file);
        CHECK(r.code == 3);
        CHECK(r.err.find("FireCertificate") != std::string::npos);
        CHECK(slurp(s.path("p.json")) == before);
        CHECK(s.bess("project status " + file).out.find("Trefor Elnet offer") != std::string::npos);
    }
    SUBCASE("schedule with defaults") {
        CHECK(s.bess("project schedule " + file).code == 0);
        CHECK(s.output("timeline.csv").find("\nPermitting,2,14\n") != std::string::npos);
    }
    SUBCASE("schedule overrides") {
        const auto params = s.write("s.json", R"({"grid_review": 4, "municipal_review": 5})");
        CHECK(s.bess("project schedule " + file + " --params " + q(params)).code == 0);
        CHECK(s.output("timeline.csv").find("\nPermitting,2,7\n") != std::string::npos);
    }
    SUBCASE("unknown deliverable kind") {
        CHECK(s.bess("project record " + file + " --kind Bogus").code == 2);
    }
    SUBCASE("corrupt project file") {
        s.write("p.json", "{ broken");
        CHECK(s.bess("project status " + file).code == 2);
    }
}

TEST_CASE("sat") {
    Sandbox s;
    const auto cycles = q(kData / "cycle_log_eta090.csv");
    SUBCASE("0.90 log with clean telemetry passes") {
        const auto r = s.bess("sat --cycles " + cycles + " --telemetry " + q(kData / "telemetry.csv"));
        CHECK(r.code == 0);
        CHECK(r.out.find("0.9000") != std::string::npos);
        const auto j = nlohmann::json::parse(s.output("sat_report.json"));
        CHECK(j["overall"] == true);
    }
    SUBCASE("slow failover fails with a report") {
        const auto r = s.bess("sat --cycles " + cycles + " --telemetry " + q(kData / "telemetry_slow_failover.csv"));
        CHECK(r.code == 4);
        CHECK(s.output("sat_report.md").find("FAIL") != std::string::npos);
    }
    SUBCASE("two-cycle log is an input error") {
        const auto r = s.bess("sat --cycles " + q(kData / "cycle_log_two_cycles.csv") + " --telemetry " +
                              q(kData / "telemetry.csv"));
        CHECK(r.code == 2);
        CHECK(r.err.find("at least 3") != std::string::npos);
    }
}

TEST_CASE("pq") {
    Sandbox s;
    const auto limits = q(kData / "pq_limits.json");
    SUBCASE("compliant fixture") {
        CHECK(s.bess("pq --measurements " + q(kData / "pq_measurements.csv") + " --limits " + limits).code == 0);
        CHECK(s.output("pq_dossier.md").find("PASS") != std::string::npos);
    }
    SUBCASE("THD over limit under full discharge") {
        const auto r = s.bess("pq --measurements " + q(kData / "pq_measurements_thd_fail.csv") + " --limits " + limits);
        CHECK(r.code == 4);
        CHECK(r.out.find("tuned passive filters, active filters, or ramp-rate limits") != std::string::npos);
        CHECK(s.output("pq_dossier.md").find("full discharge") != std::string::npos);
    }
    SUBCASE("limits file absent") {
        CHECK(s.bess("pq --measurements " + q(kData / "pq_measurements.csv") + " --limits " + q(s.path("x.json"))).code ==
              2);
    }
    SUBCASE("missing required condition") {
        const auto m = s.write("m.csv", "condition,thd,pst,plt,dc_injection,unbalance,rvc,noise\n"
                                        "steady power,3,0.4,0.3,0.1,0.8,1.4,41\n");
        const auto r = s.bess("pq --measurements " + q(m) + " --limits " + limits);
        CHECK(r.code == 2);
        CHECK(r.err.find("full discharge") != std::string::npos);
    }
}
