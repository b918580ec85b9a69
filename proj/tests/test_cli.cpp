#include <catch2/catch_amalgamated.hpp>

#include "subprocess.hpp"

using telescore::test::cli_path;
using telescore::test::run_command;

TEST_CASE("cli basics") {
    const std::string cli = cli_path();
    if (cli.empty()) {
        FAIL("TELESCORE_CLI environment variable is not set");
    }

    SECTION("score prints the perfect-resource record") {
        const auto r = run_command(cli + " score --model noiseless --alpha 0.5 --k 3");
        CHECK(r.exit_code == 0);
        CHECK(r.out.find("F                1") != std::string::npos);
        CHECK(r.out.find("D                0") != std::string::npos);
        CHECK(r.out.find("tau              1") != std::string::npos);
        CHECK(r.out.find("quantum_useful   true") != std::string::npos);
    }

    SECTION("malformed model spec exits 2 and names the bad key") {
        const auto r = run_command(cli + " score --model bit_flip:zeta=1");
        CHECK(r.exit_code == 2);
        CHECK(r.err.find("zeta") != std::string::npos);
    }

    SECTION("out-of-range parameter exits 2 and names the constraint") {
        const auto r = run_command(cli + " score --model bit_flip:p=1.7");
        CHECK(r.exit_code == 2);
        CHECK(r.err.find("[0, 1]") != std::string::npos);
    }

    SECTION("unknown flags are rejected") {
        const auto r = run_command(cli + " score --frobnicate");
        CHECK(r.exit_code == 2);
    }

    SECTION("numerical failures exit 1") {
        // k* over a degenerate range where the deviation vanishes identically
        const auto r =
            run_command(cli + " kstar --model noiseless --range 0.4999999999:0.5");
        CHECK(r.exit_code == 1);
        CHECK(r.err.find("unbounded") != std::string::npos);
    }

    SECTION("sweep csv carries the schema header") {
        const auto r = run_command(cli + " sweep --model global_dep:p=0.7 --alpha-grid 0:0.5:6"
                                         " --k-list 2.5 --format csv");
        CHECK(r.exit_code == 0);
        CHECK(r.out.rfind("alpha,kind,params,k,F,D,tau,tau_noiseless,tau_classical,"
                          "nonclassical,beats_noiseless\n", 0) == 0);
        CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 7);  // header + 6 rows
    }

    SECTION("verify passes for a cataloged model") {
        const auto r = run_command(cli + " verify --model phase_flip:p=0.6 --samples 20000"
                                         " --seed 7 --grid 5");
        CHECK(r.exit_code == 0);
        CHECK(r.out.find("status: OK") != std::string::npos);
        CHECK(r.err.find("seed=7") != std::string::npos);  // the seed is logged
    }

    SECTION("chain command reports the closed-form averages") {
        const auto r = run_command(cli + " chain --n 3 --alpha 0.5 --k-list 2.5");
        CHECK(r.exit_code == 0);
        CHECK(r.out.find("F_n = 1") != std::string::npos);
        CHECK(r.out.find("D_n = 0") != std::string::npos);
    }

    SECTION("output lands in --output with identical bytes") {
        const std::string path = "cli_out_test.csv";
        const auto direct = run_command(cli + " sweep --model noiseless --alpha-grid 0:0.5:3"
                                              " --k-list 1 --format csv");
        const auto filed = run_command(cli + " sweep --model noiseless --alpha-grid 0:0.5:3"
                                             " --k-list 1 --format csv --output " + path);
        CHECK(filed.exit_code == 0);
        CHECK(filed.out.empty());
        CHECK(telescore::test::slurp(path) == direct.out);
        std::remove(path.c_str());
    }
}
