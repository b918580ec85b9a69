#include <catch2/catch_amalgamated.hpp>

#include "telescore/model_spec.hpp"

using namespace telescore;

TEST_CASE("model spec parsing") {
    SECTION("all kinds round-trip through their text form") {
        const std::vector<NoiseModel> models = {
            NoiseModel::noiseless(),
            NoiseModel::bit_flip(0.7, 1.0),
            NoiseModel::phase_flip(0.55, 0.25),
            NoiseModel::bitphase_flip(0.3, 0.9),
            NoiseModel::amplitude_damping(0.2, 0.1),
            NoiseModel::phase_damping(0.15, 0.45),
            NoiseModel::global_depolarizing(0.7),
            NoiseModel::combined_depolarizing(0.1, 0.05, 0.05),
        };
        for (const NoiseModel& m : models) {
            const std::string text = format_model(m);
            const NoiseModel parsed = parse_model(text);
            CHECK(parsed.kind() == m.kind());
            for (int i = 0; i < 3; ++i) CHECK(parsed.param(i) == m.param(i));
            CHECK(format_model(parsed) == text);
        }
    }

    SECTION("grammar examples") {
        CHECK(parse_model("bit_flip:p=0.7,q=1.0").kind() == NoiseKind::bit_flip);
        CHECK(parse_model("global_dep:p=0.7").p() == 0.7);
        const NoiseModel c = parse_model("combined_dep:p=0.1,p1=0.05,p2=0.05");
        CHECK(c.p1() == 0.05);
        const NoiseModel a = parse_model("amp_damp:g1=0.2,g2=0.1");
        CHECK(a.g1() == 0.2);
        CHECK(a.g2() == 0.1);
    }

    SECTION("q defaults to 1 for flip kinds") {
        const NoiseModel m = parse_model("bit_flip:p=0.4");
        CHECK(m.q() == 1.0);
    }

    SECTION("errors name the offending kind or key") {
        CHECK_THROWS_WITH(parse_model("bitflip:p=0.7"),
                          Catch::Matchers::ContainsSubstring("bitflip"));
        CHECK_THROWS_WITH(parse_model("bit_flip:prob=0.7"),
                          Catch::Matchers::ContainsSubstring("prob"));
        CHECK_THROWS_WITH(parse_model("amp_damp:g1=0.2"),
                          Catch::Matchers::ContainsSubstring("g2"));
        CHECK_THROWS_WITH(parse_model("global_dep"), Catch::Matchers::ContainsSubstring("p"));
        CHECK_THROWS_WITH(parse_model("global_dep:p=abc"),
                          Catch::Matchers::ContainsSubstring("abc"));
        CHECK_THROWS_WITH(parse_model("global_dep:p=0.5,p=0.6"),
                          Catch::Matchers::ContainsSubstring("duplicate"));
        CHECK_THROWS_AS(parse_model("bit_flip:p=1.5"), std::invalid_argument);
    }
}
