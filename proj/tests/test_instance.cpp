#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <random>

#include "sualb/instance.hpp"
#include "support.hpp"

using namespace sualb;

TEST_CASE("parse_alb reads the shipped sample") {
    std::vector<std::string> warnings;
    Instance inst = load_instance_file(testsupport::data_path("three_tasks.alb"), &warnings);
    CHECK(inst.n == 3);
    CHECK(inst.name == "three_tasks");
    CHECK(inst.task_times == std::vector<int>{3, 4, 5});
    REQUIRE(inst.cycle_time.has_value());
    CHECK(*inst.cycle_time == 16);
    REQUIRE(inst.precedence.size() == 1);
    CHECK(inst.precedence[0] == std::pair<int, int>{0, 2});
    CHECK(inst.fwd_setup[0][1] == 1);
    CHECK(inst.fwd_setup[0][0] == 0);
    CHECK(inst.bwd_setup[2][0] == 2);
    CHECK(inst.bwd_setup[1][1] == 2);
    CHECK(warnings.empty());
}

TEST_CASE("parse_alb separator tolerance and warnings") {
    std::string text =
        "<number of tasks>\n2\n"
        "<task times>\n1,4\n2:  7\n"
        "<precedence relations>\n1;2\n"
        "<made up section>\nignored stuff\n"
        "<end>\n";
    std::vector<std::string> warnings;
    Instance inst = parse_alb(text, &warnings);
    CHECK(inst.task_times == std::vector<int>{4, 7});
    CHECK(inst.precedence.size() == 1);
    // unknown tag + both missing setup sections
    CHECK(warnings.size() == 3);
}

TEST_CASE("parse_alb rejects malformed input") {
    CHECK_THROWS_AS(parse_alb("<number of tasks>\nx\n<end>\n"), ParseError);
    CHECK_THROWS_AS(parse_alb("<task times>\n1 4\n<end>\n"), ParseError);  // times before n
    CHECK_THROWS_AS(
        parse_alb("<number of tasks>\n1\n<task times>\n1 4.5\n<end>\n"),
        ParseError);  // fractional
    CHECK_THROWS_AS(
        parse_alb("<number of tasks>\n1\n<task times>\n1 4\n1 5\n<end>\n"),
        ParseError);  // duplicate
    CHECK_THROWS_AS(
        parse_alb("<number of tasks>\n1\n<task times>\n2 4\n<end>\n"),
        ParseError);  // id range
    CHECK_THROWS_AS(parse_alb("<number of tasks>\n2\n<task times>\n1 4\n2 1\n"
                              "<precedence relations>\n1,2\n2,1\n<end>\n"),
                    ParseError);  // precedence cycle
    CHECK_THROWS_AS(parse_alb("stray\n"), ParseError);
    try {
        parse_alb("<number of tasks>\n1\n<task times>\nnope\n<end>\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 4);
        CHECK(e.tag == "task times");
    }
}

TEST_CASE("alb round-trip preserves instances") {
    std::mt19937 rng(20240817);
    for (int it = 0; it < 40; ++it) {
        Instance inst = testsupport::random_instance(rng, 1 + it % 9);
        if (it % 2 == 0) testsupport::give_cycle_time(inst, rng);
        std::vector<std::string> warnings;
        Instance back = parse_alb(serialize_alb(inst), &warnings);
        CHECK(semantically_equal(inst, back));
        CHECK(warnings.empty());
    }
}

TEST_CASE("canonical round-trip preserves instances and metadata") {
    std::mt19937 rng(7);
    Instance inst = testsupport::random_instance(rng, 6);
    inst.name = "sample";
    inst.cycle_time = 30;
    inst.station_count = 3;
    inst.alpha = "0.25";
    Instance back = parse_canonical(serialize_canonical(inst));
    CHECK(semantically_equal(inst, back));
    CHECK(back.name == "sample");
    REQUIRE(back.alpha.has_value());
    CHECK(*back.alpha == "0.25");
}

TEST_CASE("canonical parser rejects shape errors") {
    CHECK_THROWS_AS(parse_canonical("{"), ParseError);
    CHECK_THROWS_AS(parse_canonical(R"({"task_times": [1]})"), ParseError);
    CHECK_THROWS_AS(parse_canonical(R"({"tasks": 2, "task_times": [1]})"), ParseError);
    CHECK_THROWS_AS(
        parse_canonical(R"({"tasks": 1, "task_times": [1], "forward_setup": [[0, 0]]})"),
        ParseError);
    CHECK_THROWS_AS(
        parse_canonical(
            R"({"tasks": 2, "task_times": [1, 1], "precedence": [[1, 2], [2, 1]]})"),
        ParseError);
}

TEST_CASE("load_instance_file dispatches on content") {
    namespace fs = std::filesystem;
    Instance a = load_instance_file(testsupport::data_path("three_tasks.alb"));
    Instance b = load_instance_file(testsupport::data_path("three_tasks.json"));
    CHECK(semantically_equal(a, b));
    CHECK(b.name == "three_tasks");
    CHECK_THROWS_AS(load_instance_file((fs::temp_directory_path() / "missing.alb").string()),
                    UsageError);
}

TEST_CASE("validate_instance flags structural problems") {
    std::mt19937 rng(3);
    Instance good = testsupport::random_instance(rng, 5);
    CHECK(validate_instance(good).ok());

    Instance bad = good;
    bad.task_times[2] = 0;
    CHECK_FALSE(validate_instance(bad).ok());

    bad = good;
    bad.fwd_setup[1][0] = -1;
    CHECK_FALSE(validate_instance(bad).ok());

    bad = good;
    bad.precedence.push_back({2, 2});
    CHECK_FALSE(validate_instance(bad).ok());

    bad = good;
    bad.precedence.push_back({3, 1});
    bad.precedence.push_back({1, 3});
    CHECK_FALSE(validate_instance(bad).ok());

    bad = good;
    bad.n = 0;
    bad.task_times.clear();
    CHECK_FALSE(validate_instance(bad).ok());
}

TEST_CASE("validate_instance type-specific findings") {
    Instance inst;
    inst.n = 1;
    inst.task_times = {5};
    inst.fwd_setup = {{0}};
    inst.bwd_setup = {{3}};
    inst.cycle_time = 7;  // 5 + 3 > 7

    Diagnostics d1 = validate_instance(inst, ProblemType::type1);
    CHECK_FALSE(d1.ok());

    Diagnostics dn = validate_instance(inst);
    CHECK(dn.ok());
    REQUIRE(dn.warnings.size() >= 1);
    CHECK(dn.warnings[0].find("infeasible as type 1") != std::string::npos);

    Diagnostics d2 = validate_instance(inst, ProblemType::type2);
    CHECK(d2.ok());

    Instance no_cycle = inst;
    no_cycle.cycle_time.reset();
    CHECK_FALSE(validate_instance(no_cycle, ProblemType::type1).ok());
    CHECK_FALSE(validate_instance(no_cycle, ProblemType::type2).ok());
    no_cycle.station_count = 2;
    CHECK(validate_instance(no_cycle, ProblemType::type2).ok());
}

TEST_CASE("validate_instance reports setup triangle violations as warnings") {
    Instance inst;
    inst.n = 3;
    inst.task_times = {1, 1, 1};
    inst.fwd_setup = {{0, 1, 9}, {0, 0, 1}, {0, 0, 0}};  // 1->3 direct 9 > 1+1+1
    inst.bwd_setup.assign(3, std::vector<int>(3, 0));
    Diagnostics d = validate_instance(inst);
    CHECK(d.ok());
    bool found = false;
    for (auto& w : d.warnings)
        if (w.find("triangle") != std::string::npos) found = true;
    CHECK(found);
}

TEST_CASE("derive_station_count under each rounding policy") {
    Instance inst;
    inst.n = 4;
    inst.task_times = {10, 12, 14, 10};  // sum 46
    inst.fwd_setup.assign(4, std::vector<int>(4, 0));
    inst.bwd_setup.assign(4, std::vector<int>(4, 0));

    inst.cycle_time = 14;  // 46/14 = 3.29
    CHECK(derive_station_count(inst, RoundingPolicy::floor) == 3);
    CHECK(derive_station_count(inst, RoundingPolicy::half_up) == 3);
    CHECK(derive_station_count(inst, RoundingPolicy::ceil) == 4);

    inst.cycle_time = 7;  // 46/7 = 6.57
    CHECK(derive_station_count(inst, RoundingPolicy::floor) == 6);
    CHECK(derive_station_count(inst, RoundingPolicy::half_up) == 7);
    CHECK(derive_station_count(inst, RoundingPolicy::ceil) == 7);

    inst.task_times = {3, 3, 3, 12};  // sum 21, half point
    inst.cycle_time = 6;              // 3.5
    CHECK(derive_station_count(inst, RoundingPolicy::floor) == 3);
    CHECK(derive_station_count(inst, RoundingPolicy::half_up) == 4);
    CHECK(derive_station_count(inst, RoundingPolicy::ceil) == 4);

    inst.task_times = {1, 1, 1, 1};
    inst.cycle_time = 100;  // rounds to 0, clamped
    CHECK(derive_station_count(inst, RoundingPolicy::floor) == 1);

    inst.cycle_time.reset();
    CHECK_THROWS_AS(derive_station_count(inst, RoundingPolicy::half_up), UsageError);
}
