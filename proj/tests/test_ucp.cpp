#include <doctest.h>

#include <algorithm>
#include <random>

#include "ucpsvr/errors.hpp"
#include "ucpsvr/ucp.hpp"

using namespace ucpsvr;

namespace {

ProjectDescriptor zero_rating_project() {
    ProjectDescriptor project;
    project.name = "zero";
    project.actors = {ActorClass::Simple};
    project.use_case_transactions = {2};
    return project;
}

// Mixed-rating fixture; expected values frozen from an independent
// spreadsheet evaluation of the published formulas.
ProjectDescriptor fixture_project() {
    ProjectDescriptor project;
    project.name = "fixture";
    project.actors = {ActorClass::Simple,  ActorClass::Simple,
                      ActorClass::Average, ActorClass::Average,
                      ActorClass::Average, ActorClass::Complex};
    project.use_case_transactions = {3, 4, 7, 8, 12, 2};
    project.technical.ratings = {3, 2, 4, 1, 0, 5, 2, 3, 4, 1, 2, 0, 5};
    project.environmental.ratings = {4, 3, 4, 2, 5, 1, 2, 3};
    return project;
}

}  // namespace

TEST_SUITE("ucp") {

TEST_CASE("actor weights") {
    CHECK(actor_weight(ActorClass::Simple) == 1.0);
    CHECK(actor_weight(ActorClass::Average) == 2.0);
    CHECK(actor_weight(ActorClass::Complex) == 3.0);
}

TEST_CASE("use case weights") {
    CHECK(use_case_weight(UseCaseClass::Simple) == 5.0);
    CHECK(use_case_weight(UseCaseClass::Average) == 10.0);
    CHECK(use_case_weight(UseCaseClass::Complex) == 15.0);
}

TEST_CASE("use case classification bands") {
    CHECK(classify_use_case(0) == UseCaseClass::Simple);
    CHECK(classify_use_case(3) == UseCaseClass::Simple);
    CHECK(classify_use_case(4) == UseCaseClass::Average);
    CHECK(classify_use_case(5) == UseCaseClass::Average);
    CHECK(classify_use_case(7) == UseCaseClass::Average);
    CHECK(classify_use_case(8) == UseCaseClass::Complex);
    CHECK(classify_use_case(9) == UseCaseClass::Complex);
    CHECK_THROWS_AS(classify_use_case(-1), ValidationError);
}

TEST_CASE("classification is non-decreasing in transactions") {
    double previous = 0.0;
    for (int t = 0; t <= 50; ++t) {
        double weight = use_case_weight(classify_use_case(t));
        CHECK(weight >= previous);
        previous = weight;
    }
}

TEST_CASE("uaw sums actor weights") {
    CHECK(compute_uaw({ActorClass::Simple, ActorClass::Simple,
                       ActorClass::Complex}) == 5.0);
    CHECK(compute_uaw({ActorClass::Average}) == 2.0);
    CHECK(compute_uaw({ActorClass::Complex, ActorClass::Complex,
                       ActorClass::Complex, ActorClass::Complex}) == 12.0);
    CHECK_THROWS_AS(compute_uaw({}), ValidationError);
}

TEST_CASE("uucw sums classified use case weights") {
    CHECK(compute_uucw({2, 5}) == 15.0);
    CHECK(compute_uucw({1, 1, 1}) == 15.0);
    CHECK(compute_uucw({10}) == 15.0);
    CHECK_THROWS_AS(compute_uucw({}), ValidationError);
}

TEST_CASE("uucp adds the unadjusted weights") {
    CHECK(compute_uucp(5.0, 15.0) == 20.0);
    CHECK(compute_uucp(0.0, 0.0) == 0.0);
    CHECK(compute_uucp(12.0, 45.0) == 57.0);
    CHECK_THROWS_AS(compute_uucp(-1.0, 0.0), ValidationError);
}

TEST_CASE("technical complexity factor") {
    TechnicalRatings zeros;
    auto [tf0, tcf0] = compute_tcf(zeros);
    CHECK(tf0 == 0.0);
    CHECK(tcf0 == 0.6);

    TechnicalRatings fives;
    fives.ratings.fill(5);
    auto [tf5, tcf5] = compute_tcf(fives);
    CHECK(tf5 == 75.0);
    CHECK(tcf5 == doctest::Approx(1.35).epsilon(1e-12));

    TechnicalRatings t1_only;
    t1_only.ratings[0] = 5;
    auto [tf1, tcf1] = compute_tcf(t1_only);
    CHECK(tf1 == 10.0);
    CHECK(tcf1 == doctest::Approx(0.7).epsilon(1e-12));

    TechnicalRatings bad;
    bad.ratings[3] = 6;
    CHECK_THROWS_AS(compute_tcf(bad), ValidationError);
    bad.ratings[3] = -1;
    CHECK_THROWS_AS(compute_tcf(bad), ValidationError);
}

TEST_CASE("environmental factor") {
    EnvironmentalRatings zeros;
    auto [ef0, e0] = compute_ef(zeros);
    CHECK(ef0 == 0.0);
    CHECK(e0 == 1.4);

    EnvironmentalRatings fives;
    fives.ratings.fill(5);
    auto [ef5, e5] = compute_ef(fives);
    CHECK(ef5 == 37.5);
    CHECK(e5 == doctest::Approx(0.275).epsilon(1e-12));

    EnvironmentalRatings f7_only;
    f7_only.ratings[6] = 5;
    auto [ef7, e7] = compute_ef(f7_only);
    CHECK(ef7 == -5.0);
    CHECK(e7 == doctest::Approx(1.55).epsilon(1e-12));

    EnvironmentalRatings bad;
    bad.ratings[1] = 7;
    CHECK_THROWS_AS(compute_ef(bad), ValidationError);
}

TEST_CASE("compute_ucp on the zero-rating project") {
    UcpBreakdown b = compute_ucp(zero_rating_project());
    CHECK(b.uaw == 1.0);
    CHECK(b.uucw == 5.0);
    CHECK(b.uucp == 6.0);
    CHECK(b.tcf == 0.6);
    CHECK(b.ef == 1.4);
    CHECK(b.ucp == doctest::Approx(5.04).epsilon(1e-12));
}

TEST_CASE("compute_ucp matches the spreadsheet fixture") {
    UcpBreakdown b = compute_ucp(fixture_project());
    CHECK(b.uaw == 11.0);
    CHECK(b.uucw == 60.0);
    CHECK(b.uucp == 71.0);
    CHECK(b.tfactor == 36.5);
    CHECK(b.tcf == doctest::Approx(0.965).epsilon(1e-12));
    CHECK(b.efactor == 23.5);
    CHECK(b.ef == doctest::Approx(0.695).epsilon(1e-12));
    CHECK(b.ucp == doctest::Approx(47.617925).epsilon(1e-12));
}

TEST_CASE("breakdown identities hold on random projects") {
    std::mt19937 rng(991);
    std::uniform_int_distribution<int> actor_count(1, 10);
    std::uniform_int_distribution<int> actor_kind(0, 2);
    std::uniform_int_distribution<int> uc_count(1, 12);
    std::uniform_int_distribution<int> transactions(0, 15);
    std::uniform_int_distribution<int> rating(0, 5);

    for (int trial = 0; trial < 200; ++trial) {
        ProjectDescriptor project;
        project.name = "random";
        int na = actor_count(rng);
        for (int i = 0; i < na; ++i) {
            project.actors.push_back(static_cast<ActorClass>(actor_kind(rng)));
        }
        int nu = uc_count(rng);
        for (int i = 0; i < nu; ++i) {
            project.use_case_transactions.push_back(transactions(rng));
        }
        for (int& r : project.technical.ratings) r = rating(rng);
        for (int& r : project.environmental.ratings) r = rating(rng);

        UcpBreakdown b = compute_ucp(project);
        CHECK(b.uucp == b.uaw + b.uucw);
        CHECK(b.tcf == doctest::Approx(0.6 + 0.01 * b.tfactor).epsilon(1e-12));
        CHECK(b.ef == doctest::Approx(1.4 - 0.03 * b.efactor).epsilon(1e-12));
        CHECK(b.ucp ==
              doctest::Approx(b.uucp * b.tcf * b.ef).epsilon(1e-12));
        CHECK(b.tcf >= 0.6);
        CHECK(b.tcf <= 1.35);
        CHECK(b.ef >= 0.125);
        CHECK(b.ef <= 1.55);

        ProjectDescriptor larger = project;
        larger.actors.push_back(ActorClass::Simple);
        larger.use_case_transactions.push_back(transactions(rng));
        CHECK(compute_ucp(larger).uucp >= b.uucp);
    }
}

TEST_CASE("adjustment ranges are attained at rating corners") {
    double tcf_min = 1e9;
    double tcf_max = -1e9;
    for (int mask = 0; mask < (1 << 13); ++mask) {
        TechnicalRatings t;
        for (int i = 0; i < 13; ++i) t.ratings[i] = (mask >> i) & 1 ? 5 : 0;
        double tcf = compute_tcf(t).second;
        tcf_min = std::min(tcf_min, tcf);
        tcf_max = std::max(tcf_max, tcf);
    }
    CHECK(tcf_min == 0.6);
    CHECK(tcf_max == doctest::Approx(1.35).epsilon(1e-12));

    // F7 carries a negative weight, so the extreme EF values come from
    // mixed corners rather than the all-zero / all-five ones.
    double ef_min = 1e9;
    double ef_max = -1e9;
    for (int mask = 0; mask < (1 << 8); ++mask) {
        EnvironmentalRatings f;
        for (int i = 0; i < 8; ++i) f.ratings[i] = (mask >> i) & 1 ? 5 : 0;
        double ef = compute_ef(f).second;
        ef_min = std::min(ef_min, ef);
        ef_max = std::max(ef_max, ef);
    }
    CHECK(ef_min == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(ef_max == doctest::Approx(1.55).epsilon(1e-12));
}

}  // TEST_SUITE
