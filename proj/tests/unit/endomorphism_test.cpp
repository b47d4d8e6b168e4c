#include <gtest/gtest.h>

#include "distcsp/analysis.hpp"
#include "distcsp/endomorphism.hpp"
#include "distcsp/error.hpp"
#include "generators.hpp"

using namespace distcsp;

namespace {

Template symmetric(const std::string& name, std::vector<std::pair<std::string, std::vector<Offset>>> rels) {
    std::vector<RelationDef> defs;
    for (auto& [rname, ds] : rels) {
        std::vector<Tuple> body;
        for (auto d : ds) {
            body.push_back({d});
            body.push_back({-d});
        }
        defs.push_back(RelationDef::tuples(rname, 2, std::move(body)));
    }
    return Template(name, std::move(defs));
}

const Template dist13 = symmetric("dist13", {{"R", {1, 3}}});
const Template dist12 = symmetric("dist12", {{"E", {1, 2}}});
const PeriodicMapSpec endo1{3, {0, 1, 0}, 1};

// Maps every member with base point in a wide box and checks membership.
bool endo_in_box(const PeriodicMapSpec& e, const Template& t, Offset box) {
    for (const auto& rel : t.relations())
        for (std::size_t i = 0; i < rel.offset_tuples().size(); ++i)
            for (Offset a = -box; a <= box; ++a) {
                auto tup = rel.instantiate(i, a);
                for (auto& x : tup)
                    x = eval_periodic_map(e, x);
                if (!tuple_in_relation(rel, tup))
                    return false;
            }
    return true;
}

} // namespace

TEST(PeriodicMap, Evaluation) {
    EXPECT_EQ(eval_periodic_map(endo1, 0), 0);
    EXPECT_EQ(eval_periodic_map(endo1, 1), 1);
    EXPECT_EQ(eval_periodic_map(endo1, 2), 0);
    EXPECT_EQ(eval_periodic_map(endo1, 3), 3);
    EXPECT_EQ(eval_periodic_map(endo1, -1), -3);
    EXPECT_EQ(eval_periodic_map(endo1, -2), -2);
    EXPECT_EQ(eval_periodic_map(PeriodicMapSpec{1, {4}, -1}, 10), -6);
}

TEST(PeriodicMap, Validation) {
    EXPECT_THROW(validate_spec({0, {}, 1}), InputError);
    EXPECT_THROW(validate_spec({2, {0}, 1}), InputError);
    EXPECT_THROW(validate_spec({1, {0}, 2}), InputError);
    EXPECT_NO_THROW(validate_spec(endo1));
}

TEST(PeriodicMap, Isometries) {
    EXPECT_TRUE(is_identity(PeriodicMapSpec{}));
    EXPECT_TRUE(is_identity(PeriodicMapSpec{2, {0, 1}, 1}));
    EXPECT_TRUE(is_isometry(PeriodicMapSpec{1, {5}, 1}));
    EXPECT_TRUE(is_isometry(PeriodicMapSpec{1, {5}, -1}));
    EXPECT_TRUE(is_isometry(PeriodicMapSpec{2, {0, -1}, -1}));
    EXPECT_FALSE(is_isometry(endo1));
    EXPECT_FALSE(is_isometry(PeriodicMapSpec{1, {0}, 0}));
}

TEST(PeriodicMap, CompositionIsPointwise) {
    const PeriodicMapSpec f{2, {1, -3}, -1}, g{3, {0, 4, 1}, 0};
    for (const auto& [outer, inner] : {std::pair{f, g}, std::pair{g, f}, std::pair{endo1, f}, std::pair{f, endo1}}) {
        const auto c = compose_specs(outer, inner);
        for (Offset x = -40; x <= 40; ++x)
            EXPECT_EQ(eval_periodic_map(c, x), eval_periodic_map(outer, eval_periodic_map(inner, x)));
    }
}

TEST(Endomorphism, ExampleMapOnDist13) {
    auto check = is_endomorphism(endo1, dist13);
    EXPECT_TRUE(check.is_endomorphism);
    auto c = classify_endomorphism(endo1, dist13);
    EXPECT_EQ(c.kind, EndoKind::Periodic);
    EXPECT_EQ(c.direction, 1);
    ASSERT_TRUE(c.minimal_stable.has_value());
    EXPECT_EQ(*c.minimal_stable, 3);
    EXPECT_EQ(c.stable_numbers, (std::vector<Offset>{3, 6, 9}));
    EXPECT_EQ(c.stable_search_cap, 9);
    EXPECT_FALSE(is_stable(endo1, 1));
}

TEST(Endomorphism, FiniteRangeColouring) {
    const PeriodicMapSpec mod3{3, {0, 1, 2}, 0};
    EXPECT_TRUE(is_endomorphism(mod3, dist12).is_endomorphism);
    auto c = classify_endomorphism(mod3, dist12);
    EXPECT_EQ(c.kind, EndoKind::FiniteRange);
    EXPECT_EQ(c.direction, 0);
    EXPECT_FALSE(c.minimal_stable.has_value());
}

TEST(Endomorphism, CounterexampleAndRejection) {
    const PeriodicMapSpec collapse{1, {0}, 0};
    auto check = is_endomorphism(collapse, dist12);
    EXPECT_FALSE(check.is_endomorphism);
    ASSERT_TRUE(check.counterexample.has_value());
    EXPECT_EQ(check.counterexample->relation, "E");
    EXPECT_FALSE(tuple_in_relation(dist12.at("E"), check.counterexample->image));
    EXPECT_THROW(classify_endomorphism(collapse, dist12), DomainError);
}

TEST(Endomorphism, OnePeriodCheckAgreesWithBox) {
    distcsp::testing::Rng rng(31);
    const std::vector<Template> templates{dist12, dist13, symmetric("d136", {{"R", {1, 3, 6}}, {"S", {3}}}),
                                          symmetric("d25", {{"R", {2, 5}}})};
    int accepted = 0;
    for (int round = 0; round < 4000; ++round) {
        PeriodicMapSpec e;
        e.period = distcsp::testing::uniform(rng, 1, 4);
        e.drift = static_cast<int>(distcsp::testing::uniform(rng, -1, 1));
        e.base_values.resize(static_cast<std::size_t>(e.period));
        for (auto& v : e.base_values)
            v = distcsp::testing::uniform(rng, -3, 3);
        const auto& t = templates[static_cast<std::size_t>(round) % templates.size()];
        const bool got = is_endomorphism(e, t).is_endomorphism;
        accepted += got;
        ASSERT_EQ(got, endo_in_box(e, t, 30)) << t.name() << ' ' << e.period;
    }
    EXPECT_GT(accepted, 0);
}

TEST(Reduction, MultiplesOfThree) {
    const auto t = symmetric("d136", {{"R", {1, 3, 6}}, {"S", {3}}});
    const auto reduced = reduce_template(t, 3);
    const auto expect = symmetric("d136", {{"R", {1, 2}}, {"S", {1}}});
    EXPECT_EQ(reduced.relations().size(), 2u);
    EXPECT_EQ(reduced.at("R"), expect.at("R"));
    EXPECT_EQ(reduced.at("S"), expect.at("S"));
    EXPECT_EQ(reduce_template(t, 1).at("R"), t.at("R"));
    EXPECT_EQ(reduce_template(dist12, 5).at("E").kind(), BodyKind::Empty);
    EXPECT_THROW(reduce_template(t, 0), DomainError);
}

TEST(Search, FindsFirstNonIsometry) {
    EndoSearchOptions opts;
    opts.max_period = 3;
    opts.value_window = 6;
    // with drift 0 allowed, a two-colouring comes first
    auto any = search_periodic_endomorphism(dist13, opts);
    ASSERT_TRUE(any.has_value());
    EXPECT_EQ(any->period, 2);
    EXPECT_EQ(any->drift, 0);
    EXPECT_TRUE(is_endomorphism(*any, dist13).is_endomorphism);

    opts.drifts = {1};
    auto periodic = search_periodic_endomorphism(dist13, opts);
    ASSERT_TRUE(periodic.has_value());
    EXPECT_EQ(periodic->period, 3);
    EXPECT_FALSE(is_isometry(*periodic));
    auto c = classify_endomorphism(*periodic, dist13);
    EXPECT_EQ(c.kind, EndoKind::Periodic);
    EXPECT_EQ(c.direction, 1);
    EXPECT_EQ(*c.minimal_stable, 3);
}

TEST(Search, BoundedRefutation) {
    EndoSearchOptions opts;
    opts.max_period = 4;
    opts.value_window = 8;
    opts.drifts = {0};
    EXPECT_FALSE(search_periodic_endomorphism(symmetric("d136", {{"R", {1, 3, 6}}, {"S", {3}}}), opts).has_value());
    opts.drifts = {2};
    EXPECT_THROW(search_periodic_endomorphism(dist12, opts), InputError);
}

TEST(Search, OrbitBoundOnExampleMap) {
    const std::vector<Offset> d{1, 3};
    const Offset c = stretch_constant(d);
    distcsp::testing::Rng rng(32);
    for (int i = 0; i < 2000; ++i) {
        const Offset x = distcsp::testing::uniform(rng, -500, 500), y = distcsp::testing::uniform(rng, -500, 500);
        EXPECT_LE(gaifman_graph_distance(d, eval_periodic_map(endo1, x), eval_periodic_map(endo1, y)),
                  gaifman_graph_distance(d, x, y) + c);
    }
}
