#include <gtest/gtest.h>

#include "distcsp_tools/io.hpp"

using namespace distcsp;
using namespace distcsp::io;

namespace {

std::string error_of(auto&& fn) {
    try {
        fn();
    } catch (const ParseError& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST(Io, TemplateRoundTrip) {
    const std::string text = R"({"name": "t", "relations": [
        {"name": "T", "arity": 3, "tuples": [[2, 1], [0, 0], [2, 1]]},
        {"name": "U", "arity": 1, "body": "full"},
        {"name": "Z", "arity": 2, "body": "empty"},
        {"name": "N", "arity": 2, "tuples": []}]})";
    const auto t = parse_template(text);
    EXPECT_EQ(t.at("T").offset_tuples().size(), 2u);
    EXPECT_EQ(t.at("U").kind(), BodyKind::Full);
    EXPECT_EQ(t.at("N").kind(), BodyKind::Empty);
    const auto doc = template_to_json(t);
    EXPECT_EQ(parse_template(doc.dump()), t);
    EXPECT_EQ(doc["relations"][0]["tuples"], json::parse("[[0,0],[2,1]]"));
}

TEST(Io, TemplateErrorsCarryPaths) {
    EXPECT_NE(error_of([] { parse_template(R"({"name": "t", "relations": [{"name": "R", "arity": 3, "tuples": [[1]]}]})"); })
                  .find("$.relations[0].tuples[0]"),
              std::string::npos);
    EXPECT_NE(error_of([] { parse_template(R"({"name": "t", "relations": [], "extra": 1})"); }).find("extra"),
              std::string::npos);
    EXPECT_NE(error_of([] { parse_template(R"({"name": "t", "relations": [{"name": "R", "arity": 1, "tuples": []}]})"); })
                  .find("$.relations[0].tuples"),
              std::string::npos);
    EXPECT_NE(error_of([] { parse_template(R"({"name": "t", "relations": [{"name": "R", "arity": 2, "tuples": [["x"]]}]})"); })
                  .find("$.relations[0].tuples[0][0]"),
              std::string::npos);
    EXPECT_NE(error_of([] {
                  parse_template(R"({"name": "t", "relations": [{"name": "R", "arity": 2, "body": "full"},
                                                                {"name": "R", "arity": 2, "body": "full"}]})");
              }).find("duplicate"),
              std::string::npos);
    EXPECT_NE(error_of([] { parse_template("{\"name\": "); }).find("malformed"), std::string::npos);
}

TEST(Io, InstanceValidation) {
    const auto t = parse_template(R"({"name": "t", "relations": [{"name": "E", "arity": 2, "tuples": [[1]]}]})");
    const auto inst = parse_instance(R"({"variables": 2, "constraints": [{"relation": "E", "args": [1, 0]}]})", t);
    EXPECT_EQ(inst.constraints[0].args, (std::vector<std::size_t>{1, 0}));
    EXPECT_EQ(parse_instance(instance_to_json(inst).dump(), t), inst);
    EXPECT_NE(error_of([&] { parse_instance(R"({"variables": 2, "constraints": [{"relation": "F", "args": [0, 1]}]})", t); })
                  .find("$.constraints[0].relation"),
              std::string::npos);
    EXPECT_NE(error_of([&] { parse_instance(R"({"variables": 2, "constraints": [{"relation": "E", "args": [0, 2]}]})", t); })
                  .find("$.constraints[0].args[1]"),
              std::string::npos);
    EXPECT_NE(error_of([&] { parse_instance(R"({"variables": 2, "constraints": [{"relation": "E", "args": [0]}]})", t); })
                  .find("arity"),
              std::string::npos);
    EXPECT_NE(error_of([&] { parse_instance(R"({"variables": 0, "constraints": []})", t); }).find("$.variables"),
              std::string::npos);
}

TEST(Io, Assignment) {
    EXPECT_EQ(parse_assignment(R"({"values": [0, -3, 7]})").values, (std::vector<Offset>{0, -3, 7}));
    EXPECT_NE(error_of([] { parse_assignment(R"({"values": [0, 1.5]})"); }).find("$.values[1]"), std::string::npos);
}

TEST(Io, PeriodicSpec) {
    const auto s = parse_periodic_spec("p=3; values=0,1,0; drift=+1");
    EXPECT_EQ(s, (PeriodicMapSpec{3, {0, 1, 0}, 1}));
    EXPECT_EQ(format_periodic_spec(s), "p=3; values=0,1,0; drift=+1");
    EXPECT_EQ(parse_periodic_spec(format_periodic_spec({2, {-4, 5}, -1})), (PeriodicMapSpec{2, {-4, 5}, -1}));
    EXPECT_EQ(parse_periodic_spec("p=1;values=7;drift=0").drift, 0);
    EXPECT_THROW(parse_periodic_spec("p=2; values=0; drift=+1"), InputError);
    EXPECT_THROW(parse_periodic_spec("p=1; values=0; drift=+2"), ParseError);
    EXPECT_THROW(parse_periodic_spec("p=1; values=0"), ParseError);
    EXPECT_THROW(parse_periodic_spec("p=x; values=0; drift=0"), ParseError);
}

TEST(Io, ReportsAreStable) {
    const json a = json::parse(R"({"b": 1, "a": [1, 2]})");
    EXPECT_EQ(serialize_report(a), "{\n  \"a\": [\n    1,\n    2\n  ],\n  \"b\": 1\n}\n");
    EXPECT_EQ(verdict_name(VerdictKind::Sat), "sat");
    EXPECT_EQ(verdict_name(VerdictKind::Unsat), "unsat");
    EXPECT_EQ(verdict_name(VerdictKind::Unknown), "unknown");
}
