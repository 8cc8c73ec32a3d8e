#include "troplog/fixture.hpp"
#include "troplog/dot.hpp"

#include "sample_curves.hpp"
#include "sample_maps.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <numeric>

namespace troplog {
namespace {

using testing::make_rng;

std::vector<std::filesystem::path> shipped_fixtures() {
    std::vector<std::filesystem::path> out;
    for (const auto& entry : std::filesystem::directory_iterator(TROPLOG_FIXTURE_DIR))
        if (entry.path().extension() == ".json") out.push_back(entry.path());
    std::sort(out.begin(), out.end());
    return out;
}

std::string triangle_text() { return read_text_file(std::string(TROPLOG_FIXTURE_DIR) + "/triangle_core_seven_legs.json"); }

Json triangle_json() { return parse_json_text(triangle_text()); }

std::string error_of(const Json& j) {
    try {
        fixture_from_json(j);
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

TEST(Fixture, ShippedFixturesRoundTrip) {
    const auto files = shipped_fixtures();
    ASSERT_GE(files.size(), 4u);
    for (const auto& path : files) {
        const std::string text = read_text_file(path.string());
        const Fixture fx = parse_fixture(text);
        const std::string once = serialize_fixture(fx);
        EXPECT_EQ(parse_fixture(once), fx) << path;
        EXPECT_EQ(serialize_fixture(parse_fixture(once)), once) << path;
        // nothing in the file is dropped or defaulted
        EXPECT_EQ(nlohmann::json::parse(text), nlohmann::json::parse(once)) << path;
    }
}

TEST(Fixture, ShippedExpectationsCarryProvenance) {
    for (const auto& path : shipped_fixtures()) {
        const Json j = parse_json_text(read_text_file(path.string()));
        if (!j.contains("expected")) continue;
        for (const auto& [name, e] : j.at("expected").items()) {
            ASSERT_TRUE(e.contains("provenance")) << path << " " << name;
            const auto& tags = provenance_tags();
            EXPECT_NE(std::find(tags.begin(), tags.end(), e.at("provenance").get<std::string>()), tags.end())
                << path << " " << name;
        }
    }
}

TEST(Fixture, UntaggedExpectationsAreRefused) {
    Json j = triangle_json();
    j["expected"]["radius_m5"].erase("provenance");
    EXPECT_NE(error_of(j).find("without provenance"), std::string::npos);
    j["expected"]["radius_m5"]["provenance"] = "";
    EXPECT_NE(error_of(j).find("without provenance"), std::string::npos);
    j["expected"]["radius_m5"]["provenance"] = "folklore";
    EXPECT_NE(error_of(j).find("unknown provenance"), std::string::npos);
}

TEST(Fixture, UnknownFieldsAreRejected) {
    const std::vector<std::pair<std::vector<std::string>, std::string>> places{
        {{}, "comment"},
        {{"curve"}, "faces"},
        {{"expected", "radius_m5"}, "tolerance"},
        {{"expected", "radius_m5", "value"}, "approx"},
    };
    for (const auto& [where, key] : places) {
        Json j = triangle_json();
        Json* node = &j;
        for (const auto& k : where) node = &(*node)[k];
        (*node)[key] = 1;
        EXPECT_NE(error_of(j).find("unknown field '" + key + "'"), std::string::npos) << key;
    }
    Json j = triangle_json();
    j["curve"]["edges"][2]["lenght"] = Json::object();
    const std::string msg = error_of(j);
    EXPECT_NE(msg.find("curve.edges[2]"), std::string::npos) << msg;
    EXPECT_NE(msg.find("lenght"), std::string::npos) << msg;
}

TEST(Fixture, ParseErrorsGiveLineAndColumn) {
    try {
        parse_fixture("{\n  \"format_version\": 1,\n  \"name\": oops\n}\n");
        FAIL() << "expected an error";
    } catch (const Error& e) {
        EXPECT_EQ(std::string(e.what()).rfind("line 3, column 11", 0), 0u) << e.what();
    }
    EXPECT_THROW(parse_fixture(""), Error);
    EXPECT_THROW(parse_fixture("[1, 2]"), Error);
}

TEST(Fixture, StructuralErrors) {
    auto broken = [](auto edit) {
        Json j = triangle_json();
        edit(j);
        return error_of(j);
    };
    EXPECT_NE(broken([](Json& j) { j["format_version"] = 2; }).find("unsupported version"), std::string::npos);
    EXPECT_NE(broken([](Json& j) { j["curve"]["edges"][0]["to"] = "Q"; }).find("unknown vertex 'Q'"), std::string::npos);
    EXPECT_NE(broken([](Json& j) { j["curve"]["edges"][0]["length"] = {{"g9", "1"}}; }).find("unknown parameter"),
              std::string::npos);
    EXPECT_NE(broken([](Json& j) { j["curve"]["edges"][0]["length"] = {{"f1", "-1"}}; }).find("negative coefficient"),
              std::string::npos);
    EXPECT_NE(broken([](Json& j) { j["curve"]["edges"][0]["length"] = {{"f1", 1}}; }).find("expected a string"),
              std::string::npos);
    EXPECT_NE(broken([](Json& j) { j["chamber"] = "any"; }).find("generic"), std::string::npos);
    EXPECT_NE(broken([](Json& j) { j["chamber"][0]["rel"] = ">"; }).find("relation"), std::string::npos);
    EXPECT_NE(broken([](Json& j) { j["params"].push_back("e1"); }).find("duplicate parameter"), std::string::npos);
    EXPECT_NE(broken([](Json& j) { j["expected"]["radius_m5"].erase("m"); }).find("missing field 'm'"), std::string::npos);
    EXPECT_NE(broken([](Json& j) { j["expected"]["radius_m5"]["kind"] = "area"; }).find("unknown kind"), std::string::npos);
    EXPECT_NE(broken([](Json& j) { j["expected"]["radius_m5"]["kind"] = "map_radius"; }).find("'m' does not apply"), std::string::npos);
    EXPECT_NE(broken([](Json& j) { j["map"] = Json::object(); }).find("needs a target"), std::string::npos);
}

TEST(Fixture, MapTablesAreCheckedByName) {
    const std::string path = std::string(TROPLOG_FIXTURE_DIR) + "/cubic_p2_one_divisor.json";
    const Json base = parse_json_text(read_text_file(path));
    auto broken = [&](auto edit) {
        Json j = base;
        edit(j);
        return error_of(j);
    };
    EXPECT_NE(broken([](Json& j) { j["map"]["degree"]["Z"] = {1}; }).find("unknown name 'Z'"), std::string::npos);
    EXPECT_NE(broken([](Json& j) { j["map"]["contact"]["p1"] = {1, 0}; }).find("expected 1 entries"), std::string::npos);
    EXPECT_NE(broken([](Json& j) { j["map"]["degree"]["E"] = {-3}; }).find("negative degree"), std::string::npos);
    EXPECT_NE(broken([](Json& j) { j["target"]["divisors"].push_back({{"factor", 0}, {"coord", 0}}); }).find("duplicate"),
              std::string::npos);
    EXPECT_NE(broken([](Json& j) { j["expected"]["new_legs_factor_0"]["factor"] = 4; }).find("factor out of range"),
              std::string::npos);
}

TEST(Fixture, RationalsStayExact) {
    Json j = triangle_json();
    j["curve"]["edges"][0]["length"] = {{"f1", "1/3"}, {"f2", "6/4"}};
    const Fixture fx = fixture_from_json(j);
    EXPECT_EQ(fx.curve().edges()[0].length.linear().coeff(4), Rational(1, 3));
    const Json out = fixture_to_json(fx);
    EXPECT_EQ(out["curve"]["edges"][0]["length"]["f1"], "1/3");
    EXPECT_EQ(out["curve"]["edges"][0]["length"]["f2"], "3/2");
    EXPECT_EQ(parse_fixture(serialize_fixture(fx)), fx);
}

TEST(Fixture, RadiusValues) {
    const std::vector<std::string> params{"a", "b"};
    for (const Radius& r : {Radius::exact(MonoidForm::param(0)), Radius::just_after(MonoidForm::param(1, 2)),
                            Radius::infinity(), Radius::exact(MonoidForm{})})
        EXPECT_EQ(parse_radius(radius_to_json(r, params), params), r);
    EXPECT_THROW(parse_radius(Json{{"kind", "infinite"}, {"form", Json::object()}}, params), Error);
    EXPECT_THROW(parse_radius(Json{{"kind", "huge"}, {"form", Json::object()}}, params), Error);
}

// Random maps written out and read back are unchanged.
TEST(Fixture, RandomMapsRoundTrip) {
    auto rng = make_rng(97);
    for (int instance = 0; instance < 100; ++instance) {
        auto rm = testing::random_balanced_map(rng);
        Fixture fx;
        fx.name = "random";
        fx.params = rm.chamber.params();
        fx.constraints = rm.chamber.constraints();
        fx.has_target = fx.has_map = true;
        fx.map = rm.map;
        const Fixture back = parse_fixture(serialize_fixture(fx));
        EXPECT_EQ(back, fx) << instance;
        EXPECT_EQ(fixture_chamber(back), rm.chamber);
    }
}

// The generic chamber is the first strict order, in lexicographic order of
// the sorted distance texts, that has a positive solution.
Chamber oracle_generic(const TropicalCurve& c, const std::vector<std::string>& params) {
    const Chamber base(params);
    auto forms = distinct_distances(radial_structure(c));
    std::sort(forms.begin(), forms.end(),
              [&](const MonoidForm& a, const MonoidForm& b) { return base.format(a) < base.format(b); });
    std::vector<std::size_t> perm(forms.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        Chamber ch = base;
        for (std::size_t i = 0; i + 1 < perm.size(); ++i) ch.add_constraint({forms[perm[i]], Relation::Less, forms[perm[i + 1]]});
        if (chamber_feasible(ch)) return ch;
    } while (std::next_permutation(perm.begin(), perm.end()));
    throw Error("none");
}

TEST(Fixture, GenericChamberIsFirstFeasibleOrder) {
    auto rng = make_rng(101);
    int checked = 0;
    for (int instance = 0; instance < 60; ++instance) {
        const auto rc = testing::random_genus_one_curve(rng, 4);
        std::vector<std::string> params;
        for (std::size_t i = 0; i < rc.num_params; ++i) params.push_back("x" + std::to_string(i + 1));
        if (distinct_distances(radial_structure(rc.curve)).size() > 6) continue;
        const Chamber ch = generic_chamber(rc.curve, params);
        EXPECT_EQ(ch, oracle_generic(rc.curve, params)) << instance;
        EXPECT_TRUE(is_radially_aligned(rc.curve, ch));
        ++checked;
    }
    EXPECT_GT(checked, 40);
}

TEST(Fixture, GenericChamberOfTwoTails) {
    const Fixture fx = load_fixture(std::string(TROPLOG_FIXTURE_DIR) + "/elliptic_two_tails.json");
    EXPECT_TRUE(fx.generic_chamber);
    const Chamber ch = fixture_chamber(fx);
    EXPECT_EQ(compare(MonoidForm::param(0), MonoidForm::param(1), ch), Ordering::Less);
}

TEST(Dot, CurveAndMapExport) {
    const auto fx = testing::triangle_core_seven_legs();
    const std::string dot = to_dot(fx.curve, fx.chamber, "triangle");
    EXPECT_EQ(dot.rfind("graph \"triangle\" {", 0), 0u);
    EXPECT_EQ(std::count(dot.begin(), dot.end(), '\n'), 1 + 1 + 7 + 7 + 2 * 7 + 1);
    EXPECT_NE(dot.find("v0 -- v1 [label=\"f1 = f1\"]"), std::string::npos);
    const auto m = testing::cubic_one_divisor();
    const std::string mdot = to_dot(m, Chamber::top(0));
    EXPECT_NE(mdot.find("E\\ng1\\nd(3)"), std::string::npos);
    EXPECT_NE(mdot.find("p1 (1)"), std::string::npos);
}

}  // namespace
}  // namespace troplog
