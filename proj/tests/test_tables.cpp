#include <sstream>

#include <gtest/gtest.h>

#include "rodvol/tables.hpp"

using namespace rodvol;

TEST(Tables, FourRodMultipliers)
{
    const Table t = remark33_table();
    ASSERT_EQ(t.rows.size(), 4u);
    const auto j = t.to_json();
    EXPECT_EQ(j["rows"][0]["intersection"], 116);
    EXPECT_EQ(j["rows"][1]["intersection"], 114);
    EXPECT_EQ(j["rows"][2]["intersection"], 132);
    EXPECT_EQ(j["rows"][3]["intersection"], 50);
    EXPECT_EQ(j["rows"][3]["is_min"], true);
    EXPECT_EQ(j["rows"][0]["completion"], "[[1,0,2],[0,-1,4],[0,-1,3]]");
}

TEST(Tables, InfVolRationals)
{
    const auto j = cor_inf_vol_table(6, 8).to_json();
    ASSERT_EQ(j["rows"].size(), 3u);
    EXPECT_EQ(j["rows"][0]["p/q"], "53353/8658");
    EXPECT_EQ(j["rows"][1]["p/q"], "927843/129949");
    EXPECT_EQ(j["rows"][2]["p/q"], "18674305/2298912");
    EXPECT_EQ(j["rows"][1]["k"], 7);
}

TEST(Tables, BadUpperColumnIsConstant)
{
    const auto j = cor_bad_upper_table(1, 20).to_json();
    ASSERT_EQ(j["rows"].size(), 20u);
    for (std::size_t i = 0; i < 20; ++i) {
        EXPECT_EQ(j["rows"][i]["n"], static_cast<long long>(i + 1));
        EXPECT_EQ(j["rows"][i]["multiplier_oct"], 4);
        EXPECT_EQ(j["rows"][i]["orth_upper"], j["rows"][0]["orth_upper"]);
    }
}

TEST(Tables, CsvShape)
{
    const std::string csv = cor_bad_upper_table(1, 5).to_csv();
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "n,sum_m,multiplier_oct,orth_upper,intersection,best_general_multiplier_tet,best_general_upper");
    int rows = 0;
    while (std::getline(in, line))
        ++rows;
    EXPECT_EQ(rows, 5);
}

TEST(Tables, Deterministic)
{
    EXPECT_EQ(cor_inf_vol_table(3, 12).to_json().dump(), cor_inf_vol_table(3, 12).to_json().dump());
    EXPECT_EQ(remark33_table().to_csv(), remark33_table().to_csv());
}

TEST(Report, RealsUseTwelveDigits)
{
    EXPECT_EQ(real_json(kVOct).dump(), "3.66386237671");
    EXPECT_TRUE(real_json(1.0 / 0.0).is_null());
    EXPECT_EQ(format_real(1e300 * 1e300), "inf");
}

TEST(Report, BigIntegersBecomeStrings)
{
    Integer big = 1;
    big <<= 80;
    EXPECT_TRUE(integer_json(big).is_string());
    EXPECT_EQ(integer_json(Integer(-7)), -7);
}

TEST(Report, VolumeBoundsFields)
{
    const auto j = to_json(orthogonal_bounds(make_stacked({{10, 1}, {0, 1}}), {ContinuedFraction{10}, ContinuedFraction{0}}));
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items())
        keys.push_back(k);
    EXPECT_EQ(keys, (std::vector<std::string>{"lower", "upper", "lower_method", "upper_method", "multiplier_tet",
                                              "multiplier_oct", "C", "sum_m", "applicable"}));
    EXPECT_EQ(j["multiplier_oct"], 4);
    EXPECT_TRUE(j["multiplier_tet"].is_null());
}

TEST(Report, ParentFields)
{
    const auto pm = parent_manifold(make_stacked({{3, 1}, {0, 1}}), {ContinuedFraction{3}, ContinuedFraction{0}});
    const auto j = to_json(pm);
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items())
        keys.push_back(k);
    EXPECT_EQ(keys, (std::vector<std::string>{"E", "O", "filling_rod_count", "octahedron_count", "slopes",
                                              "volume_units"}));
    EXPECT_EQ(j["slopes"][1]["ell"], -3);
}
