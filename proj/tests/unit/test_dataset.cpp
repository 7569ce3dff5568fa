#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "riparian/dataset.hpp"

using namespace riparian;

namespace {

BasinDataset load(const std::string& text, DatasetFormat format = DatasetFormat::Csv) {
    std::istringstream in(text);
    return load_dataset(in, format);
}

std::size_t error_line(const std::string& text, DatasetFormat format = DatasetFormat::Csv) {
    try {
        (void)load(text, format);
    } catch (const DatasetError& e) {
        return e.line();
    }
    ADD_FAILURE() << "expected a DatasetError";
    return 0;
}

std::string error_message(const std::string& text, DatasetFormat format) {
    try {
        (void)load(text, format);
    } catch (const DatasetError& e) {
        return e.what();
    }
    ADD_FAILURE() << "expected a DatasetError";
    return {};
}

const char* kNileCsv =
    "agent,inflow,withdrawal\n"
    "Tanzania,16.8,5.18\n"
    "Uganda,16.2,0.64\n"
    "South Sudan,17.6,0.66\n"
    "Sudan,65.3,26.93\n"
    "Egypt,0,77.7\n";

}  // namespace

TEST(NormalizeWithdrawals, NileRawToPublished) {
    const InflowProfile e{16.8, 16.2, 17.6, 65.3, 0};
    const std::vector<double> raw{5.18, 0.64, 0.66, 26.93, 77.7};
    const auto z = normalize_withdrawals(e, raw);
    const std::vector<double> published{5.4, 0.7, 0.7, 28.1, 81};
    for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(z[i], published[i], 0.05);
    EXPECT_NEAR(z.total(), 115.9, 1e-9);
}

TEST(NormalizeWithdrawals, IdentityCases) {
    const InflowProfile e{3, 1, 2};
    const auto same = normalize_withdrawals(e, e.values());
    for (std::size_t i = 0; i < 3; ++i) EXPECT_DOUBLE_EQ(same[i], e[i]);

    const std::vector<double> already{1, 2, 3};
    const auto z = normalize_withdrawals(e, already);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_DOUBLE_EQ(z[i], already[i]);
}

TEST(NormalizeWithdrawals, IsIdempotent) {
    const InflowProfile e{4, 4, 1};
    const std::vector<double> raw{0.3, 7, 2};
    const auto once = normalize_withdrawals(e, raw);
    const auto twice = normalize_withdrawals(e, once.values());
    for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(once[i], twice[i], 1e-12);
}

TEST(NormalizeWithdrawals, Errors) {
    const InflowProfile e{1, 1};
    EXPECT_THROW((void)normalize_withdrawals(e, std::vector<double>{0, 0}), DomainError);
    EXPECT_THROW((void)normalize_withdrawals(e, std::vector<double>{1}), DimensionError);
}

TEST(LoadCsv, NileTable) {
    const auto ds = load(kNileCsv);
    EXPECT_EQ(ds.agents, (std::vector<std::string>{"Tanzania", "Uganda", "South Sudan", "Sudan",
                                                   "Egypt"}));
    EXPECT_EQ(ds.inflows, (InflowProfile{16.8, 16.2, 17.6, 65.3, 0}));
    ASSERT_TRUE(ds.withdrawals.has_value());
    EXPECT_NEAR(ds.withdrawals->total(), 115.9, 1e-9);
}

TEST(LoadCsv, InflowsOnlyQuotedNamesCommentsAndBom) {
    const auto ds = load("\xEF\xBB\xBF# upstream first\nagent,inflow\n\"Up, North\",1.5\n\n"
                         "\"Say \"\"Hi\"\"\",2\n");
    EXPECT_EQ(ds.agents, (std::vector<std::string>{"Up, North", "Say \"Hi\""}));
    EXPECT_FALSE(ds.withdrawals.has_value());
    EXPECT_FALSE(ds.raw_withdrawals.has_value());
}

TEST(LoadCsv, SingleRowIsADimensionError) {
    EXPECT_THROW((void)load("agent,inflow\nA,3\n"), DimensionError);
}

TEST(LoadCsv, RowLevelErrorsCarryTheLine) {
    EXPECT_EQ(error_line("agent,inflow\nA,1\nB,-1\n"), 3u);
    EXPECT_EQ(error_line("agent,inflow\nA,1\nB,abc\n"), 3u);
    EXPECT_EQ(error_line("agent,inflow\nA,1\nA,2\n"), 3u);
    EXPECT_EQ(error_line("agent,inflow,withdrawal\nA,1,2\nB,2\n"), 3u);
    EXPECT_EQ(error_line("name,flow\nA,1\n"), 1u);
    EXPECT_EQ(error_line("agent,inflow\n\"A,1\n"), 2u);
}

TEST(LoadCsv, NegativeInflowMessageNamesTheAgent) {
    try {
        (void)load("agent,inflow\nA,1\nB,-1\n");
        FAIL();
    } catch (const DatasetError& e) {
        EXPECT_NE(std::string(e.what()).find("'B'"), std::string::npos) << e.what();
    }
}

TEST(LoadCsv, EmptyInput) { EXPECT_THROW((void)load(""), DatasetError); }

TEST(LoadJson, AgentsArray) {
    const auto ds = load(R"({"name": "toy", "agents": [
        {"name": "A", "inflow": 2, "withdrawal": 1},
        {"name": "B", "inflow": 0, "withdrawal": 3}]})",
                         DatasetFormat::Json);
    EXPECT_EQ(ds.name, "toy");
    EXPECT_EQ(ds.inflows, (InflowProfile{2, 0}));
    EXPECT_NEAR((*ds.withdrawals)[0], 0.5, 1e-12);
}

TEST(LoadJson, ErrorsNameTheEntry) {
    EXPECT_NE(error_message(R"({"agents": [{"name": "A", "inflow": 1}, {"name": "B"}]})",
                            DatasetFormat::Json)
                  .find("agents[1]"),
              std::string::npos);
    EXPECT_NE(error_message(R"({"agents": [{"name": "A", "inflow": 1},
                                           {"name": "B", "inflow": -2}]})",
                            DatasetFormat::Json)
                  .find("agents[1]"),
              std::string::npos);
    EXPECT_THROW((void)load("{not json", DatasetFormat::Json), DatasetError);
    EXPECT_THROW((void)load(R"({"rows": []})", DatasetFormat::Json), DatasetError);
}

TEST(WriteDataset, RoundTripsBothFormats) {
    const auto nile = builtin_nile();
    for (auto format : {DatasetFormat::Csv, DatasetFormat::Json}) {
        std::stringstream buf;
        write_dataset(buf, nile, format);
        const auto back = load_dataset(buf, format);
        EXPECT_EQ(back.agents, nile.agents);
        EXPECT_EQ(back.inflows, nile.inflows);
        EXPECT_EQ(back.raw_withdrawals, nile.raw_withdrawals);
    }
}

TEST(LoadDatasetFile, PicksFormatByExtension) {
    const auto dir = std::filesystem::temp_directory_path();
    const auto csv = dir / "riparian_test_basin.csv";
    {
        std::ofstream(csv) << kNileCsv;
    }
    const auto ds = load_dataset_file(csv);
    EXPECT_EQ(ds.name, "riparian_test_basin");
    EXPECT_EQ(ds.agents.size(), 5u);
    std::filesystem::remove(csv);
    EXPECT_THROW((void)load_dataset_file(dir / "riparian_missing.csv"), DatasetError);
}

TEST(BuiltinNile, Totals) {
    const auto ds = builtin_nile();
    EXPECT_NEAR(ds.inflows.total(), 115.9, 1e-9);
    ASSERT_TRUE(ds.raw_withdrawals.has_value());
    EXPECT_NEAR(std::accumulate(ds.raw_withdrawals->begin(), ds.raw_withdrawals->end(), 0.0),
                111.11, 1e-9);
    EXPECT_EQ(ds.agents.front(), "Tanzania");
    EXPECT_EQ(ds.agents.back(), "Egypt");
}

TEST(BuiltinNile, WithdrawalsAtPublishedPrecision) {
    const auto ds = builtin_nile();
    const std::vector<double> published{5.4, 0.7, 0.7, 28.1, 81};
    for (std::size_t i = 0; i < 5; ++i) EXPECT_DOUBLE_EQ((*ds.withdrawals)[i], published[i]);
}
