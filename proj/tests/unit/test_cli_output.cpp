#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include "cli/commands.hpp"
#include "cli/output.hpp"

using namespace darkport::cli;

TEST(CliOutput, NumbersRoundTrip) {
    for (double v : {0.1, 1.0 / 3.0, 29.556224395722602, 1e-300, -2.5e17}) {
        EXPECT_EQ(std::strtod(format_number(v).c_str(), nullptr), v);
    }
    EXPECT_EQ(format_number(std::numeric_limits<double>::quiet_NaN()), "nan");
    EXPECT_EQ(format_number(-std::numeric_limits<double>::infinity()), "-inf");
}

TEST(CliOutput, CsvHasVersionLineAndHeader) {
    Table t{{"n", "p"}, {}};
    t.add({0, 0.5});
    t.add({1, std::nan("")});
    std::ostringstream s;
    write_csv(t, s);
    EXPECT_EQ(s.str(), "# darkport-csv v1\nn,p\n0,0.5\n1,nan\n");
    EXPECT_THROW(t.add({1.0}), std::logic_error);
}

TEST(CliOutput, DestinationPrecedence) {
    ::unsetenv("DARKPORT_OUTDIR");
    EXPECT_TRUE(resolve_destination("", "a.csv").to_stdout());
    ::setenv("DARKPORT_OUTDIR", "/tmp/dp_env", 1);
    EXPECT_EQ(resolve_destination("", "a.csv").file, std::filesystem::path("/tmp/dp_env/a.csv"));
    EXPECT_EQ(resolve_destination("b.csv", "a.csv").file, std::filesystem::path("b.csv"));
    EXPECT_EQ(resolve_outdir(""), std::filesystem::path("/tmp/dp_env"));
    ::unsetenv("DARKPORT_OUTDIR");
    EXPECT_EQ(resolve_outdir(""), std::filesystem::path("."));
}

TEST(CliOutput, ManifestFields) {
    RunManifest m;
    m.command = "stats";
    m.parameters = {{"r", 1.0}};
    m.seed = 5;
    m.has_seed = true;
    m.outputs = {"x.csv"};
    const auto j = m.to_json();
    EXPECT_EQ(j["command"], "stats");
    EXPECT_EQ(j["seed"], 5);
    EXPECT_EQ(j["tool_version"], kToolVersion);
    EXPECT_EQ(j["outputs"][0], "x.csv");
    EXPECT_EQ(j["timestamp"].get<std::string>().size(), 20u);
}

TEST(CliInvariants, DistributionChecks) {
    EXPECT_NO_THROW(check_distribution({0.5, 0.5}, 0.0, 1e-12));
    EXPECT_THROW(check_distribution({0.5, -0.1}, 0.0, 1e-12), InvariantViolation);
    EXPECT_THROW(check_distribution({0.5, 0.6}, 0.0, 1e-12), InvariantViolation);
    try {
        check_distribution({0.5, 0.4}, 0.1, 1e-12);
        FAIL();
    } catch (const InvariantViolation& e) {
        EXPECT_EQ(e.invariant, "norm_deficit");
    }
}

TEST(CliInvariants, UnknownFigureListsIds) {
    GlobalOptions g;
    FigureOptions o;
    o.id = "fig99";
    try {
        cmd_figure(g, o);
        FAIL();
    } catch (const std::exception& e) {
        const std::string msg = e.what();
        for (const auto& id : figure_ids()) EXPECT_NE(msg.find(id), std::string::npos);
    }
}
