#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <random>
#include <sstream>

#include "ift/cli.hpp"
#include "ift/dsl.hpp"
#include "ift/table_io.hpp"
#include "support.hpp"

using namespace ift;
using namespace ift::testing;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    Run r;
    r.code = run_cli(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

class TempDir {
public:
    TempDir() {
        std::random_device rd;
        path_ = fs::temp_directory_path() / ("ift_cli_" + std::to_string(rd()) + std::to_string(rd()));
        fs::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    std::string write(const std::string& name, const std::string& text) const {
        const auto p = path_ / name;
        std::ofstream(p) << text;
        return p.string();
    }
    std::string file(const std::string& name) const { return (path_ / name).string(); }
    const fs::path& path() const { return path_; }

private:
    fs::path path_;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    return {std::istreambuf_iterator<char>(in), {}};
}

// Lines between a `# name` marker and the next blank line.
std::string csv_section(const std::string& csv, const std::string& name) {
    const auto start = csv.find("# " + name + "\n");
    if (start == std::string::npos) return {};
    const auto body = start + name.size() + 3;
    const auto end = csv.find("\n\n", body);
    return csv.substr(body, end == std::string::npos ? std::string::npos : end - body + 1);
}

std::string bad_control_text() {
    auto text = read_fixture("minimal.ift");
    text.replace(text.find("CE.Firewall"), 11, "CE.Firewal");
    return text;
}

const std::string kBlackBastaRow = "CASE01,Ransomware,11,6,3,2,1,2,0,2,0,2,1,0,0";

}  // namespace

TEST(Cli, NoArgumentsIsUsageError) {
    auto r = run({});
    EXPECT_EQ(r.code, kExitUsage);
    EXPECT_FALSE(r.err.empty());
}

TEST(Cli, UnknownOptionIsUsageError) {
    EXPECT_EQ(run({"analyze", "--bogus"}).code, kExitUsage);
    EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
    EXPECT_EQ(run({"analyze", fixture_path("black_basta.ift"), "--format", "xml"}).code, kExitUsage);
}

TEST(Cli, HelpGoesToStdout) {
    auto r = run({"--help"});
    EXPECT_EQ(r.code, kExitOk);
    for (const char* sub : {"validate", "analyze", "whatif", "export-dot", "synth"}) {
        EXPECT_NE(r.out.find(sub), std::string::npos) << sub;
    }
}

TEST(ValidateCommand, ValidFileIsOk) {
    auto r = run({"validate", fixture_path("minimal.ift"), fixture_path("black_basta.ift")});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_TRUE(r.err.empty()) << r.err;
}

TEST(ValidateCommand, UnknownControlGivesOneSemanticDiagnostic) {
    TempDir dir;
    const auto bad = dir.write("bad.ift", bad_control_text());
    auto r = run({"validate", bad});
    EXPECT_EQ(r.code, kExitFindings);
    const auto diagnostics = std::count(r.err.begin(), r.err.end(), '\n');
    EXPECT_EQ(diagnostics, 1) << r.err;
    EXPECT_NE(r.err.find(bad + ":10:25: semantic error: unknown control 'CE.Firewal'"), std::string::npos) << r.err;
}

TEST(ValidateCommand, MixedBatchReportsOnlyInvalidFiles) {
    TempDir dir;
    const auto bad = dir.write("bad.ift", bad_control_text());
    const auto broken = dir.write("broken.ift", "case X { category: Phishing; tree { intermediate T \"t\" or { }");
    auto r = run({"validate", fixture_path("minimal.ift"), bad, fixture_path("black_basta.ift"), broken});
    EXPECT_EQ(r.code, kExitFindings);
    EXPECT_EQ(r.err.find("minimal.ift"), std::string::npos);
    EXPECT_EQ(r.err.find("black_basta.ift"), std::string::npos);
    EXPECT_NE(r.err.find(bad), std::string::npos);
    EXPECT_NE(r.err.find(broken), std::string::npos);
    EXPECT_NE(r.err.find("syntax error"), std::string::npos) << r.err;
}

TEST(ValidateCommand, MissingFileIsIoError) {
    auto r = run({"validate", "/nonexistent/case.ift"});
    EXPECT_EQ(r.code, kExitIo);
    EXPECT_NE(r.err.find("/nonexistent/case.ift"), std::string::npos);
}

TEST(AnalyzeCommand, BlackBastaRowInEveryFormat) {
    const auto path = fixture_path("black_basta.ift");
    auto csv = run({"analyze", path, "--format", "csv"});
    ASSERT_EQ(csv.code, kExitOk) << csv.err;
    std::istringstream rows_in(csv_section(csv.out, "rows"));
    const auto rows = read_rows(rows_in);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_NE(csv.out.find(kBlackBastaRow), std::string::npos);

    auto json = run({"analyze", path, "--format", "json"});
    ASSERT_EQ(json.code, kExitOk);
    const auto j = nlohmann::json::parse(json.out);
    ASSERT_EQ(j["rows"].size(), 1u);
    for (const auto& f : kRowCountFields) {
        EXPECT_EQ(j["rows"][0][std::string(f)].get<int>(), *row_field(rows[0], f)) << f;
    }
    EXPECT_EQ(j["summary"]["edge"]["total"], 11);
    EXPECT_EQ(j["summary"]["phase"]["mixed"], 1);
    EXPECT_EQ(j["summary"]["level_phase"]["ce"], 1);
    EXPECT_EQ(j["control_frequency"]["controls"]["AC.Policy"], 0);
    EXPECT_TRUE(j["audit"].empty());

    auto table = run({"analyze", path});
    ASSERT_EQ(table.code, kExitOk);
    std::istringstream lines(table.out);
    std::string line;
    std::vector<int> cells;
    while (std::getline(lines, line)) {
        if (line.rfind("CASE01", 0) != 0) continue;
        std::istringstream cols(line);
        std::string cell;
        std::getline(cols, cell, '|');
        while (std::getline(cols, cell, '|')) cells.push_back(std::stoi(cell));
    }
    std::vector<int> expected;
    for (const auto& f : kRowCountFields) expected.push_back(*row_field(rows[0], f));
    EXPECT_EQ(cells, expected);
}

TEST(AnalyzeCommand, CsvAndJsonAgreeOnTheCorpus) {
    const auto manifest = fixture_path("corpus.manifest");
    auto csv = run({"analyze", manifest, "--format", "csv"});
    auto json = run({"analyze", manifest, "--format", "json"});
    EXPECT_EQ(csv.code, kExitFindings);
    EXPECT_EQ(json.code, kExitFindings);
    std::istringstream rows_in(csv_section(csv.out, "rows"));
    const auto rows = read_rows(rows_in);
    const auto j = nlohmann::json::parse(json.out);
    ASSERT_EQ(rows.size(), j["rows"].size());
    ASSERT_EQ(rows.size(), 45u);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EXPECT_EQ(j["rows"][i]["case_id"], rows[i].case_id);
        for (const auto& f : kRowCountFields) {
            EXPECT_EQ(j["rows"][i][std::string(f)].get<int>(), *row_field(rows[i], f));
        }
    }
    const auto audit_lines = std::count(csv.out.begin() + csv.out.find("# audit"), csv.out.end(), '\n') - 2;
    EXPECT_EQ(static_cast<std::size_t>(audit_lines), j["audit"].size());
    EXPECT_EQ(j["audit"].size(), 16u);
    EXPECT_EQ(j["summary"]["edge"]["total"], 208);
}

TEST(AnalyzeCommand, ClaimsProduceAuditNotes) {
    auto r = run({"analyze", "--rows", fixture_path("table1.csv"), "--claims", fixture_path("table2_claims.csv"),
                  "--format", "csv"});
    EXPECT_EQ(r.code, kExitFindings);
    const auto audit = csv_section(r.out, "audit");
    EXPECT_NE(audit.find("TOTAL,total_edges,209,208"), std::string::npos) << audit;
    EXPECT_NE(audit.find("CASE07"), std::string::npos);
}

TEST(AnalyzeCommand, IsDeterministic) {
    const auto manifest = fixture_path("corpus.manifest");
    for (const char* format : {"csv", "json", "table"}) {
        const auto first = run({"analyze", manifest, "--format", format});
        for (int i = 0; i < 3; ++i) EXPECT_EQ(run({"analyze", manifest, "--format", format}).out, first.out);
    }
}

TEST(AnalyzeCommand, DirectoryAndOutFile) {
    TempDir dir;
    dir.write("b.ift", read_fixture("black_basta.ift"));
    dir.write("a.ift", read_fixture("minimal.ift"));
    const auto out = dir.file("report.csv");
    auto r = run({"analyze", dir.path().string(), "--format", "csv", "--out", out});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_TRUE(r.out.empty());
    std::istringstream rows_in(csv_section(slurp(out), "rows"));
    const auto rows = read_rows(rows_in);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].case_id, "MIN");
    EXPECT_EQ(rows[1].case_id, "CASE01");
}

TEST(AnalyzeCommand, InvalidTreeIsAFinding) {
    TempDir dir;
    const auto bad = dir.write("bad.ift", bad_control_text());
    auto r = run({"analyze", bad});
    EXPECT_EQ(r.code, kExitFindings);
    EXPECT_NE(r.err.find("unknown control"), std::string::npos);
}

TEST(AnalyzeCommand, MissingInputIsIoError) {
    EXPECT_EQ(run({"analyze", "/nonexistent/x.ift"}).code, kExitIo);
    EXPECT_EQ(run({"analyze", "--rows", "/nonexistent/rows.csv"}).code, kExitIo);
}

TEST(WhatIfCommand, EmptyDeploymentLetsTopOccur) {
    TempDir dir;
    const auto none = dir.write("none.txt", "# nothing deployed\n");
    auto r = run({"whatif", fixture_path("black_basta.ift"), none});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_NE(r.out.find("top event occurs"), std::string::npos);
    EXPECT_NE(r.out.find("blocked edges: none"), std::string::npos);
}

TEST(WhatIfCommand, FullDeploymentBlocksAtPhaseOne) {
    TempDir dir;
    std::string all;
    for (auto n : kAllControlNames) all += qualified_name(Control::of(n)) + "\n";
    const auto deploy = dir.write("all.txt", all);
    auto r = run({"whatif", fixture_path("black_basta.ift"), deploy});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_NE(r.out.find("top event prevented"), std::string::npos);
    EXPECT_NE(r.out.find("earliest block: blocked at P1, L1"), std::string::npos) << r.out;
}

TEST(WhatIfCommand, MinimalSetsOnMinimalTree) {
    TempDir dir;
    const auto none = dir.write("none.txt", "");
    auto r = run({"whatif", fixture_path("minimal.ift"), none, "--minimal-sets", "2"});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_NE(r.out.find("minimal inhibiting sets (size <= 2): 1\n  {CE.Firewall}\n"), std::string::npos) << r.out;
}

TEST(WhatIfCommand, BadDeploymentLine) {
    TempDir dir;
    const auto bad = dir.write("bad.txt", "CE.Firewall\nCE.Nothing\n");
    auto r = run({"whatif", fixture_path("minimal.ift"), bad});
    EXPECT_NE(r.code, kExitOk);
    EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;
}

TEST(ExportDotCommand, WritesGraph) {
    TempDir dir;
    const auto out = dir.file("t.dot");
    auto r = run({"export-dot", fixture_path("minimal.ift"), "--out", out});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto dot = slurp(out);
    EXPECT_EQ(dot.rfind("digraph", 0), 0u);
    EXPECT_NE(dot.find("Firewall"), std::string::npos);
    EXPECT_EQ(run({"export-dot", fixture_path("minimal.ift")}).out, dot);
}

TEST(SynthCommand, SingleRowRoundTripsThroughAnalyze) {
    TempDir dir;
    const auto out = dir.file("case04.ift");
    auto r = run({"synth", fixture_path("table1.csv"), "--case", "CASE04", "--seed", "9", "--out", out});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    auto parsed = parse(slurp(out));
    ASSERT_TRUE(parsed.ok());
    auto csv = run({"analyze", out, "--format", "csv"});
    std::istringstream rows_in(csv_section(csv.out, "rows"));
    const auto rows = read_rows(rows_in);
    ASSERT_EQ(rows.size(), 1u);
    for (const auto& row : published_rows()) {
        if (row.case_id == "CASE04") EXPECT_EQ(rows[0], row);
    }
}

TEST(SynthCommand, UnsatisfiableProfileNamesTheConstraint) {
    auto r = run({"synth", fixture_path("table1.csv"), "--case", "CASE02"});
    EXPECT_EQ(r.code, kExitFindings);
    EXPECT_NE(r.err.find("more than one edge above L1 outside P1"), std::string::npos) << r.err;
}

TEST(SynthCommand, SeveralRowsNeedADirectory) {
    TempDir dir;
    EXPECT_EQ(run({"synth", fixture_path("table1.csv")}).code, kExitUsage);
    auto r = run({"synth", fixture_path("table1.csv"), "--out", dir.path().string()});
    EXPECT_EQ(r.code, kExitFindings);  // some rows cannot be realised
    EXPECT_TRUE(fs::exists(dir.path() / "CASE01.ift"));
    EXPECT_FALSE(fs::exists(dir.path() / "CASE02.ift"));
    auto v = run({"validate", (dir.path() / "CASE01.ift").string()});
    EXPECT_EQ(v.code, kExitOk);
}

TEST(SynthCommand, UnknownCaseIsAFinding) {
    auto r = run({"synth", fixture_path("table1.csv"), "--case", "CASE99"});
    EXPECT_NE(r.code, kExitOk);
    EXPECT_NE(r.err.find("CASE99"), std::string::npos);
}
