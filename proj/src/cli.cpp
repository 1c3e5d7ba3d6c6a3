#include "ift/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>

#include "ift/dot.hpp"
#include "ift/dsl.hpp"
#include "ift/report.hpp"
#include "ift/synth.hpp"
#include "ift/table_io.hpp"
#include "ift/whatif.hpp"

namespace ift {
namespace {

namespace fs = std::filesystem;

std::optional<std::string> read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) return std::nullopt;
    return ss.str();
}

bool write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    return static_cast<bool>(out.flush());
}

// Writes to --out when given, otherwise to the output stream.
int emit(const std::string& text, const std::string& out_path, std::ostream& out, std::ostream& err) {
    if (out_path.empty()) {
        out << text;
        return kExitOk;
    }
    if (!write_file(out_path, text)) {
        err << out_path << ": cannot write\n";
        return kExitIo;
    }
    return kExitOk;
}

struct LoadedTree {
    std::optional<ValidTree> tree;
    std::vector<ParseError> errors;
    bool io_error = false;
};

LoadedTree load_tree(const fs::path& path) {
    LoadedTree r;
    auto text = read_file(path);
    if (!text) {
        r.io_error = true;
        return r;
    }
    auto parsed = parse(*text, path.generic_string());
    r.tree = std::move(parsed.tree);
    r.errors = std::move(parsed.errors);
    return r;
}

// Parses every path concurrently; results come back in input order.
std::vector<LoadedTree> load_trees(const std::vector<fs::path>& paths) {
    std::vector<std::future<LoadedTree>> jobs;
    jobs.reserve(paths.size());
    for (const auto& p : paths) jobs.push_back(std::async(std::launch::async, load_tree, p));
    std::vector<LoadedTree> out;
    out.reserve(paths.size());
    for (auto& j : jobs) out.push_back(j.get());
    return out;
}

void report_load(const fs::path& path, const LoadedTree& t, std::ostream& err) {
    if (t.io_error) err << path.generic_string() << ": cannot read file\n";
    for (const auto& e : t.errors) err << format_error(e) << '\n';
}

int cmd_validate(const std::vector<std::string>& paths, std::ostream& out, std::ostream& err) {
    std::vector<fs::path> files(paths.begin(), paths.end());
    const auto loaded = load_trees(files);
    int code = kExitOk;
    for (std::size_t i = 0; i < files.size(); ++i) {
        report_load(files[i], loaded[i], err);
        if (loaded[i].io_error) {
            code = kExitIo;
        } else if (!loaded[i].tree) {
            code = std::max<int>(code, kExitFindings);
        } else {
            out << files[i].generic_string() << ": ok\n";
        }
    }
    return code;
}

struct Manifest {
    std::vector<fs::path> trees;
    std::vector<fs::path> rows;
    std::optional<fs::path> claims;
};

// A manifest is an .ift file, a directory of .ift files, or a text file with
// one path per line (relative to the manifest) plus optional `claims <path>`
// and `rows <path>` lines.
std::optional<Manifest> resolve_manifest(const fs::path& path, std::ostream& err, int& code) {
    Manifest m;
    std::error_code ec;
    if (fs::is_directory(path, ec)) {
        for (const auto& entry : fs::directory_iterator(path, ec)) {
            if (entry.path().extension() == ".ift") m.trees.push_back(entry.path());
        }
        std::sort(m.trees.begin(), m.trees.end());
        return m;
    }
    if (path.extension() == ".ift") {
        m.trees.push_back(path);
        return m;
    }
    auto text = read_file(path);
    if (!text) {
        err << path.generic_string() << ": cannot read manifest\n";
        code = kExitIo;
        return std::nullopt;
    }
    const fs::path base = path.parent_path();
    std::istringstream in(*text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream words(line);
        std::string first, second, extra;
        if (!(words >> first)) continue;
        if (first == "claims" || first == "rows") {
            if (!(words >> second) || (words >> extra)) {
                err << path.generic_string() << ":" << lineno << ": expected '" << first << " <path>'\n";
                code = kExitFindings;
                return std::nullopt;
            }
            if (first == "claims") {
                m.claims = base / second;
            } else {
                m.rows.push_back(base / second);
            }
        } else {
            if (words >> extra) {
                err << path.generic_string() << ":" << lineno << ": one path per line\n";
                code = kExitFindings;
                return std::nullopt;
            }
            m.trees.push_back(base / first);
        }
    }
    return m;
}

struct AnalyzeOptions {
    std::string manifest;
    std::vector<std::string> rows;
    std::string claims;
    std::string format = "table";
    std::string out;
};

int cmd_analyze(const AnalyzeOptions& o, std::ostream& out, std::ostream& err) {
    const auto format = parse_report_format(o.format);
    if (!format) {
        err << "unknown format '" << o.format << "'\n";
        return kExitUsage;
    }
    int code = kExitOk;
    Manifest m;
    if (!o.manifest.empty()) {
        auto resolved = resolve_manifest(o.manifest, err, code);
        if (!resolved) return code;
        m = std::move(*resolved);
    }
    for (const auto& r : o.rows) m.rows.emplace_back(r);
    if (!o.claims.empty()) m.claims = o.claims;
    if (m.trees.empty() && m.rows.empty()) {
        err << "nothing to analyze: give a manifest or --rows\n";
        return kExitUsage;
    }

    std::vector<ValidTree> trees;
    const auto loaded = load_trees(m.trees);
    for (std::size_t i = 0; i < loaded.size(); ++i) {
        report_load(m.trees[i], loaded[i], err);
        if (loaded[i].io_error) {
            code = kExitIo;
        } else if (!loaded[i].tree) {
            code = std::max<int>(code, kExitFindings);
        } else {
            trees.push_back(*loaded[i].tree);
        }
    }

    std::vector<CaseAnalysisRow> rows;
    for (const auto& path : m.rows) {
        std::ifstream in(path);
        if (!in) {
            err << path.generic_string() << ": cannot read rows\n";
            return kExitIo;
        }
        try {
            auto r = read_rows(in);
            rows.insert(rows.end(), r.begin(), r.end());
        } catch (const FormatError& e) {
            err << path.generic_string() << ":" << e.line() << ": " << e.what() << '\n';
            return kExitFindings;
        }
    }

    std::optional<ClaimTable> claims;
    if (m.claims) {
        std::ifstream in(*m.claims);
        if (!in) {
            err << m.claims->generic_string() << ": cannot read claims\n";
            return kExitIo;
        }
        try {
            claims = read_claims(in);
        } catch (const FormatError& e) {
            err << m.claims->generic_string() << ":" << e.line() << ": " << e.what() << '\n';
            return kExitFindings;
        }
    }

    const auto bundle = build_report(trees, rows, claims ? &*claims : nullptr);
    std::ostringstream text;
    render(text, bundle, *format);
    if (int w = emit(text.str(), o.out, out, err); w != kExitOk) return w;
    if (!bundle.audit().empty()) code = std::max<int>(code, kExitFindings);
    return code;
}

std::string describe_controls(const std::vector<Control>& set) {
    std::string s = "{";
    for (std::size_t i = 0; i < set.size(); ++i) s += (i ? ", " : "") + qualified_name(set[i]);
    return s + "}";
}

int cmd_whatif(const std::string& tree_path, const std::string& deployment_path, std::optional<std::size_t> sets,
               std::ostream& out, std::ostream& err) {
    auto loaded = load_tree(tree_path);
    report_load(tree_path, loaded, err);
    if (loaded.io_error) return kExitIo;
    if (!loaded.tree) return kExitFindings;
    const ValidTree& tree = *loaded.tree;

    std::ifstream in(deployment_path);
    if (!in) {
        err << deployment_path << ": cannot read deployment\n";
        return kExitIo;
    }
    Deployment deployment;
    try {
        deployment = read_deployment(in);
    } catch (const FormatError& e) {
        err << deployment_path << ":" << e.line() << ": " << e.what() << '\n';
        return kExitFindings;
    }

    const auto outcome = evaluate(tree, deployment);
    out << "case " << tree.tree().metadata.case_id << '\n';
    out << "deployed: " << describe_controls(deployment.active_controls()) << '\n';
    out << (outcome.top_occurs ? "top event occurs" : "top event prevented") << '\n';
    out << "blocked edges:";
    if (outcome.blocked_edges.empty()) out << " none";
    for (std::size_t i = 0; i < outcome.blocked_edges.size(); ++i) {
        const auto& id = outcome.blocked_edges[i];
        const auto* e = tree.find_edge(id);
        out << (i ? ", " : " ") << id << " -> " << e->destination << " (" << (e->phase ? "P" + std::to_string(*e->phase) : "top")
            << ", L" << e->level << ")";
    }
    out << '\n';
    if (auto b = earliest_block(tree, deployment)) {
        out << "earliest block: blocked at " << (b->phase ? "P" + std::to_string(*b->phase) : "top edge") << ", L"
            << b->level << '\n';
    } else {
        out << "earliest block: none\n";
    }
    if (sets) {
        try {
            const auto minimal = minimal_inhibiting_sets(tree, *sets);
            out << "minimal inhibiting sets (size <= " << *sets << "): " << minimal.size() << '\n';
            for (const auto& s : minimal) out << "  " << describe_controls(s) << '\n';
        } catch (const ControlUniverseTooLarge& e) {
            err << e.what() << '\n';
            return kExitFindings;
        }
    }
    return kExitOk;
}

int cmd_export_dot(const std::string& tree_path, const std::string& out_path, std::ostream& out,
                   std::ostream& err) {
    auto loaded = load_tree(tree_path);
    report_load(tree_path, loaded, err);
    if (loaded.io_error) return kExitIo;
    if (!loaded.tree) return kExitFindings;
    return emit(export_dot(*loaded.tree), out_path, out, err);
}

struct SynthOptions {
    std::string profile;
    std::string case_id;
    std::string variant;
    std::uint64_t seed = 1;
    std::string out;
};

int cmd_synth(const SynthOptions& o, std::ostream& out, std::ostream& err) {
    std::ifstream in(o.profile);
    if (!in) {
        err << o.profile << ": cannot read profile\n";
        return kExitIo;
    }
    std::vector<CaseAnalysisRow> rows;
    try {
        rows = read_rows(in);
    } catch (const FormatError& e) {
        err << o.profile << ":" << e.line() << ": " << e.what() << '\n';
        return kExitFindings;
    }
    if (!o.case_id.empty()) {
        std::erase_if(rows, [&](const CaseAnalysisRow& r) { return r.case_id != o.case_id; });
        if (rows.empty()) {
            err << o.profile << ": no row for case '" << o.case_id << "'\n";
            return kExitFindings;
        }
    }
    if (rows.empty()) {
        err << o.profile << ": no rows\n";
        return kExitFindings;
    }
    if (rows.size() > 1 && o.out.empty()) {
        err << "several profiles need --out <directory>\n";
        return kExitUsage;
    }

    int code = kExitOk;
    std::error_code ec;
    if (rows.size() > 1) {
        fs::create_directories(o.out, ec);
        if (ec) {
            err << o.out << ": cannot create directory\n";
            return kExitIo;
        }
    }
    for (const auto& row : rows) {
        SynthesisProfile profile{row, o.seed, std::nullopt};
        if (!o.variant.empty()) profile.variant = o.variant;
        std::string text;
        try {
            text = serialize(synthesize_tree(profile));
        } catch (const UnsatisfiableProfile& e) {
            err << "case " << row.case_id << ": " << e.what() << '\n';
            code = std::max<int>(code, kExitFindings);
            continue;
        }
        const std::string target = rows.size() > 1 ? (fs::path(o.out) / (row.case_id + ".ift")).string() : o.out;
        if (int w = emit(text, target, out, err); w != kExitOk) return w;
    }
    return code;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Inhibit fault tree toolkit", "ift"};
    app.require_subcommand(1);

    auto* validate = app.add_subcommand("validate", "Parse and validate .ift files");
    std::vector<std::string> validate_paths;
    validate->add_option("paths", validate_paths, "Files to check")->required();

    auto* analyze = app.add_subcommand("analyze", "Edge, level and phase analysis over a corpus");
    AnalyzeOptions ao;
    analyze->add_option("manifest", ao.manifest, "Manifest file, directory or single .ift file");
    analyze->add_option("--rows", ao.rows, "Precomputed per-case rows (CSV)");
    analyze->add_option("--claims", ao.claims, "Claimed values to audit against");
    analyze->add_option("--format", ao.format, "Rendering")->check(CLI::IsMember({"csv", "json", "table"}));
    analyze->add_option("--out", ao.out, "Output file");

    auto* whatif = app.add_subcommand("whatif", "Evaluate a control deployment against a tree");
    std::string wi_tree, wi_deployment;
    std::size_t wi_sets = 0;
    whatif->add_option("tree", wi_tree, "Tree file")->required();
    whatif->add_option("deployment", wi_deployment, "Deployment file")->required();
    auto* sets_opt = whatif->add_option("--minimal-sets", wi_sets, "List minimal inhibiting sets up to this size");

    auto* dot = app.add_subcommand("export-dot", "Render a tree as Graphviz DOT");
    std::string dot_tree, dot_out;
    dot->add_option("tree", dot_tree, "Tree file")->required();
    dot->add_option("--out", dot_out, "Output file");

    auto* synth = app.add_subcommand("synth", "Synthesize trees reproducing per-case rows");
    SynthOptions so;
    synth->add_option("profile", so.profile, "Rows CSV")->required();
    synth->add_option("--case", so.case_id, "Only this case");
    synth->add_option("--variant", so.variant, "Variant recorded in the tree");
    synth->add_option("--seed", so.seed, "Random seed");
    synth->add_option("--out", so.out, "Output file (directory for several rows)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return kExitUsage;
    }

    if (validate->parsed()) return cmd_validate(validate_paths, out, err);
    if (analyze->parsed()) return cmd_analyze(ao, out, err);
    if (whatif->parsed()) {
        std::optional<std::size_t> sets;
        if (sets_opt->count() > 0) sets = wi_sets;
        return cmd_whatif(wi_tree, wi_deployment, sets, out, err);
    }
    if (dot->parsed()) return cmd_export_dot(dot_tree, dot_out, out, err);
    if (synth->parsed()) return cmd_synth(so, out, err);
    return kExitUsage;
}

}  // namespace ift
