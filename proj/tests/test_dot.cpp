#include <gtest/gtest.h>

#include <cctype>
#include <map>

#include "ift/dot.hpp"
#include "ift/dsl.hpp"
#include "support.hpp"

using namespace ift;
using namespace ift::testing;

namespace {

// Minimal reader for the DOT subset a layout tool must accept here:
// `digraph ID { stmt* }` with node, edge and attribute statements. Throws on
// anything it cannot parse.
struct DotGraph {
    std::map<std::string, std::map<std::string, std::string>> nodes;
    struct Edge {
        std::string from, to;
        std::map<std::string, std::string> attrs;
    };
    std::vector<Edge> edges;
};

class DotReader {
public:
    explicit DotReader(const std::string& s) : s_(s) {}

    DotGraph read() {
        DotGraph g;
        expect_word("digraph");
        if (peek() != "{") id();
        expect("{");
        while (peek() != "}") {
            const std::string first = id();
            if (first == "graph" || first == "node" || first == "edge") {
                attrs();
            } else if (peek() == "->") {
                next();
                DotGraph::Edge e{first, id(), {}};
                if (peek() == "[") e.attrs = attrs();
                g.edges.push_back(std::move(e));
            } else {
                auto a = peek() == "[" ? attrs() : std::map<std::string, std::string>{};
                if (!g.nodes.emplace(first, a).second) throw std::runtime_error("node declared twice: " + first);
            }
            if (peek() == ";") next();
        }
        expect("}");
        if (!next().empty()) throw std::runtime_error("content after graph");
        return g;
    }

private:
    std::map<std::string, std::string> attrs() {
        std::map<std::string, std::string> out;
        expect("[");
        while (peek() != "]") {
            const std::string k = id();
            expect("=");
            out[k] = id();
            if (peek() == "," || peek() == ";") next();
        }
        expect("]");
        return out;
    }

    std::string id() {
        std::string t = next();
        if (t.empty() || t == "{" || t == "}" || t == "[" || t == "]" || t == "=" || t == ";" || t == "," ||
            t == "->") {
            throw std::runtime_error("expected id, got '" + t + "'");
        }
        if (t.front() == '"') return unquote(t);
        return t;
    }

    static std::string unquote(const std::string& t) {
        std::string out;
        for (std::size_t i = 1; i + 1 < t.size(); ++i) {
            if (t[i] == '\\' && i + 2 < t.size()) {
                const char c = t[++i];
                if (c == '"' || c == '\\') out += c;
                else out += std::string("\\") + c;  // \n and friends stay as layout escapes
            } else {
                out += t[i];
            }
        }
        return out;
    }

    void expect(const std::string& tok) {
        auto t = next();
        if (t != tok) throw std::runtime_error("expected '" + tok + "', got '" + t + "'");
    }
    void expect_word(const std::string& w) { expect(w); }

    std::string peek() {
        const auto save = pos_;
        auto t = next();
        pos_ = save;
        return t;
    }

    std::string next() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ >= s_.size()) return "";
        const char c = s_[pos_];
        if (c == '"') {
            std::size_t j = pos_ + 1;
            while (j < s_.size() && s_[j] != '"') {
                if (s_[j] == '\\') ++j;
                ++j;
            }
            if (j >= s_.size()) throw std::runtime_error("unterminated string");
            auto t = s_.substr(pos_, j + 1 - pos_);
            pos_ = j + 1;
            return t;
        }
        if (s_.compare(pos_, 2, "->") == 0) {
            pos_ += 2;
            return "->";
        }
        if (std::string("{}[]=;,").find(c) != std::string::npos) {
            ++pos_;
            return std::string(1, c);
        }
        const auto start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' ||
                                    s_[pos_] == '.')) {
            ++pos_;
        }
        if (pos_ == start) throw std::runtime_error(std::string("stray character '") + c + "'");
        return s_.substr(start, pos_ - start);
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

DotGraph read_dot(const std::string& text) { return DotReader(text).read(); }

std::size_t inhibit_edges(const DotGraph& g) {
    return static_cast<std::size_t>(std::count_if(g.edges.begin(), g.edges.end(), [](const auto& e) {
        auto it = e.attrs.find("class");
        return it != e.attrs.end() && it->second == "inhibit";
    }));
}

}  // namespace

TEST(Dot, MinimalTree) {
    const auto tree = load_fixture_tree("minimal.ift");
    const auto g = read_dot(export_dot(tree));
    EXPECT_EQ(g.nodes.size(), 4u);
    EXPECT_EQ(inhibit_edges(g), 1u);
    EXPECT_EQ(g.nodes.at("TOP").at("shape"), "box");
    EXPECT_EQ(g.nodes.at("B1").at("shape"), "circle");
    EXPECT_EQ(g.nodes.at("G1").at("shape"), "invtriangle");
}

TEST(Dot, BlackBastaNodeCountIsEventsPlusGates) {
    const auto tree = load_fixture_tree("black_basta.ift");
    const auto g = read_dot(export_dot(tree));
    EXPECT_EQ(g.nodes.size(), tree.tree().events.size() + tree.tree().gates.size());
    EXPECT_EQ(inhibit_edges(g), tree.edges().size());
    EXPECT_EQ(g.nodes.at("U11").at("shape"), "diamond");
    EXPECT_EQ(g.nodes.at("G_TOP").at("shape"), "house");
    for (const auto& e : g.edges) {
        EXPECT_TRUE(g.nodes.count(e.from)) << e.from;
        EXPECT_TRUE(g.nodes.count(e.to)) << e.to;
    }
}

TEST(Dot, SequentialChainAndParallelSet) {
    const char* text = R"(case S { category: Ransomware; tree {
      intermediate T "t"
        or G { basic a "a" basic b "b" }
        inhibit sequential [CE.Firewall, CE.MalwareProtection, AC.Backup]
        inhibit parallel [AC.Policy, AC.Education] when K "monitored"
    } })";
    auto r = parse(text);
    ASSERT_TRUE(r.ok());
    const auto dot = export_dot(*r.tree);
    const auto g = read_dot(dot);
    const auto& edge = *std::find_if(g.edges.begin(), g.edges.end(),
                                     [](const auto& e) { return e.attrs.count("class") && e.attrs.at("class") == "inhibit"; });
    EXPECT_NE(edge.attrs.at("label").find("CE.Firewall→CE.MalwareProtection→AC.Backup"), std::string::npos);
    EXPECT_NE(edge.attrs.at("label").find("AC.Policy || AC.Education"), std::string::npos);
    EXPECT_EQ(g.nodes.at("K").at("style"), "dashed");
    EXPECT_EQ(g.nodes.size(), 5u);
}

TEST(Dot, RandomTreesParseBack) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto tree = random_tree(seed);
        DotGraph g;
        ASSERT_NO_THROW(g = read_dot(export_dot(tree))) << "seed " << seed;
        EXPECT_EQ(g.nodes.size(), tree.tree().events.size() + tree.tree().gates.size());
        EXPECT_EQ(inhibit_edges(g), tree.edges().size());
    }
}

TEST(Dot, Deterministic) {
    const auto tree = load_fixture_tree("black_basta.ift");
    EXPECT_EQ(export_dot(tree), export_dot(tree));
}
