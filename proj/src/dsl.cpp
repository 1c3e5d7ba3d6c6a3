#include "ift/dsl.hpp"

#include <cctype>
#include <map>
#include <sstream>

#include "ift/attack.hpp"

namespace ift {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Lexical: return "lexical";
        case ErrorKind::Syntactic: return "syntax";
        case ErrorKind::Semantic: return "semantic";
    }
    return "?";
}

std::string format_error(const ParseError& error) {
    std::ostringstream os;
    os << error.span.file << ':' << error.span.line << ':' << error.span.column << ": "
       << to_string(error.kind) << " error: " << error.message;
    return os.str();
}

namespace {

enum class Tok { Word, String, LBrace, RBrace, LBracket, RBracket, Colon, Semicolon, Comma, End };

struct Token {
    Tok type = Tok::End;
    std::string text;
    int line = 1;
    int column = 1;
};

std::string describe(const Token& t) {
    switch (t.type) {
        case Tok::Word: return "'" + t.text + "'";
        case Tok::String: return "string";
        case Tok::LBrace: return "'{'";
        case Tok::RBrace: return "'}'";
        case Tok::LBracket: return "'['";
        case Tok::RBracket: return "']'";
        case Tok::Colon: return "':'";
        case Tok::Semicolon: return "';'";
        case Tok::Comma: return "','";
        case Tok::End: return "end of input";
    }
    return "?";
}

bool word_char(unsigned char c) { return std::isalnum(c) || c == '_' || c == '.'; }

// Length of the UTF-8 sequence starting at s[i], or 0 when malformed.
std::size_t utf8_length(std::string_view s, std::size_t i) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t n = 0;
    if (c < 0x80) return 1;
    if ((c & 0xE0) == 0xC0 && c >= 0xC2) n = 2;
    else if ((c & 0xF0) == 0xE0) n = 3;
    else if ((c & 0xF8) == 0xF0 && c <= 0xF4) n = 4;
    else return 0;
    if (i + n > s.size()) return 0;
    for (std::size_t k = 1; k < n; ++k) {
        if ((static_cast<unsigned char>(s[i + k]) & 0xC0) != 0x80) return 0;
    }
    return n;
}

class Lexer {
public:
    Lexer(std::string_view src, std::string file, std::vector<ParseError>& errors)
        : src_(src), file_(std::move(file)), errors_(errors) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_space();
            Token t;
            t.line = line_;
            t.column = col_;
            if (pos_ >= src_.size()) {
                out.push_back(t);
                return out;
            }
            const auto c = static_cast<unsigned char>(src_[pos_]);
            if (word_char(c)) {
                while (pos_ < src_.size() && word_char(static_cast<unsigned char>(src_[pos_]))) {
                    t.text += src_[pos_];
                    advance();
                }
                t.type = Tok::Word;
                out.push_back(std::move(t));
                continue;
            }
            if (c == '"') {
                if (lex_string(t)) out.push_back(std::move(t));
                continue;
            }
            Tok punct = Tok::End;
            switch (c) {
                case '{': punct = Tok::LBrace; break;
                case '}': punct = Tok::RBrace; break;
                case '[': punct = Tok::LBracket; break;
                case ']': punct = Tok::RBracket; break;
                case ':': punct = Tok::Colon; break;
                case ';': punct = Tok::Semicolon; break;
                case ',': punct = Tok::Comma; break;
                default: break;
            }
            if (punct != Tok::End) {
                t.type = punct;
                t.text = std::string(1, static_cast<char>(c));
                advance();
                out.push_back(std::move(t));
                continue;
            }
            std::ostringstream msg;
            if (c >= 0x20 && c < 0x7F) {
                msg << "unexpected character '" << static_cast<char>(c) << "'";
            } else {
                msg << "unexpected byte 0x" << std::hex << static_cast<int>(c);
            }
            error(t.line, t.column, msg.str());
            advance();
        }
    }

private:
    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else if ((static_cast<unsigned char>(src_[pos_]) & 0xC0) != 0x80) {
            ++col_;
        }
        ++pos_;
    }

    void skip_space() {
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else {
                return;
            }
        }
    }

    bool lex_string(Token& t) {
        advance();  // opening quote
        t.type = Tok::String;
        while (true) {
            if (pos_ >= src_.size() || src_[pos_] == '\n') {
                error(t.line, t.column, "unterminated string");
                return true;
            }
            const char c = src_[pos_];
            if (c == '"') {
                advance();
                return true;
            }
            if (c == '\\') {
                const int line = line_, col = col_;
                advance();
                if (pos_ >= src_.size()) continue;
                switch (src_[pos_]) {
                    case '"': t.text += '"'; break;
                    case '\\': t.text += '\\'; break;
                    case 'n': t.text += '\n'; break;
                    case 't': t.text += '\t'; break;
                    case 'r': t.text += '\r'; break;
                    default: error(line, col, "unknown escape sequence"); break;
                }
                if (src_[pos_] != '\n') advance();
                continue;
            }
            const std::size_t n = utf8_length(src_, pos_);
            if (n == 0) {
                error(line_, col_, "invalid UTF-8 in string");
                advance();
                continue;
            }
            for (std::size_t k = 0; k < n; ++k) {
                t.text += src_[pos_];
                advance();
            }
        }
    }

    void error(int line, int col, std::string msg) {
        errors_.push_back({{file_, line, col}, std::move(msg), ErrorKind::Lexical});
    }

    std::string_view src_;
    std::string file_;
    std::vector<ParseError>& errors_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

bool is_identifier(std::string_view s) {
    if (s.empty()) return false;
    const auto first = static_cast<unsigned char>(s[0]);
    if (!std::isalpha(first) && first != '_') return false;
    for (char c : s) {
        const auto u = static_cast<unsigned char>(c);
        if (!std::isalnum(u) && u != '_') return false;
    }
    return true;
}

bool is_event_keyword(const Token& t) {
    return t.type == Tok::Word && (t.text == "intermediate" || t.text == "basic" ||
                                   t.text == "undeveloped" || t.text == "conditioning");
}

bool is_gate_keyword(const Token& t) {
    return t.type == Tok::Word && (t.text == "and" || t.text == "or");
}

class Parser {
public:
    Parser(std::vector<Token> tokens, std::string file, std::vector<ParseError>& errors)
        : toks_(std::move(tokens)), file_(std::move(file)), errors_(errors) {}

    std::optional<ValidTree> run() {
        const std::size_t errors_before = errors_.size();
        const bool have_case = parse_document();
        if (!have_case) return std::nullopt;
        if (errors_.size() != errors_before) return std::nullopt;

        auto report = validate_tree(tree_);
        for (const auto& issue : report.issues) {
            errors_.push_back({span_for(issue), issue.message, ErrorKind::Semantic});
        }
        if (!report.ok()) return std::nullopt;
        return ValidTree::from(std::move(tree_));
    }

private:
    // ---- token helpers -------------------------------------------------

    const Token& peek(std::size_t ahead = 0) const {
        const std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
        return toks_[i];
    }
    bool at(Tok type) const { return peek().type == type; }
    bool at_word(std::string_view w) const { return at(Tok::Word) && peek().text == w; }
    Token take() {
        Token t = peek();
        if (pos_ < toks_.size() - 1) ++pos_;
        return t;
    }
    SourceSpan span(const Token& t) const { return {file_, t.line, t.column}; }

    void syntax(const Token& t, std::string msg) {
        errors_.push_back({span(t), std::move(msg), ErrorKind::Syntactic});
    }
    void semantic(const Token& t, std::string msg) {
        errors_.push_back({span(t), std::move(msg), ErrorKind::Semantic});
    }

    bool expect(Tok type, std::string_view what) {
        if (at(type)) {
            take();
            return true;
        }
        syntax(peek(), "expected " + std::string(what) + ", found " + describe(peek()));
        return false;
    }

    std::optional<Token> expect_identifier(std::string_view what) {
        if (!at(Tok::Word)) {
            syntax(peek(), "expected " + std::string(what) + ", found " + describe(peek()));
            return std::nullopt;
        }
        Token t = take();
        if (!is_identifier(t.text)) {
            syntax(t, "invalid identifier '" + t.text + "'");
            return std::nullopt;
        }
        return t;
    }

    // Skips to the token after the next ';' at the current nesting depth, or
    // stops before a closing brace that ends the enclosing block.
    void sync_statement() {
        int depth = 0;
        while (!at(Tok::End)) {
            if (at(Tok::LBrace) || at(Tok::LBracket)) ++depth;
            if (at(Tok::RBrace) || at(Tok::RBracket)) {
                if (depth == 0) return;
                --depth;
            }
            if (depth == 0 && at(Tok::Semicolon)) {
                take();
                return;
            }
            take();
        }
    }

    // ---- grammar -------------------------------------------------------

    bool parse_document() {
        if (!at_word("case")) {
            if (at(Tok::End)) {
                syntax(peek(), "missing case header");
                return false;
            }
            syntax(peek(), "missing case header: expected 'case', found " + describe(peek()));
            while (!at(Tok::End) && !at_word("case")) take();
            if (at(Tok::End)) return false;
        }
        const Token case_kw = take();
        case_span_ = span(case_kw);
        if (auto id = expect_identifier("case id")) tree_.metadata.case_id = id->text;
        if (!expect(Tok::LBrace, "'{' after case id")) {
            while (!at(Tok::End) && !at(Tok::LBrace)) take();
            if (at(Tok::LBrace)) take();
        }

        bool have_category = false;
        bool have_tree = false;
        std::map<std::string, int> seen;
        while (!at(Tok::End) && !at(Tok::RBrace)) {
            const Token key = peek();
            if (key.type != Tok::Word) {
                syntax(key, "expected a case field, found " + describe(key));
                take();
                sync_statement();
                continue;
            }
            if (++seen[key.text] > 1 &&
                (key.text == "category" || key.text == "variant" || key.text == "impacts" ||
                 key.text == "tree" || key.text == "phases")) {
                syntax(key, "duplicate field '" + key.text + "'");
            }
            take();
            if (key.text == "category") {
                have_category = parse_category_field() || have_category;
            } else if (key.text == "variant") {
                parse_variant_field();
            } else if (key.text == "impacts") {
                parse_impacts_field();
            } else if (key.text == "tree") {
                have_tree = parse_tree_field() || have_tree;
            } else if (key.text == "phases") {
                parse_phases_field();
            } else {
                syntax(key, "unknown case field '" + key.text + "'");
                sync_statement();
            }
        }
        const Token close = peek();
        expect(Tok::RBrace, "'}' closing the case");
        if (at(Tok::Semicolon)) take();
        if (!at(Tok::End)) syntax(peek(), "unexpected " + describe(peek()) + " after case");
        if (!have_category) syntax(close, "case is missing 'category'");
        if (!have_tree) syntax(close, "case is missing 'tree'");
        return true;
    }

    bool parse_category_field() {
        if (!expect(Tok::Colon, "':'")) {
            sync_statement();
            return false;
        }
        bool ok = false;
        if (at(Tok::Word)) {
            const Token w = take();
            if (auto cat = parse_category(w.text)) {
                tree_.metadata.category = *cat;
                ok = true;
            } else {
                semantic(w, "unknown category '" + w.text + "'");
                ok = true;  // reported; not a missing field
            }
        } else {
            syntax(peek(), "expected category name, found " + describe(peek()));
        }
        if (!expect(Tok::Semicolon, "';'")) sync_statement();
        return ok;
    }

    void parse_variant_field() {
        if (!expect(Tok::Colon, "':'")) return sync_statement();
        if (at(Tok::String)) {
            tree_.metadata.variant = take().text;
        } else {
            syntax(peek(), "expected variant string, found " + describe(peek()));
        }
        if (!expect(Tok::Semicolon, "';'")) sync_statement();
    }

    void parse_impacts_field() {
        if (!expect(Tok::Colon, "':'")) return sync_statement();
        auto items = parse_list(Tok::String, "impact string");
        for (auto& t : items) tree_.metadata.impacts.push_back(t.text);
        if (!expect(Tok::Semicolon, "';'")) sync_statement();
    }

    void parse_phases_field() {
        if (!expect(Tok::Colon, "':'")) return sync_statement();
        auto items = parse_list(Tok::Word, "phase event id");
        for (auto& t : items) {
            if (!is_identifier(t.text)) {
                syntax(t, "invalid identifier '" + t.text + "'");
                continue;
            }
            phase_spans_.emplace(t.text, span(t));
            tree_.phase_order.push_back(t.text);
        }
        if (!expect(Tok::Semicolon, "';'")) sync_statement();
    }

    // '[' item (',' item)* ']' with tolerant recovery on bad items.
    std::vector<Token> parse_list(Tok item, std::string_view what) {
        std::vector<Token> out;
        if (!expect(Tok::LBracket, "'['")) return out;
        if (at(Tok::RBracket)) {
            take();
            return out;
        }
        while (true) {
            if (at(item)) {
                out.push_back(take());
            } else {
                syntax(peek(), "expected " + std::string(what) + ", found " + describe(peek()));
                while (!at(Tok::End) && !at(Tok::Comma) && !at(Tok::RBracket) && !at(Tok::Semicolon) &&
                       !at(Tok::RBrace)) {
                    take();
                }
            }
            if (at(Tok::Comma)) {
                take();
                continue;
            }
            if (at(Tok::RBracket)) {
                take();
                return out;
            }
            syntax(peek(), "expected ',' or ']', found " + describe(peek()));
            return out;
        }
    }

    bool parse_tree_field() {
        if (!expect(Tok::LBrace, "'{' after 'tree'")) {
            sync_statement();
            return false;
        }
        bool ok = false;
        if (is_event_keyword(peek())) {
            tree_.top = parse_event();
            ok = true;
        } else {
            syntax(peek(), "expected the top event, found " + describe(peek()));
        }
        while (!at(Tok::End) && !at(Tok::RBrace)) {
            syntax(peek(), "tree holds a single top event; unexpected " + describe(peek()));
            skip_to_tree_item();
            if (is_event_keyword(peek())) parse_event();
        }
        expect(Tok::RBrace, "'}' closing the tree");
        return ok;
    }

    // Skips a brace-balanced block starting at the current '{'.
    void skip_block() {
        if (!at(Tok::LBrace)) return;
        int depth = 0;
        do {
            if (at(Tok::LBrace)) ++depth;
            if (at(Tok::RBrace)) --depth;
            take();
        } while (depth > 0 && !at(Tok::End));
    }

    // Recovery inside gate bodies: stop at the next event/gate keyword or '}'.
    void skip_to_tree_item() {
        take();
        while (!at(Tok::End) && !at(Tok::RBrace) && !is_event_keyword(peek()) && !is_gate_keyword(peek()) &&
               !at_word("gate")) {
            take();
        }
    }

    std::size_t parse_event() {
        const Token kw = take();
        EventNode node;
        if (kw.text == "intermediate") node.kind = EventKind::Intermediate;
        else if (kw.text == "basic") node.kind = EventKind::Basic;
        else if (kw.text == "undeveloped") node.kind = EventKind::Undeveloped;
        else node.kind = EventKind::Conditioning;

        Token id_tok = peek();
        if (auto id = expect_identifier("event id")) {
            node.id = id->text;
            id_tok = *id;
        } else {
            node.id = "_anon" + std::to_string(tree_.events.size());
            if (at(Tok::Word)) take();
        }
        if (at(Tok::String)) {
            node.label = take().text;
        } else {
            syntax(peek(), "expected label string for '" + node.id + "', found " + describe(peek()));
        }
        if (at_word("tags")) {
            take();
            if (expect(Tok::Colon, "':' after 'tags'")) {
                for (auto& t : parse_list(Tok::Word, "ATT&CK technique id")) {
                    if (!is_valid_technique_id(t.text)) {
                        semantic(t, "invalid ATT&CK technique id '" + t.text + "'");
                    }
                    node.techniques.push_back(t.text);
                }
            }
        }
        const std::size_t index = tree_.events.size();
        tree_.events.push_back(node);
        record_decl(node.id, id_tok);
        if (is_gate_keyword(peek())) {
            const std::size_t g = parse_gate(node.id + "_gate");
            tree_.events[index].cause = g;
        }
        return index;
    }

    std::size_t parse_gate(const std::string& default_id) {
        const Token kw = take();
        GateNode gate;
        gate.kind = kw.text == "and" ? GateKind::And : GateKind::Or;
        Token id_tok = kw;
        if (at(Tok::Word)) {
            if (auto id = expect_identifier("gate id")) {
                gate.id = id->text;
                id_tok = *id;
            }
        }
        if (gate.id.empty()) gate.id = default_id;

        const std::size_t index = tree_.gates.size();
        tree_.gates.push_back(gate);
        record_decl(gate.id, id_tok);

        if (depth_ >= kMaxDepth) {
            syntax(kw, "gates nested deeper than " + std::to_string(kMaxDepth) + " levels");
            skip_block();
            return index;
        }
        ++depth_;
        if (expect(Tok::LBrace, "'{' opening the gate")) {
            std::size_t position = 0;
            while (!at(Tok::End) && !at(Tok::RBrace)) {
                if (is_event_keyword(peek())) {
                    const std::size_t e = parse_event();
                    tree_.gates[index].children.push_back(NodeRef::event(e));
                } else if (is_gate_keyword(peek()) || (at_word("gate") && is_gate_keyword(peek(1)))) {
                    // `gate and|or` marks a nested gate; a bare keyword is only
                    // unambiguous before the first event of the body.
                    if (at_word("gate")) take();
                    const std::string nested = tree_.gates[index].id + "_" + std::to_string(position + 1);
                    const std::size_t g = parse_gate(nested);
                    tree_.gates[index].children.push_back(NodeRef::gate(g));
                } else {
                    syntax(peek(), "expected an event or gate, found " + describe(peek()));
                    skip_to_tree_item();
                    continue;
                }
                ++position;
            }
            expect(Tok::RBrace, "'}' closing the gate");
        }
        --depth_;
        while (at_word("inhibit")) {
            if (auto a = parse_inhibit()) tree_.gates[index].inhibits.push_back(std::move(*a));
        }
        return index;
    }

    std::optional<InhibitAnnotation> parse_inhibit() {
        take();  // inhibit
        InhibitAnnotation a;
        if (at_word("parallel")) {
            take();
        } else if (at_word("sequential")) {
            take();
            a.composition = Composition::Sequential;
        }
        const std::size_t before = errors_.size();
        for (auto& t : parse_list(Tok::Word, "control")) {
            const auto dot = t.text.find('.');
            if (dot == std::string::npos) {
                semantic(t, "control '" + t.text + "' must be written FAMILY.Name");
                continue;
            }
            const auto family = parse_family(std::string_view(t.text).substr(0, dot));
            const auto name = parse_control_name(std::string_view(t.text).substr(dot + 1));
            if (!family) {
                semantic(t, "unknown control family '" + t.text.substr(0, dot) + "'");
            } else if (!name) {
                semantic(t, "unknown control '" + t.text + "'");
            } else if (family_of(*name) != *family) {
                semantic(t, "control '" + t.text.substr(dot + 1) + "' belongs to family " +
                                std::string(to_string(family_of(*name))) + ", not " + t.text.substr(0, dot));
            } else {
                a.controls.push_back(Control{*family, *name});
            }
        }
        if (at_word("when")) {
            take();
            if (auto id = expect_identifier("conditioning event id")) {
                EventNode cond;
                cond.id = id->text;
                cond.kind = EventKind::Conditioning;
                if (at(Tok::String)) {
                    cond.label = take().text;
                } else {
                    syntax(peek(), "expected label string for condition '" + cond.id + "'");
                }
                a.condition = cond.id;
                if (!tree_.find_event(cond.id) || tree_.events[*tree_.find_event(cond.id)].kind !=
                                                      EventKind::Conditioning) {
                    tree_.events.push_back(cond);
                    record_decl(cond.id, *id);
                }
            }
        }
        if (errors_.size() != before) return std::nullopt;
        return a;
    }

    // ---- spans for validation issues -----------------------------------

    void record_decl(const std::string& id, const Token& t) { decl_spans_[id].push_back(span(t)); }

    SourceSpan span_for(const ValidationIssue& issue) const {
        switch (issue.code) {
            case IssueCode::PhaseUnknown:
            case IssueCode::PhaseNotRoot:
            case IssueCode::PhaseDuplicate: {
                auto range = phase_spans_.equal_range(issue.subject);
                if (range.first != range.second) {
                    auto last = range.first;
                    for (auto it = range.first; it != range.second; ++it) last = it;
                    return issue.code == IssueCode::PhaseDuplicate ? last->second : range.first->second;
                }
                break;
            }
            default: break;
        }
        if (auto it = decl_spans_.find(issue.subject); it != decl_spans_.end() && !it->second.empty()) {
            return issue.code == IssueCode::DuplicateId ? it->second.back() : it->second.front();
        }
        return case_span_;
    }

    static constexpr int kMaxDepth = 200;

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    int depth_ = 0;
    std::string file_;
    std::vector<ParseError>& errors_;
    FaultTree tree_;
    SourceSpan case_span_;
    std::map<std::string, std::vector<SourceSpan>> decl_spans_;
    std::multimap<std::string, SourceSpan> phase_spans_;
};

}  // namespace

ParseResult parse(std::string_view text, std::string_view file) {
    ParseResult result;
    const std::string name(file);
    Lexer lexer(text, name, result.errors);
    auto tokens = lexer.run();
    Parser parser(std::move(tokens), name, result.errors);
    auto tree = parser.run();
    if (result.errors.empty()) result.tree = std::move(tree);
    return result;
}

// ---- serializer ---------------------------------------------------------

namespace {

std::string quote(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default: out += c;
        }
    }
    out += '"';
    return out;
}

class Writer {
public:
    explicit Writer(const FaultTree& t) : t_(t) {}

    std::string run() {
        const auto& m = t_.metadata;
        out_ << "case " << m.case_id << " {\n";
        out_ << "  category: " << to_string(m.category) << ";\n";
        if (m.variant) out_ << "  variant: " << quote(*m.variant) << ";\n";
        out_ << "  impacts: [";
        for (std::size_t i = 0; i < m.impacts.size(); ++i) out_ << (i ? ", " : "") << quote(m.impacts[i]);
        out_ << "];\n";
        out_ << "  tree {\n";
        event(t_.top, 2);
        out_ << "  }\n";
        out_ << "  phases: [";
        for (std::size_t i = 0; i < t_.phase_order.size(); ++i) out_ << (i ? ", " : "") << t_.phase_order[i];
        out_ << "];\n";
        out_ << "}\n";
        return out_.str();
    }

private:
    void indent(int depth) { out_ << std::string(static_cast<std::size_t>(depth) * 2, ' '); }

    void event(std::size_t e, int depth) {
        const auto& n = t_.events[e];
        indent(depth);
        out_ << to_string(n.kind) << ' ' << n.id << ' ' << quote(n.label);
        if (!n.techniques.empty()) {
            out_ << " tags: [";
            for (std::size_t i = 0; i < n.techniques.size(); ++i) out_ << (i ? ", " : "") << n.techniques[i];
            out_ << ']';
        }
        out_ << '\n';
        if (n.cause) gate(*n.cause, depth + 1);
    }

    void gate(std::size_t g, int depth, bool nested = false) {
        const auto& n = t_.gates[g];
        indent(depth);
        if (nested) out_ << "gate ";
        out_ << to_string(n.kind) << ' ' << n.id << " {\n";
        for (const auto& c : n.children) {
            if (c.is_gate()) gate(c.index, depth + 1, true);
            else event(c.index, depth + 1);
        }
        indent(depth);
        out_ << "}\n";
        for (const auto& a : n.inhibits) {
            indent(depth);
            out_ << "inhibit " << to_string(a.composition) << " [";
            for (std::size_t i = 0; i < a.controls.size(); ++i) {
                out_ << (i ? ", " : "") << qualified_name(a.controls[i]);
            }
            out_ << ']';
            if (a.condition) {
                out_ << " when " << *a.condition;
                if (auto idx = t_.find_event(*a.condition)) out_ << ' ' << quote(t_.events[*idx].label);
            }
            out_ << '\n';
        }
    }

    const FaultTree& t_;
    std::ostringstream out_;
};

}  // namespace

std::string serialize(const ValidTree& tree) { return Writer(tree.tree()).run(); }

}  // namespace ift
