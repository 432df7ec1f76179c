#include "rdb2owl/ddl_parser.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>
#include <sstream>

namespace rdb2owl {

std::string format_diagnostic(const ParseDiagnostic& diag, std::string_view file) {
    std::ostringstream out;
    out << file << ":" << diag.span.line << ":" << diag.span.column << ": "
        << (diag.severity == Severity::Error ? "error" : "warning") << ": " << diag.message;
    return out.str();
}

bool has_errors(const std::vector<ParseDiagnostic>& diagnostics) {
    return std::any_of(diagnostics.begin(), diagnostics.end(),
                       [](const ParseDiagnostic& d) { return d.severity == Severity::Error; });
}

namespace {

enum class TokKind { Ident, Number, String, LParen, RParen, Comma, Semi, Minus, End, Bad };

struct Token {
    TokKind kind = TokKind::End;
    std::string text;     // identifier spelling (unquoted), number text, string content
    bool quoted = false;  // quoted identifiers never match keywords
    SourceSpan span;
};

bool is_bare_start(char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}

bool is_bare_char(char c) { return is_bare_start(c) || (c >= '0' && c <= '9'); }

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Identифiers (bare or quoted) are limited to a charset that stays legal in
// IRIs and XML names downstream: letter/underscore start, then [A-Za-z0-9_-].
bool valid_quoted_ident(const std::string& s) {
    if (s.empty() || !is_bare_start(s[0])) return false;
    for (char c : s) {
        if (!is_bare_char(c) && c != '-') return false;
    }
    return true;
}

class Lexer {
  public:
    Lexer(std::string_view text, std::vector<ParseDiagnostic>& diags)
        : text_(text), diags_(diags) {}

    std::vector<Token> lex() {
        std::vector<Token> tokens;
        while (true) {
            skip_trivia();
            SourceSpan span{line_, col_};
            if (pos_ >= text_.size()) {
                tokens.push_back(Token{TokKind::End, "", false, span});
                break;
            }
            char c = text_[pos_];
            if (is_bare_start(c)) {
                size_t start = pos_;
                while (pos_ < text_.size() && is_bare_char(text_[pos_])) bump();
                tokens.push_back(
                    Token{TokKind::Ident, std::string(text_.substr(start, pos_ - start)), false,
                          span});
            } else if (is_digit(c)) {
                size_t start = pos_;
                while (pos_ < text_.size() && is_digit(text_[pos_])) bump();
                if (pos_ + 1 < text_.size() && text_[pos_] == '.' && is_digit(text_[pos_ + 1])) {
                    bump();
                    while (pos_ < text_.size() && is_digit(text_[pos_])) bump();
                }
                tokens.push_back(Token{TokKind::Number,
                                       std::string(text_.substr(start, pos_ - start)), false,
                                       span});
            } else if (c == '"') {
                tokens.push_back(lex_quoted_ident(span));
            } else if (c == '\'') {
                tokens.push_back(lex_string(span));
            } else {
                TokKind kind;
                switch (c) {
                    case '(': kind = TokKind::LParen; break;
                    case ')': kind = TokKind::RParen; break;
                    case ',': kind = TokKind::Comma; break;
                    case ';': kind = TokKind::Semi; break;
                    case '-': kind = TokKind::Minus; break;
                    default: kind = TokKind::Bad; break;
                }
                tokens.push_back(Token{kind, std::string(1, c), false, span});
                bump();
            }
        }
        return tokens;
    }

  private:
    void bump() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_trivia() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                bump();
            } else if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '-') {
                while (pos_ < text_.size() && text_[pos_] != '\n') bump();
            } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '*') {
                SourceSpan span{line_, col_};
                bump();
                bump();
                bool closed = false;
                while (pos_ < text_.size()) {
                    if (text_[pos_] == '*' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
                        bump();
                        bump();
                        closed = true;
                        break;
                    }
                    bump();
                }
                if (!closed)
                    diags_.push_back(
                        ParseDiagnostic{Severity::Error, "unterminated block comment", span});
            } else {
                break;
            }
        }
    }

    Token lex_quoted_ident(SourceSpan span) {
        bump();  // opening quote
        std::string content;
        bool closed = false;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '"') {
                bump();
                closed = true;
                break;
            }
            content.push_back(c);
            bump();
        }
        if (!closed) {
            diags_.push_back(ParseDiagnostic{Severity::Error, "unterminated quoted identifier",
                                             span});
            return Token{TokKind::Bad, content, true, span};
        }
        if (!valid_quoted_ident(content)) {
            diags_.push_back(ParseDiagnostic{
                Severity::Error,
                "identifier \"" + content + "\" contains unsupported characters", span});
            return Token{TokKind::Bad, content, true, span};
        }
        return Token{TokKind::Ident, content, true, span};
    }

    Token lex_string(SourceSpan span) {
        bump();  // opening quote
        std::string content;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '\'') {
                if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '\'') {
                    content.push_back('\'');
                    bump();
                    bump();
                    continue;
                }
                bump();
                return Token{TokKind::String, content, false, span};
            }
            content.push_back(c);
            bump();
        }
        diags_.push_back(ParseDiagnostic{Severity::Error, "unterminated string literal", span});
        return Token{TokKind::Bad, content, false, span};
    }

    std::string_view text_;
    std::vector<ParseDiagnostic>& diags_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

bool is_kw(const Token& t, std::string_view kw) {
    return t.kind == TokKind::Ident && !t.quoted && iequals(t.text, kw);
}

class ParserBase {
  public:
    ParserBase(std::vector<Token> tokens, std::vector<ParseDiagnostic>& diags)
        : tokens_(std::move(tokens)), diags_(diags) {}

  protected:
    const Token& peek(size_t ahead = 0) const {
        size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
        return tokens_[i];
    }

    const Token& advance() {
        const Token& t = tokens_[pos_];
        if (pos_ + 1 < tokens_.size()) ++pos_;
        return t;
    }

    bool at_end() const { return peek().kind == TokKind::End; }

    bool match_kw(std::string_view kw) {
        if (is_kw(peek(), kw)) {
            advance();
            return true;
        }
        return false;
    }

    bool expect_kw(std::string_view kw) {
        if (match_kw(kw)) return true;
        error_here(std::string("expected '") + std::string(kw) + "'");
        return false;
    }

    bool match(TokKind kind) {
        if (peek().kind == kind) {
            advance();
            return true;
        }
        return false;
    }

    bool expect(TokKind kind, const char* what, Token* out = nullptr) {
        if (peek().kind == kind) {
            if (out) *out = peek();
            advance();
            return true;
        }
        error_here(std::string("expected ") + what);
        return false;
    }

    void error_here(std::string msg) {
        error_at(peek().span, std::move(msg));
    }

    void error_at(SourceSpan span, std::string msg) {
        diags_.push_back(ParseDiagnostic{Severity::Error, "syntax error: " + std::move(msg),
                                         span});
    }

    void diag(Severity sev, SourceSpan span, std::string msg) {
        diags_.push_back(ParseDiagnostic{sev, std::move(msg), span});
    }

    // Error recovery: resume after the next semicolon.
    void recover_to_semicolon() {
        while (!at_end()) {
            if (advance().kind == TokKind::Semi) return;
        }
    }

    std::vector<Token> tokens_;
    std::vector<ParseDiagnostic>& diags_;
    size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// CREATE TABLE parsing
// ---------------------------------------------------------------------------

class DdlParser : public ParserBase {
  public:
    using ParserBase::ParserBase;

    struct Output {
        RelationalSchema schema;
        std::map<std::string, SourceSpan> table_spans;  // lowercase name -> CREATE span
    };

    Output parse() {
        Output out;
        out.schema.name = "db";
        while (!at_end()) {
            SourceSpan span = peek().span;
            if (is_kw(peek(), "CREATE")) {
                if (auto table = parse_create_table()) {
                    out.table_spans.emplace(to_lower(table->name), span);
                    out.schema.tables.push_back(std::move(*table));
                }
            } else {
                error_here("expected CREATE TABLE statement");
                recover_to_semicolon();
            }
        }
        return out;
    }

  private:
    std::optional<Table> parse_create_table() {
        advance();  // CREATE
        if (!expect_kw("TABLE")) {
            recover_to_semicolon();
            return std::nullopt;
        }
        Token name_tok;
        if (!expect(TokKind::Ident, "table name", &name_tok) ||
            !expect(TokKind::LParen, "'('")) {
            recover_to_semicolon();
            return std::nullopt;
        }

        Table table;
        table.name = name_tok.text;
        bool pk_declared = false;
        std::set<std::set<std::string>> unique_sets;
        bool ok = true;

        while (true) {
            if (is_kw(peek(), "PRIMARY") || is_kw(peek(), "UNIQUE") || is_kw(peek(), "FOREIGN")) {
                ok = parse_table_constraint(table, pk_declared, unique_sets);
            } else {
                ok = parse_column_def(table, pk_declared, unique_sets);
            }
            if (!ok) {
                recover_to_semicolon();
                return std::nullopt;
            }
            if (match(TokKind::Comma)) continue;
            break;
        }
        if (!expect(TokKind::RParen, "')'") || !expect(TokKind::Semi, "';'")) {
            recover_to_semicolon();
            return std::nullopt;
        }

        // Primary-key members are NOT NULL regardless of their declaration.
        for (Column& col : table.columns) {
            if (table.is_pk_column(col.name)) col.nullable = false;
        }
        for (ForeignKey& fk : table.foreign_keys) {
            std::set<std::string> sources;
            for (const std::string& c : fk.source_columns) sources.insert(to_lower(c));
            fk.unique_on_source = unique_sets.count(sources) > 0;
        }
        return table;
    }

    bool parse_column_def(Table& table, bool& pk_declared,
                          std::set<std::set<std::string>>& unique_sets) {
        Token name_tok;
        if (!expect(TokKind::Ident, "column name", &name_tok)) return false;

        Column col;
        col.name = name_tok.text;
        if (!parse_type(col.type)) return false;

        while (true) {
            if (is_kw(peek(), "NOT")) {
                advance();
                if (!expect_kw("NULL")) return false;
                col.nullable = false;
            } else if (is_kw(peek(), "NULL")) {
                advance();
                col.nullable = true;
            } else if (is_kw(peek(), "PRIMARY")) {
                SourceSpan span = peek().span;
                advance();
                if (!expect_kw("KEY")) return false;
                if (pk_declared) {
                    error_at(span, "multiple PRIMARY KEY declarations for table '" + table.name +
                                       "'");
                    return false;
                }
                pk_declared = true;
                table.primary_key.push_back(col.name);
            } else if (is_kw(peek(), "UNIQUE")) {
                advance();
                unique_sets.insert({to_lower(col.name)});
            } else if (is_kw(peek(), "REFERENCES")) {
                advance();
                Token target, target_col;
                if (!expect(TokKind::Ident, "referenced table name", &target) ||
                    !expect(TokKind::LParen, "'('") ||
                    !expect(TokKind::Ident, "referenced column name", &target_col) ||
                    !expect(TokKind::RParen, "')'"))
                    return false;
                ForeignKey fk;
                fk.source_columns = {col.name};
                fk.target_table = target.text;
                fk.target_columns = {target_col.text};
                table.foreign_keys.push_back(std::move(fk));
            } else {
                break;
            }
        }
        table.columns.push_back(std::move(col));
        return true;
    }

    bool parse_table_constraint(Table& table, bool& pk_declared,
                                std::set<std::set<std::string>>& unique_sets) {
        if (is_kw(peek(), "PRIMARY")) {
            SourceSpan span = peek().span;
            advance();
            if (!expect_kw("KEY")) return false;
            std::vector<std::string> cols;
            if (!parse_column_list(cols)) return false;
            if (pk_declared) {
                error_at(span,
                         "multiple PRIMARY KEY declarations for table '" + table.name + "'");
                return false;
            }
            pk_declared = true;
            table.primary_key = std::move(cols);
            return true;
        }
        if (is_kw(peek(), "UNIQUE")) {
            advance();
            std::vector<std::string> cols;
            if (!parse_column_list(cols)) return false;
            std::set<std::string> key;
            for (const std::string& c : cols) key.insert(to_lower(c));
            unique_sets.insert(std::move(key));
            return true;
        }
        // FOREIGN KEY (cols) REFERENCES table (cols)
        advance();  // FOREIGN
        if (!expect_kw("KEY")) return false;
        ForeignKey fk;
        if (!parse_column_list(fk.source_columns)) return false;
        if (!expect_kw("REFERENCES")) return false;
        Token target;
        if (!expect(TokKind::Ident, "referenced table name", &target)) return false;
        fk.target_table = target.text;
        if (!parse_column_list(fk.target_columns)) return false;
        table.foreign_keys.push_back(std::move(fk));
        return true;
    }

    bool parse_column_list(std::vector<std::string>& out) {
        if (!expect(TokKind::LParen, "'('")) return false;
        do {
            Token col;
            if (!expect(TokKind::Ident, "column name", &col)) return false;
            out.push_back(col.text);
        } while (match(TokKind::Comma));
        return expect(TokKind::RParen, "')'");
    }

    bool parse_type_params(int count, int out[2]) {
        if (!expect(TokKind::LParen, "'('")) return false;
        for (int i = 0; i < count; ++i) {
            if (i > 0 && !expect(TokKind::Comma, "','")) return false;
            Token num;
            if (!expect(TokKind::Number, "type parameter", &num)) return false;
            if (num.text.find('.') != std::string::npos || num.text.size() > 9) {
                error_at(num.span, "invalid type parameter '" + num.text + "'");
                return false;
            }
            int value = 0;
            std::from_chars(num.text.data(), num.text.data() + num.text.size(), value);
            out[i] = value;
        }
        return expect(TokKind::RParen, "')'");
    }

    // Like parse_type_params(2, ...) but the second parameter may be omitted.
    bool parse_precision_scale(int& p, int& s) {
        if (!expect(TokKind::LParen, "'('")) return false;
        Token num;
        if (!expect(TokKind::Number, "precision", &num)) return false;
        if (num.text.find('.') != std::string::npos || num.text.size() > 9) {
            error_at(num.span, "invalid type parameter '" + num.text + "'");
            return false;
        }
        std::from_chars(num.text.data(), num.text.data() + num.text.size(), p);
        s = 0;
        if (match(TokKind::Comma)) {
            Token num2;
            if (!expect(TokKind::Number, "scale", &num2)) return false;
            if (num2.text.find('.') != std::string::npos || num2.text.size() > 9) {
                error_at(num2.span, "invalid type parameter '" + num2.text + "'");
                return false;
            }
            std::from_chars(num2.text.data(), num2.text.data() + num2.text.size(), s);
        }
        return expect(TokKind::RParen, "')'");
    }

    bool parse_type(SqlType& out) {
        Token tok;
        if (!expect(TokKind::Ident, "type name", &tok)) return false;
        SourceSpan span = tok.span;
        if (tok.quoted) {
            error_at(span, "unknown type '" + tok.text + "'");
            return false;
        }
        std::string up = to_lower(tok.text);
        if (up == "int" || up == "integer") {
            out = SqlType::simple(SqlTypeKind::Int);
        } else if (up == "bigint") {
            out = SqlType::simple(SqlTypeKind::BigInt);
        } else if (up == "smallint") {
            out = SqlType::simple(SqlTypeKind::SmallInt);
        } else if (up == "float") {
            out = SqlType::simple(SqlTypeKind::Float);
        } else if (up == "double") {
            out = SqlType::simple(SqlTypeKind::Double);
        } else if (up == "text") {
            out = SqlType::simple(SqlTypeKind::Text);
        } else if (up == "date") {
            out = SqlType::simple(SqlTypeKind::Date);
        } else if (up == "timestamp") {
            out = SqlType::simple(SqlTypeKind::Timestamp);
        } else if (up == "boolean") {
            out = SqlType::simple(SqlTypeKind::Boolean);
        } else if (up == "decimal" || up == "numeric") {
            int p = 0, s = 0;
            if (!parse_precision_scale(p, s)) return false;
            out = SqlType::decimal(p, s);
        } else if (up == "number") {
            // Oracle NUMBER: zero scale folds to the integer family by width,
            // anything else is a plain decimal.
            int p = 0, s = 0;
            if (!parse_precision_scale(p, s)) return false;
            if (s == 0) {
                if (p <= 4)
                    out = SqlType::simple(SqlTypeKind::SmallInt);
                else if (p <= 9)
                    out = SqlType::simple(SqlTypeKind::Int);
                else
                    out = SqlType::simple(SqlTypeKind::BigInt);
            } else {
                out = SqlType::decimal(p, s);
            }
        } else if (up == "varchar" || up == "varchar2") {
            int params[2] = {0, 0};
            if (!parse_type_params(1, params)) return false;
            out = SqlType::varchar(params[0]);
        } else if (up == "char") {
            int params[2] = {0, 0};
            if (!parse_type_params(1, params)) return false;
            out = SqlType::fixed_char(params[0]);
        } else {
            error_at(span, "unknown type '" + tok.text + "'");
            return false;
        }
        if (!out.params_valid()) {
            error_at(span, "invalid parameters for type " + tok.text);
            return false;
        }
        return true;
    }
};

// ---------------------------------------------------------------------------
// INSERT parsing
// ---------------------------------------------------------------------------

struct RawValue {
    enum class Kind { Number, String, Null, DateLit, TimestampLit, BoolLit } kind;
    std::string text;  // for BoolLit: "true"/"false"
    SourceSpan span;
};

// Canonical decimal text: no leading '+', no redundant zeros, "-0" folded to "0".
// Returns false when `text` is not a plain decimal number.
bool canonicalize_decimal(const std::string& text, std::string& out, int& int_digits,
                          int& frac_digits) {
    size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
        negative = text[i] == '-';
        ++i;
    }
    std::string int_part, frac_part;
    while (i < text.size() && is_digit(text[i])) int_part.push_back(text[i++]);
    if (i < text.size() && text[i] == '.') {
        ++i;
        while (i < text.size() && is_digit(text[i])) frac_part.push_back(text[i++]);
    }
    if (i != text.size() || int_part.empty()) return false;

    size_t nz = int_part.find_first_not_of('0');
    int_part = nz == std::string::npos ? "0" : int_part.substr(nz);
    while (!frac_part.empty() && frac_part.back() == '0') frac_part.pop_back();

    bool zero = int_part == "0" && frac_part.empty();
    out = (negative && !zero) ? "-" : "";
    out += int_part;
    if (!frac_part.empty()) out += "." + frac_part;
    int_digits = int_part == "0" ? 0 : static_cast<int>(int_part.size());
    frac_digits = static_cast<int>(frac_part.size());
    return true;
}

bool valid_date(const std::string& s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    for (size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u}) {
        if (!is_digit(s[i])) return false;
    }
    int month = (s[5] - '0') * 10 + (s[6] - '0');
    int day = (s[8] - '0') * 10 + (s[9] - '0');
    return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

// Accepts "YYYY-MM-DD HH:MM:SS" or with 'T'; canonical form uses 'T'.
bool valid_timestamp(const std::string& s, std::string& canonical) {
    if (s.size() != 19 || (s[10] != ' ' && s[10] != 'T')) return false;
    if (!valid_date(s.substr(0, 10))) return false;
    std::string time = s.substr(11);
    if (time[2] != ':' || time[5] != ':') return false;
    for (size_t i : {0u, 1u, 3u, 4u, 6u, 7u}) {
        if (!is_digit(time[i])) return false;
    }
    int hh = (time[0] - '0') * 10 + (time[1] - '0');
    int mm = (time[3] - '0') * 10 + (time[4] - '0');
    int ss = (time[6] - '0') * 10 + (time[7] - '0');
    if (hh > 23 || mm > 59 || ss > 59) return false;
    canonical = s.substr(0, 10) + "T" + time;
    return true;
}

// Coerces a parsed literal to the column's SQL type; `why` explains failure.
std::optional<Value> coerce_value(const Column& col, const RawValue& raw, std::string& why) {
    const SqlType& t = col.type;
    auto mismatch = [&](const std::string& reason) -> std::optional<Value> {
        why = reason;
        return std::nullopt;
    };

    switch (t.kind) {
        case SqlTypeKind::Int:
        case SqlTypeKind::BigInt:
        case SqlTypeKind::SmallInt: {
            if (raw.kind != RawValue::Kind::Number || raw.text.find('.') != std::string::npos)
                return mismatch("expected an integer for " + t.to_string());
            long long v = 0;
            auto [ptr, ec] =
                std::from_chars(raw.text.data(), raw.text.data() + raw.text.size(), v);
            if (ec != std::errc() || ptr != raw.text.data() + raw.text.size())
                return mismatch("integer out of range");
            if (t.kind == SqlTypeKind::SmallInt && (v < -32768 || v > 32767))
                return mismatch("value out of SMALLINT range");
            if (t.kind == SqlTypeKind::Int && (v < -2147483648LL || v > 2147483647LL))
                return mismatch("value out of INT range");
            return Value{ValueKind::Integer, std::to_string(v)};
        }
        case SqlTypeKind::Decimal: {
            if (raw.kind != RawValue::Kind::Number)
                return mismatch("expected a numeric literal for " + t.to_string());
            std::string canonical;
            int int_digits = 0, frac_digits = 0;
            if (!canonicalize_decimal(raw.text, canonical, int_digits, frac_digits))
                return mismatch("malformed numeric literal");
            if (frac_digits > t.scale || int_digits > t.precision - t.scale)
                return mismatch("value does not fit " + t.to_string());
            return Value{ValueKind::Decimal, canonical};
        }
        case SqlTypeKind::Float:
        case SqlTypeKind::Double: {
            if (raw.kind != RawValue::Kind::Number)
                return mismatch("expected a numeric literal for " + t.to_string());
            std::string canonical;
            int int_digits = 0, frac_digits = 0;
            if (!canonicalize_decimal(raw.text, canonical, int_digits, frac_digits))
                return mismatch("malformed numeric literal");
            return Value{ValueKind::Decimal, canonical};
        }
        case SqlTypeKind::Varchar:
        case SqlTypeKind::Char: {
            if (raw.kind != RawValue::Kind::String)
                return mismatch("expected a string literal for " + t.to_string());
            if (static_cast<int>(raw.text.size()) > t.length)
                return mismatch("string of length " + std::to_string(raw.text.size()) +
                                " does not fit " + t.to_string());
            return Value{ValueKind::Text, raw.text};
        }
        case SqlTypeKind::Text: {
            if (raw.kind != RawValue::Kind::String)
                return mismatch("expected a string literal for TEXT");
            return Value{ValueKind::Text, raw.text};
        }
        case SqlTypeKind::Date: {
            if (raw.kind != RawValue::Kind::DateLit && raw.kind != RawValue::Kind::String)
                return mismatch("expected a DATE literal");
            if (!valid_date(raw.text)) return mismatch("malformed date '" + raw.text + "'");
            return Value{ValueKind::Date, raw.text};
        }
        case SqlTypeKind::Timestamp: {
            if (raw.kind != RawValue::Kind::TimestampLit && raw.kind != RawValue::Kind::String)
                return mismatch("expected a TIMESTAMP literal");
            std::string canonical;
            if (!valid_timestamp(raw.text, canonical))
                return mismatch("malformed timestamp '" + raw.text + "'");
            return Value{ValueKind::Timestamp, canonical};
        }
        case SqlTypeKind::Boolean: {
            if (raw.kind != RawValue::Kind::BoolLit)
                return mismatch("expected TRUE or FALSE for BOOLEAN");
            return Value{ValueKind::Boolean, raw.text};
        }
    }
    return mismatch("unsupported column type");
}

class InsertParser : public ParserBase {
  public:
    InsertParser(std::vector<Token> tokens, std::vector<ParseDiagnostic>& diags,
                 const RelationalSchema& schema, const std::set<std::string>& ignored)
        : ParserBase(std::move(tokens), diags), schema_(schema), ignored_(ignored) {}

    std::vector<Tuple> parse() {
        std::vector<Tuple> tuples;
        while (!at_end()) {
            if (is_kw(peek(), "INSERT")) {
                if (auto tuple = parse_insert()) tuples.push_back(std::move(*tuple));
            } else {
                error_here("expected INSERT statement");
                recover_to_semicolon();
            }
        }
        return tuples;
    }

  private:
    std::optional<Tuple> parse_insert() {
        advance();  // INSERT
        Token name_tok;
        if (!expect_kw("INTO") || !expect(TokKind::Ident, "table name", &name_tok)) {
            recover_to_semicolon();
            return std::nullopt;
        }

        std::vector<Token> column_toks;
        bool explicit_columns = false;
        if (peek().kind == TokKind::LParen) {
            explicit_columns = true;
            advance();
            do {
                Token col;
                if (!expect(TokKind::Ident, "column name", &col)) {
                    recover_to_semicolon();
                    return std::nullopt;
                }
                column_toks.push_back(col);
            } while (match(TokKind::Comma));
            if (!expect(TokKind::RParen, "')'")) {
                recover_to_semicolon();
                return std::nullopt;
            }
        }

        if (!expect_kw("VALUES") || !expect(TokKind::LParen, "'('")) {
            recover_to_semicolon();
            return std::nullopt;
        }
        std::vector<RawValue> values;
        do {
            auto value = parse_value();
            if (!value) {
                recover_to_semicolon();
                return std::nullopt;
            }
            values.push_back(std::move(*value));
        } while (match(TokKind::Comma));
        if (!expect(TokKind::RParen, "')'") || !expect(TokKind::Semi, "';'")) {
            recover_to_semicolon();
            return std::nullopt;
        }

        if (ignored_.count(to_lower(name_tok.text))) return std::nullopt;
        return bind_tuple(name_tok, column_toks, explicit_columns, values);
    }

    std::optional<RawValue> parse_value() {
        const Token& t = peek();
        SourceSpan span = t.span;
        if (t.kind == TokKind::Minus) {
            advance();
            Token num;
            if (!expect(TokKind::Number, "number after '-'", &num)) return std::nullopt;
            return RawValue{RawValue::Kind::Number, "-" + num.text, span};
        }
        if (t.kind == TokKind::Number) {
            advance();
            return RawValue{RawValue::Kind::Number, t.text, span};
        }
        if (t.kind == TokKind::String) {
            advance();
            return RawValue{RawValue::Kind::String, t.text, span};
        }
        if (is_kw(t, "NULL")) {
            advance();
            return RawValue{RawValue::Kind::Null, "", span};
        }
        if (is_kw(t, "TRUE") || is_kw(t, "FALSE")) {
            advance();
            return RawValue{RawValue::Kind::BoolLit, to_lower(t.text), span};
        }
        if (is_kw(t, "DATE") || is_kw(t, "TIMESTAMP")) {
            bool is_date = is_kw(t, "DATE");
            advance();
            Token lit;
            if (!expect(TokKind::String, "string literal", &lit)) return std::nullopt;
            return RawValue{is_date ? RawValue::Kind::DateLit : RawValue::Kind::TimestampLit,
                            lit.text, span};
        }
        error_here("expected a literal value");
        return std::nullopt;
    }

    std::optional<Tuple> bind_tuple(const Token& name_tok, const std::vector<Token>& column_toks,
                                    bool explicit_columns, const std::vector<RawValue>& values) {
        const Table* table = schema_.find_table(name_tok.text);
        if (!table) {
            diag(Severity::Error, name_tok.span, "unknown table '" + name_tok.text + "'");
            return std::nullopt;
        }

        std::vector<const Column*> columns;
        if (explicit_columns) {
            std::set<std::string> seen;
            for (const Token& tok : column_toks) {
                const Column* col = table->find_column(tok.text);
                if (!col) {
                    diag(Severity::Error, tok.span,
                         "unknown column '" + tok.text + "' in table '" + table->name + "'");
                    return std::nullopt;
                }
                if (!seen.insert(to_lower(col->name)).second) {
                    diag(Severity::Error, tok.span, "column '" + col->name + "' listed twice");
                    return std::nullopt;
                }
                columns.push_back(col);
            }
        } else {
            for (const Column& col : table->columns) columns.push_back(&col);
        }

        if (columns.size() != values.size()) {
            diag(Severity::Error, name_tok.span,
                 "arity mismatch: " + std::to_string(columns.size()) + " columns but " +
                     std::to_string(values.size()) + " values");
            return std::nullopt;
        }

        Tuple tuple;
        tuple.table = table->name;
        bool failed = false;
        for (size_t i = 0; i < columns.size(); ++i) {
            const Column& col = *columns[i];
            const RawValue& raw = values[i];
            if (raw.kind == RawValue::Kind::Null) {
                if (table->is_pk_column(col.name)) {
                    diag(Severity::Error, raw.span,
                         "null primary key column '" + col.name + "'");
                    failed = true;
                    continue;
                }
                tuple.values[col.name] = Value::null();
                continue;
            }
            std::string why;
            auto value = coerce_value(col, raw, why);
            if (!value) {
                diag(Severity::Error, raw.span,
                     "type mismatch for column '" + col.name + "': " + why);
                failed = true;
                continue;
            }
            tuple.values[col.name] = std::move(*value);
        }
        for (const std::string& pk : table->primary_key) {
            if (!tuple.values.count(pk)) {
                diag(Severity::Error, name_tok.span,
                     "null primary key column '" + pk + "' (no value supplied)");
                failed = true;
            }
        }
        if (failed) return std::nullopt;
        return tuple;
    }

    const RelationalSchema& schema_;
    const std::set<std::string>& ignored_;
};

std::set<std::string> lower_name_set(const std::vector<std::string>& names) {
    std::set<std::string> out;
    for (const std::string& n : names) out.insert(to_lower(n));
    return out;
}

}  // namespace

DdlParseResult parse_ddl(std::string_view text, const std::vector<std::string>& ignore_tables) {
    DdlParseResult result;
    Lexer lexer(text, result.diagnostics);
    DdlParser parser(lexer.lex(), result.diagnostics);
    DdlParser::Output parsed = parser.parse();
    if (has_errors(result.diagnostics)) return result;

    if (!ignore_tables.empty()) {
        std::set<std::string> drop = lower_name_set(ignore_tables);
        std::erase_if(parsed.schema.tables,
                      [&](const Table& t) { return drop.count(to_lower(t.name)) > 0; });
    }

    ValidationResult validated = validate_schema(parsed.schema);
    if (!validated.ok()) {
        for (const SchemaError& err : validated.errors) {
            SourceSpan span{1, 1};
            auto it = parsed.table_spans.find(to_lower(err.table));
            if (it != parsed.table_spans.end()) span = it->second;
            result.diagnostics.push_back(ParseDiagnostic{Severity::Error, err.message(), span});
        }
        return result;
    }
    result.schema = std::move(validated.schema);
    return result;
}

InsertParseResult parse_inserts(std::string_view text, const RelationalSchema& schema,
                                const std::vector<std::string>& ignore_tables) {
    InsertParseResult result;
    Lexer lexer(text, result.diagnostics);
    InsertParser parser(lexer.lex(), result.diagnostics, schema,
                        lower_name_set(ignore_tables));
    // Statement-level recovery: tuples from clean statements are kept even
    // when other statements carry errors.
    std::vector<Tuple> tuples = parser.parse();
    result.tuples = std::move(tuples);
    return result;
}

namespace {

const char* const kReservedWords[] = {
    "create", "table",   "primary", "key",     "unique",  "foreign", "references", "not",
    "null",   "insert",  "into",    "values",  "true",    "false",   "int",        "integer",
    "bigint", "smallint", "decimal", "numeric", "number",  "float",   "double",     "varchar",
    "varchar2", "char",  "text",    "date",    "timestamp", "boolean",
};

bool needs_quoting(const std::string& name) {
    if (name.empty() || !is_bare_start(name[0])) return true;
    for (char c : name) {
        if (!is_bare_char(c)) return true;
    }
    std::string low = to_lower(name);
    for (const char* kw : kReservedWords) {
        if (low == kw) return true;
    }
    return false;
}

std::string print_ident(const std::string& name) {
    if (needs_quoting(name)) return "\"" + name + "\"";
    return name;
}

std::string print_ident_list(const std::vector<std::string>& names) {
    std::string out;
    for (size_t i = 0; i < names.size(); ++i) {
        if (i) out += ", ";
        out += print_ident(names[i]);
    }
    return out;
}

}  // namespace

std::string print_ddl(const RelationalSchema& schema) {
    std::ostringstream out;
    bool first = true;
    for (const Table& table : schema.tables) {
        if (!first) out << "\n";
        first = false;
        out << "CREATE TABLE " << print_ident(table.name) << " (";
        bool first_item = true;
        auto item = [&]() -> std::ostream& {
            if (!first_item) out << ",";
            first_item = false;
            out << "\n  ";
            return out;
        };
        for (const Column& col : table.columns) {
            item() << print_ident(col.name) << " " << col.type.to_string()
                   << (col.nullable ? "" : " NOT NULL");
        }
        if (!table.primary_key.empty())
            item() << "PRIMARY KEY (" << print_ident_list(table.primary_key) << ")";
        std::set<std::set<std::string>> printed_unique;
        for (const ForeignKey& fk : table.foreign_keys) {
            if (!fk.unique_on_source) continue;
            std::set<std::string> key;
            for (const std::string& c : fk.source_columns) key.insert(to_lower(c));
            if (printed_unique.insert(key).second)
                item() << "UNIQUE (" << print_ident_list(fk.source_columns) << ")";
        }
        for (const ForeignKey& fk : table.foreign_keys) {
            item() << "FOREIGN KEY (" << print_ident_list(fk.source_columns) << ") REFERENCES "
                   << print_ident(fk.target_table) << " (" << print_ident_list(fk.target_columns)
                   << ")";
        }
        out << "\n);\n";
    }
    return out.str();
}

}  // namespace rdb2owl
