#pragma once

// Parser for the SQL DDL subset (CREATE TABLE) and INSERT statements.
// Keywords are case-insensitive; identifiers are bare or double-quoted.
// Never throws on malformed input: every problem becomes a diagnostic.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rdb2owl/relational_model.hpp"

namespace rdb2owl {

struct SourceSpan {
    int line = 1;    // 1-based
    int column = 1;  // 1-based
};

enum class Severity { Error, Warning };

struct ParseDiagnostic {
    Severity severity = Severity::Error;
    std::string message;
    SourceSpan span;
};

// "file:line:col: severity: message"
std::string format_diagnostic(const ParseDiagnostic& diag, std::string_view file);

bool has_errors(const std::vector<ParseDiagnostic>& diagnostics);

struct DdlParseResult {
    // Present only when no Error diagnostics were produced; already validated
    // and in canonical table order.
    std::optional<RelationalSchema> schema;
    std::vector<ParseDiagnostic> diagnostics;

    bool ok() const { return schema.has_value(); }
};

// Tables named in `ignore_tables` are dropped before validation, so foreign
// keys referencing them still fail loudly.
DdlParseResult parse_ddl(std::string_view text, const std::vector<std::string>& ignore_tables = {});

struct InsertParseResult {
    std::vector<Tuple> tuples;  // one per INSERT statement that parsed cleanly
    std::vector<ParseDiagnostic> diagnostics;

    bool ok() const { return !has_errors(diagnostics); }
};

// `ignore_tables` rows are skipped without diagnostics.
InsertParseResult parse_inserts(std::string_view text, const RelationalSchema& schema,
                                const std::vector<std::string>& ignore_tables = {});

// Canonical DDL text; parse_ddl(print_ddl(s)) reproduces s field-for-field.
std::string print_ddl(const RelationalSchema& schema);

}  // namespace rdb2owl
