#pragma once

// Relational schema data model: tables, columns, keys, foreign keys, rows.
// Identifiers compare case-insensitively but keep their declared spelling.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rdb2owl {

std::string to_lower(std::string_view s);
bool iequals(std::string_view a, std::string_view b);

// Case-insensitive ordering for identifier-keyed maps.
struct CiLess {
    bool operator()(std::string_view a, std::string_view b) const {
        return to_lower(a) < to_lower(b);
    }
};

enum class SqlTypeKind {
    Int,
    BigInt,
    SmallInt,
    Decimal,
    Float,
    Double,
    Varchar,
    Char,
    Text,
    Date,
    Timestamp,
    Boolean,
};

struct SqlType {
    SqlTypeKind kind = SqlTypeKind::Int;
    int precision = 0;  // Decimal: p >= s >= 0
    int scale = 0;
    int length = 0;  // Varchar/Char: n >= 1

    static SqlType simple(SqlTypeKind kind) { return SqlType{kind, 0, 0, 0}; }
    static SqlType decimal(int precision, int scale) {
        return SqlType{SqlTypeKind::Decimal, precision, scale, 0};
    }
    static SqlType varchar(int length) { return SqlType{SqlTypeKind::Varchar, 0, 0, length}; }
    static SqlType fixed_char(int length) { return SqlType{SqlTypeKind::Char, 0, 0, length}; }

    bool params_valid() const;
    std::string to_string() const;  // e.g. "DECIMAL(10,2)"

    bool operator==(const SqlType&) const = default;
};

struct Column {
    std::string name;
    SqlType type;
    bool nullable = true;

    bool operator==(const Column&) const = default;
};

struct ForeignKey {
    std::vector<std::string> source_columns;
    std::string target_table;
    std::vector<std::string> target_columns;
    bool unique_on_source = false;

    bool operator==(const ForeignKey&) const = default;
};

struct Table {
    std::string name;
    std::vector<Column> columns;
    std::vector<std::string> primary_key;
    std::vector<ForeignKey> foreign_keys;

    const Column* find_column(std::string_view name) const;
    bool is_pk_column(std::string_view name) const;
    bool is_fk_member(std::string_view name) const;

    bool operator==(const Table&) const = default;
};

struct RelationalSchema {
    std::string name = "db";
    std::vector<Table> tables;  // canonical order: sorted by case-insensitive name

    const Table* find_table(std::string_view name) const;

    bool operator==(const RelationalSchema&) const = default;
};

enum class ValueKind { Null, Integer, Decimal, Text, Date, Timestamp, Boolean };

// One cell value; `lexical` holds the canonical text form (empty for Null).
struct Value {
    ValueKind kind = ValueKind::Null;
    std::string lexical;

    static Value null() { return Value{ValueKind::Null, ""}; }
    bool is_null() const { return kind == ValueKind::Null; }

    bool operator==(const Value&) const = default;
};

struct Tuple {
    std::string table;
    std::map<std::string, Value, CiLess> values;  // column name -> value

    bool operator==(const Tuple&) const = default;
};

struct TableClassification {
    enum class Kind { Regular, Bridge } kind = Kind::Regular;
    // Set when kind == Bridge: the two foreign keys resolving the M:N relationship.
    ForeignKey fk_a;
    ForeignKey fk_b;

    bool is_bridge() const { return kind == Kind::Bridge; }
};

struct RelationshipKind {
    enum class Kind { OneToOne, OneToMany, ManyToMany } kind = Kind::OneToMany;
    std::string via_table;  // set for ManyToMany

    bool operator==(const RelationshipKind&) const = default;
};

enum class SchemaErrorKind {
    DuplicateTable,
    DuplicateColumn,
    UnknownPkColumn,
    DuplicateFk,
    UnknownFkSource,
    UnknownFkTarget,
    FkTargetNotPrimaryKey,
    FkArityMismatch,
};

struct SchemaError {
    SchemaErrorKind kind;
    std::string table;
    std::string detail;

    std::string message() const;
};

struct ValidationResult {
    std::optional<RelationalSchema> schema;
    std::vector<SchemaError> errors;

    bool ok() const { return errors.empty(); }
};

// Checks every schema invariant and returns the schema with tables in
// canonical (case-insensitive name) order, or the full list of violations.
ValidationResult validate_schema(const RelationalSchema& raw);

// Bridge iff the table has exactly two foreign keys referencing two distinct
// tables, its primary-key column set equals the union of the two source-column
// lists, and it has no other columns.
TableClassification classify_table(const RelationalSchema& schema, const Table& table);

// OneToOne when the key is unique on its source columns or spans the host's
// full primary key; ManyToMany via the host when the host is a bridge table;
// OneToMany otherwise.
RelationshipKind classify_relationship(const RelationalSchema& schema, const ForeignKey& fk,
                                       const Table& host);

}  // namespace rdb2owl
