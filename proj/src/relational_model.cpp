#include "rdb2owl/relational_model.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace rdb2owl {

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

bool iequals(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(a[i])) !=
            std::tolower(static_cast<unsigned char>(b[i])))
            return false;
    }
    return true;
}

bool SqlType::params_valid() const {
    switch (kind) {
        case SqlTypeKind::Decimal:
            return precision >= scale && scale >= 0;
        case SqlTypeKind::Varchar:
        case SqlTypeKind::Char:
            return length >= 1;
        default:
            return true;
    }
}

std::string SqlType::to_string() const {
    std::ostringstream out;
    switch (kind) {
        case SqlTypeKind::Int: out << "INT"; break;
        case SqlTypeKind::BigInt: out << "BIGINT"; break;
        case SqlTypeKind::SmallInt: out << "SMALLINT"; break;
        case SqlTypeKind::Decimal: out << "DECIMAL(" << precision << "," << scale << ")"; break;
        case SqlTypeKind::Float: out << "FLOAT"; break;
        case SqlTypeKind::Double: out << "DOUBLE"; break;
        case SqlTypeKind::Varchar: out << "VARCHAR(" << length << ")"; break;
        case SqlTypeKind::Char: out << "CHAR(" << length << ")"; break;
        case SqlTypeKind::Text: out << "TEXT"; break;
        case SqlTypeKind::Date: out << "DATE"; break;
        case SqlTypeKind::Timestamp: out << "TIMESTAMP"; break;
        case SqlTypeKind::Boolean: out << "BOOLEAN"; break;
    }
    return out.str();
}

const Column* Table::find_column(std::string_view name) const {
    for (const Column& c : columns) {
        if (iequals(c.name, name)) return &c;
    }
    return nullptr;
}

bool Table::is_pk_column(std::string_view name) const {
    for (const std::string& pk : primary_key) {
        if (iequals(pk, name)) return true;
    }
    return false;
}

bool Table::is_fk_member(std::string_view name) const {
    for (const ForeignKey& fk : foreign_keys) {
        for (const std::string& col : fk.source_columns) {
            if (iequals(col, name)) return true;
        }
    }
    return false;
}

const Table* RelationalSchema::find_table(std::string_view name) const {
    for (const Table& t : tables) {
        if (iequals(t.name, name)) return &t;
    }
    return nullptr;
}

std::string SchemaError::message() const {
    std::ostringstream out;
    switch (kind) {
        case SchemaErrorKind::DuplicateTable:
            out << "duplicate table '" << table << "'";
            break;
        case SchemaErrorKind::DuplicateColumn:
            out << "duplicate column '" << detail << "' in table '" << table << "'";
            break;
        case SchemaErrorKind::UnknownPkColumn:
            out << "primary key of '" << table << "' names unknown column '" << detail << "'";
            break;
        case SchemaErrorKind::DuplicateFk:
            out << "table '" << table << "' declares two foreign keys on columns (" << detail
                << ")";
            break;
        case SchemaErrorKind::UnknownFkSource:
            out << "foreign key of '" << table << "' names unknown source column '" << detail
                << "'";
            break;
        case SchemaErrorKind::UnknownFkTarget:
            out << "foreign key of '" << table << "' references unknown target " << detail;
            break;
        case SchemaErrorKind::FkTargetNotPrimaryKey:
            out << "foreign key of '" << table << "' must reference the full primary key of '"
                << detail << "'";
            break;
        case SchemaErrorKind::FkArityMismatch:
            out << "foreign key of '" << table << "' has mismatched column lists (" << detail
                << ")";
            break;
    }
    return out.str();
}

namespace {

std::string join(const std::vector<std::string>& parts, const char* sep = ",") {
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

std::set<std::string> lower_set(const std::vector<std::string>& names) {
    std::set<std::string> out;
    for (const std::string& n : names) out.insert(to_lower(n));
    return out;
}

}  // namespace

ValidationResult validate_schema(const RelationalSchema& raw) {
    ValidationResult result;
    auto err = [&](SchemaErrorKind kind, const std::string& table, std::string detail = "") {
        result.errors.push_back(SchemaError{kind, table, std::move(detail)});
    };

    std::set<std::string> seen_tables;
    for (const Table& t : raw.tables) {
        if (!seen_tables.insert(to_lower(t.name)).second)
            err(SchemaErrorKind::DuplicateTable, t.name);
    }

    for (const Table& t : raw.tables) {
        std::set<std::string> seen_cols;
        for (const Column& c : t.columns) {
            if (!seen_cols.insert(to_lower(c.name)).second)
                err(SchemaErrorKind::DuplicateColumn, t.name, c.name);
        }
        for (const std::string& pk : t.primary_key) {
            if (!t.find_column(pk)) err(SchemaErrorKind::UnknownPkColumn, t.name, pk);
        }

        std::set<std::vector<std::string>> seen_fk_sources;
        for (const ForeignKey& fk : t.foreign_keys) {
            std::vector<std::string> key;
            for (const std::string& c : fk.source_columns) key.push_back(to_lower(c));
            if (!seen_fk_sources.insert(key).second)
                err(SchemaErrorKind::DuplicateFk, t.name, join(fk.source_columns));

            if (fk.source_columns.empty() ||
                fk.source_columns.size() != fk.target_columns.size()) {
                err(SchemaErrorKind::FkArityMismatch, t.name,
                    join(fk.source_columns) + ") vs (" + join(fk.target_columns));
                continue;
            }
            for (const std::string& c : fk.source_columns) {
                if (!t.find_column(c)) err(SchemaErrorKind::UnknownFkSource, t.name, c);
            }
            const Table* target = raw.find_table(fk.target_table);
            if (!target) {
                err(SchemaErrorKind::UnknownFkTarget, t.name, "table '" + fk.target_table + "'");
                continue;
            }
            bool target_cols_ok = true;
            for (const std::string& c : fk.target_columns) {
                if (!target->find_column(c)) {
                    err(SchemaErrorKind::UnknownFkTarget, t.name,
                        "column '" + fk.target_table + "." + c + "'");
                    target_cols_ok = false;
                }
            }
            if (!target_cols_ok) continue;
            // Target columns must be exactly the target's primary key, in order.
            bool is_pk = fk.target_columns.size() == target->primary_key.size();
            if (is_pk) {
                for (size_t i = 0; i < fk.target_columns.size(); ++i) {
                    if (!iequals(fk.target_columns[i], target->primary_key[i])) is_pk = false;
                }
            }
            if (!is_pk) err(SchemaErrorKind::FkTargetNotPrimaryKey, t.name, target->name);
        }
    }

    if (!result.errors.empty()) return result;

    RelationalSchema canonical = raw;
    std::sort(canonical.tables.begin(), canonical.tables.end(),
              [](const Table& a, const Table& b) { return to_lower(a.name) < to_lower(b.name); });
    result.schema = std::move(canonical);
    return result;
}

TableClassification classify_table(const RelationalSchema& schema, const Table& table) {
    (void)schema;
    TableClassification out;
    if (table.foreign_keys.size() != 2) return out;
    const ForeignKey& a = table.foreign_keys[0];
    const ForeignKey& b = table.foreign_keys[1];
    if (iequals(a.target_table, b.target_table)) return out;

    std::set<std::string> fk_cols = lower_set(a.source_columns);
    for (const std::string& c : b.source_columns) fk_cols.insert(to_lower(c));

    if (lower_set(table.primary_key) != fk_cols) return out;
    for (const Column& c : table.columns) {
        if (!fk_cols.count(to_lower(c.name))) return out;
    }

    out.kind = TableClassification::Kind::Bridge;
    out.fk_a = a;
    out.fk_b = b;
    return out;
}

RelationshipKind classify_relationship(const RelationalSchema& schema, const ForeignKey& fk,
                                       const Table& host) {
    if (fk.unique_on_source ||
        (!host.primary_key.empty() && lower_set(fk.source_columns) == lower_set(host.primary_key)))
        return RelationshipKind{RelationshipKind::Kind::OneToOne, ""};
    if (classify_table(schema, host).is_bridge())
        return RelationshipKind{RelationshipKind::Kind::ManyToMany, host.name};
    return RelationshipKind{RelationshipKind::Kind::OneToMany, ""};
}

}  // namespace rdb2owl
