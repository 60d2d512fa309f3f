#include "envelope.hpp"

#include <sstream>
#include <stdexcept>
#include <vector>

#ifndef TWINSIEVE_VERSION
#define TWINSIEVE_VERSION "0.0.0"
#endif

namespace twinsieve::cli {

namespace {

std::string scalar_text(const Json& v)
{
    if (v.is_null()) {
        return "";
    }
    if (v.is_string()) {
        return v.get<std::string>();
    }
    if (v.is_boolean()) {
        return v.get<bool>() ? "true" : "false";
    }
    if (v.is_array()) {
        std::string joined;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) {
                joined += ';';
            }
            joined += scalar_text(v[i]);
        }
        return joined;
    }
    return v.dump();
}

void flatten(const Json& obj, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& out, const std::string& skip)
{
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (prefix.empty() && it.key() == skip) {
            continue;
        }
        const std::string name = prefix.empty() ? it.key() : prefix + "." + it.key();
        if (it.value().is_object()) {
            flatten(it.value(), name, out, skip);
        } else {
            out.emplace_back(name, scalar_text(it.value()));
        }
    }
}

std::string quote(const std::string& field)
{
    if (field.find_first_of(",\"\n") == std::string::npos) {
        return field;
    }
    std::string q = "\"";
    for (char c : field) {
        if (c == '"') {
            q += '"';
        }
        q += c;
    }
    return q + "\"";
}

void write_row(std::ostringstream& out, const std::vector<std::string>& fields)
{
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) {
            out << ',';
        }
        out << quote(fields[i]);
    }
    out << '\n';
}

} // namespace

std::string_view engine_version() noexcept { return TWINSIEVE_VERSION; }

Json Envelope::to_json() const
{
    Json j = Json::object();
    j["command"] = command;
    j["parameters"] = parameters;
    j["results"] = results;
    j["engine_version"] = std::string(engine_version());
    return j;
}

std::string to_csv(const Envelope& envelope)
{
    std::vector<std::pair<std::string, std::string>> scalars;
    flatten(envelope.results, "", scalars, envelope.list_key);

    std::vector<std::vector<std::pair<std::string, std::string>>> rows;
    if (!envelope.list_key.empty()) {
        const Json& list = envelope.results.at(envelope.list_key);
        for (const Json& element : list) {
            std::vector<std::pair<std::string, std::string>> cells;
            if (element.is_object()) {
                flatten(element, "", cells, "");
            } else {
                cells.emplace_back(envelope.list_key, scalar_text(element));
            }
            rows.push_back(std::move(cells));
        }
    }

    std::vector<std::string> header;
    for (const auto& [name, value] : scalars) {
        header.push_back(name);
    }
    std::vector<std::string> element_columns;
    if (!rows.empty()) {
        for (const auto& [name, value] : rows.front()) {
            element_columns.push_back(name);
        }
    } else if (!envelope.list_key.empty()) {
        element_columns.push_back(envelope.list_key);
    }
    header.insert(header.end(), element_columns.begin(), element_columns.end());

    std::ostringstream out;
    write_row(out, header);
    auto emit = [&](const std::vector<std::pair<std::string, std::string>>* cells) {
        std::vector<std::string> fields;
        for (const auto& [name, value] : scalars) {
            fields.push_back(value);
        }
        if (cells) {
            for (const auto& [name, value] : *cells) {
                fields.push_back(value);
            }
        } else {
            fields.resize(header.size());
        }
        write_row(out, fields);
    };
    if (rows.empty()) {
        emit(nullptr);
    } else {
        for (const auto& cells : rows) {
            if (cells.size() != element_columns.size()) {
                throw std::logic_error("to_csv: list elements have differing shapes");
            }
            emit(&cells);
        }
    }
    return out.str();
}

std::vector<std::string> split_csv_line(std::string_view line)
{
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                fields.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                fields.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else {
            fields.back() += c;
        }
    }
    return fields;
}

} // namespace twinsieve::cli
