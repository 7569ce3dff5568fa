#include "riparian/dataset.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>

#include <nlohmann/json.hpp>

namespace riparian {

namespace {

std::string_view trim(std::string_view s) {
    constexpr std::string_view ws = " \t\r\n";
    const auto first = s.find_first_not_of(ws);
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(ws);
    return s.substr(first, last - first + 1);
}

// Splits one CSV record. Fields may be wrapped in double quotes, with "" as an
// escaped quote. Returns nullopt on an unterminated quote.
std::optional<std::vector<std::string>> split_csv(std::string_view line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    bool was_quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"' && trim(field).empty()) {
            field.clear();
            quoted = was_quoted = true;
        } else if (c == ',') {
            fields.push_back(was_quoted ? field : std::string(trim(field)));
            field.clear();
            was_quoted = false;
        } else {
            field += c;
        }
    }
    if (quoted) return std::nullopt;
    fields.push_back(was_quoted ? field : std::string(trim(field)));
    return fields;
}

double parse_number(const std::string& text, const char* column, std::size_t line) {
    double v = 0.0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (text.empty() || ec != std::errc{} || ptr != last || !std::isfinite(v)) {
        throw DatasetError(std::string("invalid ") + column + " value '" + text + "'", line);
    }
    return v;
}

std::string format_number(double v) {
    std::array<char, 32> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

struct Row {
    std::string name;
    double inflow;
    std::optional<double> withdrawal;
    std::size_t line;    // CSV input
    std::string where;   // JSON input, e.g. "agents[2]: "
};

BasinDataset assemble(std::vector<Row> rows, std::string name, std::string units) {
    std::set<std::string> seen;
    const bool any_withdrawal =
        std::any_of(rows.begin(), rows.end(), [](const Row& r) { return r.withdrawal.has_value(); });
    for (const auto& r : rows) {
        if (r.name.empty()) throw DatasetError(r.where + "empty agent name", r.line);
        if (!seen.insert(r.name).second) {
            throw DatasetError(r.where + "duplicate agent name '" + r.name + "'", r.line);
        }
        if (r.inflow < 0.0) {
            throw DatasetError(r.where + "negative inflow " + format_number(r.inflow) + " for agent '" +
                                   r.name + "'",
                               r.line);
        }
        if (any_withdrawal && !r.withdrawal) {
            throw DatasetError(r.where + "missing withdrawal for agent '" + r.name +
                                   "' (withdrawals must be given for every agent)",
                               r.line);
        }
        if (r.withdrawal && *r.withdrawal < 0.0) {
            throw DatasetError(r.where + "negative withdrawal for agent '" + r.name + "'", r.line);
        }
    }
    if (rows.size() < 2) {
        throw DimensionError("a dataset needs at least 2 agents, got " +
                             std::to_string(rows.size()));
    }

    std::vector<std::string> agents;
    std::vector<double> inflows;
    std::vector<double> raw;
    for (auto& r : rows) {
        agents.push_back(std::move(r.name));
        inflows.push_back(r.inflow);
        if (r.withdrawal) raw.push_back(*r.withdrawal);
    }
    BasinDataset ds{std::move(name), std::move(units), std::move(agents),
                    InflowProfile(std::move(inflows)), std::nullopt, std::nullopt};
    if (any_withdrawal) {
        ds.withdrawals = normalize_withdrawals(ds.inflows, raw);
        ds.raw_withdrawals = std::move(raw);
    }
    return ds;
}

BasinDataset load_csv(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    std::optional<bool> has_withdrawal;
    std::vector<Row> rows;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view view(line);
        if (lineno == 1 && view.substr(0, 3) == "\xEF\xBB\xBF") view.remove_prefix(3);
        if (trim(view).empty() || trim(view).front() == '#') continue;
        auto fields = split_csv(view);
        if (!fields) throw DatasetError("unterminated quoted field", lineno);

        if (!has_withdrawal) {
            const auto& f = *fields;
            const bool ok = (f.size() == 2 || f.size() == 3) && f[0] == "agent" &&
                            f[1] == "inflow" && (f.size() == 2 || f[2] == "withdrawal");
            if (!ok) {
                throw DatasetError("expected header 'agent,inflow[,withdrawal]', got '" +
                                       std::string(trim(view)) + "'",
                                   lineno);
            }
            has_withdrawal = f.size() == 3;
            continue;
        }

        const std::size_t expected = *has_withdrawal ? 3 : 2;
        if (fields->size() != expected) {
            throw DatasetError("expected " + std::to_string(expected) + " columns, got " +
                                   std::to_string(fields->size()),
                               lineno);
        }
        Row row{(*fields)[0], parse_number((*fields)[1], "inflow", lineno), std::nullopt, lineno, {}};
        if (*has_withdrawal) row.withdrawal = parse_number((*fields)[2], "withdrawal", lineno);
        rows.push_back(std::move(row));
    }
    if (!has_withdrawal) throw DatasetError("empty input: missing CSV header", 0);
    return assemble(std::move(rows), "", "km³/year");
}

BasinDataset load_json(std::istream& in) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& err) {
        throw DatasetError(std::string("malformed JSON: ") + err.what(), 0);
    }
    if (!doc.is_object() || !doc.contains("agents") || !doc["agents"].is_array()) {
        throw DatasetError("expected an object with an 'agents' array", 0);
    }
    auto where = [](std::size_t k) { return "agents[" + std::to_string(k) + "]: "; };
    std::vector<Row> rows;
    const auto& agents = doc["agents"];
    for (std::size_t k = 0; k < agents.size(); ++k) {
        const auto& a = agents[k];
        if (!a.is_object() || !a.contains("name") || !a["name"].is_string()) {
            throw DatasetError(where(k) + "missing string field 'name'", 0);
        }
        if (!a.contains("inflow") || !a["inflow"].is_number()) {
            throw DatasetError(where(k) + "missing numeric field 'inflow'", 0);
        }
        Row row{a["name"].get<std::string>(), a["inflow"].get<double>(), std::nullopt, 0, where(k)};
        if (a.contains("withdrawal") && !a["withdrawal"].is_null()) {
            if (!a["withdrawal"].is_number()) {
                throw DatasetError(where(k) + "field 'withdrawal' must be a number", 0);
            }
            row.withdrawal = a["withdrawal"].get<double>();
        }
        rows.push_back(std::move(row));
    }
    return assemble(std::move(rows), doc.value("name", std::string{}),
                    doc.value("units", std::string("km³/year")));
}

}  // namespace

ObservedAllocation normalize_withdrawals(const InflowProfile& e, std::span<const double> raw) {
    if (raw.size() != e.size()) {
        throw DimensionError("withdrawals have " + std::to_string(raw.size()) +
                             " entries but the profile has " + std::to_string(e.size()));
    }
    const double total = std::accumulate(raw.begin(), raw.end(), 0.0);
    if (!(total > 0.0)) throw DomainError("withdrawals must have a positive total");
    const double factor = e.total() / total;
    std::vector<double> z(raw.begin(), raw.end());
    for (auto& v : z) v *= factor;
    return ObservedAllocation(std::move(z));
}

BasinDataset load_dataset(std::istream& in, DatasetFormat format) {
    return format == DatasetFormat::Json ? load_json(in) : load_csv(in);
}

BasinDataset load_dataset_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DatasetError("cannot open dataset '" + path.string() + "'", 0);
    const auto format = path.extension() == ".json" ? DatasetFormat::Json : DatasetFormat::Csv;
    auto ds = load_dataset(in, format);
    if (ds.name.empty()) ds.name = path.stem().string();
    return ds;
}

void write_dataset(std::ostream& out, const BasinDataset& dataset, DatasetFormat format) {
    const bool with_z = dataset.raw_withdrawals.has_value();
    const std::size_t n = dataset.agents.size();
    if (format == DatasetFormat::Json) {
        nlohmann::ordered_json doc;
        if (!dataset.name.empty()) doc["name"] = dataset.name;
        doc["units"] = dataset.units;
        doc["agents"] = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < n; ++i) {
            nlohmann::ordered_json a;
            a["name"] = dataset.agents[i];
            a["inflow"] = dataset.inflows[i];
            if (with_z) a["withdrawal"] = (*dataset.raw_withdrawals)[i];
            doc["agents"].push_back(std::move(a));
        }
        out << doc.dump(2) << '\n';
        return;
    }
    out << (with_z ? "agent,inflow,withdrawal\n" : "agent,inflow\n");
    for (std::size_t i = 0; i < n; ++i) {
        const auto& name = dataset.agents[i];
        if (name.find_first_of(",\"") != std::string::npos || trim(name) != name) {
            out << '"';
            for (char c : name) out << (c == '"' ? "\"\"" : std::string(1, c));
            out << '"';
        } else {
            out << name;
        }
        out << ',' << format_number(dataset.inflows[i]);
        if (with_z) out << ',' << format_number((*dataset.raw_withdrawals)[i]);
        out << '\n';
    }
}

BasinDataset builtin_nile() {
    InflowProfile e{16.8, 16.2, 17.6, 65.3, 0.0};
    std::vector<double> raw{5.18, 0.64, 0.66, 26.93, 77.7};
    // The case-study figures are computed from the normalized withdrawals as
    // tabulated, i.e. rounded to one decimal.
    auto z = normalize_withdrawals(e, raw);
    std::vector<double> published(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) published[i] = std::round(z[i] * 10.0) / 10.0;
    return BasinDataset{
        "nile",
        "km³/year",
        {"Tanzania", "Uganda", "South Sudan", "Sudan", "Egypt"},
        std::move(e),
        std::move(raw),
        ObservedAllocation(std::move(published)),
    };
}

}  // namespace riparian
