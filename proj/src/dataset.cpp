#include "wedgecot/dataset.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "wedgecot/errors.hpp"

namespace wedgecot
{
std::vector<std::string> Dataset::header() const
{
    std::vector<std::string> out;
    out.reserve(columns.size());
    for (std::size_t i = 0; i < columns.size(); ++i)
        out.push_back(units[i].empty() ? columns[i] : columns[i] + "_" + units[i]);
    return out;
}

void Dataset::validate() const
{
    if (columns.size() != units.size())
        fail(ErrorKind::domain, "dataset needs one unit tag per column");
    for (std::size_t r = 0; r < rows.size(); ++r)
    {
        if (rows[r].size() != columns.size())
            fail(ErrorKind::domain, "dataset row " + std::to_string(r) + " has the wrong width");
        for (double v : rows[r])
        {
            if (!std::isfinite(v))
                fail(ErrorKind::domain, "dataset row " + std::to_string(r) + " has a non-finite entry");
        }
    }
}

std::string format_double(double value)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void write_csv(Dataset const& data, std::ostream& os)
{
    data.validate();
    os << "# wedge-cot v" << kVersion << '\n';
    for (auto const& [key, value] : data.provenance)
        os << "# " << key << '=' << value << '\n';
    auto const head = data.header();
    for (std::size_t i = 0; i < head.size(); ++i)
        os << (i ? "," : "") << head[i];
    os << '\n';
    for (auto const& row : data.rows)
    {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << format_double(row[i]);
        os << '\n';
    }
}

void write_json(Dataset const& data, std::ostream& os)
{
    data.validate();
    nlohmann::ordered_json meta;
    meta["generator"] = "wedge-cot";
    meta["version"] = kVersion;
    for (auto const& [key, value] : data.provenance)
        meta[key] = value;

    nlohmann::ordered_json doc;
    doc["meta"] = meta;
    doc["columns"] = data.header();
    doc["units"] = data.units;
    doc["rows"] = data.rows;
    os << doc.dump(1) << '\n';
}

void serialize(Dataset const& data, Format format, std::string const& path)
{
    auto emit = [&](std::ostream& os) {
        if (format == Format::csv)
            write_csv(data, os);
        else
            write_json(data, os);
    };
    if (path == "-")
    {
        emit(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        fail(ErrorKind::io, "cannot open '" + path + "' for writing");
    emit(out);
    out.close();
    if (!out)
        fail(ErrorKind::io, "failed writing '" + path + "'");
}

}  // namespace wedgecot
