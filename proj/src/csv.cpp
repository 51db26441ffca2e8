#include "zonoid/csv.hpp"

#include <charconv>
#include <cmath>

#include "zonoid/error.hpp"
#include "zonoid/io.hpp"

namespace zonoid
{

std::string csv_escape(const std::string& field)
{
    if (field.find_first_of(",\"\r\n") == std::string::npos)
        return field;
    std::string out = "\"";
    for (char c : field)
    {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string format_double(double x)
{
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

void CsvTable::add_row(const std::vector<double>& values)
{
    std::vector<std::string> row;
    row.reserve(values.size());
    for (double v : values)
        row.push_back(format_double(v));
    rows.push_back(std::move(row));
}

std::string CsvTable::str() const
{
    std::string out;
    auto line = [&out](const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i)
        {
            if (i)
                out += ',';
            out += csv_escape(fields[i]);
        }
        out += "\r\n";
    };
    line(header);
    for (const auto& r : rows)
    {
        require(r.size() == header.size(), "csv row width does not match header");
        line(r);
    }
    return out;
}

void write_csv(const std::string& path, const CsvTable& table)
{
    write_text_file(path, table.str());
}

}  // namespace zonoid
