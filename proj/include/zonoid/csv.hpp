#pragma once

#include <string>
#include <vector>

namespace zonoid
{

/// RFC 4180 quoting: fields containing comma, quote, CR or LF are quoted.
std::string csv_escape(const std::string& field);

/// Shortest round-trip representation; "inf"/"-inf"/"nan" for non-finite.
std::string format_double(double x);

struct CsvTable
{
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(const std::vector<double>& values);
    std::string str() const;  //!< CRLF line endings
};

void write_csv(const std::string& path, const CsvTable& table);

}  // namespace zonoid
