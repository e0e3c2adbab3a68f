#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace wedgecot
{
inline constexpr char const kVersion[] = "0.1.0";

//! A table of reals with unit-tagged columns and a provenance block.
struct Dataset
{
    std::vector<std::string> columns;
    std::vector<std::string> units;
    std::vector<std::vector<double>> rows;
    std::vector<std::pair<std::string, std::string>> provenance;

    //! "name_unit" for each column.
    std::vector<std::string> header() const;

    //! Throws Error(domain) on shape mismatch or non-finite entries.
    void validate() const;
};

enum class Format
{
    csv,
    json
};

//! Doubles are written with 17 significant digits.
void write_csv(Dataset const& data, std::ostream& os);
void write_json(Dataset const& data, std::ostream& os);

/*!
 * Write to \c path, or to stdout when \c path is "-". Throws Error(io) if the
 * destination cannot be written.
 */
void serialize(Dataset const& data, Format format, std::string const& path);

//! Shortest round-trip decimal representation of a double (17 digits max).
std::string format_double(double value);

}  // namespace wedgecot
