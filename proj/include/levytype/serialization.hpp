#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "levytype/levy_core.hpp"
#include "levytype/path.hpp"

namespace levytype {

using Json = nlohmann::ordered_json;

//! Malformed documents raise InvalidArgument with code "schema".
class SchemaError : public InvalidArgument {
public:
  explicit SchemaError(const std::string& what) : InvalidArgument("schema", what) {}
};

//! {d, l: [...], Q: [[...]], nu: {variant, ...}}. Custom radial profiles
//! cannot be serialized and raise InvalidArgument.
Json triplet_to_json(const LevyTriplet& triplet);
LevyTriplet triplet_from_json(const Json& doc);
Json measure_to_json(const LevyMeasureSpec& nu);
LevyMeasureSpec measure_from_json(const Json& doc, int dim);

//! Shortest decimal that parses back to the same double.
std::string format_double(double v);

//! Minimal CSV table; numbers go through format_double.
class CsvTable {
public:
  explicit CsvTable(std::vector<std::string> header);
  void add_row(const std::vector<double>& row);
  std::size_t rows() const { return rows_.size(); }
  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<double>>& data() const { return rows_; }
  std::vector<double> column(const std::string& name) const;

  void write(std::ostream& out) const;
  void write(const std::string& path) const;
  std::string str() const;

private:
  std::vector<std::string> header_;
  std::vector<std::vector<double>> rows_;
};

//! Grid values as (t, x_1..x_d).
CsvTable path_table(const CadlagPath& path);
//! [{t, size: [...], left_limit: [...]}, ...]
Json jump_ledger(const CadlagPath& path);

Json to_json(const Vec& v);
Json to_json(const Mat& m);
Vec vec_from_json(const Json& doc, const char* what);
Mat mat_from_json(const Json& doc, const char* what);

void write_json(const std::string& path, const Json& doc);
Json read_json(const std::string& path);

} // namespace levytype
