#include "levytype/serialization.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace levytype {

namespace {

const Json& field(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw SchemaError(std::string("missing field '") + key + "'");
  }
  return doc.at(key);
}

double number(const Json& v, const char* what) {
  if (!v.is_number()) {
    throw SchemaError(std::string(what) + " must be a number");
  }
  return v.get<double>();
}

Json spherical_to_json(const std::vector<SphericalAtom>& atoms) {
  Json out = Json::array();
  for (const auto& a : atoms) {
    out.push_back({{"direction", to_json(a.direction)}, {"weight", a.weight}});
  }
  return out;
}

std::vector<SphericalAtom> spherical_from_json(const Json& doc, int dim) {
  if (!doc.is_array()) {
    throw SchemaError("angular part must be an array");
  }
  std::vector<SphericalAtom> out;
  for (const auto& a : doc) {
    SphericalAtom s{vec_from_json(field(a, "direction"), "direction"),
                    number(field(a, "weight"), "weight")};
    require_same_dim(s.direction.size(), dim, "direction");
    out.push_back(std::move(s));
  }
  return out;
}

} // namespace

Json to_json(const Vec& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out.push_back(v(i));
  }
  return out;
}

Json to_json(const Mat& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(m(i, j));
    }
    out.push_back(std::move(row));
  }
  return out;
}

Vec vec_from_json(const Json& doc, const char* what) {
  if (!doc.is_array()) {
    throw SchemaError(std::string(what) + " must be an array of numbers");
  }
  Vec v(static_cast<Eigen::Index>(doc.size()));
  for (std::size_t i = 0; i < doc.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = number(doc[i], what);
  }
  return v;
}

Mat mat_from_json(const Json& doc, const char* what) {
  if (!doc.is_array() || doc.empty()) {
    throw SchemaError(std::string(what) + " must be a non-empty array of rows");
  }
  const std::size_t cols = doc[0].is_array() ? doc[0].size() : 0;
  Mat m(static_cast<Eigen::Index>(doc.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < doc.size(); ++i) {
    if (!doc[i].is_array() || doc[i].size() != cols) {
      throw SchemaError(std::string(what) + " rows must have equal length");
    }
    for (std::size_t j = 0; j < cols; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = number(doc[i][j], what);
    }
  }
  return m;
}

Json measure_to_json(const LevyMeasureSpec& nu) {
  Json out;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, LevyMeasureSpec::Zero>) {
          out["variant"] = "zero";
        } else if constexpr (std::is_same_v<T, LevyMeasureSpec::FiniteAtomic>) {
          out["variant"] = "finite_atomic";
          Json atoms = Json::array();
          for (const auto& a : v.atoms) {
            atoms.push_back({{"point", to_json(a.point)}, {"mass", a.mass}});
          }
          out["atoms"] = std::move(atoms);
        } else if constexpr (std::is_same_v<T, LevyMeasureSpec::RadialDensity>) {
          out["variant"] = "radial_density";
          const auto& p = v.density.params();
          switch (v.density.kind()) {
          case RadialProfile::Kind::Power:
            out["density"] = {{"kind", "power"}, {"c", p[0]}, {"alpha", p[1]}};
            break;
          case RadialProfile::Kind::ExpPower:
            out["density"] = {{"kind", "exp_power"}, {"c", p[0]}, {"p", p[1]}, {"b", p[2]}};
            break;
          case RadialProfile::Kind::Gaussian:
            out["density"] = {{"kind", "gaussian"}, {"c", p[0]}, {"s", p[1]}};
            break;
          case RadialProfile::Kind::Custom:
            throw InvalidArgument("InvalidArgument",
                                  "custom radial profile '" + v.density.label() + "' cannot be serialized");
          }
          out["angular"] = spherical_to_json(v.angular);
          if (std::isfinite(v.witness_bound)) {
            out["witness_bound"] = v.witness_bound;
          }
        } else {
          out["variant"] = "alpha_stable";
          out["alpha"] = v.alpha;
          out["spherical"] = spherical_to_json(v.spherical);
        }
      },
      nu.variant());
  if (nu.floor() > 0.0) {
    out["floor"] = nu.floor();
  }
  return out;
}

LevyMeasureSpec measure_from_json(const Json& doc, int dim) {
  if (!doc.is_object()) {
    throw SchemaError("nu must be an object");
  }
  const Json& kind = field(doc, "variant");
  if (!kind.is_string()) {
    throw SchemaError("nu.variant must be a string");
  }
  const std::string variant = kind.get<std::string>();
  LevyMeasureSpec nu = LevyMeasureSpec::zero(dim);
  if (variant == "zero") {
  } else if (variant == "finite_atomic") {
    const Json& atoms = field(doc, "atoms");
    if (!atoms.is_array()) {
      throw SchemaError("nu.atoms must be an array");
    }
    std::vector<Atom> out;
    for (const auto& a : atoms) {
      Atom at{vec_from_json(field(a, "point"), "point"), number(field(a, "mass"), "mass")};
      require_same_dim(at.point.size(), dim, "atom");
      out.push_back(std::move(at));
    }
    nu = LevyMeasureSpec::finite_atomic(dim, std::move(out));
  } else if (variant == "radial_density") {
    const Json& d = field(doc, "density");
    const Json& dk = field(d, "kind");
    if (!dk.is_string()) {
      throw SchemaError("density.kind must be a string");
    }
    const std::string k = dk.get<std::string>();
    RadialProfile profile = RadialProfile::power(1.0, 1.0);
    if (k == "power") {
      profile = RadialProfile::power(number(field(d, "c"), "c"), number(field(d, "alpha"), "alpha"));
    } else if (k == "exp_power") {
      profile = RadialProfile::exp_power(number(field(d, "c"), "c"), number(field(d, "p"), "p"),
                                         number(field(d, "b"), "b"));
    } else if (k == "gaussian") {
      profile = RadialProfile::gaussian(number(field(d, "c"), "c"), number(field(d, "s"), "s"));
    } else {
      throw SchemaError("unknown density kind '" + k + "'");
    }
    double wb = doc.contains("witness_bound") ? number(doc["witness_bound"], "witness_bound")
                                              : std::numeric_limits<double>::infinity();
    nu = LevyMeasureSpec::radial_density(dim, profile, spherical_from_json(field(doc, "angular"), dim), wb);
  } else if (variant == "alpha_stable") {
    nu = LevyMeasureSpec::alpha_stable(dim, number(field(doc, "alpha"), "alpha"),
                                       spherical_from_json(field(doc, "spherical"), dim));
  } else {
    throw SchemaError("unknown nu.variant '" + variant + "'");
  }
  if (doc.contains("floor")) {
    double eps = number(doc["floor"], "floor");
    if (eps > 0.0) {
      nu = nu.truncated(eps);
    }
  }
  return nu;
}

Json triplet_to_json(const LevyTriplet& triplet) {
  Json out;
  out["d"] = triplet.dim();
  out["l"] = to_json(triplet.drift());
  out["Q"] = to_json(triplet.diffusion());
  out["nu"] = measure_to_json(triplet.nu());
  return out;
}

LevyTriplet triplet_from_json(const Json& doc) {
  if (!doc.is_object()) {
    throw SchemaError("triplet must be a JSON object");
  }
  const Json& dj = field(doc, "d");
  if (!dj.is_number_integer() || dj.get<int>() < 1) {
    throw SchemaError("d must be a positive integer");
  }
  const int d = dj.get<int>();
  Vec l = vec_from_json(field(doc, "l"), "l");
  Mat q = mat_from_json(field(doc, "Q"), "Q");
  if (l.size() != d || q.rows() != d || q.cols() != d) {
    throw SchemaError("l and Q must match d = " + std::to_string(d));
  }
  return LevyTriplet(std::move(l), std::move(q), measure_from_json(field(doc, "nu"), d));
}

std::string format_double(double v) {
  if (std::isnan(v)) {
    return "nan";
  }
  if (std::isinf(v)) {
    return v > 0 ? "inf" : "-inf";
  }
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {
  if (header_.empty()) {
    throw InvalidArgument("InvalidArgument", "CSV header must not be empty");
  }
}

void CsvTable::add_row(const std::vector<double>& row) {
  if (row.size() != header_.size()) {
    throw DimensionMismatch("CSV row has " + std::to_string(row.size()) + " cells, header has " +
                            std::to_string(header_.size()));
  }
  rows_.push_back(row);
}

std::vector<double> CsvTable::column(const std::string& name) const {
  for (std::size_t j = 0; j < header_.size(); ++j) {
    if (header_[j] == name) {
      std::vector<double> out;
      out.reserve(rows_.size());
      for (const auto& r : rows_) {
        out.push_back(r[j]);
      }
      return out;
    }
  }
  throw InvalidArgument("InvalidArgument", "no CSV column '" + name + "'");
}

void CsvTable::write(std::ostream& out) const {
  for (std::size_t j = 0; j < header_.size(); ++j) {
    out << (j ? "," : "") << header_[j];
  }
  out << '\n';
  for (const auto& r : rows_) {
    for (std::size_t j = 0; j < r.size(); ++j) {
      out << (j ? "," : "") << format_double(r[j]);
    }
    out << '\n';
  }
}

void CsvTable::write(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    throw InvalidArgument("InvalidArgument", "cannot write " + path);
  }
  write(f);
}

std::string CsvTable::str() const {
  std::ostringstream s;
  write(s);
  return s.str();
}

CsvTable path_table(const CadlagPath& path) {
  std::vector<std::string> header{"t"};
  for (int i = 0; i < path.dim(); ++i) {
    header.push_back("x_" + std::to_string(i + 1));
  }
  CsvTable t(std::move(header));
  const auto& times = path.times();
  std::vector<double> row(static_cast<std::size_t>(path.dim()) + 1);
  for (std::size_t k = 0; k < times.size(); ++k) {
    row[0] = times[k];
    for (int i = 0; i < path.dim(); ++i) {
      row[static_cast<std::size_t>(i) + 1] = path.values()(i, static_cast<Eigen::Index>(k));
    }
    t.add_row(row);
  }
  return t;
}

Json jump_ledger(const CadlagPath& path) {
  Json out = Json::array();
  for (const auto& j : path.jumps()) {
    out.push_back({{"t", j.time}, {"size", to_json(j.size)}, {"left_limit", to_json(j.left_limit)}});
  }
  return out;
}

void write_json(const std::string& path, const Json& doc) {
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    throw InvalidArgument("InvalidArgument", "cannot write " + path);
  }
  f << doc.dump(2) << '\n';
}

Json read_json(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    throw InvalidArgument("InvalidArgument", "cannot read " + path);
  }
  try {
    return Json::parse(f);
  } catch (const Json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

} // namespace levytype
