#include "cmlab/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>

#include "cmlab/errors.hpp"

namespace cmlab {

namespace {

double entry_part(const Json& j, const char* who) {
  if (!j.is_number()) throw InputError(std::string(who) + ": expected a number");
  return j.get<double>();
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

Json number_to_json(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

Json matrix_to_json(const ComplexMatrix& X) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < X.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < X.cols(); ++c) {
      row.push_back(Json::array({X(r, c).real(), X(r, c).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw InputError("matrix: expected a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (!j[0].is_array() || j[0].empty()) throw InputError("matrix: rows must be non-empty arrays");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  ComplexMatrix X(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw InputError("matrix: ragged rows");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const Json& e = row[static_cast<std::size_t>(c)];
      if (e.is_number()) {
        X(r, c) = Complex(e.get<double>(), 0.0);
      } else if (e.is_array() && e.size() == 2) {
        X(r, c) = Complex(entry_part(e[0], "matrix"), entry_part(e[1], "matrix"));
      } else {
        throw InputError("matrix: entries must be [re, im] pairs");
      }
    }
  }
  return X;
}

Json tuple_to_json(const OperatorTuple& T) {
  Json mats = Json::array();
  for (const auto& A : T) mats.push_back(matrix_to_json(A));
  return Json{{"matrices", std::move(mats)}};
}

OperatorTuple tuple_from_json(const Json& j) {
  const Json* mats = &j;
  if (j.is_object()) {
    if (!j.contains("matrices")) throw InputError("tuple: missing \"matrices\"");
    mats = &j.at("matrices");
  }
  if (!mats->is_array() || mats->empty()) throw InputError("tuple: expected a non-empty array");
  std::vector<ComplexMatrix> out;
  for (const auto& m : *mats) out.push_back(matrix_from_json(m));
  return OperatorTuple(std::move(out));
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

OperatorTuple read_tuple_file(const std::string& path) {
  return tuple_from_json(read_json_file(path));
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << j.dump(2) << '\n';
}

Json report_to_json(const InequalityReport& r) {
  return Json{{"tag", r.tag},
              {"p", number_to_json(r.p)},
              {"n", r.n},
              {"d", r.d},
              {"lhs", number_to_json(r.lhs)},
              {"rhs", number_to_json(r.rhs)},
              {"margin", number_to_json(r.margin)},
              {"satisfied", r.satisfied}};
}

Json conditions_to_json(const NecessaryConditions& c) {
  return Json{{"trace_lhs", number_to_json(c.trace_lhs)},
              {"trace_rhs", number_to_json(c.trace_rhs)},
              {"trace_ok", c.trace_ok},
              {"worst_weyl_excess", number_to_json(c.worst_weyl_excess)},
              {"weyl_ok", c.weyl_ok}};
}

Json certificate_to_json(const FeasibilityCertificate& cert, bool with_unitaries) {
  Json j{{"status", std::string(to_string(cert.status))},
         {"residual", number_to_json(cert.residual)},
         {"iterations", cert.iterations},
         {"restart", cert.restart},
         {"seed", cert.seed},
         {"conditions", conditions_to_json(cert.conditions)}};
  if (with_unitaries) {
    Json us = Json::array();
    for (const auto& U : cert.unitaries) us.push_back(matrix_to_json(U));
    j["unitaries"] = std::move(us);
  }
  return j;
}

void write_scan_csv(std::ostream& out, const ConvexityScan& scan) {
  out << "x,y,re_f,im_f,abs_f,bound\n";
  for (const auto& s : scan.samples) {
    out << format_double(s.z.x) << ',' << format_double(s.z.y) << ','
        << format_double(s.f_value.real()) << ',' << format_double(s.f_value.imag()) << ','
        << format_double(std::abs(s.f_value)) << ',' << format_double(s.bound_at_x) << '\n';
  }
}

}  // namespace cmlab
