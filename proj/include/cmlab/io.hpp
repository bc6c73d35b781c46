#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "cmlab/conjecture.hpp"
#include "cmlab/proofs.hpp"
#include "cmlab/report.hpp"
#include "cmlab/tuple.hpp"

namespace cmlab {

using Json = nlohmann::ordered_json;

/// Matrix as rows of [re, im] pairs.
Json matrix_to_json(const ComplexMatrix& X);
/// Throws InputError on a malformed or ragged matrix.
ComplexMatrix matrix_from_json(const Json& j);

/// {"matrices": [matrix, ...]}; a bare array of matrices is also accepted on input.
Json tuple_to_json(const OperatorTuple& T);
OperatorTuple tuple_from_json(const Json& j);

/// Throws InputError if the file cannot be read or parsed.
Json read_json_file(const std::string& path);
OperatorTuple read_tuple_file(const std::string& path);
/// Writes with a trailing newline; throws InputError if the file cannot be opened.
void write_json_file(const std::string& path, const Json& j);

/// Doubles that JSON cannot carry (inf, nan) are written as strings.
Json number_to_json(double v);

Json report_to_json(const InequalityReport& r);
Json conditions_to_json(const NecessaryConditions& c);
Json certificate_to_json(const FeasibilityCertificate& cert, bool with_unitaries = true);

/// CSV rows x,y,re_f,im_f,abs_f,bound with shortest round-trip decimals.
void write_scan_csv(std::ostream& out, const ConvexityScan& scan);

/// Shortest decimal that parses back to the same double.
std::string format_double(double v);

}  // namespace cmlab
