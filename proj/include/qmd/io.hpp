#pragma once

// JSON formats for masks, fields, descriptors, paths and reports.

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "qmd/catalog.hpp"
#include "qmd/cubical.hpp"
#include "qmd/field.hpp"
#include "qmd/flatten.hpp"
#include "qmd/graph_lagrangian.hpp"
#include "qmd/maslov.hpp"
#include "qmd/morse.hpp"
#include "qmd/spectral.hpp"

namespace qmd::io {

using json = nlohmann::ordered_json;

/// Unreadable file or malformed JSON.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Well-formed JSON of the wrong shape.
class SchemaError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

json read_file(const std::string& path);
void write_file(const std::string& path, const json& j);
/// Two-space indented text with a trailing newline.
std::string dump(const json& j);

json to_json(const GridMask& m);
GridMask mask_from_json(const json& j);

json to_json(const ScalarField& f);
ScalarField field_from_json(const json& j);

json to_json(const QMDDescriptor& d);
QMDDescriptor descriptor_from_json(const json& j);

json to_json(const LagrangianLinePath& p);
LagrangianLinePath path_from_json(const json& j);

json to_json(const SubmanifoldChart& s);

json to_json(const DegeneracyReport& r);
json to_json(const IsolationReport& r);
json to_json(const catalog::CaseReport& r);

/// Per-page (p,q) dimensions for pages 1..last, the stabilization index, the
/// associated-graded check and the grading convention.
json page_report(const FilteredComplex& fc, int first_page, int last_page);

}  // namespace qmd::io
