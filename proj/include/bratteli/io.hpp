#pragma once

#include "bratteli/diagram.hpp"
#include "bratteli/intertwine.hpp"
#include "bratteli/synthesis.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace bratteli {

/// Parsed diagram file: either the triangular family or a general prefix.
using DiagramFile = std::variant<TriangularSpec, BratteliPrefix>;

/// Strict JSON parsing: "format" is required and unknown fields are rejected. Integers
/// may be JSON numbers or decimal strings.
DiagramFile parse_diagram(std::string_view text);

/// Canonical compact JSON plus a trailing newline. Integers beyond 64 bits are strings.
std::string emit_diagram(const TriangularSpec& spec);
std::string emit_diagram(const BratteliPrefix& prefix);
std::string emit_diagram(const DiagramFile& file);

/// Triangular files embed all their steps unless `steps` is given; general files are
/// validated and optionally truncated to `steps` + 1 levels.
BratteliPrefix to_prefix(const DiagramFile& file, std::optional<std::size_t> steps = {});

/// {"format":"targets","points":[["1/1"],["2/3","1/3"],...]}
std::vector<SimplexPoint> parse_targets(std::string_view text);
std::string emit_targets(const std::vector<SimplexPoint>& points);

/// Inverse system described by any of the three file kinds: trace maps of a diagram
/// or target maps of a target list.
MapSequence parse_map_sequence(std::string_view text);

std::string emit_certificate(const SynthesisCertificate& certificate, const SynthesisOptions& options);

/// Names accepted by fixture().
const std::vector<std::string>& fixture_names();
/// Canonical file content; throws InvalidInput for an unknown name.
std::string fixture(std::string_view name);

/// One node per (level, vertex) labelled u_n(i); one edge per non-zero multiplicity
/// labelled A_n(i, j).
std::string export_dot(const BratteliPrefix& prefix);

/// Whole file, or all of `in` when path is "-".
std::string read_input(const std::string& path, std::istream& in);

}  // namespace bratteli
