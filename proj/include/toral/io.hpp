#pragma once

// JSON interchange: algebra files (sparse structure constants) and solution
// files. Field elements are ascending coefficient arrays over GF(p).

#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "toral/algebra.hpp"
#include "toral/smtsa.hpp"

namespace toral::io {

inline constexpr const char* kAlgebraSchema = "toral-algebra/1";
inline constexpr const char* kSolutionSchema = "toral-solution/1";
inline constexpr const char* kAnswersSchema = "toral-answers/1";

/// Malformed or inconsistent input.
struct FormatError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct AlgebraFile {
  StructAlgebra algebra;
  nlohmann::json provenance;  // null when absent
};

nlohmann::json field_to_json(const Field& f);
Field field_from_json(const nlohmann::json& j);
nlohmann::json elem_to_json(const Field& f, Elem e);
Elem elem_from_json(const Field& f, const nlohmann::json& j);
nlohmann::json vec_to_json(const Field& f, std::span<const Elem> v);
Vec vec_from_json(const Field& f, const nlohmann::json& j, std::size_t dim);

nlohmann::json to_json(const AlgebraFile& a);
/// Throws FormatError.
AlgebraFile algebra_from_json(const nlohmann::json& j);

nlohmann::json trace_to_json(const smtsa::SmtsaTrace& t);
/// Solution record for `L`; H is written in L's basis.
nlohmann::json solution_to_json(const StructAlgebra& L, const smtsa::SmtsaResult& r);

struct Solution {
  Field field;
  std::size_t dimension = 0;
  bool ok = false;
  std::size_t d = 0;
  std::optional<Subspace> H;
};
/// Throws FormatError.
Solution solution_from_json(const nlohmann::json& j);

nlohmann::json answers_to_json(const Field& f, const Subspace& h);
Subspace answers_from_json(const Field& f, const nlohmann::json& j, std::size_t dim);

/// Throws FormatError on unreadable files or invalid JSON.
nlohmann::json read_json(const std::string& path);
void write_json(const std::string& path, const nlohmann::json& j);

}  // namespace toral::io
