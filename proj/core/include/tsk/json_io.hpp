#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "tsk/multifilt.hpp"
#include "tsk/obstruct.hpp"
#include "tsk/prescribe.hpp"
#include "tsk/reflexive_r2.hpp"

namespace tsk {

// Reflexive rank-2 ray data or a general multifiltration, with an optional label.
struct SheafDocument {
  std::variant<R2Filtration, Multifiltration> sheaf;
  std::string label;

  const Fan& fan() const;
  int rank() const;
  Multifiltration multifiltration() const;
  const R2Filtration* reflexive() const { return std::get_if<R2Filtration>(&sheaf); }
};

// Canonical form: sorted keys, two-space indent, integers beyond 64 bits as strings.
SheafDocument parse_sheaf(std::string_view text);
std::string to_json(const SheafDocument& doc);

std::string to_json(const Certificate& cert, const PrescriptionSolution& sol);
std::string to_json(const Verdict& v);
std::string to_json(const Infeasible& inf, const PrescriptionProblem& problem);

}  // namespace tsk
