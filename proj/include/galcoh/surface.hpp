#pragma once

// Surfaces y^2 - d z^2 = prod (x - e_i) over a local or number field, their
// Brauer-side groups H^1(F, Pic) and the inference rules that turn the
// restriction/corestriction maps on them into verdicts on Chow groups.

#include <optional>
#include <utility>
#include <string>
#include <vector>

#include "galcoh/cohomology.hpp"
#include "galcoh/errors.hpp"
#include "galcoh/padic.hpp"

namespace galcoh {

/// Raised when sqrt(d) lies in the field where a Brauer group was requested.
class DegenerateBranch : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class ChateletSurface {
 public:
  /// Checks d != 0, d not a square in k, r >= 2 and distinct nonzero roots.
  ChateletSurface(LocalField k, AlgebraElement d, std::vector<AlgebraElement> roots);

  const LocalField& base() const { return base_; }
  const AlgebraElement& d() const { return d_; }
  const std::vector<AlgebraElement>& roots() const { return roots_; }
  std::size_t r() const { return roots_.size(); }

 private:
  LocalField base_;
  AlgebraElement d_;
  std::vector<AlgebraElement> roots_;
};

enum class MapVerdict { Iso, Zero, Injective, Surjective, Other, NotComputed };
enum class ChowVerdict { Zero, Injective, Bijective, TrivialTarget, Unknown };

std::string to_string(MapVerdict v);
std::string to_string(ChowVerdict v);
/// True for the verdicts that imply injectivity.
bool implies_injective(ChowVerdict v);

MapVerdict classify(const AbelianMap& f);

using Fact = std::pair<std::string, std::string>;  // report field, value

/// One application of an inference rule: every premise is a field of the
/// final report with the stated value; conclusions are the fields it set.
struct RuleApplication {
  std::string rule;
  std::string description;
  std::vector<Fact> premises;
  std::vector<Fact> conclusions;
};

struct MapReport {
  MapVerdict verdict = MapVerdict::NotComputed;
  std::optional<AbelianMap> map;
};

struct AnalysisReport {
  std::string mode;  // "local" or "number-field"
  std::optional<bool> degenerate;
  std::size_t n = 0;
  std::string brauer_k;
  std::string brauer_l;
  MapReport res_h1;
  MapReport cores_h1;
  ChowVerdict chow_res = ChowVerdict::Unknown;
  ChowVerdict chow_cores = ChowVerdict::Unknown;
  std::vector<RuleApplication> rule_trace;
  std::vector<std::string> assumptions;

  std::string n_parity() const { return n % 2 == 0 ? "even" : "odd"; }
  /// Value of a named report field, as used in rule premises.
  std::string field(const std::string& name) const;
};

/// The Z/2-lattice Pic for r = 2; Unsupported for r > 2.
GModule picard_module(const ChateletSurface& s);

/// H^1(F, Pic) for F = K or an extension of K; DegenerateBranch if
/// sqrt(d) is in F.
CohomologyPtr brauer_h1(const ChateletSurface& s, const LocalField& f);

/// Induced by K^x -> L^x on the square-class components.
CohMap restriction_on_h1(const ChateletSurface& s, const LocalField& l);
/// Induced by the norm L^x -> K^x: d goes to N(d), compared with the class of d.
CohMap corestriction_on_h1(const ChateletSurface& s, const LocalField& l);

AnalysisReport analyze(const ChateletSurface& s, const LocalField& l);

/// Completion of a number-field tower at p: the tower polynomials read as
/// unramified or Eisenstein steps over Q_p.
struct LocalCertificate {
  unsigned long p;
  std::vector<StepKind> kinds;
};

struct NumberFieldProblem {
  TowerAlgebra tower;             // tower of L; K is the first base_levels steps
  std::size_t base_levels = 0;
  AlgebraElement d;               // at level base_levels
  std::vector<AlgebraElement> roots;
  std::vector<LocalCertificate> certificates;
  std::optional<AlgebraElement> sqrt_witness;  // y in L with y^2 = d
};

AnalysisReport analyze_number_field(const NumberFieldProblem& problem);

}  // namespace galcoh
