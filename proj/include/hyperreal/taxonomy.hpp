#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace hyperreal::taxonomy {

/// Yes/no answers describing an application. Unset fields make the profile
/// incomplete for any rubric that reads them.
struct EnvironmentProfile {
  // Narayanasamy et al. characteristics
  std::optional<bool> has_virtual_environment;
  std::optional<bool> interactive_simulation;
  std::optional<bool> fictitious_environment;
  std::optional<bool> real_world_recreation_only;
  std::optional<bool> intended_entertaining;
  std::optional<bool> provides_engaging_challenges;
  std::optional<bool> app_specific_skill_dev_primary;
  std::optional<bool> continuous_intelligent_challenge;
  std::optional<bool> challenges_match_real_world;
  std::optional<bool> gameplay_patterns_present;
  std::optional<bool> invariant_standard_procedures;
  std::optional<bool> goal_oriented_activity;
  std::optional<bool> end_state_present;
  // Johnston & Whitehead criteria
  std::optional<bool> closed_formal_system;
  std::optional<bool> represents_subset_of_reality;
  std::optional<bool> primary_goal_education;
  std::optional<bool> resembles_user_reality_skills;

  friend bool operator==(const EnvironmentProfile&, const EnvironmentProfile&) = default;
};

struct FieldInfo {
  std::string_view name;
  std::optional<bool> EnvironmentProfile::*member;
  bool johnston_whitehead;  // false: Narayanasamy table field
};

/// All profile fields in declaration order; names are the JSON keys.
const std::array<FieldInfo, 17>& profile_fields();

/// Names of unset fields among those the given rubric reads.
std::vector<std::string> missing_fields(const EnvironmentProfile& profile, bool narayanasamy, bool johnston_whitehead);

/// Reads a profile document. Unknown keys and non-boolean values are rejected
/// with InvalidProfile; missing keys are left unset.
EnvironmentProfile profile_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const EnvironmentProfile& profile);

enum class Category { Game, SimulationGame, TrainingSimulator, None };
enum class JWClass { NotAGame, Game, SeriousGame, TrainingSimulation };

std::string_view to_string(Category category);
std::string_view to_string(JWClass verdict);

inline constexpr std::array<Category, 3> kCategories{Category::Game, Category::SimulationGame,
                                                     Category::TrainingSimulator};

struct RowMatch {
  int row = 0;
  std::string_view characteristic;
  std::array<bool, 3> matches{};  // indexed like kCategories
};

struct NarayanasamyResult {
  std::array<RowMatch, 7> rows;
  std::array<bool, 3> satisfied{};
  Category overall = Category::None;

  bool matches(Category category, int row) const;
  /// Rows (1-based) that disqualify `category`.
  std::vector<int> failing_rows(Category category) const;
};

/// Evaluates the seven identifying characteristics against each column.
/// Throws IncompleteProfile naming every unset field it needs, or
/// InvalidProfile if the environment is both fictitious and a pure recreation.
NarayanasamyResult classify_narayanasamy(const EnvironmentProfile& profile);

/// Game iff closed formal system representing a subset of reality; serious
/// game if additionally educational; training simulation if it also closely
/// resembles the user's own skills and processes.
JWClass classify_johnston_whitehead(const EnvironmentProfile& profile);

struct Verdict {
  NarayanasamyResult narayanasamy;
  JWClass johnston_whitehead = JWClass::NotAGame;
};

Verdict classify(const EnvironmentProfile& profile);

std::string format_report(const Verdict& verdict);
nlohmann::json to_json(const Verdict& verdict);

}  // namespace hyperreal::taxonomy
