#include "hyperreal/taxonomy.hpp"

#include <sstream>

#include "hyperreal/errors.hpp"

namespace hyperreal::taxonomy {
namespace {

using P = EnvironmentProfile;

bool get(const EnvironmentProfile& p, std::optional<bool> P::*member) { return *(p.*member); }

void require_complete(const EnvironmentProfile& profile, bool narayanasamy, bool johnston_whitehead) {
  const auto missing = missing_fields(profile, narayanasamy, johnston_whitehead);
  if (missing.empty()) return;
  std::string message = "missing field(s):";
  for (const auto& name : missing) message += " " + name;
  throw Error(ErrorCode::IncompleteProfile, message);
}

std::size_t column(Category category) {
  switch (category) {
    case Category::Game: return 0;
    case Category::SimulationGame: return 1;
    case Category::TrainingSimulator: return 2;
    case Category::None: break;
  }
  throw Error(ErrorCode::InvalidParameter, "None is not a table column");
}

}  // namespace

const std::array<FieldInfo, 17>& profile_fields() {
  static const std::array<FieldInfo, 17> fields{{
      {"has_virtual_environment", &P::has_virtual_environment, false},
      {"interactive_simulation", &P::interactive_simulation, false},
      {"fictitious_environment", &P::fictitious_environment, false},
      {"real_world_recreation_only", &P::real_world_recreation_only, false},
      {"intended_entertaining", &P::intended_entertaining, false},
      {"provides_engaging_challenges", &P::provides_engaging_challenges, false},
      {"app_specific_skill_dev_primary", &P::app_specific_skill_dev_primary, false},
      {"continuous_intelligent_challenge", &P::continuous_intelligent_challenge, false},
      {"challenges_match_real_world", &P::challenges_match_real_world, false},
      {"gameplay_patterns_present", &P::gameplay_patterns_present, false},
      {"invariant_standard_procedures", &P::invariant_standard_procedures, false},
      {"goal_oriented_activity", &P::goal_oriented_activity, false},
      {"end_state_present", &P::end_state_present, false},
      {"closed_formal_system", &P::closed_formal_system, true},
      {"represents_subset_of_reality", &P::represents_subset_of_reality, true},
      {"primary_goal_education", &P::primary_goal_education, true},
      {"resembles_user_reality_skills", &P::resembles_user_reality_skills, true},
  }};
  return fields;
}

std::vector<std::string> missing_fields(const EnvironmentProfile& profile, bool narayanasamy, bool johnston_whitehead) {
  std::vector<std::string> missing;
  for (const FieldInfo& field : profile_fields()) {
    const bool needed = field.johnston_whitehead ? johnston_whitehead : narayanasamy;
    if (needed && !(profile.*field.member)) missing.emplace_back(field.name);
  }
  return missing;
}

EnvironmentProfile profile_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::InvalidProfile, "profile must be a JSON object");
  EnvironmentProfile profile;
  for (const auto& [key, value] : doc.items()) {
    const FieldInfo* field = nullptr;
    for (const FieldInfo& candidate : profile_fields()) {
      if (candidate.name == key) field = &candidate;
    }
    if (key == "name" || key == "description") continue;
    if (!field) throw Error(ErrorCode::InvalidProfile, "unknown profile field '" + key + "'");
    if (!value.is_boolean()) throw Error(ErrorCode::InvalidProfile, "field '" + key + "' must be true or false");
    profile.*field->member = value.get<bool>();
  }
  return profile;
}

nlohmann::json to_json(const EnvironmentProfile& profile) {
  nlohmann::json doc = nlohmann::json::object();
  for (const FieldInfo& field : profile_fields()) {
    if (const auto& value = profile.*field.member) doc[std::string(field.name)] = *value;
  }
  return doc;
}

std::string_view to_string(Category category) {
  switch (category) {
    case Category::Game: return "Game";
    case Category::SimulationGame: return "SimulationGame";
    case Category::TrainingSimulator: return "TrainingSimulator";
    case Category::None: return "None";
  }
  return "None";
}

std::string_view to_string(JWClass verdict) {
  switch (verdict) {
    case JWClass::NotAGame: return "NotAGame";
    case JWClass::Game: return "Game";
    case JWClass::SeriousGame: return "SeriousGame";
    case JWClass::TrainingSimulation: return "TrainingSimulation";
  }
  return "NotAGame";
}

bool NarayanasamyResult::matches(Category category, int row) const {
  return rows.at(static_cast<std::size_t>(row - 1)).matches[column(category)];
}

std::vector<int> NarayanasamyResult::failing_rows(Category category) const {
  std::vector<int> failing;
  for (const RowMatch& row : rows) {
    if (!row.matches[column(category)]) failing.push_back(row.row);
  }
  return failing;
}

// "Possible"/"may" cells never disqualify. The Simulation Game column repeats
// the Game column except for "no obvious end state". Row 1 spans all columns.
NarayanasamyResult classify_narayanasamy(const EnvironmentProfile& p) {
  require_complete(p, true, false);
  if (get(p, &P::fictitious_environment) && get(p, &P::real_world_recreation_only)) {
    throw Error(ErrorCode::InvalidProfile, "fictitious_environment and real_world_recreation_only are exclusive");
  }
  auto f = [&](std::optional<bool> P::*member) { return get(p, member); };

  const bool simulation = f(&P::has_virtual_environment) && f(&P::interactive_simulation);
  const bool game_entertaining = f(&P::intended_entertaining) && f(&P::provides_engaging_challenges);
  const bool game_goal = f(&P::goal_oriented_activity) && f(&P::end_state_present);
  const bool simgame_goal = f(&P::goal_oriented_activity) && !f(&P::end_state_present);

  NarayanasamyResult result;
  result.rows = {{
      {1, "Involves simulation", {simulation, simulation, simulation}},
      {2, "Imaginative experience", {true, true, f(&P::real_world_recreation_only)}},
      {3, "Entertaining, fun & engaging", {game_entertaining, game_entertaining, !f(&P::intended_entertaining)}},
      {4, "Skills development",
       {!f(&P::app_specific_skill_dev_primary), !f(&P::app_specific_skill_dev_primary),
        f(&P::app_specific_skill_dev_primary)}},
      {5, "Type of challenge",
       {f(&P::continuous_intelligent_challenge), f(&P::continuous_intelligent_challenge),
        f(&P::challenges_match_real_world)}},
      {6, "Gestalt",
       {f(&P::gameplay_patterns_present), f(&P::gameplay_patterns_present), f(&P::invariant_standard_procedures)}},
      {7, "Goal-oriented",
       {game_goal, simgame_goal, !f(&P::goal_oriented_activity) && !f(&P::end_state_present)}},
  }};

  int fits = 0;
  for (std::size_t c = 0; c < kCategories.size(); ++c) {
    bool all = true;
    for (const RowMatch& row : result.rows) all = all && row.matches[c];
    result.satisfied[c] = all;
    if (all) {
      ++fits;
      result.overall = kCategories[c];
    }
  }
  if (fits != 1) result.overall = Category::None;
  return result;
}

JWClass classify_johnston_whitehead(const EnvironmentProfile& p) {
  require_complete(p, false, true);
  if (!(get(p, &P::closed_formal_system) && get(p, &P::represents_subset_of_reality))) return JWClass::NotAGame;
  if (!get(p, &P::primary_goal_education)) return JWClass::Game;
  if (!get(p, &P::resembles_user_reality_skills)) return JWClass::SeriousGame;
  return JWClass::TrainingSimulation;
}

Verdict classify(const EnvironmentProfile& profile) {
  require_complete(profile, true, true);
  return {classify_narayanasamy(profile), classify_johnston_whitehead(profile)};
}

std::string format_report(const Verdict& verdict) {
  std::ostringstream out;
  out << "Narayanasamy: " << to_string(verdict.narayanasamy.overall) << "; J&W: "
      << to_string(verdict.johnston_whitehead) << "\n";
  for (Category category : kCategories) {
    const auto failing = verdict.narayanasamy.failing_rows(category);
    out << "  " << to_string(category) << ": ";
    if (failing.empty()) {
      out << "all rows match\n";
      continue;
    }
    out << "fails";
    for (int row : failing) out << " " << row << " (" << verdict.narayanasamy.rows[row - 1].characteristic << ")";
    out << "\n";
  }
  return out.str();
}

nlohmann::json to_json(const Verdict& verdict) {
  nlohmann::json rows = nlohmann::json::array();
  for (const RowMatch& row : verdict.narayanasamy.rows) {
    rows.push_back({{"row", row.row},
                    {"characteristic", row.characteristic},
                    {"Game", row.matches[0]},
                    {"SimulationGame", row.matches[1]},
                    {"TrainingSimulator", row.matches[2]}});
  }
  nlohmann::json failing = nlohmann::json::object();
  for (Category category : kCategories) {
    failing[std::string(to_string(category))] = verdict.narayanasamy.failing_rows(category);
  }
  return {{"narayanasamy", {{"overall", to_string(verdict.narayanasamy.overall)}, {"rows", rows}, {"failing_rows", failing}}},
          {"johnston_whitehead", to_string(verdict.johnston_whitehead)}};
}

}  // namespace hyperreal::taxonomy
