// Copyright 2026 The scenesplat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "scenesplat/edit/command.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <utility>

#include "scenesplat/common/error.hpp"

namespace scenesplat
{

namespace
{

constexpr std::array<std::pair<EditTask, std::string_view>, 4> kTasks{{
  {EditTask::Add, "add"},
  {EditTask::Remove, "remove"},
  {EditTask::Replace, "replace"},
  {EditTask::Modify, "modify"},
}};

constexpr std::array<std::pair<GroupSelector, std::string_view>, 3> kGroups{{
  {GroupSelector::AllMovingVehicles, "all_moving_vehicles"},
  {GroupSelector::AllMovingPedestrians, "all_moving_pedestrians"},
  {GroupSelector::AllStaticObjects, "all_static_objects"},
}};

constexpr std::array<std::pair<Action, std::string_view>, 9> kActions{{
  {Action::GoStraight, "go_straight"},
  {Action::TurnLeft, "turn_left"},
  {Action::TurnRight, "turn_right"},
  {Action::Stop, "stop"},
  {Action::Accelerate, "accelerate"},
  {Action::Decelerate, "decelerate"},
  {Action::Follow, "follow"},
  {Action::StaticPlace, "static_place"},
  {Action::Reverse, "reverse"},
}};

template <typename E, std::size_t N>
std::string_view name_of(const std::array<std::pair<E, std::string_view>, N> & table, E value)
{
  for (const auto & [v, name] : table) {
    if (v == value) {
      return name;
    }
  }
  return table.front().second;
}

std::string lower(std::string_view s)
{
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

template <typename E, std::size_t N>
std::optional<E> lookup(const std::array<std::pair<E, std::string_view>, N> & table, std::string_view text)
{
  const std::string key = lower(text);
  for (const auto & [v, name] : table) {
    if (name == key) {
      return v;
    }
  }
  return std::nullopt;
}

// Keys in canonical output order.
constexpr std::array<std::string_view, 14> kKeys{
  "target", "anchor", "group", "asset", "action", "speed", "start_time",
  "offset", "at", "to", "direction", "scale", "rotation", "distance",
};

bool is_query_key(std::string_view key) { return key == "target" || key == "anchor" || key == "asset"; }

struct RawValue
{
  std::string text;
  std::size_t column;  // 1-based column of the value
};

class Scanner
{
public:
  explicit Scanner(std::string_view text) : text_(text) {}

  void skip_space()
  {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }
  bool done() const { return pos_ >= text_.size(); }
  std::size_t column() const { return pos_ + 1; }

  std::string word()
  {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    if (pos_ == start) {
      throw SyntaxError(column(), "expected a word");
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  void expect(char c)
  {
    if (pos_ >= text_.size() || text_[pos_] != c) {
      throw SyntaxError(column(), std::string("expected '") + c + "'");
    }
    ++pos_;
  }

  bool at_quote() const { return pos_ < text_.size() && text_[pos_] == '"'; }

  std::string quoted()
  {
    const std::size_t open = column();
    expect('"');
    std::string out;
    while (true) {
      if (pos_ >= text_.size()) {
        throw SyntaxError(open, "unterminated string");
      }
      const char c = text_[pos_++];
      if (c == '"') {
        return out;
      }
      if (c == '\\') {
        if (pos_ >= text_.size() || (text_[pos_] != '"' && text_[pos_] != '\\')) {
          throw SyntaxError(column(), "unknown escape");
        }
        out += text_[pos_++];
        continue;
      }
      out += c;
    }
  }

  std::string bare()
  {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      if (text_[pos_] == '"') {
        throw SyntaxError(column(), "unexpected quote");
      }
      ++pos_;
    }
    if (pos_ == start) {
      throw SyntaxError(column(), "expected a value");
    }
    return std::string(text_.substr(start, pos_ - start));
  }

private:
  std::string_view text_;
  std::size_t pos_{0};
};

bool is_decimal(std::string_view s)
{
  std::size_t i = 0;
  if (i < s.size() && s[i] == '-') {
    ++i;
  }
  const std::size_t int_start = i;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    ++i;
  }
  if (i == int_start) {
    return false;
  }
  if (i < s.size() && s[i] == '.') {
    ++i;
    const std::size_t frac_start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      ++i;
    }
    if (i == frac_start) {
      return false;
    }
  }
  return i == s.size();
}

double to_number(std::string_view s, std::size_t column)
{
  if (!is_decimal(s)) {
    throw SyntaxError(column, "expected a decimal number, got '" + std::string(s) + "'");
  }
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || !std::isfinite(v)) {
    throw SyntaxError(column, "number out of range");
  }
  return v;
}

Vec2 to_point(std::string_view s, std::size_t column)
{
  const auto comma = s.find(',');
  if (comma == std::string_view::npos) {
    throw SyntaxError(column, "expected <x>,<y>");
  }
  return {to_number(s.substr(0, comma), column), to_number(s.substr(comma + 1), column + comma + 1)};
}

Vec2 to_offset(std::string_view s, std::size_t column)
{
  Vec2 out;
  bool lon_set = false;
  bool lat_set = false;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto end = std::min(s.find(',', start), s.size());
    const std::string_view part = s.substr(start, end - start);
    const std::size_t col = column + start;
    const auto colon = part.find(':');
    if (colon == std::string_view::npos) {
      throw SyntaxError(col, "expected <behind|ahead|left|right>:<meters>");
    }
    const std::string dir = lower(part.substr(0, colon));
    const double v = to_number(part.substr(colon + 1), col + colon + 1);
    if (v < 0.0) {
      throw SyntaxError(col + colon + 1, "offset distance must be non-negative");
    }
    bool & axis = (dir == "behind" || dir == "ahead") ? lon_set : lat_set;
    if (dir != "behind" && dir != "ahead" && dir != "left" && dir != "right") {
      throw SyntaxError(col, "unknown offset direction '" + dir + "'");
    }
    if (axis) {
      throw SyntaxError(col, "offset axis given twice");
    }
    axis = true;
    if (dir == "behind") {
      out.x = -v;
    } else if (dir == "ahead") {
      out.x = v;
    } else if (dir == "left") {
      out.y = v;
    } else {
      out.y = -v;
    }
    start = end + 1;
  }
  return out;
}

[[noreturn]] void constraint(const std::string & rule)
{
  throw Error(ErrorCode::Constraint, rule);
}

std::string quote(std::string_view s)
{
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') {
      out += '\\';
    }
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string_view to_string(EditTask task) { return name_of(kTasks, task); }
std::string_view to_string(GroupSelector group) { return name_of(kGroups, group); }
std::string_view to_string(Action action) { return name_of(kActions, action); }
std::optional<EditTask> parse_edit_task(std::string_view text) { return lookup(kTasks, text); }
std::optional<GroupSelector> parse_group_selector(std::string_view text) { return lookup(kGroups, text); }
std::optional<Action> parse_action(std::string_view text) { return lookup(kActions, text); }

std::string format_decimal(double value)
{
  if (value == 0.0) {
    return "0";  // drops the sign of -0
  }
  std::array<char, 400> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed);
  return std::string(buf.data(), res.ptr);
}

void validate_command(const EditCommand & c)
{
  const char * task = to_string(c.task).data();
  auto forbid = [&](bool present, const char * key) {
    if (present) {
      constraint(std::string(task) + " does not accept '" + key + "'");
    }
  };
  const bool follow = c.action && c.action->action == Action::Follow;
  switch (c.task) {
    case EditTask::Add:
      if (!c.asset) {
        constraint("add requires asset");
      }
      if (!c.anchor_query && !c.position) {
        constraint("add requires anchor or at");
      }
      if (c.position && c.asset->offset != Vec2{}) {
        constraint("offset requires anchor placement, not at");
      }
      if (follow && !c.anchor_query) {
        constraint("follow requires anchor");
      }
      forbid(c.target_query.has_value(), "target");
      forbid(c.group.has_value(), "group");
      break;
    case EditTask::Remove:
      if (!c.target_query && !c.group) {
        constraint("remove requires target or group");
      }
      if (c.target_query && c.group) {
        constraint("remove takes target or group, not both");
      }
      forbid(c.anchor_query.has_value(), "anchor");
      forbid(c.asset.has_value(), "asset");
      forbid(c.action.has_value(), "action");
      forbid(c.start_time.has_value(), "start_time");
      forbid(c.position.has_value(), "at");
      forbid(c.direction_deg.has_value(), "direction");
      break;
    case EditTask::Replace:
      if (!c.target_query || !c.asset) {
        constraint("replace requires target and asset");
      }
      if (c.asset->rotation_deg != 0.0 || c.asset->offset != Vec2{}) {
        constraint("replace accepts scale but not rotation or offset");
      }
      forbid(c.anchor_query.has_value(), "anchor");
      forbid(c.group.has_value(), "group");
      forbid(c.action.has_value(), "action");
      forbid(c.start_time.has_value(), "start_time");
      forbid(c.position.has_value(), "at");
      forbid(c.direction_deg.has_value(), "direction");
      break;
    case EditTask::Modify:
      if (!c.target_query || !c.action) {
        constraint("modify requires target and action");
      }
      if (c.anchor_query && !follow) {
        constraint("modify accepts anchor only with action=follow");
      }
      if (follow && !c.anchor_query) {
        constraint("follow requires anchor");
      }
      forbid(c.group.has_value(), "group");
      forbid(c.asset.has_value(), "asset");
      forbid(c.position.has_value(), "at");
      forbid(c.direction_deg.has_value(), "direction");
      break;
  }
  if (c.asset && !(c.asset->scale > 0.0)) {
    constraint("scale must be positive");
  }
  if (c.start_time && *c.start_time < 0.0) {
    constraint("start_time must be non-negative");
  }
  if (c.action) {
    if (c.action->speed && *c.action->speed < 0.0) {
      constraint("speed must be non-negative");
    }
    if (c.action->relative_distance && *c.action->relative_distance < 0.0) {
      constraint("distance must be non-negative");
    }
  }
}

EditCommand parse_command(std::string_view text)
{
  Scanner sc(text);
  sc.skip_space();
  if (sc.done()) {
    throw SyntaxError(sc.column(), "empty command");
  }
  const std::size_t task_col = sc.column();
  const std::string task_word = sc.word();
  EditCommand cmd;
  if (auto t = parse_edit_task(task_word)) {
    cmd.task = *t;
  } else {
    throw SyntaxError(task_col, "unknown task '" + task_word + "'");
  }

  std::map<std::string, RawValue> raw;
  while (true) {
    const std::size_t before = sc.column();
    sc.skip_space();
    if (sc.done()) {
      break;
    }
    if (sc.column() == before) {
      throw SyntaxError(sc.column(), "expected whitespace between fields");
    }
    const std::size_t key_col = sc.column();
    const std::string key = lower(sc.word());
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
      throw SyntaxError(key_col, "unknown key '" + key + "'");
    }
    if (raw.count(key) != 0) {
      throw SyntaxError(key_col, "duplicate key '" + key + "'");
    }
    sc.expect('=');
    const std::size_t value_col = sc.column();
    if (is_query_key(key)) {
      if (!sc.at_quote()) {
        throw SyntaxError(value_col, "'" + key + "' takes a quoted string");
      }
      raw[key] = {sc.quoted(), value_col};
    } else {
      if (sc.at_quote()) {
        throw SyntaxError(value_col, "'" + key + "' does not take a quoted string");
      }
      raw[key] = {sc.bare(), value_col};
    }
  }

  auto get = [&](const char * key) -> const RawValue * {
    auto it = raw.find(key);
    return it == raw.end() ? nullptr : &it->second;
  };
  auto number = [&](const char * key) -> std::optional<double> {
    if (const auto * v = get(key)) {
      return to_number(v->text, v->column);
    }
    return std::nullopt;
  };

  if (const auto * v = get("target")) {
    cmd.target_query = v->text;
  }
  if (const auto * v = get("anchor")) {
    cmd.anchor_query = v->text;
  }
  if (const auto * v = get("group")) {
    cmd.group = parse_group_selector(v->text);
    if (!cmd.group) {
      throw SyntaxError(v->column, "unknown group '" + v->text + "'");
    }
  }
  if (const auto * v = get("asset")) {
    cmd.asset = AssetParams{v->text, 1.0, 0.0, {}};
  }
  for (const char * key : {"scale", "rotation", "offset"}) {
    if (get(key) && !cmd.asset) {
      constraint(std::string(key) + " requires asset");
    }
  }
  if (cmd.asset) {
    if (auto s = number("scale")) {
      cmd.asset->scale = *s;
    }
    if (auto r = number("rotation")) {
      cmd.asset->rotation_deg = *r;
    }
    if (const auto * v = get("offset")) {
      cmd.asset->offset = to_offset(v->text, v->column);
    }
  }
  if (const auto * v = get("action")) {
    auto a = parse_action(v->text);
    if (!a) {
      throw SyntaxError(v->column, "unknown action '" + v->text + "'");
    }
    cmd.action = ActionParams{*a, {}, {}, {}};
  }
  for (const char * key : {"speed", "distance", "to"}) {
    if (get(key) && !cmd.action) {
      constraint(std::string(key) + " requires action");
    }
  }
  if (cmd.action) {
    cmd.action->speed = number("speed");
    cmd.action->relative_distance = number("distance");
    if (const auto * v = get("to")) {
      cmd.action->end_position = to_point(v->text, v->column);
    }
  }
  cmd.start_time = number("start_time");
  cmd.direction_deg = number("direction");
  if (const auto * v = get("at")) {
    cmd.position = to_point(v->text, v->column);
  }
  validate_command(cmd);
  return cmd;
}

std::string format_command(const EditCommand & c)
{
  std::string out(to_string(c.task));
  auto field = [&](std::string_view key, const std::string & value) {
    out += ' ';
    out += key;
    out += '=';
    out += value;
  };
  auto point = [](Vec2 p) { return format_decimal(p.x) + "," + format_decimal(p.y); };
  if (c.target_query) {
    field("target", quote(*c.target_query));
  }
  if (c.anchor_query) {
    field("anchor", quote(*c.anchor_query));
  }
  if (c.group) {
    field("group", std::string(to_string(*c.group)));
  }
  if (c.asset) {
    field("asset", quote(c.asset->query));
  }
  if (c.action) {
    field("action", std::string(to_string(c.action->action)));
    if (c.action->speed) {
      field("speed", format_decimal(*c.action->speed));
    }
  }
  if (c.start_time) {
    field("start_time", format_decimal(*c.start_time));
  }
  if (c.asset && c.asset->offset != Vec2{}) {
    std::string parts;
    const Vec2 o = c.asset->offset;
    if (o.x != 0.0) {
      parts += (o.x < 0.0 ? "behind:" : "ahead:") + format_decimal(std::abs(o.x));
    }
    if (o.y != 0.0) {
      parts += (parts.empty() ? "" : ",");
      parts += (o.y > 0.0 ? "left:" : "right:") + format_decimal(std::abs(o.y));
    }
    field("offset", parts);
  }
  if (c.position) {
    field("at", point(*c.position));
  }
  if (c.action && c.action->end_position) {
    field("to", point(*c.action->end_position));
  }
  if (c.direction_deg) {
    field("direction", format_decimal(*c.direction_deg));
  }
  if (c.asset && c.asset->scale != 1.0) {
    field("scale", format_decimal(c.asset->scale));
  }
  if (c.asset && c.asset->rotation_deg != 0.0) {
    field("rotation", format_decimal(c.asset->rotation_deg));
  }
  if (c.action && c.action->relative_distance) {
    field("distance", format_decimal(*c.action->relative_distance));
  }
  return out;
}

}  // namespace scenesplat
