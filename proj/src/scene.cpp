#include "shotsel/scene.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "shotsel/random.hpp"

namespace shotsel {

namespace {

constexpr std::size_t kFixedColumns = 14;
constexpr std::size_t kLabelColumn = 13;

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::vector<std::string_view> split_row(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(line.substr(start));
      return cells;
    }
    cells.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

double parse_number(std::string_view cell, std::size_t line, std::size_t column) {
  double v = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  if (!cell.empty() && *first == '+') ++first;
  auto res = std::from_chars(first, last, v);
  if (cell.empty() || res.ec != std::errc() || res.ptr != last || !std::isfinite(v)) {
    throw ParseError(line, column, "expected a finite number, got '" + std::string(cell) + "'");
  }
  return v;
}

}  // namespace

std::string_view to_string(Label label) { return label == Label::Goal ? "GOAL" : "NO_GOAL"; }

Label parse_label(std::string_view text) {
  if (text == "GOAL") return Label::Goal;
  if (text == "NO_GOAL") return Label::NoGoal;
  throw std::invalid_argument("unknown label '" + std::string(text) + "'");
}

void validate_scene(const KickScene& s, const FieldConfig& field) {
  const bool finite = s.ball.finite() && s.ball_velocity.finite() && s.attacker.finite() &&
                      std::isfinite(s.attacker_body_angle) && s.keeper.finite() &&
                      std::isfinite(s.kick_power) && s.target.finite() &&
                      std::all_of(s.defenders.begin(), s.defenders.end(), [](Vec2 d) { return d.finite(); });
  if (!finite) throw std::invalid_argument("scene has non-finite values");
  if (!field.inside_field(s.ball)) throw std::invalid_argument("ball outside field bounds");
  if (s.defenders.size() > kMaxDefenders) throw std::invalid_argument("more than 10 defenders");
}

KickScene mirror_scene(const KickScene& s) {
  auto flip = [](Vec2 v) { return Vec2{v.x, -v.y}; };
  KickScene m = s;
  m.ball = flip(s.ball);
  m.ball_velocity = flip(s.ball_velocity);
  m.attacker = flip(s.attacker);
  m.attacker_body_angle = -s.attacker_body_angle;
  m.keeper = flip(s.keeper);
  m.target = flip(s.target);
  for (auto& d : m.defenders) d = flip(d);
  return m;
}

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

const std::vector<std::string>& scene_csv_header() {
  static const std::vector<std::string> header = [] {
    std::vector<std::string> h = {"time",      "ball_x",   "ball_y",   "ball_vx",    "ball_vy",
                                  "attacker_x", "attacker_y", "attacker_body_angle", "keeper_x",
                                  "keeper_y",  "kick_power", "target_x", "target_y", "label"};
    for (std::size_t i = 1; i <= kMaxDefenders; ++i) {
      h.push_back("def" + std::to_string(i) + "_x");
      h.push_back("def" + std::to_string(i) + "_y");
    }
    return h;
  }();
  return header;
}

void write_scenes(std::ostream& out, const std::vector<KickScene>& scenes) {
  const auto& header = scene_csv_header();
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& s : scenes) {
    if (s.defenders.size() > kMaxDefenders) throw std::invalid_argument("more than 10 defenders");
    out << s.time << ',' << format_double(s.ball.x) << ',' << format_double(s.ball.y) << ','
        << format_double(s.ball_velocity.x) << ',' << format_double(s.ball_velocity.y) << ','
        << format_double(s.attacker.x) << ',' << format_double(s.attacker.y) << ','
        << format_double(s.attacker_body_angle) << ',' << format_double(s.keeper.x) << ','
        << format_double(s.keeper.y) << ',' << format_double(s.kick_power) << ','
        << format_double(s.target.x) << ',' << format_double(s.target.y) << ',' << to_string(s.label);
    for (std::size_t i = 0; i < kMaxDefenders; ++i) {
      if (i < s.defenders.size()) {
        out << ',' << format_double(s.defenders[i].x) << ',' << format_double(s.defenders[i].y);
      } else {
        out << ",,";
      }
    }
    out << '\n';
  }
}

std::vector<KickScene> read_scenes(std::istream& in, const FieldConfig& field) {
  const auto& header = scene_csv_header();
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw ParseError(1, 1, "missing header row");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  {
    const auto cells = split_row(line);
    if (cells.size() != header.size()) throw ParseError(1, 1, "header has wrong number of columns");
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (cells[c] != header[c]) throw ParseError(1, c + 1, "expected column '" + header[c] + "'");
    }
  }

  std::vector<KickScene> scenes;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_row(line);
    if (cells.size() != header.size()) {
      throw ParseError(line_no, std::min(cells.size(), header.size()) + 1,
                       "expected " + std::to_string(header.size()) + " columns, got " +
                           std::to_string(cells.size()));
    }
    auto num = [&](std::size_t c) { return parse_number(cells[c], line_no, c + 1); };

    KickScene s;
    const double time = num(0);
    if (time != std::floor(time)) throw ParseError(line_no, 1, "time must be an integer step");
    s.time = static_cast<int>(time);
    s.ball = {num(1), num(2)};
    s.ball_velocity = {num(3), num(4)};
    s.attacker = {num(5), num(6)};
    s.attacker_body_angle = num(7);
    s.keeper = {num(8), num(9)};
    s.kick_power = num(10);
    s.target = {num(11), num(12)};
    try {
      s.label = parse_label(cells[kLabelColumn]);
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, kLabelColumn + 1, e.what());
    }
    for (std::size_t i = 0; i < kMaxDefenders; ++i) {
      const std::size_t cx = kFixedColumns + 2 * i;
      const bool empty_x = cells[cx].empty();
      const bool empty_y = cells[cx + 1].empty();
      if (empty_x != empty_y) throw ParseError(line_no, cx + 1, "defender needs both coordinates");
      if (empty_x) continue;
      s.defenders.push_back({num(cx), num(cx + 1)});
    }
    if (!field.inside_field(s.ball)) throw ParseError(line_no, 2, "ball outside field bounds");
    scenes.push_back(std::move(s));
  }
  return scenes;
}

void save_scenes(const std::vector<KickScene>& scenes, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  write_scenes(out, scenes);
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

std::vector<KickScene> load_scenes(const std::filesystem::path& path, const FieldConfig& field) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  return read_scenes(in, field);
}

DatasetSplit split_dataset(std::vector<KickScene> scenes, std::uint64_t seed) {
  if (scenes.size() < 4) throw std::invalid_argument("split_dataset needs at least 4 scenes");
  Rng rng(seed);
  std::shuffle(scenes.begin(), scenes.end(), rng);
  const std::size_t n = scenes.size();
  const std::size_t n_train = (n + 1) / 2;
  const std::size_t n_val = (n - n_train + 1) / 2;
  DatasetSplit split;
  split.seed = seed;
  auto it = std::make_move_iterator(scenes.begin());
  split.train.assign(it, it + n_train);
  split.validation.assign(it + n_train, it + n_train + n_val);
  split.test.assign(it + n_train + n_val, std::make_move_iterator(scenes.end()));
  return split;
}

std::size_t count_label(const std::vector<KickScene>& scenes, Label label) {
  return static_cast<std::size_t>(
      std::count_if(scenes.begin(), scenes.end(), [&](const KickScene& s) { return s.label == label; }));
}

std::vector<KickScene> balance_by_replication(const std::vector<KickScene>& train, std::uint64_t seed) {
  const std::size_t goals = count_label(train, Label::Goal);
  const std::size_t misses = train.size() - goals;
  if (goals == 0 || misses == 0) throw std::invalid_argument("balance_by_replication needs both classes");
  const Label minority = goals < misses ? Label::Goal : Label::NoGoal;
  const std::size_t m = std::min(goals, misses);
  const std::size_t big = std::max(goals, misses);

  std::vector<KickScene> minority_scenes;
  for (const auto& s : train) {
    if (s.label == minority) minority_scenes.push_back(s);
  }
  std::vector<KickScene> out = train;
  out.reserve(2 * big);
  const std::size_t full_copies = big / m;
  for (std::size_t c = 1; c < full_copies; ++c) {
    out.insert(out.end(), minority_scenes.begin(), minority_scenes.end());
  }
  const std::size_t remainder = big - full_copies * m;
  if (remainder > 0) {
    std::vector<std::size_t> idx(m);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    Rng rng(seed);
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(remainder);
    std::sort(idx.begin(), idx.end());
    for (std::size_t i : idx) out.push_back(minority_scenes[i]);
  }
  return out;
}

}  // namespace shotsel
