#include "hieralign/io.hpp"

#include <fstream>
#include <sstream>

namespace hieralign {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(const std::filesystem::path& p, const std::string& what) {
  throw data_error(p.string() + ": " + what);
}

json parse_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) fail(p, "cannot open file");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(p, std::string("invalid JSON: ") + e.what());
  }
}

std::string hex_of(PackedColumn col) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%llx", static_cast<unsigned long long>(col.bits));
  return buf;
}

PackedColumn column_of_hex(const std::filesystem::path& p, const std::string& s,
                           size_t frag, size_t col) {
  const auto where = [&] {
    return "fragment " + std::to_string(frag) + ", column " + std::to_string(col);
  };
  if (s.empty() || s.size() > 16) fail(p, where() + ": malformed hex value \"" + s + "\"");
  std::uint64_t bits = 0;
  for (const char c : s) {
    int digit;
    if (c >= '0' && c <= '9') digit = c - '0';
    else if (c >= 'a' && c <= 'f') digit = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') digit = c - 'A' + 10;
    else fail(p, where() + ": malformed hex value \"" + s + "\"");
    bits = bits << 4 | static_cast<std::uint64_t>(digit);
  }
  if (bits & ~PackedColumn::kMask) {
    fail(p, where() + ": value uses feature positions above 61");
  }
  return PackedColumn{bits};
}

void write_json(const std::filesystem::path& p, const ordered_json& j) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw data_error(p.string() + ": cannot open for writing");
  out << j.dump(2) << '\n';
}

struct BscoreFile {
  std::string kind;
  std::vector<BootlegFragment> fragments;
};

BscoreFile load_bscore(const std::filesystem::path& p) {
  const json j = parse_file(p);
  BscoreFile file;
  try {
    file.kind = j.at("kind").get<std::string>();
    if (file.kind != "sheet" && file.kind != "performance") {
      fail(p, "kind must be \"sheet\" or \"performance\"");
    }
    const json& frags = j.at("fragments");
    for (size_t f = 0; f < frags.size(); ++f) {
      const json& jf = frags[f];
      BootlegFragment frag;
      frag.line_id = jf.at("line_id").get<int>();
      frag.page = jf.at("page").get<int>();
      const json& px = jf.at("pixel_range");
      if (!px.is_array() || px.size() != 2) {
        fail(p, "fragment " + std::to_string(f) + ": pixel_range must hold two integers");
      }
      frag.pixel_range = {px[0].get<int>(), px[1].get<int>()};
      const json& cols = jf.at("columns");
      if (cols.empty()) {
        fail(p, "fragment " + std::to_string(f) + " (line " +
                    std::to_string(frag.line_id) + "): no feature columns");
      }
      for (size_t c = 0; c < cols.size(); ++c) {
        frag.columns.push_back(column_of_hex(p, cols[c].get<std::string>(), f, c));
      }
      file.fragments.push_back(std::move(frag));
    }
  } catch (const json::exception& e) {
    fail(p, std::string("unexpected structure: ") + e.what());
  }
  return file;
}

ordered_json bscore_json(const std::string& kind,
                         std::span<const BootlegFragment> fragments) {
  ordered_json j;
  j["kind"] = kind;
  j["fragments"] = ordered_json::array();
  for (const BootlegFragment& frag : fragments) {
    ordered_json jf;
    jf["line_id"] = frag.line_id;
    jf["page"] = frag.page;
    jf["pixel_range"] = {frag.pixel_range.first, frag.pixel_range.second};
    ordered_json cols = ordered_json::array();
    for (const PackedColumn& col : frag.columns) cols.push_back(hex_of(col));
    jf["columns"] = std::move(cols);
    j["fragments"].push_back(std::move(jf));
  }
  return j;
}

}  // namespace

std::vector<BootlegFragment> load_sheet(const std::filesystem::path& p) {
  BscoreFile file = load_bscore(p);
  if (file.kind != "sheet") fail(p, "expected kind \"sheet\", found \"" + file.kind + "\"");
  return std::move(file.fragments);
}

PerformanceSequence load_performance(const std::filesystem::path& p) {
  BscoreFile file = load_bscore(p);
  if (file.kind != "performance") {
    fail(p, "expected kind \"performance\", found \"" + file.kind + "\"");
  }
  if (file.fragments.size() != 1 || file.fragments[0].line_id != -1) {
    fail(p, "a performance holds exactly one fragment with line_id -1");
  }
  return {std::move(file.fragments[0].columns)};
}

void save_sheet(const std::filesystem::path& p, std::span<const BootlegFragment> fragments) {
  write_json(p, bscore_json("sheet", fragments));
}

void save_performance(const std::filesystem::path& p, const PerformanceSequence& perf) {
  BootlegFragment frag;
  frag.line_id = -1;
  frag.page = 0;
  frag.pixel_range = {0, 0};
  frag.columns = perf.columns;
  write_json(p, bscore_json("performance", {&frag, 1}));
}

TimeMap load_timemap(const std::filesystem::path& p) {
  const json j = parse_file(p);
  TimeMap tm;
  try {
    tm.times = j.at("times").get<std::vector<double>>();
  } catch (const json::exception& e) {
    fail(p, std::string("unexpected structure: ") + e.what());
  }
  try {
    validate_timemap(tm);
  } catch (const data_error& e) {
    fail(p, e.what());
  }
  return tm;
}

void save_timemap(const std::filesystem::path& p, const TimeMap& tm) {
  ordered_json j;
  j["times"] = tm.times;
  write_json(p, j);
}

LineTimeline load_timeline(const std::filesystem::path& p) {
  const json j = parse_file(p);
  LineTimeline tl;
  try {
    for (const json& s : j.at("segments")) {
      if (!s.is_array() || s.size() != 3) {
        fail(p, "each segment must be [t_start, t_end, line_id]");
      }
      tl.segments.push_back({s[0].get<double>(), s[1].get<double>(), s[2].get<int>()});
    }
  } catch (const json::exception& e) {
    fail(p, std::string("unexpected structure: ") + e.what());
  }
  try {
    validate_timeline(tl);
  } catch (const data_error& e) {
    fail(p, e.what());
  }
  return tl;
}

void save_timeline(const std::filesystem::path& p, const LineTimeline& tl) {
  ordered_json j;
  j["segments"] = ordered_json::array();
  for (const TimelineSegment& s : tl.segments) {
    j["segments"].push_back({s.t_start, s.t_end, s.line_id});
  }
  write_json(p, j);
}

AlignmentFile load_alignment(const std::filesystem::path& p) {
  const json j = parse_file(p);
  AlignmentFile file;
  try {
    file.algo = j.at("algo").get<std::string>();
    file.alignment.score = j.at("score").get<double>();
    for (const json& m : j.at("matches")) {
      if (!m.is_array() || m.size() != 3) {
        fail(p, "each match must be [line_id, ref_start, ref_end]");
      }
      file.alignment.matches.push_back({m[0].get<int>(), m[1].get<int>(), m[2].get<int>()});
    }
    file.config = j.value("config", json::object());
  } catch (const json::exception& e) {
    fail(p, std::string("unexpected structure: ") + e.what());
  }
  try {
    validate_alignment(file.alignment);
  } catch (const data_error& e) {
    fail(p, e.what());
  }
  return file;
}

void save_alignment(const std::filesystem::path& p, std::string_view algo,
                    const SegmentAlignment& aln, const ordered_json& config) {
  ordered_json j;
  j["algo"] = std::string(algo);
  j["score"] = aln.score;
  j["matches"] = ordered_json::array();
  for (const LineMatch& m : aln.matches) {
    j["matches"].push_back({m.line_id, m.ref_start, m.ref_end});
  }
  j["config"] = config;
  write_json(p, j);
}

JumpSchema load_schema(const std::filesystem::path& p) {
  const json j = parse_file(p);
  JumpSchema schema;
  try {
    const std::string kind = j.at("kind").get<std::string>();
    const std::optional<SchemaKind> k = schema_from_string(kind);
    if (!k) fail(p, "unknown schema kind \"" + kind + "\"");
    schema.kind = *k;
    schema.boundaries = j.at("boundaries").get<std::vector<int>>();
    schema.seed = j.at("seed").get<std::uint64_t>();
  } catch (const json::exception& e) {
    fail(p, std::string("unexpected structure: ") + e.what());
  }
  return schema;
}

void save_schema(const std::filesystem::path& p, const JumpSchema& schema) {
  ordered_json j;
  j["kind"] = to_string(schema.kind);
  j["boundaries"] = schema.boundaries;
  j["seed"] = schema.seed;
  write_json(p, j);
}

ordered_json eval_report_json(const EvalReport& r) {
  ordered_json j;
  j["accuracy"] = r.accuracy;
  j["collar"] = r.collar;
  j["scored_duration"] = r.scored_duration;
  j["error_intervals"] = ordered_json::array();
  for (const auto& [a, b] : r.error_intervals) j["error_intervals"].push_back({a, b});
  return j;
}

void save_eval_reports(const std::filesystem::path& p, std::span<const EvalReport> reports) {
  if (reports.size() == 1) {
    write_json(p, eval_report_json(reports[0]));
    return;
  }
  ordered_json j;
  j["reports"] = ordered_json::array();
  for (const EvalReport& r : reports) j["reports"].push_back(eval_report_json(r));
  write_json(p, j);
}

std::vector<double> load_jump_times(const std::filesystem::path& p) {
  const json j = parse_file(p);
  try {
    return j.at("times").get<std::vector<double>>();
  } catch (const json::exception& e) {
    fail(p, std::string("unexpected structure: ") + e.what());
  }
}

void save_jump_times(const std::filesystem::path& p, std::span<const double> times) {
  ordered_json j;
  j["times"] = std::vector<double>(times.begin(), times.end());
  write_json(p, j);
}

void write_text_file(const std::filesystem::path& p, std::string_view content) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw data_error(p.string() + ": cannot open for writing");
  out << content;
}

std::string read_text_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw data_error(p.string() + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace hieralign
