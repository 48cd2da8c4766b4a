#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "hieralign/benchgen.hpp"
#include "hieralign/bscore.hpp"
#include "hieralign/eval.hpp"

namespace hieralign {

// JSON readers/writers for every on-disk format. Writers emit a canonical
// form (fixed key order, trailing newline) so that saving what was loaded
// reproduces the file byte for byte. Readers throw data_error with the file
// path and the offending element in the message.

std::vector<BootlegFragment> load_sheet(const std::filesystem::path& p);
PerformanceSequence load_performance(const std::filesystem::path& p);
void save_sheet(const std::filesystem::path& p, std::span<const BootlegFragment> fragments);
void save_performance(const std::filesystem::path& p, const PerformanceSequence& perf);

TimeMap load_timemap(const std::filesystem::path& p);
void save_timemap(const std::filesystem::path& p, const TimeMap& tm);

LineTimeline load_timeline(const std::filesystem::path& p);
void save_timeline(const std::filesystem::path& p, const LineTimeline& tl);

struct AlignmentFile {
  std::string algo;
  SegmentAlignment alignment;
  nlohmann::ordered_json config;
};
AlignmentFile load_alignment(const std::filesystem::path& p);
void save_alignment(const std::filesystem::path& p, std::string_view algo,
                    const SegmentAlignment& aln, const nlohmann::ordered_json& config);

JumpSchema load_schema(const std::filesystem::path& p);
void save_schema(const std::filesystem::path& p, const JumpSchema& schema);

nlohmann::ordered_json eval_report_json(const EvalReport& r);
// One report -> a single object; several -> {"reports": [...]}.
void save_eval_reports(const std::filesystem::path& p, std::span<const EvalReport> reports);

std::vector<double> load_jump_times(const std::filesystem::path& p);
void save_jump_times(const std::filesystem::path& p, std::span<const double> times);

// Small helpers shared by the CLI.
void write_text_file(const std::filesystem::path& p, std::string_view content);
std::string read_text_file(const std::filesystem::path& p);

}  // namespace hieralign
