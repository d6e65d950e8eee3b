// Machine-readable report assembly. JSON uses insertion-ordered objects and
// CSV uses fixed formatting so equal inputs produce identical bytes.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dcm/eval.hpp"
#include "dcm/registry.hpp"
#include "dcm/study.hpp"
#include "dcm/synthgen.hpp"

namespace dcm {

inline constexpr const char* kSchemaVersion = "1";

struct MeasureReport {
    std::string source;
    std::size_t n = 0, d = 0, k = 0;
    std::uint64_t seed = 0;
    std::vector<MetricValue> metrics;
    bool include_timings = false;
    std::vector<BallCover> ball_dump;  // optional --dump-balls payload
    std::vector<PairLinearity> per_pair;
};

std::string measure_report_json(const MeasureReport& report);
std::string measure_report_csv(const MeasureReport& report);

std::string evaluate_report_json(const std::string& source, const DatasetEval& eval,
                                 std::uint64_t seed);
std::string evaluate_report_csv(const DatasetEval& eval);

std::string study_report_json(const StudyResult& result);
// Rows = classifier x performance measure (plus a theoretical-overlap row
// when available), columns = metrics.
std::string study_report_csv(const StudyResult& result);

std::string generation_metadata_json(const SyntheticSpec& spec, const GenerationInfo& info);

}  // namespace dcm
