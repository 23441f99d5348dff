#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "imcsim/costmodel.hpp"
#include "imcsim/report.hpp"

namespace imcsim {

// One published design point from the survey dataset. These figures are
// citations rendered into reports, never recomputed here; the dataset file
// is the single source.
struct CitedDesign {
    std::string work;
    std::string bitcell;
    double technology_nm = 0;
    double supply_v = 0;
    std::string operation;
    std::string array_size;
    std::string precision;
    double tops_per_mm2 = 0;
};

// Loads data/table3.json-style files: a JSON array of objects with the
// CitedDesign fields. IoError on malformed content.
std::vector<CitedDesign> load_cited_designs(const std::filesystem::path& path);

enum class ClaimStatus : std::uint8_t { Pass, Fail, Info };

const char* to_string(ClaimStatus s);

// One reproduced headline figure: the published value, the value this model
// computes, and the basis tag that says whether calibration was involved.
struct ClaimRow {
    std::string claim;
    std::string paper_value;
    std::string computed_value;
    std::string basis;  // "structural", "calibrated" or "citation"
    ClaimStatus status = ClaimStatus::Fail;
};

struct ReproResult {
    std::vector<ClaimRow> rows;

    bool all_passed() const;
};

// Recomputes every headline claim for the 16x8 reference design and checks
// each against its published figure at a fixed tolerance. Cited designs are
// appended as informational rows; the two reference entries among them feed
// the cited efficiency-ratio check.
ReproResult run_repro(const Calibration& cal, const std::vector<CitedDesign>& cited);

Report to_report(const ReproResult& result);

}  // namespace imcsim
