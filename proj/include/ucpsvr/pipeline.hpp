#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ucpsvr/dataset.hpp"
#include "ucpsvr/model_io.hpp"
#include "ucpsvr/selection.hpp"
#include "ucpsvr/ucp.hpp"

namespace ucpsvr {

struct ArtifactRecord {
    std::string name;
    std::string checksum;
};

struct RunManifest {
    std::string dataset_path;
    std::vector<std::string> kernels;
    std::vector<double> gamma_values;
    std::vector<double> epsilon_values;
    bool deterministic = true;
    std::string output_dir;
    std::string started_at;
    std::string finished_at;
    std::string best_kernel_by_mmre;
    std::vector<ArtifactRecord> artifacts;
};

std::uint64_t fnv1a64(const std::string& content);

// Scale, split, grid-search, finalize and evaluate each kernel family, then
// emit grid CSVs, result blocks, model files, the test-set comparison table,
// the summary table and a manifest into output_dir.
RunManifest run_full_pipeline(const std::string& dataset_path,
                              const std::vector<KernelFamily>& families,
                              const HyperGrid& grid,
                              const std::string& output_dir);

struct EffortPrediction {
    double ucp = 0.0;
    double scaled_input = 0.0;
    double scaled_prediction = 0.0;
    double effort = 0.0;
    bool extrapolated = false;
};

EffortPrediction predict_effort(const StoredModel& stored, double ucp_value);
EffortPrediction predict_effort(const std::string& model_path,
                                double ucp_value);
EffortPrediction predict_effort(const std::string& model_path,
                                const ProjectDescriptor& project);

}  // namespace ucpsvr
