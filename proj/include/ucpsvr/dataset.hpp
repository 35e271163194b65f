#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ucpsvr/kernels.hpp"
#include "ucpsvr/scaling.hpp"
#include "ucpsvr/ucp.hpp"

namespace ucpsvr {

struct LabeledRecord {
    FeatureVector feature;
    double effort = 0.0;
};

struct LabeledDataset {
    std::vector<LabeledRecord> records;
    std::optional<ScalingParams> feature_scaling;
    std::optional<ScalingParams> target_scaling;
};

std::vector<FeatureVector> features_of(const LabeledDataset& data);
std::vector<double> efforts_of(const LabeledDataset& data);

// Min-max scales single-feature records into [0,1], recording the fitted
// ranges on the returned dataset.
LabeledDataset scale_dataset(const LabeledDataset& data);

// CSV with header `ucp,effort`, one record per row, efforts positive.
LabeledDataset load_effort_dataset(const std::string& path);

// CSV with header `name,actors_simple,actors_average,actors_complex,
// uc_simple,uc_average,uc_complex,t1..t13,f1..f8`. Use case counts per class
// are expanded to representative transaction counts (2, 5, 9).
std::vector<ProjectDescriptor> load_projects(const std::string& path);

}  // namespace ucpsvr
