#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace ucpsvr {

enum class ActorClass { Simple, Average, Complex };
enum class UseCaseClass { Simple, Average, Complex };

struct TechnicalRatings {
    std::array<int, 13> ratings{};
};

struct EnvironmentalRatings {
    std::array<int, 8> ratings{};
};

struct ProjectDescriptor {
    std::string name;
    std::vector<ActorClass> actors;
    std::vector<int> use_case_transactions;
    TechnicalRatings technical;
    EnvironmentalRatings environmental;
};

struct UcpBreakdown {
    double uaw = 0.0;
    double uucw = 0.0;
    double uucp = 0.0;
    double tfactor = 0.0;
    double tcf = 0.0;
    double efactor = 0.0;
    double ef = 0.0;
    double ucp = 0.0;
};

double actor_weight(ActorClass cls);
UseCaseClass classify_use_case(int transactions);
double use_case_weight(UseCaseClass cls);

double compute_uaw(const std::vector<ActorClass>& actors);
double compute_uucw(const std::vector<int>& use_case_transactions);
double compute_uucp(double uaw, double uucw);

// Both return (factor sum, adjustment value): TCF = 0.6 + 0.01*TFactor,
// EF = 1.4 - 0.03*EFactor.
std::pair<double, double> compute_tcf(const TechnicalRatings& t);
std::pair<double, double> compute_ef(const EnvironmentalRatings& f);

UcpBreakdown compute_ucp(const ProjectDescriptor& project);

}  // namespace ucpsvr
