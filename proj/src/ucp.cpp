#include "ucpsvr/ucp.hpp"

#include <string>
#include <tuple>

#include "ucpsvr/errors.hpp"

namespace ucpsvr {

namespace {

constexpr std::array<double, 13> kTechnicalWeights = {
    2.0, 2.0, 1.0, 1.0, 1.0, 0.5, 0.5, 2.0, 1.0, 1.0, 1.0, 1.0, 1.0};

constexpr std::array<double, 8> kEnvironmentalWeights = {
    1.5, 0.5, 1.0, 0.5, 1.0, 2.0, -1.0, 2.0};

void check_rating(int rating, const char* prefix, std::size_t index) {
    if (rating < 0 || rating > 5) {
        throw ValidationError(std::string(prefix) + std::to_string(index + 1) +
                              " rating " + std::to_string(rating) +
                              " is outside [0, 5]");
    }
}

}  // namespace

double actor_weight(ActorClass cls) {
    switch (cls) {
        case ActorClass::Simple:
            return 1.0;
        case ActorClass::Average:
            return 2.0;
        case ActorClass::Complex:
            return 3.0;
    }
    throw ValidationError("unknown actor class");
}

UseCaseClass classify_use_case(int transactions) {
    if (transactions < 0) {
        throw ValidationError("transaction count must be non-negative, got " +
                              std::to_string(transactions));
    }
    if (transactions <= 3) return UseCaseClass::Simple;
    if (transactions <= 7) return UseCaseClass::Average;
    return UseCaseClass::Complex;
}

double use_case_weight(UseCaseClass cls) {
    switch (cls) {
        case UseCaseClass::Simple:
            return 5.0;
        case UseCaseClass::Average:
            return 10.0;
        case UseCaseClass::Complex:
            return 15.0;
    }
    throw ValidationError("unknown use case class");
}

double compute_uaw(const std::vector<ActorClass>& actors) {
    if (actors.empty()) {
        throw ValidationError("actor list is empty");
    }
    double sum = 0.0;
    for (ActorClass cls : actors) sum += actor_weight(cls);
    return sum;
}

double compute_uucw(const std::vector<int>& use_case_transactions) {
    if (use_case_transactions.empty()) {
        throw ValidationError("use case list is empty");
    }
    double sum = 0.0;
    for (int n : use_case_transactions) {
        sum += use_case_weight(classify_use_case(n));
    }
    return sum;
}

double compute_uucp(double uaw, double uucw) {
    if (uaw < 0.0 || uucw < 0.0) {
        throw ValidationError("UAW and UUCW must be non-negative");
    }
    return uaw + uucw;
}

std::pair<double, double> compute_tcf(const TechnicalRatings& t) {
    double tfactor = 0.0;
    for (std::size_t i = 0; i < t.ratings.size(); ++i) {
        check_rating(t.ratings[i], "T", i);
        tfactor += kTechnicalWeights[i] * t.ratings[i];
    }
    return {tfactor, 0.6 + 0.01 * tfactor};
}

std::pair<double, double> compute_ef(const EnvironmentalRatings& f) {
    double efactor = 0.0;
    for (std::size_t i = 0; i < f.ratings.size(); ++i) {
        check_rating(f.ratings[i], "F", i);
        efactor += kEnvironmentalWeights[i] * f.ratings[i];
    }
    return {efactor, 1.4 - 0.03 * efactor};
}

UcpBreakdown compute_ucp(const ProjectDescriptor& project) {
    UcpBreakdown out;
    out.uaw = compute_uaw(project.actors);
    out.uucw = compute_uucw(project.use_case_transactions);
    out.uucp = compute_uucp(out.uaw, out.uucw);
    std::tie(out.tfactor, out.tcf) = compute_tcf(project.technical);
    std::tie(out.efactor, out.ef) = compute_ef(project.environmental);
    out.ucp = out.uucp * out.tcf * out.ef;
    return out;
}

}  // namespace ucpsvr
