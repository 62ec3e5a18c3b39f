#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "leeyang/coherence.hpp"
#include "leeyang/experiment_sim.hpp"
#include "leeyang/ising_model.hpp"
#include "leeyang/thermodynamics.hpp"
#include "leeyang/zero_finder.hpp"

// JSON (nlohmann ADL hooks) and CSV serializers. Infinite values, such as an
// unbounded delta theta or T2* = inf, are written as JSON null and read back
// as +inf.

namespace leeyang {

void to_json(nlohmann::json& j, const IsingParams& p);
void from_json(const nlohmann::json& j, IsingParams& p);

void to_json(nlohmann::json& j, const ZeroSet& z);
void from_json(const nlohmann::json& j, ZeroSet& z);

void to_json(nlohmann::json& j, const CoherenceTrace& t);
void from_json(const nlohmann::json& j, CoherenceTrace& t);

void to_json(nlohmann::json& j, const FreeEnergyResult& r);
void from_json(const nlohmann::json& j, FreeEnergyResult& r);

void to_json(nlohmann::json& j, const EdgeSample& s);
void from_json(const nlohmann::json& j, EdgeSample& s);
void to_json(nlohmann::json& j, const EdgeCurve& c);
void from_json(const nlohmann::json& j, EdgeCurve& c);

/// {"t2_star_s", "eta", "seed", "delta": [{"two_m", "dx", "dy"}, ...]}
void to_json(nlohmann::json& j, const NoiseModel& n);
void from_json(const nlohmann::json& j, NoiseModel& n);

void to_json(nlohmann::json& j, const MeasuredTrace& t);
void from_json(const nlohmann::json& j, MeasuredTrace& t);

/// Shortest decimal that reads back to the same double; "inf", "-inf", "nan".
std::string format_number(double value);

// CSV with a header row.
void write_csv(std::ostream& os, const ZeroSet& zeros);          // n,theta,t,re_z,im_z,delta_theta,multiplicity
void write_csv(std::ostream& os, const CoherenceTrace& trace);   // t,theta,re_L,im_L
void write_csv(std::ostream& os, const EdgeCurve& curve);        // T_over_NJ,theta1
void write_csv(std::ostream& os, std::span<const FreeEnergyResult> rows);  // beta,logZ,F,F_per_spin,source
void write_csv(std::ostream& os, const MeasuredTrace& trace);    // t,observed,true_re_L

}  // namespace leeyang
