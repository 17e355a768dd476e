#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "sgp/analysis.hpp"
#include "sgp/catalog.hpp"
#include "sgp/projector.hpp"
#include "sgp/solver.hpp"
#include "sgp/yy.hpp"

namespace sgp::cli {

using nlohmann::json;

json to_json(const Vector& v);
json to_json(const ProjectorEvaluation& ev);
json to_json(const analysis::PropertyReport& report);
json to_json(const catalog::CatalogEntry& entry);

/// Header k,x_0..x_{n-1},f,step_norm[,dist_c]; numbers with 17 significant digits.
void write_trace_csv(const solver::IterationTrace& trace, std::ostream& os);
/// Header x,region,q,y,Zx,G_y_x; q is empty inside D.
void write_reconstruction_csv(const yy::ReconstructedY& recon, std::ostream& os);

std::string format_number(double v);

}  // namespace sgp::cli
