#pragma once

/*
 * Command-line surface tying the library together. One verb per invocation:
 *
 *   constants    explicit envelope constants for a tail index theta
 *   norm         closed-form / MGF-inverted Orlicz norms for standard laws
 *   estimate     data-driven norm estimators (moment-ratio, empirical MGF)
 *   bound        tail curves and deviation radii on a t grid
 *   ci           data-driven confidence interval for a mean
 *   robust-mean  damped robust mean with its tuning rule and radius
 *   validate     Monte Carlo tail-domination experiments
 *   baiyin       extreme-singular-value interval experiment
 *   nbr-sim      negative-binomial regression sandwich experiment
 *
 * Output is single-line JSON on stdout (all floats at 10 significant digits so
 * runs diff cleanly); `--csv` switches tabular sections where offered. Exit
 * codes: 0 success, 2 input error, 3 numeric failure; failures emit a
 * machine-readable JSON record on stderr.
 */

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace subw::cli {

// Entry point used by main() and the tests. `args` excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Single-line JSON with every float rendered at 10 significant digits.
std::string render_json(const nlohmann::ordered_json& j);

// Real-number literals, accepting ratio forms such as "2/e" or "1/20".
double parse_real(const std::string& text);

}  // namespace subw::cli
