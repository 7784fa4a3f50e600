// Copyright 2026 The idp authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace idp
{

/** @brief Base exception. Carries a stable machine-readable code next to the
 * human-readable message; the CLI serializes the code into JSON error objects.
 */
class Error : public std::runtime_error
{
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(msg), code_{std::move(code)}
    {
    }

    /** Stable identifier, e.g. "NonManifold". */
    [[nodiscard]] auto code() const noexcept -> const std::string& { return code_; }

private:
    std::string code_;
};

/** @brief Malformed or semantically invalid input document. */
struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error("ParseError", msg) {}
};

/** @brief A side appears in more than one gluing pair. */
struct DuplicateGluingError : Error {
    explicit DuplicateGluingError(const std::string& msg) : Error("DuplicateGluing", msg) {}
};

/** @brief A gluing references a side that does not exist. */
struct DanglingSideError : Error {
    explicit DanglingSideError(const std::string& msg) : Error("DanglingSide", msg) {}
};

/** @brief Local surface structure violated (e.g. a side glued to itself). */
struct NonManifoldError : Error {
    explicit NonManifoldError(const std::string& msg) : Error("NonManifold", msg) {}
};

/** @brief Numeric argument outside the admissible domain. */
struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error("DomainError", msg) {}
};

/** @brief Two independent evaluation routes disagree beyond tolerance. */
struct CrossCheckFailure : Error {
    CrossCheckFailure(const std::string& msg, double primary, double check)
        : Error("CrossCheckFailure", msg), primary{primary}, check{check}
    {
    }

    double primary; ///< value from the production route
    double check;   ///< value from the independent route
};

/** @brief A starting angle vector is not a strict angle system. */
struct NotInNError : Error {
    explicit NotInNError(const std::string& msg) : Error("NotInN", msg) {}
};

/** @brief An operation requiring a uniform structure received one whose
 * cross-edge length residual is above tolerance. */
struct NotConvergedError : Error {
    NotConvergedError(const std::string& msg, double residual)
        : Error("NotConverged", msg), residual{residual}
    {
    }

    double residual; ///< offending max edge-length mismatch
};

/** @brief Solver hit the iteration cap. Carries the final residual and the
 * best iterate so callers can inspect near-degenerate behavior. */
struct MaxIterExceeded : Error {
    MaxIterExceeded(const std::string& msg, double residual, std::vector<double> x)
        : Error("MaxIterExceeded", msg), residual{residual}, x{std::move(x)}
    {
    }

    double residual;       ///< final max edge-length mismatch
    std::vector<double> x; ///< iterate at the cap
};

/** @brief Pattern fails a feasibility condition; carries the certificate. */
struct InfeasiblePattern : Error {
    InfeasiblePattern(const std::string& msg, std::string which, std::vector<int> certificate,
                      double slack)
        : Error("InfeasiblePattern", msg), which{std::move(which)},
          certificate{std::move(certificate)}, slack{slack}
    {
    }

    std::string which;            ///< violated condition name
    std::vector<int> certificate; ///< offending vertex/triangle set
    double slack;                 ///< violated margin (<= 0 when meaningful)
};

/** @brief Interior-point search failed to reach a strictly feasible system. */
struct Phase2Failure : Error {
    Phase2Failure(const std::string& msg, double best_slack)
        : Error("Phase2Failure", msg), best_slack{best_slack}
    {
    }

    double best_slack; ///< best min-slack reached
};

/** @brief Three placed points are collinear; no circumscribing circle. */
struct CircumcircleDegenerate : Error {
    explicit CircumcircleDegenerate(const std::string& msg)
        : Error("CircumcircleDegenerate", msg)
    {
    }
};

/** @brief Instance too large for an exhaustive check. */
struct TooLargeError : Error {
    explicit TooLargeError(const std::string& msg) : Error("TooLarge", msg) {}
};

} // namespace idp
