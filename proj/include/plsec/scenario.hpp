#pragma once

#include <stdexcept>

#include "plsec/channel.hpp"
#include "plsec/strategies.hpp"

namespace plsec {

/// Full parameterization of one operating point.
struct Scenario {
    FadingParams params;
    CorrelationCoeffs corr;
    RatePair pair;
    double lambda = 0.75;  // relay share of the cooperative-phase power

    void validate() const {
        params.validate();
        corr.validate();
        pair.validate();
        if (!(lambda > 0.0 && lambda <= 1.0))
            throw std::invalid_argument("Scenario: lambda must lie in (0,1]");
    }

    Scenario with_eta(double eta_linear) const {
        Scenario s = *this;
        s.params.eta = eta_linear;
        return s;
    }

    Scenario with_lambda(double l) const {
        Scenario s = *this;
        s.lambda = l;
        return s;
    }
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

}  // namespace plsec
