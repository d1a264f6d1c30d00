#include "csearch/market.hpp"

#include <cmath>
#include <stdexcept>

#include "csearch/errors.hpp"

namespace csearch::market {

namespace {

bool is_probability(double x) { return std::isfinite(x) && x >= 0.0 && x <= 1.0; }

} // namespace

void MarketParams::validate() const {
    if (m_total < 1) throw std::invalid_argument("m_total must be >= 1");
    if (!is_probability(beta_low)) throw std::invalid_argument("beta_low must lie in [0, 1]");
    if (!is_probability(beta_high)) throw std::invalid_argument("beta_high must lie in [0, 1]");
    if (!std::isfinite(delta) || delta < 0.0 || delta >= 1.0)
        throw std::invalid_argument("delta must lie in [0, 1)");
    if (!std::isfinite(cost) || cost < 0.0) throw std::invalid_argument("cost must be >= 0");
    if (!std::isfinite(s_low) || !std::isfinite(s_high))
        throw std::invalid_argument("surpluses must be finite");
    if (s_low < s_high) throw std::invalid_argument("s_low must be >= s_high");
}

void TransitionMatrix::validate() const {
    for (const auto& row : p) {
        double sum = 0.0;
        for (double v : row) {
            if (!is_probability(v)) throw std::invalid_argument("matrix entries must lie in [0, 1]");
            sum += v;
        }
        if (std::abs(sum - 1.0) > 1e-12)
            throw std::invalid_argument("matrix rows must sum to 1");
    }
}

double reward(StoreState state, const MarketParams& params) {
    return state == StoreState::Low ? params.s_low : params.s_high;
}

double surplus_linear_demand(double intercept, double slope, double price) {
    if (!(intercept > 0.0)) throw std::invalid_argument("demand intercept must be positive");
    if (!(slope > 0.0)) throw std::invalid_argument("demand slope must be positive");
    if (!(price >= 0.0)) throw std::invalid_argument("price must be >= 0");
    if (price >= intercept / slope) return 0.0;
    const double q = intercept - slope * price;
    return q * q / (2.0 * slope);
}

TransitionMatrix transition_matrix(const MarketParams& params) {
    params.validate();
    TransitionMatrix m;
    m.p[0] = {params.beta_low, 1.0 - params.beta_low};
    m.p[1] = {1.0 - params.beta_high, params.beta_high};
    return m;
}

Distribution steady_state(const TransitionMatrix& matrix) {
    matrix.validate();
    const double beta_low = matrix.p[0][0];
    const double beta_high = matrix.p[1][1];
    if (beta_low == 1.0 && beta_high == 1.0)
        throw std::domain_error("frozen chain has no unique stationary distribution");
    const double denom = 2.0 - beta_low - beta_high;
    return {(1.0 - beta_high) / denom, (1.0 - beta_low) / denom};
}

double reservation_surplus(const MarketParams& params) {
    params.validate();
    if (!params.symmetric())
        throw std::domain_error("reservation surplus is defined for beta_low == beta_high only");
    const double beta = params.beta_low;
    return params.s_low + (4.0 * beta * params.delta - 2.0 * params.delta - 2.0) * params.cost;
}

EquilibriumReport solve_fishman_system(const MarketParams& params, double s_reservation) {
    params.validate();
    if (!params.symmetric())
        throw std::domain_error("consumer value system is defined for beta_low == beta_high only");
    if (!std::isfinite(s_reservation))
        throw std::invalid_argument("s_reservation must be finite");

    const long double beta = params.beta_low;
    const long double delta = params.delta;
    const long double a = 1.0L - delta * beta;
    const long double b = delta * (1.0L - beta);
    // det = (1 - delta)(1 + delta - 2 delta beta) > 0 for delta < 1.
    const long double det = a * a - b * b;

    const long double s_r = s_reservation;
    const long double s_l = params.s_low;
    const long double v_high = (a * s_r + b * s_l) / det;
    const long double v_low = (a * s_l + b * s_r) / det;

    // Indifference condition V_H = -c + (V_H + V_L)/2, i.e. V_L - V_H = 2c.
    const long double residual = params.cost - (v_low - v_high) / 2.0L;
    if (std::abs(static_cast<double>(residual)) > 1e-9)
        throw InconsistencyError(
            "s_reservation is inconsistent with the indifference condition",
            static_cast<double>(residual));

    EquilibriumReport report;
    report.s_reservation = s_reservation;
    report.v_low = static_cast<double>(v_low);
    report.v_high = static_cast<double>(v_high);
    return report;
}

std::vector<StoreState> transition_step(const std::vector<StoreState>& states,
                                        const TransitionMatrix& matrix,
                                        rng::Stream& stream) {
    std::vector<StoreState> next(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
        const double to_low = matrix.at(states[i], StoreState::Low);
        next[i] = stream.bernoulli(to_low) ? StoreState::Low : StoreState::High;
    }
    return next;
}

} // namespace csearch::market
