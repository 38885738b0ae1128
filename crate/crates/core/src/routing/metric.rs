use crate::config::CongestionPolarity;

use super::RoutingError;

/// Blend of trust and congestion for the link to a candidate.
pub fn trust_congestion_metric(trust: f64, congestion: f64, alpha: f64, polarity: CongestionPolarity) -> f64 {
    let c = match polarity {
        CongestionPolarity::Inverted => 1.0 - congestion,
        CongestionPolarity::Literal => congestion,
    };
    alpha * c + (1.0 - alpha) * trust
}

/// Per-candidate inputs of the transition rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CandidateWeight {
    pub tcm: f64,
    pub distance: f64,
    pub pheromone: f64,
}

impl CandidateWeight {
    pub fn new(tcm: f64, distance: f64, pheromone: f64) -> Self {
        Self { tcm, distance, pheromone }
    }

    /// Unnormalized attractiveness `tcm^b1 * (1/d)^b2 * tau^b3`.
    pub fn raw(&self, betas: [f64; 3]) -> f64 {
        let [b1, b2, b3] = betas;
        let visibility = 1.0 / self.distance.max(f64::MIN_POSITIVE);
        self.tcm.powf(b1) * visibility.powf(b2) * self.pheromone.powf(b3)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Transition {
    pub probabilities: Vec<f64>,
    /// Every raw weight was zero and the uniform fallback was used.
    pub degenerate: bool,
}

/// Normalized transition probabilities over a candidate set.
pub fn transition_probabilities(candidates: &[CandidateWeight], betas: [f64; 3]) -> Result<Transition, RoutingError> {
    if candidates.is_empty() {
        return Err(RoutingError::NoValidCandidates);
    }
    let raw: Vec<f64> = candidates.iter().map(|c| c.raw(betas)).collect();
    let total: f64 = raw.iter().sum();
    if !(total > 0.0 && total.is_finite()) {
        let u = 1.0 / candidates.len() as f64;
        return Ok(Transition { probabilities: vec![u; candidates.len()], degenerate: true });
    }
    Ok(Transition { probabilities: raw.iter().map(|w| w / total).collect(), degenerate: false })
}
