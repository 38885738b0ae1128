//! First-order radio energy model.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadioParams {
    /// Electronics energy, J/bit.
    pub e_elec: f64,
    /// Free-space amplifier energy, J/bit/m².
    pub eps_fs: f64,
}

impl Default for RadioParams {
    fn default() -> Self {
        Self { e_elec: 50e-9, eps_fs: 100e-12 }
    }
}

/// Energy to transmit `bits` over `distance` meters with d² path loss.
pub fn tx_cost(bits: u64, distance: f64, params: &RadioParams) -> f64 {
    let bits = bits as f64;
    params.e_elec * bits + params.eps_fs * bits * distance * distance
}

pub fn rx_cost(bits: u64, params: &RadioParams) -> f64 {
    params.e_elec * bits as f64
}

/// Battery of a single sensor. Energy never goes negative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Battery {
    energy: f64,
    threshold: f64,
}

impl Battery {
    pub fn new(energy: f64, threshold: f64) -> Self {
        Self { energy: energy.max(0.0), threshold }
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    /// A node may transmit iff its energy is at least the threshold.
    pub fn can_transmit(&self) -> bool {
        self.energy >= self.threshold
    }

    pub fn debit(&mut self, amount: f64) {
        debug_assert!(amount >= 0.0);
        self.energy = (self.energy - amount).max(0.0);
    }
}
