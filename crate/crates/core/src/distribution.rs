//! Finite probability mass functions over non-negative integer keys.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on the total mass of a valid distribution.
pub const MASS_TOLERANCE: f64 = 1e-9;

/// A probability mass function over non-negative integer keys (degrees).
///
/// Keys with zero mass are never stored.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BTreeMap<u64, f64>", into = "BTreeMap<u64, f64>")]
pub struct Distribution {
    mass: BTreeMap<u64, f64>,
}

impl Distribution {
    /// Builds a distribution from non-negative weights, normalizing them to sum to one.
    pub fn from_weights<I>(weights: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, f64)>,
    {
        let mut mass: BTreeMap<u64, f64> = BTreeMap::new();
        for (k, w) in weights {
            if !w.is_finite() || w < 0.0 {
                return Err(Error::InvalidDistribution(format!("weight {w} at key {k}")));
            }
            if w > 0.0 {
                *mass.entry(k).or_insert(0.0) += w;
            }
        }
        let total: f64 = mass.values().sum();
        if total <= 0.0 {
            return Err(Error::InvalidDistribution("total weight is zero".into()));
        }
        for m in mass.values_mut() {
            *m /= total;
        }
        Ok(Self { mass })
    }

    /// Builds a distribution from occurrence counts.
    pub fn from_counts<I>(counts: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, u64)>,
    {
        Self::from_weights(counts.into_iter().map(|(k, c)| (k, c as f64)))
    }

    /// Empirical distribution of a list of keys.
    pub fn from_samples<I>(samples: I) -> Result<Self>
    where
        I: IntoIterator<Item = u64>,
    {
        let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
        for k in samples {
            *counts.entry(k).or_insert(0) += 1;
        }
        Self::from_counts(counts)
    }

    /// Wraps an explicit mass map, checking that it is a probability distribution.
    pub fn from_masses(mass: BTreeMap<u64, f64>) -> Result<Self> {
        let mut total = 0.0;
        for (&k, &m) in &mass {
            if !m.is_finite() || !(0.0..=1.0).contains(&m) {
                return Err(Error::InvalidDistribution(format!("mass {m} at key {k}")));
            }
            total += m;
        }
        if (total - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::InvalidDistribution(format!("masses sum to {total}")));
        }
        let mass = mass.into_iter().filter(|&(_, m)| m > 0.0).collect();
        Ok(Self { mass })
    }

    pub fn mass(&self, k: u64) -> f64 {
        self.mass.get(&k).copied().unwrap_or(0.0)
    }

    pub fn masses(&self) -> &BTreeMap<u64, f64> {
        &self.mass
    }

    pub fn support(&self) -> impl Iterator<Item = u64> + '_ {
        self.mass.keys().copied()
    }

    pub fn support_max(&self) -> u64 {
        self.mass.keys().next_back().copied().unwrap_or(0)
    }

    pub fn total_mass(&self) -> f64 {
        self.mass.values().sum()
    }

    /// P(X <= k).
    pub fn cdf(&self, k: u64) -> f64 {
        self.mass.range(..=k).map(|(_, m)| m).sum()
    }

    pub fn mean(&self) -> f64 {
        self.mass.iter().map(|(&k, &m)| k as f64 * m).sum()
    }

    /// `(k, mass, cumulative)` rows in increasing key order.
    pub fn cdf_rows(&self) -> Vec<(u64, f64, f64)> {
        let mut cum = 0.0;
        self.mass
            .iter()
            .map(|(&k, &m)| {
                cum += m;
                (k, m, cum)
            })
            .collect()
    }

    /// CSV text with a `k,mass,cumulative` header.
    pub fn to_cdf_csv(&self) -> String {
        let mut out = String::from("k,mass,cumulative\n");
        for (k, m, c) in self.cdf_rows() {
            out.push_str(&format!("{k},{m},{c}\n"));
        }
        out
    }
}

impl TryFrom<BTreeMap<u64, f64>> for Distribution {
    type Error = Error;

    fn try_from(mass: BTreeMap<u64, f64>) -> Result<Self> {
        Self::from_masses(mass)
    }
}

impl From<Distribution> for BTreeMap<u64, f64> {
    fn from(d: Distribution) -> Self {
        d.mass
    }
}
