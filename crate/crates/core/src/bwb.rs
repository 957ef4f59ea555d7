//! Borel–Weil–Bott on the Grassmannian `G(k,n)`.
//!
//! For dominant `w' ∈ Z^k`, `w'' ∈ Z^{n-k}` put `w = (w', w'')`. If `w + ρ`
//! has a repeated entry, every cohomology group of `Σ_{w'}U* ⊗ Σ_{w''}Q*`
//! vanishes. Otherwise only `H^ℓ` survives, where `ℓ` is the number of
//! inversions of `w + ρ`, and it is the GL(n) representation with highest
//! weight `sort(w + ρ) - ρ`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::charring::CharElement;
use crate::error::{Error, Result};
use crate::weights::{rho, sort_regular, weyl_dimension, IntegerWeight, SortOutcome};

/// `Σ_{sub}U* ⊗ Σ_{quot}Q*` on `G(k,n)`, each factor a (possibly reducible)
/// character in the dual convention.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomogeneousBundle {
    k: usize,
    n: usize,
    sub_part: CharElement,
    quot_part: CharElement,
}

impl HomogeneousBundle {
    pub fn new(k: usize, n: usize, sub_part: CharElement, quot_part: CharElement) -> Result<Self> {
        if k == 0 || k >= n {
            return Err(Error::InvalidGrassmannian { k, n });
        }
        if sub_part.rank() != k {
            return Err(Error::RankMismatch(sub_part.rank(), k));
        }
        if quot_part.rank() != n - k {
            return Err(Error::RankMismatch(quot_part.rank(), n - k));
        }
        Ok(HomogeneousBundle {
            k,
            n,
            sub_part,
            quot_part,
        })
    }

    /// The structure sheaf.
    pub fn trivial(k: usize, n: usize) -> Result<Self> {
        if k == 0 || k >= n {
            return Err(Error::InvalidGrassmannian { k, n });
        }
        Self::new(k, n, CharElement::trivial(k), CharElement::trivial(n - k))
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sub_part(&self) -> &CharElement {
        &self.sub_part
    }

    pub fn quot_part(&self) -> &CharElement {
        &self.quot_part
    }

    /// Twists by `O(tH)`, `H = det U*`, applied on the sub factor.
    pub fn twist(&self, t: i64) -> HomogeneousBundle {
        HomogeneousBundle {
            sub_part: self.sub_part.twist_by_determinant(t),
            ..self.clone()
        }
    }

    pub fn dual(&self) -> HomogeneousBundle {
        HomogeneousBundle {
            sub_part: self.sub_part.dual(),
            quot_part: self.quot_part.dual(),
            ..self.clone()
        }
    }

    pub fn tensor(&self, other: &HomogeneousBundle) -> Result<HomogeneousBundle> {
        if (self.k, self.n) != (other.k, other.n) {
            return Err(Error::GrassmannianMismatch(self.k, self.n, other.k, other.n));
        }
        Ok(HomogeneousBundle {
            k: self.k,
            n: self.n,
            sub_part: self.sub_part.multiply(&other.sub_part)?,
            quot_part: self.quot_part.multiply(&other.quot_part)?,
        })
    }

    /// Serre-dual partner `E^∨ ⊗ ω`, with `ω = O(-nH)`.
    pub fn serre_dual(&self) -> HomogeneousBundle {
        self.dual().twist(-(self.n as i64))
    }

    pub fn rank(&self) -> Result<i128> {
        Ok(self.sub_part.dimension()? * self.quot_part.dimension()?)
    }

    /// Irreducible summands `(w', w'', multiplicity)` in a fixed order:
    /// sub weight descending, then quot weight descending.
    pub fn summands(&self) -> Vec<(IntegerWeight, IntegerWeight, i64)> {
        let mut out = Vec::new();
        for (a, ma) in self.sub_part.terms().collect::<Vec<_>>().into_iter().rev() {
            for (b, mb) in self.quot_part.terms().collect::<Vec<_>>().into_iter().rev() {
                out.push((a.clone(), b.clone(), ma * mb));
            }
        }
        out
    }
}

/// Outcome for one irreducible summand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BwbEntry {
    Vanishes {
        shifted: IntegerWeight,
    },
    Nonvanishing {
        shifted: IntegerWeight,
        degree: usize,
        weight: IntegerWeight,
        dimension: u128,
    },
}

impl BwbEntry {
    /// `w + ρ` before sorting.
    pub fn shifted(&self) -> &IntegerWeight {
        match self {
            BwbEntry::Vanishes { shifted } | BwbEntry::Nonvanishing { shifted, .. } => shifted,
        }
    }

    pub fn degree(&self) -> Option<usize> {
        match self {
            BwbEntry::Vanishes { .. } => None,
            BwbEntry::Nonvanishing { degree, .. } => Some(*degree),
        }
    }

    pub fn dimension(&self) -> u128 {
        match self {
            BwbEntry::Vanishes { .. } => 0,
            BwbEntry::Nonvanishing { dimension, .. } => *dimension,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BwbSummand {
    pub sub_weight: IntegerWeight,
    pub quot_weight: IntegerWeight,
    pub multiplicity: i64,
    pub entry: BwbEntry,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BwbResult {
    pub k: usize,
    pub n: usize,
    pub summands: Vec<BwbSummand>,
    /// Cohomological degree → total dimension (multiplicities applied).
    pub totals: BTreeMap<usize, i128>,
}

impl BwbResult {
    pub fn vanishes(&self) -> bool {
        self.totals.values().all(|&d| d == 0)
    }

    pub fn dimension_in(&self, degree: usize) -> i128 {
        self.totals.get(&degree).copied().unwrap_or(0)
    }

    pub fn euler_characteristic(&self) -> i128 {
        self.totals
            .iter()
            .map(|(&d, &v)| if d % 2 == 0 { v } else { -v })
            .sum()
    }
}

/// Cohomology of the irreducible bundle `Σ_{w'}U* ⊗ Σ_{w''}Q*` on `G(k,n)`.
pub fn bwb_irreducible(
    k: usize,
    n: usize,
    w_prime: &IntegerWeight,
    w_doubleprime: &IntegerWeight,
) -> Result<BwbEntry> {
    if k == 0 || k >= n {
        return Err(Error::InvalidGrassmannian { k, n });
    }
    if w_prime.len() != k {
        return Err(Error::LengthMismatch {
            expected: k,
            actual: w_prime.len(),
        });
    }
    if w_doubleprime.len() != n - k {
        return Err(Error::LengthMismatch {
            expected: n - k,
            actual: w_doubleprime.len(),
        });
    }
    for w in [w_prime, w_doubleprime] {
        if !w.is_dominant() {
            return Err(Error::NotDominant(w.entries().to_vec()));
        }
    }
    let rho = rho(n);
    let shifted = w_prime.concat(w_doubleprime).add(&rho);
    Ok(match sort_regular(&shifted) {
        SortOutcome::NotRegular => BwbEntry::Vanishes { shifted },
        SortOutcome::Regular { sorted, length } => {
            let weight = sorted.sub(&rho);
            let dimension = weyl_dimension(&weight)?;
            BwbEntry::Nonvanishing {
                shifted,
                degree: length,
                weight,
                dimension,
            }
        }
    })
}

/// Decomposes the bundle into irreducibles and applies BWB to each summand.
/// Summands are evaluated in parallel; the result order is fixed.
pub fn bwb_bundle(b: &HomogeneousBundle) -> Result<BwbResult> {
    let summands: Vec<BwbSummand> = b
        .summands()
        .into_par_iter()
        .map(|(sub_weight, quot_weight, multiplicity)| {
            let entry = bwb_irreducible(b.k, b.n, &sub_weight, &quot_weight)?;
            Ok(BwbSummand {
                sub_weight,
                quot_weight,
                multiplicity,
                entry,
            })
        })
        .collect::<Result<_>>()?;
    let mut totals = BTreeMap::new();
    for s in &summands {
        if let Some(d) = s.entry.degree() {
            *totals.entry(d).or_insert(0) += s.multiplicity as i128 * s.entry.dimension() as i128;
        }
    }
    totals.retain(|_, v| *v != 0);
    Ok(BwbResult {
        k: b.k,
        n: b.n,
        summands,
        totals,
    })
}
