//! The Koszul families `∧^p Sym³U ⊗ E(tH)` on `G(2,6)` for `E = Sym²U` and
//! `E = Q*`, and the weight tables that go with them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bwb::{bwb_bundle, BwbEntry, BwbResult, HomogeneousBundle};
use crate::charring::CharElement;
use crate::error::Result;
use crate::weights::IntegerWeight;

pub const K: usize = 2;
pub const N: usize = 6;
/// Rank of `Sym³U`, the length of the Koszul complex.
pub const KOSZUL_LENGTH: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `∧^p Sym³U ⊗ (Sym²U)(tH)`; the twist sits on the U* factor.
    Sym2U,
    /// `∧^p Sym³U ⊗ Q*(tH)`; the twist sits on the Q* factor.
    QDual,
}

impl Family {
    pub const ALL: [Family; 2] = [Family::Sym2U, Family::QDual];

    pub fn name(&self) -> &'static str {
        match self {
            Family::Sym2U => "Sym2U",
            Family::QDual => "Q*",
        }
    }

    /// The twisted base bundle `E(tH)`.
    pub fn base(&self, t: i64) -> HomogeneousBundle {
        match self {
            Family::Sym2U => {
                let sym2u = tautological_sub().symmetric_power(2).unwrap();
                HomogeneousBundle::new(K, N, sym2u.twist_by_determinant(t), CharElement::trivial(N - K))
                    .unwrap()
            }
            Family::QDual => {
                // H = det Q, so O(tH) is a shift by -t on the Q* weights.
                let q_star = CharElement::standard(N - K).twist_by_determinant(-t);
                HomogeneousBundle::new(K, N, CharElement::trivial(K), q_star).unwrap()
            }
        }
    }

    /// `∧^p Sym³U ⊗ E(tH)`.
    pub fn bundle(&self, p: usize, t: i64) -> Result<HomogeneousBundle> {
        let koszul = koszul_term(p)?;
        let base = self.base(t);
        HomogeneousBundle::new(
            K,
            N,
            koszul.multiply(base.sub_part())?,
            base.quot_part().clone(),
        )
    }
}

/// U in the U*-convention, `Σ_{(0,-1)}U*`.
pub fn tautological_sub() -> CharElement {
    CharElement::standard(K).dual()
}

/// `∧^p Sym³U` as a U*-character.
pub fn koszul_term(p: usize) -> Result<CharElement> {
    tautological_sub().symmetric_power(3)?.exterior_power(p)
}

/// One row of a weight table: the irreducible summands of the p-th bundle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub p: usize,
    pub result: BwbResult,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofTable {
    pub family: Family,
    pub twist: i64,
    pub rows: Vec<TableRow>,
}

impl ProofTable {
    pub fn compute(family: Family, twist: i64) -> Result<Self> {
        let rows = (0..=KOSZUL_LENGTH)
            .map(|p| {
                Ok(TableRow {
                    p,
                    result: bwb_bundle(&family.bundle(p, twist)?)?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(ProofTable {
            family,
            twist,
            rows,
        })
    }

    /// Rows rendered as `p | w' | w+ρ | ℓ(w)`, with `-1` marking
    /// non-regular weights and `^⊕m` marking multiplicities.
    pub fn render_rows(&self) -> Vec<String> {
        self.rows.iter().map(render_row).collect()
    }
}

fn render_row(row: &TableRow) -> String {
    let mut wp = Vec::new();
    let mut shifted = Vec::new();
    let mut lengths = Vec::new();
    for s in &row.result.summands {
        let suffix = if s.multiplicity == 1 {
            String::new()
        } else {
            format!("^⊕{}", s.multiplicity)
        };
        wp.push(format!("{}{}", s.sub_weight, suffix));
        shifted.push(format!("{}{}", s.entry.shifted(), suffix));
        let l = match &s.entry {
            BwbEntry::Vanishes { .. } => "-1".to_string(),
            BwbEntry::Nonvanishing { degree, .. } => degree.to_string(),
        };
        for _ in 0..s.multiplicity.max(1) {
            lengths.push(l.clone());
        }
    }
    format!(
        "{} | {} | {} | {}",
        row.p,
        wp.join("⊕"),
        shifted.join("⊕"),
        lengths.join("⊕")
    )
}

impl fmt::Display for ProofTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "∧^p Sym3U ⊗ {}({}H) on G(2,6)",
            self.family.name(),
            self.twist
        )?;
        writeln!(f, "p | w' | w+ρ | ℓ(w)")?;
        for line in self.render_rows() {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// The dominant weights of all nonzero groups, for reporting.
pub fn nonzero_groups(table: &ProofTable) -> Vec<(usize, usize, IntegerWeight, u128)> {
    let mut out = Vec::new();
    for row in &table.rows {
        for s in &row.result.summands {
            if let BwbEntry::Nonvanishing {
                degree,
                weight,
                dimension,
                ..
            } = &s.entry
            {
                out.push((row.p, *degree, weight.clone(), *dimension));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    #[test]
    fn bases_match_tables() {
        let b = Family::Sym2U.base(1);
        assert_eq!(b.sub_part().to_string(), "(1,-1)");
        let b = Family::QDual.base(1);
        assert_eq!(b.quot_part().to_string(), "(0,-1,-1,-1)");
        let b = Family::QDual.base(-2);
        assert_eq!(b.quot_part().to_string(), "(3,2,2,2)");
    }

    #[test]
    fn family_totals() {
        let totals = |f: Family, p: usize, t: i64| bwb_bundle(&f.bundle(p, t).unwrap()).unwrap().totals;
        assert_eq!(totals(Family::Sym2U, 2, 1), BTreeMap::from([(4, 36)]));
        assert_eq!(totals(Family::Sym2U, 3, -2), BTreeMap::from([(8, 126)]));
        assert_eq!(totals(Family::Sym2U, 4, -2), BTreeMap::from([(8, 1134)]));
        assert_eq!(totals(Family::QDual, 4, -2), BTreeMap::from([(8, 560)]));
        assert!(totals(Family::Sym2U, 1, 1).is_empty());
    }

    #[test]
    fn koszul_top_is_determinant_power() {
        assert_eq!(koszul_term(4).unwrap().to_string(), "(-6,-6)");
        assert!(koszul_term(5).unwrap().is_zero());
    }
}
