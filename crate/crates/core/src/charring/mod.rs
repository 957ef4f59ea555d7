//! The character ring of GL(k) in the Schur-functor basis.
//!
//! Weights are stored in the U*-convention used by the Grassmannian tables:
//! `Σ_w U*` with `w` non-increasing and possibly negative. The natural
//! representation of U itself is therefore `(0,…,0,-1)`; use
//! [`CharElement::dual`] to pass between the two conventions.

mod lr;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weights::{weyl_dimension, IntegerWeight};

pub use lr::lr_product;

/// A formal integer combination of irreducible GL(k) characters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CharElement {
    rank: usize,
    terms: BTreeMap<IntegerWeight, i64>,
}

/// A Laurent polynomial in `k` character variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialCharacter {
    rank: usize,
    terms: BTreeMap<Vec<i64>, i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharTerm {
    pub weight: IntegerWeight,
    pub mult: i64,
}

impl CharElement {
    pub fn zero(rank: usize) -> Self {
        assert!(rank >= 1, "rank must be positive");
        CharElement {
            rank,
            terms: BTreeMap::new(),
        }
    }

    /// The trivial one-dimensional character `Σ_{(0,…,0)}`.
    pub fn trivial(rank: usize) -> Self {
        Self::irreducible(IntegerWeight::zero(rank)).expect("zero weight is dominant")
    }

    pub fn irreducible(weight: IntegerWeight) -> Result<Self> {
        Self::from_terms(weight.len(), [(weight, 1)])
    }

    /// The defining representation, `Σ_{(1,0,…,0)}`.
    pub fn standard(rank: usize) -> Self {
        let mut w = vec![0; rank];
        w[0] = 1;
        Self::irreducible(IntegerWeight::new(w)).unwrap()
    }

    /// The determinant to the power `t`.
    pub fn determinant(rank: usize, t: i64) -> Self {
        Self::irreducible(IntegerWeight::constant(rank, t)).unwrap()
    }

    pub fn from_terms(
        rank: usize,
        terms: impl IntoIterator<Item = (IntegerWeight, i64)>,
    ) -> Result<Self> {
        let mut out = CharElement::zero(rank);
        for (w, m) in terms {
            if w.len() != rank {
                return Err(Error::LengthMismatch {
                    expected: rank,
                    actual: w.len(),
                });
            }
            if !w.is_dominant() {
                return Err(Error::NotDominant(w.into_vec()));
            }
            out.add_term(w, m);
        }
        Ok(out)
    }

    fn add_term(&mut self, w: IntegerWeight, m: i64) {
        if m == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += m;
                if *o.get() == 0 {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(m);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IntegerWeight, i64)> {
        self.terms.iter().map(|(w, &m)| (w, m))
    }

    pub fn multiplicity(&self, w: &IntegerWeight) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_genuine(&self) -> bool {
        self.terms.values().all(|&m| m > 0)
    }

    pub fn is_trivial(&self) -> bool {
        *self == CharElement::trivial(self.rank)
    }

    /// Dimension of the (virtual) representation.
    pub fn dimension(&self) -> Result<i128> {
        let mut d = 0i128;
        for (w, m) in &self.terms {
            d += *m as i128 * weyl_dimension(w)? as i128;
        }
        Ok(d)
    }

    pub fn add(&self, other: &CharElement) -> Result<CharElement> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (w, &m) in &other.terms {
            out.add_term(w.clone(), m);
        }
        Ok(out)
    }

    pub fn scale(&self, c: i64) -> CharElement {
        let mut out = CharElement::zero(self.rank);
        for (w, &m) in &self.terms {
            out.add_term(w.clone(), m * c);
        }
        out
    }

    fn check_rank(&self, other: &CharElement) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch(self.rank, other.rank));
        }
        Ok(())
    }

    /// Every weight shifted by `(t,…,t)`.
    pub fn twist_by_determinant(&self, t: i64) -> CharElement {
        CharElement {
            rank: self.rank,
            terms: self.terms.iter().map(|(w, &m)| (w.shift(t), m)).collect(),
        }
    }

    /// The dual character: each highest weight is negated and reversed.
    pub fn dual(&self) -> CharElement {
        CharElement {
            rank: self.rank,
            terms: self.terms.iter().map(|(w, &m)| (w.dual(), m)).collect(),
        }
    }

    /// Littlewood–Richardson product, via the tableau kernel.
    pub fn multiply(&self, other: &CharElement) -> Result<CharElement> {
        self.check_rank(other)?;
        let k = self.rank;
        let mut out = CharElement::zero(k);
        for (a, &ma) in &self.terms {
            let sa = *a.entries().last().unwrap();
            let pa: Vec<u32> = a.entries().iter().map(|&x| (x - sa) as u32).collect();
            for (b, &mb) in &other.terms {
                let sb = *b.entries().last().unwrap();
                let pb: Vec<u32> = b.entries().iter().map(|&x| (x - sb) as u32).collect();
                for (nu, c) in lr_product(&pa, &pb, k, None) {
                    let w: Vec<i64> = (0..k)
                        .map(|i| nu.get(i).copied().unwrap_or(0) as i64 + sa + sb)
                        .collect();
                    out.add_term(IntegerWeight::new(w), ma * mb * c as i64);
                }
            }
        }
        Ok(out)
    }

    /// Product computed by expanding both factors into monomials and peeling.
    /// Independent of the tableau kernel; used as its oracle.
    pub fn multiply_via_monomials(&self, other: &CharElement) -> Result<CharElement> {
        self.check_rank(other)?;
        let prod = schur_to_monomials(self).mul(&schur_to_monomials(other));
        monomials_to_schur(&prod)
    }

    /// `∧^p` of a genuine character.
    pub fn exterior_power(&self, p: usize) -> Result<CharElement> {
        let weights = self.weight_multiset()?;
        // Coefficient of t^p in prod_v (1 + t x^v).
        let mut layers: Vec<BTreeMap<Vec<i64>, i64>> = vec![BTreeMap::new(); p + 1];
        layers[0].insert(vec![0; self.rank], 1);
        for v in &weights {
            for d in (1..=p).rev() {
                let prev: Vec<(Vec<i64>, i64)> =
                    layers[d - 1].iter().map(|(e, &c)| (e.clone(), c)).collect();
                for (e, c) in prev {
                    let key: Vec<i64> = e.iter().zip(v).map(|(a, b)| a + b).collect();
                    *layers[d].entry(key).or_insert(0) += c;
                }
            }
        }
        let m = MonomialCharacter::from_map(self.rank, layers.swap_remove(p));
        monomials_to_schur(&m)
    }

    /// `Sym^m` of a genuine character.
    pub fn symmetric_power(&self, m: usize) -> Result<CharElement> {
        let weights = self.weight_multiset()?;
        // Coefficient of t^m in prod_v 1/(1 - t x^v).
        let mut layers: Vec<BTreeMap<Vec<i64>, i64>> = vec![BTreeMap::new(); m + 1];
        layers[0].insert(vec![0; self.rank], 1);
        for v in &weights {
            for d in 1..=m {
                let prev: Vec<(Vec<i64>, i64)> =
                    layers[d - 1].iter().map(|(e, &c)| (e.clone(), c)).collect();
                for (e, c) in prev {
                    let key: Vec<i64> = e.iter().zip(v).map(|(a, b)| a + b).collect();
                    *layers[d].entry(key).or_insert(0) += c;
                }
            }
        }
        let mc = MonomialCharacter::from_map(self.rank, layers.swap_remove(m));
        monomials_to_schur(&mc)
    }

    /// The weights of the representation, listed with multiplicity.
    fn weight_multiset(&self) -> Result<Vec<Vec<i64>>> {
        if let Some(&m) = self.terms.values().find(|&&m| m < 0) {
            return Err(Error::VirtualCharacter(m));
        }
        let mut out = Vec::new();
        for (e, &c) in &schur_to_monomials(self).terms {
            for _ in 0..c {
                out.push(e.clone());
            }
        }
        Ok(out)
    }

    pub fn to_terms(&self) -> Vec<CharTerm> {
        self.terms
            .iter()
            .map(|(w, &m)| CharTerm {
                weight: w.clone(),
                mult: m,
            })
            .collect()
    }
}

impl Serialize for CharElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_terms().serialize(s)
    }
}

impl<'de> Deserialize<'de> for CharElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<CharTerm>::deserialize(d)?;
        let rank = terms
            .first()
            .map(|t| t.weight.len())
            .ok_or_else(|| serde::de::Error::custom("empty character: rank unknown"))?;
        CharElement::from_terms(rank, terms.into_iter().map(|t| (t.weight, t.mult)))
            .map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for CharElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, &m)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " ⊕ ")?;
            }
            write!(f, "{w}")?;
            if m != 1 {
                write!(f, "^{m}")?;
            }
        }
        Ok(())
    }
}

impl MonomialCharacter {
    pub fn new(rank: usize, terms: impl IntoIterator<Item = (Vec<i64>, i64)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != rank {
                return Err(Error::LengthMismatch {
                    expected: rank,
                    actual: e.len(),
                });
            }
            *map.entry(e).or_insert(0) += c;
        }
        Ok(Self::from_map(rank, map))
    }

    fn from_map(rank: usize, mut terms: BTreeMap<Vec<i64>, i64>) -> Self {
        terms.retain(|_, c| *c != 0);
        MonomialCharacter { rank, terms }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, i64)> {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    pub fn coefficient(&self, exponent: &[i64]) -> i64 {
        self.terms.get(exponent).copied().unwrap_or(0)
    }

    pub fn mul(&self, other: &MonomialCharacter) -> MonomialCharacter {
        assert_eq!(self.rank, other.rank);
        let mut map = BTreeMap::new();
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                let e: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                *map.entry(e).or_insert(0) += ca * cb;
            }
        }
        Self::from_map(self.rank, map)
    }

    /// Value at `x_i = 1`.
    pub fn evaluate_at_one(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Checks invariance under all permutations of the variables.
    pub fn check_symmetric(&self) -> Result<()> {
        let mut orbits: BTreeMap<Vec<i64>, (i64, usize)> = BTreeMap::new();
        for (e, &c) in &self.terms {
            let mut key = e.clone();
            key.sort_unstable_by(|a, b| b.cmp(a));
            let entry = orbits.entry(key.clone()).or_insert((c, 0));
            if entry.0 != c {
                return Err(Error::NotSymmetric(format!(
                    "monomial {e:?} has coefficient {c}, its sorted form {key:?} has {}",
                    entry.0
                )));
            }
            entry.1 += 1;
        }
        for (key, (_, count)) in orbits {
            let expected = distinct_permutations(&key);
            if count != expected {
                return Err(Error::NotSymmetric(format!(
                    "orbit of {key:?} has {count} of {expected} monomials"
                )));
            }
        }
        Ok(())
    }
}

fn distinct_permutations(sorted: &[i64]) -> usize {
    let mut total: u128 = 1;
    let mut run = 0u128;
    for (i, x) in sorted.iter().enumerate() {
        if i > 0 && sorted[i - 1] == *x {
            run += 1;
        } else {
            run = 1;
        }
        total = total * (i as u128 + 1) / run;
    }
    total as usize
}

/// Expands each Schur term into monomials by enumerating Gelfand–Tsetlin
/// patterns with the given top row.
pub fn schur_to_monomials(x: &CharElement) -> MonomialCharacter {
    let mut map = BTreeMap::new();
    for (w, &m) in &x.terms {
        for (e, c) in schur_character(w.entries()) {
            *map.entry(e).or_insert(0) += c * m;
        }
    }
    MonomialCharacter::from_map(x.rank, map)
}

/// Character of a single irreducible: exponent vector → multiplicity.
fn schur_character(top: &[i64]) -> BTreeMap<Vec<i64>, i64> {
    let k = top.len();
    let mut out = BTreeMap::new();
    // Rows are indexed top to bottom; row of length j contributes
    // x_j^{sum(row_j) - sum(row_{j-1})}.
    fn rec(row: &[i64], exps: &mut Vec<i64>, out: &mut BTreeMap<Vec<i64>, i64>) {
        let j = row.len();
        if j == 0 {
            let mut e = exps.clone();
            e.reverse();
            *out.entry(e).or_insert(0) += 1;
            return;
        }
        let row_sum: i64 = row.iter().sum();
        if j == 1 {
            exps.push(row_sum);
            rec(&[], exps, out);
            exps.pop();
            return;
        }
        // next row b of length j-1 with row[i] >= b[i] >= row[i+1]
        let mut next = vec![0i64; j - 1];
        fn inner(
            row: &[i64],
            i: usize,
            next: &mut Vec<i64>,
            row_sum: i64,
            exps: &mut Vec<i64>,
            out: &mut BTreeMap<Vec<i64>, i64>,
        ) {
            if i == next.len() {
                let next_sum: i64 = next.iter().sum();
                exps.push(row_sum - next_sum);
                let snapshot = next.clone();
                rec(&snapshot, exps, out);
                exps.pop();
                return;
            }
            for b in row[i + 1]..=row[i] {
                next[i] = b;
                inner(row, i + 1, next, row_sum, exps, out);
            }
        }
        inner(row, 0, &mut next, row_sum, exps, out);
    }
    let mut exps = Vec::with_capacity(k);
    rec(top, &mut exps, &mut out);
    out
}

/// Recovers the Schur expansion of a symmetric Laurent polynomial by
/// repeatedly subtracting the character of the lexicographically largest
/// monomial, which is always dominant.
pub fn monomials_to_schur(m: &MonomialCharacter) -> Result<CharElement> {
    m.check_symmetric()?;
    let mut rest = m.terms.clone();
    let mut out = CharElement::zero(m.rank);
    while let Some((top, &c)) = rest.iter().next_back() {
        let top = top.clone();
        let w = IntegerWeight::new(top.clone());
        if !w.is_dominant() {
            return Err(Error::NotSymmetric(format!(
                "leading monomial {top:?} is not dominant"
            )));
        }
        for (e, d) in schur_character(&top) {
            let entry = rest.entry(e.clone()).or_insert(0);
            *entry -= c * d;
            if *entry == 0 {
                rest.remove(&e);
            }
        }
        out.add_term(w, c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i64]) -> IntegerWeight {
        IntegerWeight::new(v.to_vec())
    }

    fn ch(rank: usize, terms: &[(&[i64], i64)]) -> CharElement {
        CharElement::from_terms(rank, terms.iter().map(|(v, m)| (w(v), *m))).unwrap()
    }

    fn mono(rank: usize, terms: &[(&[i64], i64)]) -> MonomialCharacter {
        MonomialCharacter::new(rank, terms.iter().map(|(v, c)| (v.to_vec(), *c))).unwrap()
    }

    /// U in the U*-convention.
    fn u_rank2() -> CharElement {
        CharElement::standard(2).dual()
    }

    #[test]
    fn monomial_expansions() {
        assert_eq!(
            schur_to_monomials(&ch(2, &[(&[1, 0], 1)])),
            mono(2, &[(&[1, 0], 1), (&[0, 1], 1)])
        );
        assert_eq!(
            schur_to_monomials(&ch(2, &[(&[1, 1], 1)])),
            mono(2, &[(&[1, 1], 1)])
        );
        assert_eq!(
            schur_to_monomials(&ch(2, &[(&[3, 0], 1)])),
            mono(2, &[(&[3, 0], 1), (&[2, 1], 1), (&[1, 2], 1), (&[0, 3], 1)])
        );
    }

    #[test]
    fn peeling_examples() {
        let x = mono(2, &[(&[1, 0], 1), (&[0, 1], 1)]);
        assert_eq!(monomials_to_schur(&x).unwrap(), ch(2, &[(&[1, 0], 1)]));
        let sq = x.mul(&x);
        assert_eq!(
            monomials_to_schur(&sq).unwrap(),
            ch(2, &[(&[2, 0], 1), (&[1, 1], 1)])
        );
    }

    #[test]
    fn peeling_rejects_asymmetric() {
        let x = mono(2, &[(&[1, 0], 1)]);
        assert!(matches!(monomials_to_schur(&x), Err(Error::NotSymmetric(_))));
        let y = mono(2, &[(&[1, 0], 2), (&[0, 1], 1)]);
        assert!(monomials_to_schur(&y).is_err());
    }

    #[test]
    fn wedge2_sym3_by_pairwise_sums() {
        // Brute force: the six pairwise sums of the four weights of Sym^3.
        let weights = [[3, 0], [2, 1], [1, 2], [0, 3]];
        let mut pairs = Vec::new();
        for i in 0..4 {
            for j in i + 1..4 {
                pairs.push((vec![weights[i][0] + weights[j][0], weights[i][1] + weights[j][1]], 1));
            }
        }
        let oracle = monomials_to_schur(&MonomialCharacter::new(2, pairs).unwrap()).unwrap();
        assert_eq!(oracle, ch(2, &[(&[5, 1], 1), (&[3, 3], 1)]));
        let sym3 = CharElement::standard(2).symmetric_power(3).unwrap();
        assert_eq!(sym3.exterior_power(2).unwrap(), oracle);
    }

    #[test]
    fn multiply_examples() {
        let s1 = ch(2, &[(&[1, 0], 1)]);
        assert_eq!(s1.multiply(&s1).unwrap(), ch(2, &[(&[2, 0], 1), (&[1, 1], 1)]));
        let det = ch(2, &[(&[1, 1], 1)]);
        assert_eq!(det.multiply(&ch(2, &[(&[4, 2], 1)])).unwrap(), ch(2, &[(&[5, 3], 1)]));
        assert!(matches!(
            s1.multiply(&CharElement::trivial(3)),
            Err(Error::RankMismatch(2, 3))
        ));
    }

    #[test]
    fn first_proof_table_row_two() {
        let sym3u = u_rank2().symmetric_power(3).unwrap();
        let sym2u_h = u_rank2().symmetric_power(2).unwrap().twist_by_determinant(1);
        let prod = sym3u.exterior_power(2).unwrap().multiply(&sym2u_h).unwrap();
        assert_eq!(
            prod,
            ch(2, &[(&[0, -6], 1), (&[-1, -5], 1), (&[-2, -4], 2)])
        );
    }

    #[test]
    fn plethysm_examples() {
        let s1 = CharElement::standard(2);
        assert_eq!(s1.symmetric_power(2).unwrap(), ch(2, &[(&[2, 0], 1)]));
        assert_eq!(s1.symmetric_power(3).unwrap(), ch(2, &[(&[3, 0], 1)]));
        assert_eq!(s1.symmetric_power(0).unwrap(), CharElement::trivial(2));
        let sym3 = s1.symmetric_power(3).unwrap();
        assert_eq!(sym3.exterior_power(0).unwrap(), CharElement::trivial(2));
        assert_eq!(sym3.exterior_power(5).unwrap(), CharElement::zero(2));
        // ∧^4 Sym^3 U = det(U)^6, i.e. (-6,-6) on U*.
        let top = u_rank2().symmetric_power(3).unwrap().exterior_power(4).unwrap();
        assert_eq!(top, ch(2, &[(&[-6, -6], 1)]));
        assert_eq!(top.dimension().unwrap(), 1);
    }

    #[test]
    fn plethysm_rejects_virtual() {
        let v = ch(2, &[(&[1, 0], -1)]);
        assert!(matches!(v.exterior_power(2), Err(Error::VirtualCharacter(-1))));
        assert!(v.symmetric_power(2).is_err());
    }

    #[test]
    fn twist_examples() {
        let sym2u = u_rank2().symmetric_power(2).unwrap();
        assert_eq!(sym2u, ch(2, &[(&[0, -2], 1)]));
        assert_eq!(sym2u.twist_by_determinant(1), ch(2, &[(&[1, -1], 1)]));
        assert_eq!(sym2u.twist_by_determinant(0), sym2u);
        // Q*(-2H) where H = det Q: (1,0,0,0) + (2,2,2,2).
        let q_star = CharElement::standard(4);
        assert_eq!(q_star.twist_by_determinant(2), ch(4, &[(&[3, 2, 2, 2], 1)]));
    }

    #[test]
    fn json_shape() {
        let x = ch(2, &[(&[1, -1], 2)]);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"[{"weight":[1,-1],"mult":2}]"#);
        let back: CharElement = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
    }
}
