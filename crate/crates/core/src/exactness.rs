//! Homological bookkeeping for the Koszul resolution of `O_F`.
//!
//! * [`assemble_e1`] builds the first page `E_1^{-p,q} = H^q(∧^p Sym³U ⊗ E(tH))`.
//! * [`solve_abutment`] enumerates every admissible choice of differential
//!   ranks and reports the abutment when it is the same for all of them.
//! * [`les_solve`] propagates dimensions through the long exact sequence of a
//!   short exact sequence of sheaves.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bwb::{bwb_bundle, HomogeneousBundle};
use crate::error::{Error, Result};
use crate::families::{Family, KOSZUL_LENGTH};

/// Dimension of the Fano scheme F.
pub const DIM_F: i64 = 4;

/// Upper bound on enumerated rank assignments before giving up.
const LEAF_LIMIT: usize = 1 << 20;

/// A sparse first page. Keys are `(p, q)` with `p ≤ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "E1PageRepr", into = "E1PageRepr")]
pub struct E1Page {
    pub max_total_degree: i64,
    entries: BTreeMap<(i64, i64), u64>,
}

#[derive(Serialize, Deserialize)]
struct E1PageRepr {
    max_total_degree: i64,
    entries: Vec<(i64, i64, u64)>,
}

impl TryFrom<E1PageRepr> for E1Page {
    type Error = Error;
    fn try_from(r: E1PageRepr) -> Result<Self> {
        E1Page::new(r.max_total_degree, r.entries)
    }
}

impl From<E1Page> for E1PageRepr {
    fn from(p: E1Page) -> Self {
        E1PageRepr {
            max_total_degree: p.max_total_degree,
            entries: p.entries.into_iter().map(|((p, q), d)| (p, q, d)).collect(),
        }
    }
}

impl E1Page {
    pub fn new(max_total_degree: i64, entries: impl IntoIterator<Item = (i64, i64, u64)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (p, q, d) in entries {
            if p > 0 || q < 0 {
                return Err(Error::Unsupported(format!(
                    "E1 entry ({p},{q}) outside the second quadrant"
                )));
            }
            if d > 0 && map.insert((p, q), d).is_some() {
                return Err(Error::Consistency(format!("duplicate E1 entry ({p},{q})")));
            }
        }
        Ok(E1Page {
            max_total_degree,
            entries: map,
        })
    }

    pub fn entries(&self) -> &BTreeMap<(i64, i64), u64> {
        &self.entries
    }

    pub fn get(&self, p: i64, q: i64) -> u64 {
        self.entries.get(&(p, q)).copied().unwrap_or(0)
    }

    /// `Σ (-1)^{p+q} dim E_1^{p,q}`.
    pub fn euler_characteristic(&self) -> i128 {
        self.entries
            .iter()
            .map(|(&(p, q), &d)| if (p + q).rem_euclid(2) == 0 { d as i128 } else { -(d as i128) })
            .sum()
    }
}

impl fmt::Display for E1Page {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|(&(p, q), &d)| format!("({p},{q}):{d}"))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// `E_1^{-p,q} = H^q(bundle(p))` for `p = 0..=length`.
pub fn assemble_e1_with(
    length: usize,
    max_total_degree: i64,
    bundle: impl Fn(usize) -> Result<HomogeneousBundle>,
) -> Result<E1Page> {
    let mut entries = Vec::new();
    for p in 0..=length {
        let r = bwb_bundle(&bundle(p)?)?;
        for (&q, &d) in &r.totals {
            if d < 0 {
                return Err(Error::VirtualCharacter(d as i64));
            }
            entries.push((-(p as i64), q as i64, d as u64));
        }
    }
    E1Page::new(max_total_degree, entries)
}

/// The page for `∧^• Sym³U ⊗ E(tH)` resolving `E(tH)|_F`.
pub fn assemble_e1(family: Family, t: i64) -> Result<E1Page> {
    assemble_e1_with(KOSZUL_LENGTH, DIM_F, |p| family.bundle(p, t))
}

/// A differential `d_r: E_r^{p,q} → E_r^{p+r, q-r+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Differential {
    pub page: i64,
    pub source: (i64, i64),
    pub target: (i64, i64),
}

impl fmt::Display for Differential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "d_{}: ({},{}) -> ({},{})",
            self.page, self.source.0, self.source.1, self.target.0, self.target.1
        )
    }
}

/// A differential whose rank is not determined, with the ranks that occur.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeDifferential {
    pub differential: Differential,
    pub ranks: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AbutmentResult {
    /// Total degree → dimension; degrees with zero dimension are omitted.
    Forced { dims: BTreeMap<i64, u64> },
    Ambiguous {
        candidates: Vec<BTreeMap<i64, u64>>,
        free: Vec<FreeDifferential>,
    },
}

impl AbutmentResult {
    pub fn forced(&self) -> Option<&BTreeMap<i64, u64>> {
        match self {
            AbutmentResult::Forced { dims } => Some(dims),
            AbutmentResult::Ambiguous { .. } => None,
        }
    }

    /// The forced dimensions, or an [`Error::Ambiguous`] naming the free
    /// differentials.
    pub fn require_forced(&self) -> Result<&BTreeMap<i64, u64>> {
        match self {
            AbutmentResult::Forced { dims } => Ok(dims),
            AbutmentResult::Ambiguous { free, .. } => {
                let names: Vec<String> = free.iter().map(|f| f.differential.to_string()).collect();
                Err(Error::Ambiguous(format!("undetermined differentials: {}", names.join(", "))))
            }
        }
    }
}

impl fmt::Display for AbutmentResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let render = |m: &BTreeMap<i64, u64>| {
            let parts: Vec<String> = m.iter().map(|(d, v)| format!("{d}:{v}")).collect();
            format!("{{{}}}", parts.join(", "))
        };
        match self {
            AbutmentResult::Forced { dims } => write!(f, "Forced {}", render(dims)),
            AbutmentResult::Ambiguous { candidates, free } => {
                let c: Vec<String> = candidates.iter().map(render).collect();
                write!(f, "Ambiguous [{}]", c.join(" | "))?;
                for d in free {
                    write!(f, "; {} rank in {:?}", d.differential, d.ranks)?;
                }
                Ok(())
            }
        }
    }
}

struct Search<'a> {
    page: &'a E1Page,
    leaves: usize,
    // abutment → rank assignments reaching it
    outcomes: BTreeMap<BTreeMap<i64, u64>, Vec<BTreeMap<Differential, u64>>>,
    ranks: BTreeMap<Differential, u64>,
}

impl Search<'_> {
    fn run_page(&mut self, r: i64, current: BTreeMap<(i64, i64), u64>) -> Result<()> {
        let diffs: Vec<Differential> = current
            .keys()
            .filter_map(|&(p, q)| {
                let target = (p + r, q - r + 1);
                current.contains_key(&target).then_some(Differential {
                    page: r,
                    source: (p, q),
                    target,
                })
            })
            .collect();
        if diffs.is_empty() && !self.any_later(r, &current) {
            return self.leaf(current);
        }
        self.assign(r, &diffs, 0, current)
    }

    /// Whether some page beyond `r` can still carry a differential.
    fn any_later(&self, r: i64, current: &BTreeMap<(i64, i64), u64>) -> bool {
        current.keys().any(|&(p, q)| {
            current
                .keys()
                .any(|&(p2, q2)| p2 - p > r && q - q2 + 1 == p2 - p)
        })
    }

    fn assign(
        &mut self,
        r: i64,
        diffs: &[Differential],
        i: usize,
        current: BTreeMap<(i64, i64), u64>,
    ) -> Result<()> {
        if i == diffs.len() {
            return self.run_page(r + 1, current);
        }
        let d = diffs[i];
        let cap = current[&d.source].min(current[&d.target]);
        for rank in 0..=cap {
            let mut next = current.clone();
            for key in [d.source, d.target] {
                let v = next.get_mut(&key).unwrap();
                *v -= rank;
                if *v == 0 {
                    next.remove(&key);
                }
            }
            // Later differentials on this page need their endpoints alive;
            // removal above makes them vanish naturally.
            let remaining: Vec<Differential> = diffs[i + 1..]
                .iter()
                .copied()
                .filter(|e| next.contains_key(&e.source) && next.contains_key(&e.target))
                .collect();
            if rank > 0 {
                self.ranks.insert(d, rank);
            }
            self.assign(r, &remaining, 0, next)?;
            self.ranks.remove(&d);
        }
        Ok(())
    }

    fn leaf(&mut self, e_inf: BTreeMap<(i64, i64), u64>) -> Result<()> {
        self.leaves += 1;
        if self.leaves > LEAF_LIMIT {
            return Err(Error::SearchLimit(format!(
                "more than {LEAF_LIMIT} differential rank assignments"
            )));
        }
        let max = self.page.max_total_degree;
        if e_inf.keys().any(|&(p, q)| p + q < 0 || p + q > max) {
            return Ok(());
        }
        let mut dims = BTreeMap::new();
        for (&(p, q), &d) in &e_inf {
            *dims.entry(p + q).or_insert(0) += d;
        }
        self.outcomes.entry(dims).or_default().push(self.ranks.clone());
        Ok(())
    }
}

/// Abutment of the spectral sequence with first page `page`, using only the
/// vanishing of `E_∞^{p,q}` outside `0 ≤ p+q ≤ max_total_degree`.
pub fn solve_abutment(page: &E1Page) -> Result<AbutmentResult> {
    let mut search = Search {
        page,
        leaves: 0,
        outcomes: BTreeMap::new(),
        ranks: BTreeMap::new(),
    };
    search.run_page(1, page.entries.clone())?;
    let outcomes = search.outcomes;
    match outcomes.len() {
        0 => Err(Error::Infeasible(format!(
            "no choice of differentials on {page} kills every term outside total degrees 0..={}",
            page.max_total_degree
        ))),
        1 => Ok(AbutmentResult::Forced {
            dims: outcomes.into_keys().next().unwrap(),
        }),
        _ => {
            let all: Vec<&BTreeMap<Differential, u64>> = outcomes.values().flatten().collect();
            let touched: BTreeSet<Differential> = all.iter().flat_map(|a| a.keys().copied()).collect();
            // a differential absent from an assignment has rank 0 there
            let free = touched
                .into_iter()
                .map(|d| FreeDifferential {
                    differential: d,
                    ranks: all
                        .iter()
                        .map(|a| a.get(&d).copied().unwrap_or(0))
                        .collect::<BTreeSet<_>>()
                        .into_iter()
                        .collect(),
                })
                .filter(|f| f.ranks.len() > 1)
                .collect();
            Ok(AbutmentResult::Ambiguous {
                candidates: outcomes.into_keys().collect(),
                free,
            })
        }
    }
}

/// Known cohomology dimensions of one sheaf, degrees `0..len`. `None` marks
/// an unknown group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CohomologyColumn(pub Vec<Option<u64>>);

impl CohomologyColumn {
    pub fn unknown(len: usize) -> Self {
        CohomologyColumn(vec![None; len])
    }

    /// Fully known column; degrees missing from `dims` are zero.
    pub fn known(len: usize, dims: &BTreeMap<i64, u64>) -> Result<Self> {
        let mut v = vec![Some(0); len];
        for (&d, &x) in dims {
            if d < 0 || d as usize >= len {
                if x != 0 {
                    return Err(Error::Consistency(format!(
                        "dimension {x} in degree {d} outside 0..{len}"
                    )));
                }
                continue;
            }
            v[d as usize] = Some(x);
        }
        Ok(CohomologyColumn(v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Range of a dimension: `lo..=hi`, with `hi = None` meaning unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimBound {
    pub lo: u64,
    pub hi: Option<u64>,
}

impl DimBound {
    pub fn exact(&self) -> Option<u64> {
        (self.hi == Some(self.lo)).then_some(self.lo)
    }
}

impl fmt::Display for DimBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.exact(), self.hi) {
            (Some(x), _) => write!(f, "{x}"),
            (None, Some(hi)) => write!(f, "{}..{}", self.lo, hi),
            (None, None) => write!(f, "{}..", self.lo),
        }
    }
}

/// Dimensions of `H^i(A)`, `H^i(B)`, `H^i(C)` consistent with exactness of
/// `0 → H^0A → H^0B → H^0C → H^1A → ⋯ → H^mC → 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LesSolution {
    pub a: Vec<DimBound>,
    pub b: Vec<DimBound>,
    pub c: Vec<DimBound>,
}

impl LesSolution {
    fn column(&self, which: usize) -> &[DimBound] {
        match which {
            0 => &self.a,
            1 => &self.b,
            _ => &self.c,
        }
    }

    /// Dimension of `H^degree` of column `which` (0 = A, 1 = B, 2 = C) when forced.
    pub fn forced(&self, which: usize, degree: usize) -> Option<u64> {
        self.column(which).get(degree).and_then(DimBound::exact)
    }

    /// The whole column, or an [`Error::Ambiguous`] listing undetermined degrees.
    pub fn require_column(&self, which: usize) -> Result<Vec<u64>> {
        let col = self.column(which);
        let free: Vec<String> = col
            .iter()
            .enumerate()
            .filter(|(_, b)| b.exact().is_none())
            .map(|(i, b)| format!("H^{i} in {b}"))
            .collect();
        if !free.is_empty() {
            return Err(Error::Ambiguous(free.join(", ")));
        }
        Ok(col.iter().map(|b| b.lo).collect())
    }
}

// r = constant + sign * x_var
#[derive(Clone, Copy)]
struct Affine {
    constant: i128,
    sign: i128,
    var: Option<usize>,
}

/// Solves the long exact sequence of `0 → A → B → C → 0` on a space of
/// cohomological dimension `bound`. Each column has `bound + 1` entries.
///
/// Ranks of the maps in the sequence are the unknowns. Every unknown group
/// starts a fresh free rank; runs of known groups then express the following
/// ranks as `±x + c`, which bounds `x` to an interval. Unknown groups get the
/// range of `r_{j-1} + r_j` over those intervals.
pub fn les_solve(
    a: &CohomologyColumn,
    b: &CohomologyColumn,
    c: &CohomologyColumn,
    bound: usize,
) -> Result<LesSolution> {
    for col in [a, b, c] {
        if col.len() != bound + 1 {
            return Err(Error::LengthMismatch {
                expected: bound + 1,
                actual: col.len(),
            });
        }
    }
    let terms: Vec<Option<u64>> = (0..=bound)
        .flat_map(|i| [a.0[i], b.0[i], c.0[i]])
        .collect();
    let len = terms.len();
    // intervals for the free variables: (lo, hi)
    let mut vars: Vec<(i128, Option<i128>)> = Vec::new();
    let mut ranks: Vec<Affine> = Vec::with_capacity(len);
    let mut prev = Affine {
        constant: 0,
        sign: 0,
        var: None,
    };
    for t in &terms {
        let r = match t {
            Some(d) => Affine {
                constant: *d as i128 - prev.constant,
                sign: -prev.sign,
                var: prev.var,
            },
            None => {
                vars.push((0, None));
                Affine {
                    constant: 0,
                    sign: 1,
                    var: Some(vars.len() - 1),
                }
            }
        };
        ranks.push(r);
        prev = r;
    }
    // r_j ≥ 0, and the last rank is 0.
    let constrain = |vars: &mut Vec<(i128, Option<i128>)>, r: &Affine, lo: i128, hi: Option<i128>| -> Result<()> {
        // lo ≤ constant + sign*x ≤ hi
        let Some(v) = r.var.filter(|_| r.sign != 0) else {
            if r.constant < lo || hi.is_some_and(|h| r.constant > h) {
                return Err(Error::Infeasible(format!(
                    "exactness forces a map of rank {}",
                    r.constant
                )));
            }
            return Ok(());
        };
        let (vlo, vhi) = &mut vars[v];
        if r.sign > 0 {
            *vlo = (*vlo).max(lo - r.constant);
            if let Some(h) = hi {
                let cap = h - r.constant;
                *vhi = Some(vhi.map_or(cap, |x| x.min(cap)));
            }
        } else {
            // constant - x ≥ lo  →  x ≤ constant - lo
            let cap = r.constant - lo;
            *vhi = Some(vhi.map_or(cap, |x| x.min(cap)));
            if let Some(h) = hi {
                *vlo = (*vlo).max(r.constant - h);
            }
        }
        if vhi.is_some_and(|h| h < *vlo) {
            return Err(Error::Infeasible(format!(
                "no rank assignment satisfies exactness (free rank {v} has empty range)"
            )));
        }
        Ok(())
    };
    for (j, r) in ranks.iter().enumerate() {
        let hi = (j == len - 1).then_some(0);
        constrain(&mut vars, r, 0, hi)?;
    }
    let range = |r: &Affine| -> (i128, Option<i128>) {
        match r.var {
            Some(v) if r.sign != 0 => {
                let (lo, hi) = vars[v];
                if r.sign > 0 {
                    (r.constant + lo, hi.map(|h| r.constant + h))
                } else {
                    // bounded above by constraint r ≥ 0 already
                    (r.constant - hi.expect("negated free rank is bounded"), Some(r.constant - lo))
                }
            }
            _ => (r.constant, Some(r.constant)),
        }
    };
    let mut bounds = Vec::with_capacity(len);
    for j in 0..len {
        let bound = match terms[j] {
            Some(d) => DimBound { lo: d, hi: Some(d) },
            None => {
                let (lo1, hi1) = if j == 0 { (0, Some(0)) } else { range(&ranks[j - 1]) };
                let (lo2, hi2) = range(&ranks[j]);
                // the two ranks depend on different free variables
                DimBound {
                    lo: (lo1 + lo2) as u64,
                    hi: hi1.zip(hi2).map(|(x, y)| (x + y) as u64),
                }
            }
        };
        bounds.push(bound);
    }
    let pick = |k: usize| -> Vec<DimBound> { (0..=bound).map(|i| bounds[3 * i + k]).collect() };
    Ok(LesSolution {
        a: pick(0),
        b: pick(1),
        c: pick(2),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dims(pairs: &[(i64, u64)]) -> BTreeMap<i64, u64> {
        pairs.iter().copied().collect()
    }

    fn page(entries: &[(i64, i64, u64)]) -> E1Page {
        E1Page::new(4, entries.to_vec()).unwrap()
    }

    #[test]
    fn assembled_pages() {
        assert_eq!(
            assemble_e1(Family::Sym2U, -2).unwrap(),
            page(&[(-4, 8, 1134), (-3, 8, 126)])
        );
        assert_eq!(assemble_e1(Family::QDual, 1).unwrap(), page(&[(0, 0, 20), (-3, 5, 1)]));
        assert_eq!(assemble_e1(Family::Sym2U, 1).unwrap(), page(&[(-2, 4, 36)]));
    }

    #[test]
    fn forced_abutments() {
        let r = solve_abutment(&page(&[(-4, 8, 1134), (-3, 8, 126)])).unwrap();
        assert_eq!(r.forced(), Some(&dims(&[(4, 1008)])));
        let r = solve_abutment(&page(&[(0, 0, 20), (-3, 5, 1)])).unwrap();
        assert_eq!(r.forced(), Some(&dims(&[(0, 20), (2, 1)])));
        let r = solve_abutment(&page(&[])).unwrap();
        assert_eq!(r.forced(), Some(&BTreeMap::new()));
    }

    #[test]
    fn infeasible_page_is_error() {
        // a lone term in total degree 5 cannot be killed
        assert!(matches!(
            solve_abutment(&page(&[(-3, 8, 1)])),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn ambiguous_page_names_differential() {
        let r = solve_abutment(&page(&[(-1, 2, 3), (0, 2, 2)])).unwrap();
        match r {
            AbutmentResult::Ambiguous { free, candidates } => {
                assert_eq!(candidates.len(), 3);
                assert_eq!(free.len(), 1);
                assert_eq!(free[0].differential.source, (-1, 2));
                assert_eq!(free[0].ranks, vec![0, 1, 2]);
            }
            other => panic!("expected ambiguity, got {other}"),
        }
    }

    #[test]
    fn page_json_shape() {
        let p = page(&[(-4, 8, 1134), (-3, 8, 126)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"max_total_degree":4,"entries":[[-4,8,1134],[-3,8,126]]}"#);
        assert_eq!(serde_json::from_str::<E1Page>(&s).unwrap(), p);
        assert!(serde_json::from_str::<E1Page>(r#"{"max_total_degree":4,"entries":[[1,0,1]]}"#).is_err());
    }

    fn known(pairs: &[(i64, u64)]) -> CohomologyColumn {
        CohomologyColumn::known(5, &dims(pairs)).unwrap()
    }

    #[test]
    fn les_ideal_sheaf() {
        let s = les_solve(
            &known(&[(4, 1008)]),
            &known(&[(4, 561)]),
            &CohomologyColumn::unknown(5),
            4,
        )
        .unwrap();
        for i in 0..=2 {
            assert_eq!(s.forced(2, i), Some(0));
        }
        assert_eq!(s.c[3], DimBound { lo: 447, hi: Some(1008) });
        assert_eq!(s.c[4], DimBound { lo: 0, hi: Some(561) });
    }

    #[test]
    fn les_twisted_ideal_sheaf() {
        let s = les_solve(
            &known(&[(2, 36)]),
            &known(&[(0, 20), (2, 1)]),
            &CohomologyColumn::unknown(5),
            4,
        )
        .unwrap();
        assert_eq!(s.forced(2, 3), Some(0));
        assert_eq!(s.forced(2, 4), Some(0));
        assert_eq!(s.forced(2, 0), Some(20));
        assert_eq!(s.c[1], DimBound { lo: 35, hi: Some(36) });
    }

    #[test]
    fn les_structure_sheaf() {
        let ideal = CohomologyColumn(vec![Some(0), Some(0), Some(0), None, None]);
        let surface = CohomologyColumn(vec![None, None, None, Some(0), Some(0)]);
        let s = les_solve(&ideal, &known(&[(0, 1), (2, 1), (4, 1)]), &surface, 4).unwrap();
        assert_eq!(s.forced(2, 0), Some(1));
        assert_eq!(s.forced(2, 1), Some(0));
        assert_eq!(s.forced(2, 2), None);
        assert_eq!(s.forced(0, 4), Some(1));
    }

    #[test]
    fn les_zero_map_is_ambiguous() {
        let col = known(&[(1, 1)]);
        let s = les_solve(&col, &col, &CohomologyColumn::unknown(5), 4).unwrap();
        assert_eq!(s.c[0], DimBound { lo: 0, hi: Some(1) });
        assert!(matches!(s.require_column(2), Err(Error::Ambiguous(_))));
    }

    #[test]
    fn les_inconsistent_is_error() {
        let s = les_solve(&known(&[(0, 2)]), &known(&[(0, 1)]), &known(&[]), 4);
        assert!(matches!(s, Err(Error::Infeasible(_))));
    }
}
