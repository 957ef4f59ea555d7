//! Splitting-principle calculus.
//!
//! A [`RootBundle`] lists Chern roots as integer combinations of the formal
//! roots `u_1..u_k` of U, `q_1..q_{n-k}` of Q and a twist variable `h`.
//! Characteristic classes are expanded as polynomials in these variables,
//! rewritten block by block in elementary symmetric functions, and then
//! substituted: `e_i(u) = c_i(U)`, `e_j(q) = σ_j`, `h = σ_1`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::bwb::HomogeneousBundle;
use crate::charring::schur_to_monomials;
use crate::error::{Error, Result};

use super::{Class, Grassmannian};

/// A polynomial with integer coefficients in a fixed number of variables,
/// every variable of degree one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootPoly {
    nvars: usize,
    terms: HashMap<Vec<u8>, i128>,
}

impl RootPoly {
    pub fn zero(nvars: usize) -> Self {
        RootPoly {
            nvars,
            terms: HashMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.terms.insert(vec![0; nvars], 1);
        p
    }

    /// `Σ coeffs[i] x_i`.
    pub fn linear(coeffs: &[i64]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                let mut e = vec![0; n];
                e[i] = 1;
                p.terms.insert(e, c as i128);
            }
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u8>, i128)> {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The homogeneous component of degree `d`.
    pub fn homogeneous_part(&self, d: usize) -> RootPoly {
        RootPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().map(|&x| x as usize).sum::<usize>() == d)
                .map(|(e, &c)| (e.clone(), c))
                .collect(),
        }
    }

    fn add_term(&mut self, e: Vec<u8>, c: i128) {
        if c == 0 {
            return;
        }
        let v = self.terms.entry(e).or_insert(0);
        *v += c;
        if *v == 0 {
            self.terms.retain(|_, c| *c != 0);
        }
    }

    pub fn add(&self, other: &RootPoly) -> RootPoly {
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: i128) -> RootPoly {
        RootPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|_| c != 0)
                .map(|(e, &v)| (e.clone(), v * c))
                .collect(),
        }
    }

    /// Product, dropping monomials of total degree above `max_degree`.
    pub fn mul_truncated(&self, other: &RootPoly, max_degree: usize) -> RootPoly {
        let mut acc: HashMap<Vec<u8>, i128> = HashMap::with_capacity(self.terms.len());
        for (a, &ca) in &self.terms {
            let da: usize = a.iter().map(|&x| x as usize).sum();
            for (b, &cb) in &other.terms {
                let db: usize = b.iter().map(|&x| x as usize).sum();
                if da + db > max_degree {
                    continue;
                }
                let e: Vec<u8> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                *acc.entry(e).or_insert(0) += ca * cb;
            }
        }
        acc.retain(|_, c| *c != 0);
        RootPoly {
            nvars: self.nvars,
            terms: acc,
        }
    }

    pub fn pow_truncated(&self, e: usize, max_degree: usize) -> RootPoly {
        let mut out = RootPoly::one(self.nvars);
        for _ in 0..e {
            out = out.mul_truncated(self, max_degree);
        }
        out
    }
}

/// A polynomial in the elementary symmetric functions of several blocks of
/// roots. Exponent slot `offset(b) + i - 1` holds the power of `e_i` of block `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementaryPoly {
    blocks: Vec<usize>,
    terms: BTreeMap<Vec<u8>, i128>,
}

impl ElementaryPoly {
    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u8>, i128)> {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    /// Coefficient of `∏ e_{b,i}^{a}` given as `(block, i, power)` triples.
    pub fn coefficient(&self, factors: &[(usize, usize, u8)]) -> i128 {
        let mut e = vec![0u8; self.blocks.iter().sum()];
        for &(b, i, a) in factors {
            let off: usize = self.blocks[..b].iter().sum();
            e[off + i - 1] += a;
        }
        self.terms.get(&e).copied().unwrap_or(0)
    }
}

/// Rewrites `poly`, symmetric in each block of consecutive variables, as a
/// polynomial in the blocks' elementary symmetric functions.
pub fn elementary_reduce(poly: &RootPoly, blocks: &[usize]) -> Result<ElementaryPoly> {
    let total: usize = blocks.iter().sum();
    if total != poly.nvars {
        return Err(Error::LengthMismatch {
            expected: poly.nvars,
            actual: total,
        });
    }
    let mut current: BTreeMap<Vec<u8>, i128> =
        poly.terms.iter().map(|(e, &c)| (e.clone(), c)).collect();
    let mut offset = 0;
    for &size in blocks {
        current = reduce_block(&current, offset, size)?;
        offset += size;
    }
    Ok(ElementaryPoly {
        blocks: blocks.to_vec(),
        terms: current,
    })
}

/// Reduces the variables `offset..offset+size`, leaving the others alone.
/// Within each fixed assignment of the other exponents, the lexicographically
/// leading block monomial `x^a` (necessarily with `a` non-increasing) is
/// cancelled by `e_1^{a_1-a_2} ⋯ e_s^{a_s}`.
fn reduce_block(
    poly: &BTreeMap<Vec<u8>, i128>,
    offset: usize,
    size: usize,
) -> Result<BTreeMap<Vec<u8>, i128>> {
    let mut groups: BTreeMap<Vec<u8>, BTreeMap<Vec<u8>, i128>> = BTreeMap::new();
    for (e, &c) in poly {
        let mut rest = e.clone();
        let block: Vec<u8> = rest[offset..offset + size].to_vec();
        for x in &mut rest[offset..offset + size] {
            *x = 0;
        }
        groups.entry(rest).or_default().insert(block, c);
    }
    let mut cache: HashMap<Vec<u8>, BTreeMap<Vec<u8>, i128>> = HashMap::new();
    let mut out: BTreeMap<Vec<u8>, i128> = BTreeMap::new();
    for (rest, mut f) in groups {
        while let Some((lead, &c)) = f.iter().next_back() {
            let lead = lead.clone();
            if lead.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::NotSymmetric(format!(
                    "leading monomial {lead:?} in block at offset {offset}"
                )));
            }
            let elem: Vec<u8> = (0..size)
                .map(|i| lead[i] - if i + 1 < size { lead[i + 1] } else { 0 })
                .collect();
            let expansion = cache
                .entry(elem.clone())
                .or_insert_with(|| expand_elementary_monomial(&elem));
            for (m, &d) in expansion.iter() {
                let v = f.entry(m.clone()).or_insert(0);
                *v -= c * d;
                if *v == 0 {
                    f.remove(m);
                }
            }
            let mut key = rest.clone();
            key[offset..offset + size].copy_from_slice(&elem);
            *out.entry(key).or_insert(0) += c;
        }
    }
    out.retain(|_, c| *c != 0);
    Ok(out)
}

/// `∏_i e_i^{a_i}` as a polynomial in `a.len()` variables.
fn expand_elementary_monomial(a: &[u8]) -> BTreeMap<Vec<u8>, i128> {
    let s = a.len();
    let mut acc: BTreeMap<Vec<u8>, i128> = BTreeMap::from([(vec![0; s], 1)]);
    for (i, &power) in a.iter().enumerate() {
        let e = elementary(s, i + 1);
        for _ in 0..power {
            let mut next = BTreeMap::new();
            for (x, &cx) in &acc {
                for y in &e {
                    let m: Vec<u8> = x.iter().zip(y).map(|(p, q)| p + q).collect();
                    *next.entry(m).or_insert(0) += cx;
                }
            }
            acc = next;
        }
    }
    acc
}

/// Exponent vectors of the monomials of `e_i` in `s` variables.
fn elementary(s: usize, i: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    fn rec(s: usize, i: usize, start: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if i == 0 {
            out.push(cur.clone());
            return;
        }
        for j in start..s {
            cur[j] = 1;
            rec(s, i - 1, j + 1, cur, out);
            cur[j] = 0;
        }
    }
    rec(s, i, 0, &mut vec![0; s], &mut out);
    out
}

/// A (possibly virtual) bundle on `G(k,n)` given by its Chern roots.
///
/// Each root is a coefficient vector over `(u_1..u_k, q_1..q_{n-k}, h)`
/// with a signed multiplicity; negative multiplicities encode formal
/// differences such as `T_F = Q⊗U^∨ − Sym³U^∨`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootBundle {
    k: usize,
    n: usize,
    roots: BTreeMap<Vec<i64>, i64>,
}

impl RootBundle {
    pub fn new(k: usize, n: usize, roots: impl IntoIterator<Item = (Vec<i64>, i64)>) -> Result<Self> {
        if k == 0 || k >= n {
            return Err(Error::InvalidGrassmannian { k, n });
        }
        let mut map = BTreeMap::new();
        for (w, m) in roots {
            if w.len() != n + 1 {
                return Err(Error::LengthMismatch {
                    expected: n + 1,
                    actual: w.len(),
                });
            }
            *map.entry(w).or_insert(0) += m;
        }
        map.retain(|_, m| *m != 0);
        let b = RootBundle { k, n, roots: map };
        b.check_symmetric()?;
        Ok(b)
    }

    /// Roots of `Σ_{w'}U* ⊗ Σ_{w''}Q*`: the U* roots are `-u_i`, the Q*
    /// roots `-q_j`.
    pub fn from_bundle(b: &HomogeneousBundle) -> Result<Self> {
        let (k, n) = (b.k(), b.n());
        let sub = schur_to_monomials(b.sub_part());
        let quot = schur_to_monomials(b.quot_part());
        let mut roots = Vec::new();
        for (a, ca) in sub.terms() {
            for (q, cq) in quot.terms() {
                let mut w: Vec<i64> = a.iter().map(|x| -x).collect();
                w.extend(q.iter().map(|x| -x));
                w.push(0);
                roots.push((w, ca * cq));
            }
        }
        Self::new(k, n, roots)
    }

    /// The tautological subbundle U.
    pub fn sub(k: usize, n: usize) -> Result<Self> {
        Self::new(k, n, (0..k).map(|i| (unit(n + 1, i), 1)))
    }

    /// The tautological quotient Q.
    pub fn quot(k: usize, n: usize) -> Result<Self> {
        Self::new(k, n, (k..n).map(|i| (unit(n + 1, i), 1)))
    }

    /// `T_G = Q ⊗ U^∨`.
    pub fn tangent(k: usize, n: usize) -> Result<Self> {
        let mut roots = Vec::new();
        for i in 0..k {
            for j in k..n {
                let mut w = vec![0; n + 1];
                w[j] = 1;
                w[i] = -1;
                roots.push((w, 1));
            }
        }
        Self::new(k, n, roots)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Virtual rank.
    pub fn rank(&self) -> i64 {
        self.roots.values().sum()
    }

    pub fn is_genuine(&self) -> bool {
        self.roots.values().all(|&m| m > 0)
    }

    pub fn roots(&self) -> impl Iterator<Item = (&Vec<i64>, i64)> {
        self.roots.iter().map(|(w, &m)| (w, m))
    }

    /// Tensor with `O(t·h)`.
    pub fn twist(&self, t: i64) -> RootBundle {
        let roots = self
            .roots
            .iter()
            .map(|(w, &m)| {
                let mut w = w.clone();
                *w.last_mut().unwrap() += t;
                (w, m)
            })
            .collect();
        RootBundle { roots, ..self.clone() }
    }

    /// Formal difference `self − other`.
    pub fn minus(&self, other: &RootBundle) -> Result<RootBundle> {
        self.check_space(other)?;
        let mut roots = self.roots.clone();
        for (w, &m) in &other.roots {
            *roots.entry(w.clone()).or_insert(0) -= m;
        }
        roots.retain(|_, m| *m != 0);
        Ok(RootBundle { roots, ..self.clone() })
    }

    pub fn plus(&self, other: &RootBundle) -> Result<RootBundle> {
        self.check_space(other)?;
        let mut roots = self.roots.clone();
        for (w, &m) in &other.roots {
            *roots.entry(w.clone()).or_insert(0) += m;
        }
        roots.retain(|_, m| *m != 0);
        Ok(RootBundle { roots, ..self.clone() })
    }

    fn check_space(&self, other: &RootBundle) -> Result<()> {
        if (self.k, self.n) != (other.k, other.n) {
            return Err(Error::GrassmannianMismatch(self.k, self.n, other.k, other.n));
        }
        Ok(())
    }

    fn check_symmetric(&self) -> Result<()> {
        let swaps = (0..self.k.saturating_sub(1)).chain(self.k..self.n - 1);
        for i in swaps {
            let swapped: BTreeMap<Vec<i64>, i64> = self
                .roots
                .iter()
                .map(|(w, &m)| {
                    let mut w = w.clone();
                    w.swap(i, i + 1);
                    (w, m)
                })
                .collect();
            if swapped != self.roots {
                return Err(Error::NotSymmetric(format!(
                    "root multiset is not invariant under swapping roots {i} and {}",
                    i + 1
                )));
            }
        }
        Ok(())
    }

    /// `∏ (1 + ℓ)^m` truncated at the dimension of the Grassmannian.
    pub fn chern_polynomial(&self) -> RootPoly {
        let dim = self.k * (self.n - self.k);
        let nv = self.n + 1;
        let mut out = RootPoly::one(nv);
        for (w, &m) in &self.roots {
            let l = RootPoly::linear(w);
            let factor = if m > 0 {
                RootPoly::one(nv).add(&l)
            } else {
                // (1 + ℓ)^{-1} = Σ (-ℓ)^j
                let neg = l.scale(-1);
                let mut s = RootPoly::one(nv);
                let mut p = RootPoly::one(nv);
                for _ in 0..dim {
                    p = p.mul_truncated(&neg, dim);
                    s = s.add(&p);
                }
                s
            };
            out = out.mul_truncated(&factor.pow_truncated(m.unsigned_abs() as usize, dim), dim);
        }
        out
    }

    /// `Σ m ℓ^d`.
    pub fn power_sum_polynomial(&self, d: usize) -> RootPoly {
        let nv = self.n + 1;
        let mut out = RootPoly::zero(nv);
        for (w, &m) in &self.roots {
            let l = RootPoly::linear(w);
            out = out.add(&l.pow_truncated(d, d).scale(m as i128));
        }
        out
    }
}

fn unit(len: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; len];
    v[i] = 1;
    v
}

/// Substitutes `e_i(u) = c_i(U) = (-1)^i σ_{1^i}`, `e_j(q) = σ_j`, `h = σ_1`.
fn substitute(space: &Arc<Grassmannian>, poly: &RootPoly) -> Result<Class> {
    let (k, n) = (space.k(), space.n());
    let reduced = elementary_reduce(poly, &[k, n - k, 1])?;
    let mut generators: Vec<Class> = Vec::with_capacity(n + 1);
    for i in 1..=k {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        generators.push(Class::column(space, i).scale(&sign));
    }
    for j in 1..=n - k {
        generators.push(Class::special(space, j));
    }
    generators.push(Class::special(space, 1));
    let mut powers: Vec<Vec<Class>> = generators.iter().map(|g| vec![Class::one(space), g.clone()]).collect();
    let mut out = Class::zero(space);
    for (e, c) in reduced.terms() {
        let mut term = Class::constant(space, c);
        for (g, &a) in e.iter().enumerate() {
            if a == 0 {
                continue;
            }
            while powers[g].len() <= a as usize {
                let next = &powers[g][powers[g].len() - 1] * &generators[g];
                powers[g].push(next);
            }
            term = &term * &powers[g][a as usize];
            if term.is_zero() {
                break;
            }
        }
        out = &out + &term;
    }
    Ok(out)
}

/// Total Chern class `c(E)` as a single inhomogeneous class.
pub fn total_chern_class(b: &RootBundle) -> Result<Class> {
    let space = Grassmannian::get(b.k, b.n)?;
    substitute(&space, &b.chern_polynomial())
}

/// `c_0, c_1, …` up to the rank (genuine bundles) or the dimension of the
/// Grassmannian (virtual ones).
pub fn chern_classes(b: &RootBundle) -> Result<Vec<Class>> {
    let space = Grassmannian::get(b.k, b.n)?;
    let total = total_chern_class(b)?;
    let top = if b.is_genuine() {
        (b.rank() as usize).min(space.dim())
    } else {
        space.dim()
    };
    Ok((0..=top).map(|i| total.graded_piece(i)).collect())
}

/// `p_d(E) = Σ ℓ^d` over the Chern roots, as a class.
pub fn power_sum(b: &RootBundle, d: usize) -> Result<Class> {
    let space = Grassmannian::get(b.k, b.n)?;
    if d == 0 {
        return Ok(Class::constant(&space, b.rank() as i128));
    }
    if d > space.dim() {
        return Ok(Class::zero(&space));
    }
    substitute(&space, &b.power_sum_polynomial(d))
}

/// Coefficients `s_0, …, s_dim` of `s_t(E − F) = s_t(E) c_t(F)`, where
/// `s_t(E) = c_t(E)^{-1}`.
pub fn segre_difference(e: &RootBundle, f: &RootBundle) -> Result<Vec<Class>> {
    let space = Grassmannian::get(e.k, e.n)?;
    let ce = total_chern_class(e)?;
    let cf = total_chern_class(f)?;
    let s = &ce.inverse_unipotent()? * &cf;
    Ok((0..=space.dim()).map(|i| s.graded_piece(i)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charring::CharElement;
    use crate::weights::IntegerWeight;

    fn g26() -> Arc<Grassmannian> {
        Grassmannian::get(2, 6).unwrap()
    }

    fn s(parts: &[u32]) -> Class {
        Class::sigma(&g26(), parts).unwrap()
    }

    fn sym3_u_dual() -> RootBundle {
        let b = HomogeneousBundle::new(
            2,
            6,
            CharElement::standard(2).symmetric_power(3).unwrap(),
            CharElement::trivial(4),
        )
        .unwrap();
        RootBundle::from_bundle(&b).unwrap()
    }

    #[test]
    fn elementary_reduction_of_power_sum() {
        // x^2 + y^2 = e1^2 - 2 e2
        let mut p = RootPoly::zero(2);
        p.add_term(vec![2, 0], 1);
        p.add_term(vec![0, 2], 1);
        let r = elementary_reduce(&p, &[2]).unwrap();
        assert_eq!(r.coefficient(&[(0, 1, 2)]), 1);
        assert_eq!(r.coefficient(&[(0, 2, 1)]), -2);
        let mut q = RootPoly::zero(2);
        q.add_term(vec![1, 0], 1);
        assert!(elementary_reduce(&q, &[2]).is_err());
    }

    #[test]
    fn tautological_chern_classes() {
        let c = chern_classes(&RootBundle::sub(2, 6).unwrap()).unwrap();
        assert_eq!(c[1], -&s(&[1]));
        assert_eq!(c[2], s(&[1, 1]));
        let cq = chern_classes(&RootBundle::quot(2, 6).unwrap()).unwrap();
        for (i, c) in cq.iter().enumerate().skip(1) {
            assert_eq!(*c, s(&[i as u32]));
        }
        let product = &total_chern_class(&RootBundle::sub(2, 6).unwrap()).unwrap()
            * &total_chern_class(&RootBundle::quot(2, 6).unwrap()).unwrap();
        assert_eq!(product, Class::one(&g26()));
    }

    #[test]
    fn class_of_fano_scheme() {
        let c = chern_classes(&sym3_u_dual()).unwrap();
        assert_eq!(c.len(), 5);
        assert_eq!(c[4].special_form(), "27σ₂² − 9σ₁σ₃ − 18σ₄");
    }

    #[test]
    fn asymmetric_roots_rejected() {
        let mut w = vec![0; 7];
        w[0] = 1;
        assert!(matches!(RootBundle::new(2, 6, [(w, 1)]), Err(Error::NotSymmetric(_))));
    }

    #[test]
    fn twist_variable_is_hyperplane_class() {
        let o1 = RootBundle::new(2, 6, [(vec![0, 0, 0, 0, 0, 0, 1], 1)]).unwrap();
        assert_eq!(chern_classes(&o1).unwrap()[1], s(&[1]));
        let det_u_dual = RootBundle::from_bundle(
            &HomogeneousBundle::new(
                2,
                6,
                CharElement::irreducible(IntegerWeight::new(vec![1, 1])).unwrap(),
                CharElement::trivial(4),
            )
            .unwrap(),
        )
        .unwrap();
        assert_eq!(chern_classes(&det_u_dual).unwrap()[1], s(&[1]));
    }

    #[test]
    fn segre_of_self_difference_is_trivial() {
        let e = sym3_u_dual();
        let seg = segre_difference(&e, &e).unwrap();
        assert_eq!(seg[0], Class::one(&g26()));
        assert!(seg[1..].iter().all(|c| c.is_zero()));
    }
}
