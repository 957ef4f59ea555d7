//! Determinantal intersection numbers for the degeneracy locus
//! `S = D_2(Sym²U_F → Q_F^∨)` on the Fano scheme `F ⊂ G(2,6)`, and the
//! numerical invariants of the surface S derived from them.
//!
//! On S the map drops rank, giving `0 → K → Sym²U_S → Q_S^∨ → C → 0` with K
//! a line bundle and C of rank 2; the normal bundle is `N_{S/F} = K^∨ ⊗ C`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bwb::HomogeneousBundle;
use crate::charring::CharElement;
use crate::error::{Error, Result};
use crate::schubert::{
    chern_classes, class_of_f, class_of_s, elementary_reduce, segre_difference, Class,
    Grassmannian, RootBundle, RootPoly,
};

/// Coefficients `s_0..s_dim` of `s_t(E − F) = s_t(E) c_t(F)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SegreTable {
    s: Vec<Class>,
}

impl SegreTable {
    pub fn new(s: Vec<Class>) -> Result<Self> {
        let first = s
            .first()
            .ok_or_else(|| Error::Consistency("empty Segre table".into()))?;
        if *first != Class::one(first.space()) {
            return Err(Error::Consistency(format!("s_0 = {first}, expected 1")));
        }
        Ok(SegreTable { s })
    }

    /// `s_t(Q^∨ − Sym²U)` on `G(2,6)`.
    pub fn for_locus() -> Result<Self> {
        let (e, f) = locus_bundles()?;
        Self::new(segre_difference(&e, &f)?)
    }

    /// `s_i`; zero for negative or out-of-range `i`.
    pub fn get(&self, i: i64) -> Class {
        if i < 0 || i as usize >= self.s.len() {
            return Class::zero(self.s[0].space());
        }
        self.s[i as usize].clone()
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    pub fn classes(&self) -> &[Class] {
        &self.s
    }
}

/// `E = Q^∨` and `F = Sym²U` as root bundles on `G(2,6)`.
fn locus_bundles() -> Result<(RootBundle, RootBundle)> {
    let q_dual = HomogeneousBundle::new(2, 6, CharElement::trivial(2), CharElement::standard(4))?;
    let sym2u = HomogeneousBundle::new(
        2,
        6,
        CharElement::standard(2).dual().symmetric_power(2)?,
        CharElement::trivial(4),
    )?;
    Ok((RootBundle::from_bundle(&q_dual)?, RootBundle::from_bundle(&sym2u)?))
}

/// `s_I(E−F) = det[s_{i_p − p + q}]`. Any finite sequence of non-negative
/// integers is accepted, not only partitions.
pub fn schur_determinant(index: &[u32], seg: &SegreTable) -> Class {
    let m = index.len();
    let space = seg.classes()[0].space().clone();
    if m == 0 {
        return Class::one(&space);
    }
    let entry = |p: usize, q: usize| seg.get(index[p] as i64 - p as i64 + q as i64);
    let mut total = Class::zero(&space);
    let mut perm: Vec<usize> = (0..m).collect();
    leibniz(&mut perm, 0, 1, &mut |perm, sign| {
        let mut term = Class::one(&space);
        for (p, &q) in perm.iter().enumerate() {
            term = &term * &entry(p, q);
            if term.is_zero() {
                return;
            }
        }
        total = if sign > 0 { &total + &term } else { &total - &term };
    });
    total
}

fn leibniz(v: &mut Vec<usize>, start: usize, sign: i32, f: &mut impl FnMut(&[usize], i32)) {
    if start == v.len() {
        f(v, sign);
        return;
    }
    for i in start..v.len() {
        v.swap(start, i);
        leibniz(v, start + 1, if i == start { sign } else { -sign }, f);
        v.swap(start, i);
    }
}

/// `∫_G c·[F]` for a class `c` of codimension `dim F = 4`.
pub fn intersection_number(c: &Class) -> Result<i128> {
    let space = Grassmannian::get(2, 6)?;
    if c.space().k() != 2 || c.space().n() != 6 {
        return Err(Error::GrassmannianMismatch(2, 6, c.space().k(), c.space().n()));
    }
    if !c.is_zero() {
        match c.codimension() {
            Some(4) => {}
            other => {
                return Err(Error::WrongCodimension {
                    expected: 4,
                    // inhomogeneous classes report their top degree
                    actual: other.unwrap_or_else(|| {
                        c.terms().map(|(p, _)| p.size() as usize).max().unwrap_or(0)
                    }),
                })
            }
        }
    }
    let f = class_of_f()?;
    debug_assert_eq!(f.space().dim(), space.dim());
    Ok((c * &f).integrate())
}

/// Chern classes of `N = K^∨ ⊗ C` in terms of those of K and C,
/// obtained by expanding over the roots `(x_1, x_2 | k)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalBundleIdentity {
    pub rank: usize,
    /// `c_1(N) = a·c_1(K) + b·c_1(C)` as `(a, b)`.
    pub c1: (i128, i128),
    /// `c_2(N) = a·c_2(C) + b·c_1(K)c_1(C) + c·c_1(K)²` as `(a, b, c)`.
    pub c2: (i128, i128, i128),
}

pub fn normal_bundle_class() -> Result<NormalBundleIdentity> {
    // variables x_1, x_2 (roots of C) and k (root of K)
    let roots = [RootPoly::linear(&[1, 0, -1]), RootPoly::linear(&[0, 1, -1])];
    let one = RootPoly::one(3);
    let total = one
        .add(&roots[0])
        .mul_truncated(&one.add(&roots[1]), 2);
    let c1 = elementary_reduce(&total.homogeneous_part(1), &[2, 1])?;
    let c2 = elementary_reduce(&total.homogeneous_part(2), &[2, 1])?;
    Ok(NormalBundleIdentity {
        rank: 2,
        c1: (c1.coefficient(&[(1, 1, 1)]), c1.coefficient(&[(0, 1, 1)])),
        c2: (
            c2.coefficient(&[(0, 2, 1)]),
            c2.coefficient(&[(0, 1, 1), (1, 1, 1)]),
            c2.coefficient(&[(1, 1, 2)]),
        ),
    })
}

/// Numerical invariants of S. Products are intersection numbers on S.
/// Field names follow the usual notation (`K_S`, `T_S`, `C`, `N`).
#[allow(non_snake_case)]
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceInvariants {
    pub c2_C: i128,
    /// `∫(s_1 s_3 − s_4)[F]`, the determinantal polynomial as displayed in
    /// the source computation.
    pub c1sq_C: i128,
    pub c1sq_K: i128,
    pub c1K_c1C: i128,
    pub c2_N: i128,
    pub KS_sq: i128,
    pub c2_TS: i128,
    pub chi_O: i128,
    pub chi_top: i128,
    /// `H_S² = ∫σ_1²·[S]·[F]`.
    pub hs_sq: i128,
    /// `∫c_2(T_F)·[S]·[F]`.
    pub c2TF_S: i128,
    /// `c_1(C)²` implied by the linear relations `c_1(C) = H_S`; kept next to
    /// `c1sq_C` because the two disagree.
    pub c1sq_C_from_relations: i128,
}

/// `c_2(T_F)` from `0 → T_F → Q⊗U^∨ → Sym³U^∨ → 0`.
pub fn c2_tangent_f() -> Result<Class> {
    let sym3 = HomogeneousBundle::new(
        2,
        6,
        CharElement::standard(2).symmetric_power(3)?,
        CharElement::trivial(4),
    )?;
    let tf = RootBundle::tangent(2, 6)?.minus(&RootBundle::from_bundle(&sym3)?)?;
    Ok(chern_classes(&tf)?[2].clone())
}

#[allow(non_snake_case)]
pub fn surface_invariants() -> Result<SurfaceInvariants> {
    let seg = SegreTable::for_locus()?;
    let g = Grassmannian::get(2, 6)?;
    let s = |i: i64| seg.get(i);

    let c2_C = intersection_number(&schur_determinant(&[2, 2], &seg))?;
    let c1sq_C = intersection_number(&(&(&s(1) * &s(3)) - &s(4)))?;
    let k_poly = &schur_determinant(&[1, 1, 2], &seg) + &schur_determinant(&[1, 1, 1, 1], &seg);
    let c1sq_K = intersection_number(&k_poly)?;

    let sigma1 = Class::special(&g, 1);
    let class_s = class_of_s()?;
    let hs_sq = intersection_number(&(&sigma1.pow(2) * &class_s))?;
    let c2TF_S = intersection_number(&(&c2_tangent_f()? * &class_s))?;

    // c_1(C) − c_1(K) = c_1(Q^∨) − c_1(Sym²U) = 2σ_1 from the four-term
    // sequence, and c_1(C) − 2c_1(K) = c_1(N) = c_1(K_S) = 3H_S. Hence
    // c_1(K) = −H_S and c_1(C) = H_S on S.
    let (e, f) = locus_bundles()?;
    let diff = &chern_classes(&e)?[1] - &chern_classes(&f)?[1];
    let a = diff.coefficient(&[1]);
    if diff != sigma1.scale(&a) {
        return Err(Error::Consistency(format!("c_1(E) − c_1(F) = {diff}")));
    }
    // (c_1 K, c_1 C) in units of H_S
    let k1 = a - 3;
    let c1 = 2 * a - 3;
    let c1K_c1C = k1 * c1 * hs_sq;
    if k1 * k1 * hs_sq != c1sq_K {
        return Err(Error::Consistency(format!(
            "c_1(K)² = {} from the linear relations, {c1sq_K} from the determinant",
            k1 * k1 * hs_sq
        )));
    }
    let c1sq_C_from_relations = c1 * c1 * hs_sq;

    let n = normal_bundle_class()?;
    let c2_N = n.c2.0 * c2_C + n.c2.1 * c1K_c1C + n.c2.2 * c1sq_K;

    let KS_sq = 9 * hs_sq;
    // c_1(T_S) = −c_1(N) = −3H_S
    let c1TS_c1N = -KS_sq;
    let c2_TS = c2TF_S - c2_N - c1TS_c1N;
    let noether = KS_sq + c2_TS;
    if noether % 12 != 0 {
        return Err(Error::NoetherNotIntegral(noether));
    }
    Ok(SurfaceInvariants {
        c2_C,
        c1sq_C,
        c1sq_K,
        c1K_c1C,
        c2_N,
        KS_sq,
        c2_TS,
        chi_O: noether / 12,
        chi_top: c2_TS,
        hs_sq,
        c2TF_S,
        c1sq_C_from_relations,
    })
}

impl fmt::Display for SurfaceInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: [(&str, i128); 12] = [
            ("c2(C)", self.c2_C),
            ("c1(C)^2", self.c1sq_C),
            ("c1(K)^2", self.c1sq_K),
            ("c1(K)c1(C)", self.c1K_c1C),
            ("c2(N)", self.c2_N),
            ("H_S^2", self.hs_sq),
            ("c2(T_F)[S]", self.c2TF_S),
            ("K_S^2", self.KS_sq),
            ("c2(T_S)", self.c2_TS),
            ("chi(O_S)", self.chi_O),
            ("chi_top(S)", self.chi_top),
            ("c1(C)^2 (linear relations)", self.c1sq_C_from_relations),
        ];
        for (name, v) in rows {
            writeln!(f, "{name:<28} {v:>6}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn segre_coefficients() {
        let seg = SegreTable::for_locus().unwrap();
        let forms: Vec<String> = (0..6).map(|i| seg.get(i).special_form()).collect();
        assert_eq!(
            forms,
            [
                "1",
                "−2σ₁",
                "4σ₁² − 5σ₂",
                "σ₁σ₂ + σ₃",
                "2σ₂² − 4σ₁σ₃ + 2σ₄",
                "−4σ₂σ₃ + 4σ₁σ₄"
            ]
        );
    }

    #[test]
    fn determinant_shapes() {
        let seg = SegreTable::for_locus().unwrap();
        let s = |i| seg.get(i);
        assert_eq!(schur_determinant(&[1], &seg), s(1));
        assert_eq!(schur_determinant(&[3], &seg), s(3));
        assert_eq!(schur_determinant(&[2, 2], &seg), &(&s(2) * &s(2)) - &(&s(1) * &s(3)));
        // (1,1,2) has two equal rows.
        assert!(schur_determinant(&[1, 1, 2], &seg).is_zero());
        let expected = &(&(&(&s(1).pow(4) - &(&s(1).pow(2) * &s(2)).scale(&3))
            + &(&s(1) * &s(3)).scale(&2))
            + &s(2).pow(2))
            - &s(4);
        assert_eq!(schur_determinant(&[1, 1, 1, 1], &seg), expected);
    }

    #[test]
    fn codimension_is_checked() {
        let g = Grassmannian::get(2, 6).unwrap();
        assert!(matches!(
            intersection_number(&Class::special(&g, 3)),
            Err(Error::WrongCodimension { expected: 4, actual: 3 })
        ));
        assert_eq!(intersection_number(&Class::special(&g, 1).pow(4)).unwrap(), 108);
    }

    #[test]
    fn normal_bundle_expansion() {
        let n = normal_bundle_class().unwrap();
        assert_eq!(n.c1, (-2, 1));
        assert_eq!(n.c2, (1, -1, 1));
    }

    #[test]
    fn tangent_of_f() {
        assert_eq!(c2_tangent_f().unwrap().special_form(), "−3σ₁² + 8σ₂");
    }

    #[test]
    fn invariants() {
        let inv = surface_invariants().unwrap();
        assert_eq!(inv.c2_C, 495);
        assert_eq!(inv.c1sq_C, -180);
        assert_eq!(inv.c1sq_K, 315);
        assert_eq!(inv.hs_sq, 315);
        assert_eq!(inv.c1K_c1C, -315);
        assert_eq!(inv.c2_N, 1125);
        assert_eq!(inv.c2TF_S, 855);
        assert_eq!(inv.KS_sq, 2835);
        assert_eq!(inv.c2_TS, 2565);
        assert_eq!(inv.chi_O, 450);
        assert_eq!(inv.c1sq_C_from_relations, 315);
    }
}
