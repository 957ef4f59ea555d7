//! Hirzebruch–Riemann–Roch on `G(k,n)`: `χ(E) = ∫ ch(E) td(T_G)`.
//!
//! Both factors are built from power sums of Chern roots: `ch(E) = Σ p_d/d!`
//! and `td(T) = exp(Σ a_d p_d(T))`, where `Σ a_d x^d = log(x/(1-e^{-x}))`.

use num_traits::{One, Zero};

use crate::bwb::HomogeneousBundle;
use crate::error::{Error, Result};

use super::roots::{power_sum, RootBundle};
use super::{Grassmannian, Rational, RationalClass};

/// `a_0..=a_max` with `Σ a_d x^d = log(x / (1 - e^{-x}))`.
pub fn todd_log_coefficients(max: usize) -> Vec<Rational> {
    // g(x) = (1 - e^{-x})/x = Σ (-1)^j x^j / (j+1)!
    let mut g = vec![Rational::zero(); max + 1];
    let mut fact = Rational::one();
    for (j, gj) in g.iter_mut().enumerate() {
        fact *= Rational::from_integer(j as i128 + 1);
        let sign = if j % 2 == 0 { 1 } else { -1 };
        *gj = Rational::from_integer(sign) / fact;
    }
    // log f = -log g, via (log g)' = g'/g.
    let inv = series_inverse(&g);
    let deriv: Vec<Rational> = (1..=max)
        .map(|j| g[j] * Rational::from_integer(j as i128))
        .chain(std::iter::once(Rational::zero()))
        .collect();
    let quotient = series_mul(&deriv, &inv);
    let mut out = vec![Rational::zero(); max + 1];
    for d in 1..=max {
        out[d] = -quotient[d - 1] / Rational::from_integer(d as i128);
    }
    out
}

fn series_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().min(b.len());
    let mut out = vec![Rational::zero(); n];
    for i in 0..n {
        for j in 0..n - i {
            out[i + j] += a[i] * b[j];
        }
    }
    out
}

fn series_inverse(a: &[Rational]) -> Vec<Rational> {
    let n = a.len();
    let mut out = vec![Rational::zero(); n];
    out[0] = Rational::one() / a[0];
    for i in 1..n {
        let mut s = Rational::zero();
        for j in 1..=i {
            s += a[j] * out[i - j];
        }
        out[i] = -s / a[0];
    }
    out
}

/// `ch(E) = Σ_d p_d(E)/d!`.
pub fn chern_character(b: &RootBundle) -> Result<RationalClass> {
    let space = Grassmannian::get(b.k(), b.n())?;
    let mut out = RationalClass::zero(&space);
    let mut fact: i128 = 1;
    for d in 0..=space.dim() {
        if d > 0 {
            fact *= d as i128;
        }
        let p = power_sum(b, d)?.to_rational();
        out = &out + &p.scale(&Rational::new(1, fact));
    }
    Ok(out)
}

/// `td(T_{G(k,n)})`.
pub fn todd_class(k: usize, n: usize) -> Result<RationalClass> {
    let space = Grassmannian::get(k, n)?;
    let dim = space.dim();
    let tangent = RootBundle::tangent(k, n)?;
    let a = todd_log_coefficients(dim);
    let mut log = RationalClass::zero(&space);
    for (d, coeff) in a.iter().enumerate().skip(1) {
        if coeff.is_zero() {
            continue;
        }
        log = &log + &power_sum(&tangent, d)?.to_rational().scale(coeff);
    }
    // exp of a nilpotent class
    let mut out = RationalClass::one(&space);
    let mut term = RationalClass::one(&space);
    for m in 1..=dim {
        term = (&term * &log).scale(&Rational::new(1, m as i128));
        out = &out + &term;
    }
    Ok(out)
}

/// Euler characteristic of a homogeneous bundle by Hirzebruch–Riemann–Roch.
/// A non-integral result is an error, never rounded.
pub fn euler_characteristic(b: &HomogeneousBundle) -> Result<i128> {
    let roots = RootBundle::from_bundle(b)?;
    let ch = chern_character(&roots)?;
    let td = todd_class(b.k(), b.n())?;
    let chi = (&ch * &td).integrate();
    if !chi.is_integer() {
        return Err(Error::NonIntegral(chi.to_string()));
    }
    Ok(chi.to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charring::CharElement;
    use crate::weights::IntegerWeight;

    #[test]
    fn todd_log_series() {
        let a = todd_log_coefficients(4);
        assert_eq!(a[1], Rational::new(1, 2));
        assert_eq!(a[2], Rational::new(-1, 24));
        assert_eq!(a[3], Rational::zero());
        assert_eq!(a[4], Rational::new(1, 2880));
    }

    #[test]
    fn structure_sheaf_has_chi_one() {
        for (k, n) in [(1, 3), (2, 4), (2, 5), (2, 6), (3, 6)] {
            let o = HomogeneousBundle::trivial(k, n).unwrap();
            assert_eq!(euler_characteristic(&o).unwrap(), 1, "G({k},{n})");
        }
    }

    #[test]
    fn projective_space_line_bundles() {
        // χ(P^3, O(d)) = C(d+3, 3) for every integer d.
        for d in -6i64..5 {
            let b = HomogeneousBundle::new(
                1,
                4,
                CharElement::irreducible(IntegerWeight::new(vec![d])).unwrap(),
                CharElement::trivial(3),
            )
            .unwrap();
            let expected = (d + 1) * (d + 2) * (d + 3) / 6;
            assert_eq!(euler_characteristic(&b).unwrap(), expected as i128, "d = {d}");
        }
    }
}
