//! The integral cohomology ring of `G(k,n)` in the Schubert basis.
//!
//! `σ_λ` for `λ` in the `k × (n-k)` box. Products use Littlewood–Richardson
//! coefficients with classes leaving the box dropped; integration reads off
//! the coefficient of the point class `σ_{(n-k)^k}`. Conventions:
//! `σ_i = c_i(Q)`, `c_i(U^∨) = σ_{1^i}`, `c(U)c(Q) = 1`.

mod hrr;
mod roots;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::charring::lr_product;
use crate::error::{Error, Result};
use crate::weights::Partition;

pub use hrr::{chern_character, euler_characteristic, todd_class, todd_log_coefficients};
pub use roots::{
    chern_classes, elementary_reduce, power_sum, segre_difference, total_chern_class,
    ElementaryPoly, RootBundle, RootPoly,
};

/// Coefficient ring for Schubert classes.
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + From<i128>
    + Send
    + Sync
    + 'static
{
}

impl<T> Coeff for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + fmt::Display
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
        + From<i128>
        + Send
        + Sync
        + 'static
{
}

pub type Rational = Ratio<i128>;
/// An integral Schubert class.
pub type Class = SchubertElement<i128>;
/// A Schubert class with rational coefficients (Chern characters, Todd classes).
pub type RationalClass = SchubertElement<Rational>;

/// `G(k,n)` together with its Schubert basis and structure constants.
#[derive(Debug)]
pub struct Grassmannian {
    k: usize,
    n: usize,
    basis: Vec<Partition>,
    index: HashMap<Partition, usize>,
    // table[i][j] lists (l, c) with σ_i σ_j = Σ c σ_l.
    table: Vec<Vec<Vec<(usize, i128)>>>,
}

impl Grassmannian {
    /// Shared, lazily built instance for `G(k,n)`.
    pub fn get(k: usize, n: usize) -> Result<Arc<Grassmannian>> {
        type Cache = Mutex<HashMap<(usize, usize), Arc<Grassmannian>>>;
        static CACHE: OnceLock<Cache> = OnceLock::new();
        if k == 0 || k >= n {
            return Err(Error::InvalidGrassmannian { k, n });
        }
        let cache = CACHE.get_or_init(Default::default);
        if let Some(g) = cache.lock().unwrap().get(&(k, n)) {
            return Ok(Arc::clone(g));
        }
        let g = Arc::new(Self::build(k, n));
        cache
            .lock()
            .unwrap()
            .entry((k, n))
            .or_insert_with(|| Arc::clone(&g));
        Ok(g)
    }

    fn build(k: usize, n: usize) -> Grassmannian {
        let cols = n - k;
        let basis = Partition::all_in_box(k, cols);
        let index: HashMap<Partition, usize> =
            basis.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let m = basis.len();
        let mut table = vec![vec![Vec::new(); m]; m];
        for i in 0..m {
            for j in i..m {
                let prod = lr_product(basis[i].parts(), basis[j].parts(), k, Some(cols as u32));
                let entries: Vec<(usize, i128)> = prod
                    .into_iter()
                    .map(|(nu, c)| (index[&Partition::new(nu).unwrap()], c as i128))
                    .collect();
                table[j][i] = entries.clone();
                table[i][j] = entries;
            }
        }
        Grassmannian {
            k,
            n,
            basis,
            index,
            table,
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.k * (self.n - self.k)
    }

    pub fn basis(&self) -> &[Partition] {
        &self.basis
    }

    /// The point class partition `((n-k)^k)`.
    pub fn point(&self) -> Partition {
        Partition::new(vec![(self.n - self.k) as u32; self.k]).unwrap()
    }
}

/// An element of `H^*(G(k,n))` with coefficients in `T`.
#[derive(Clone)]
pub struct SchubertElement<T: Coeff> {
    space: Arc<Grassmannian>,
    terms: BTreeMap<Partition, T>,
}

impl<T: Coeff> PartialEq for SchubertElement<T> {
    fn eq(&self, other: &Self) -> bool {
        self.space.k == other.space.k && self.space.n == other.space.n && self.terms == other.terms
    }
}

impl<T: Coeff> fmt::Debug for SchubertElement<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G({},{}): {}", self.space.k, self.space.n, self)
    }
}

impl<T: Coeff> SchubertElement<T> {
    pub fn zero(space: &Arc<Grassmannian>) -> Self {
        SchubertElement {
            space: Arc::clone(space),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(space: &Arc<Grassmannian>) -> Self {
        Self::constant(space, T::one())
    }

    pub fn constant(space: &Arc<Grassmannian>, c: T) -> Self {
        let mut out = Self::zero(space);
        out.add_term(Partition::empty(), c);
        out
    }

    /// `σ_λ`; errors if `λ` leaves the box.
    pub fn sigma(space: &Arc<Grassmannian>, parts: &[u32]) -> Result<Self> {
        let p = Partition::new(parts.to_vec())?;
        if !p.fits_box(space.k, space.n - space.k) {
            return Err(Error::OutsideBox(p.parts().to_vec(), space.k, space.n - space.k));
        }
        Ok(Self::constant(space, T::one()).relabel(p))
    }

    fn relabel(mut self, p: Partition) -> Self {
        let c = self.terms.remove(&Partition::empty()).unwrap();
        self.terms.insert(p, c);
        self
    }

    /// The special class `σ_i = c_i(Q)`; zero when `i > n-k`.
    pub fn special(space: &Arc<Grassmannian>, i: usize) -> Self {
        if i > space.n - space.k {
            return Self::zero(space);
        }
        Self::sigma(space, &[i as u32]).unwrap()
    }

    /// `σ_{1^i} = c_i(U^∨)`; zero when `i > k`.
    pub fn column(space: &Arc<Grassmannian>, i: usize) -> Self {
        if i > space.k {
            return Self::zero(space);
        }
        Self::sigma(space, &vec![1; i]).unwrap()
    }

    pub fn from_terms(
        space: &Arc<Grassmannian>,
        terms: impl IntoIterator<Item = (Partition, T)>,
    ) -> Result<Self> {
        let mut out = Self::zero(space);
        for (p, c) in terms {
            if !p.fits_box(space.k, space.n - space.k) {
                return Err(Error::OutsideBox(p.parts().to_vec(), space.k, space.n - space.k));
            }
            out.add_term(p, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, p: Partition, c: T) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(p) {
            Entry::Occupied(mut o) => {
                let v = o.get().clone() + c;
                if v.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn space(&self) -> &Arc<Grassmannian> {
        &self.space
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &T)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, parts: &[u32]) -> T {
        Partition::new(parts.to_vec())
            .ok()
            .and_then(|p| self.terms.get(&p).cloned())
            .unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The codimension if the class is homogeneous and nonzero.
    pub fn codimension(&self) -> Option<usize> {
        let mut sizes = self.terms.keys().map(|p| p.size() as usize);
        let first = sizes.next()?;
        sizes.all(|s| s == first).then_some(first)
    }

    /// The component of codimension `d`.
    pub fn graded_piece(&self, d: usize) -> Self {
        SchubertElement {
            space: Arc::clone(&self.space),
            terms: self
                .terms
                .iter()
                .filter(|(p, _)| p.size() as usize == d)
                .map(|(p, c)| (p.clone(), c.clone()))
                .collect(),
        }
    }

    fn check_space(&self, other: &Self) -> Result<()> {
        if self.space.k != other.space.k || self.space.n != other.space.n {
            return Err(Error::GrassmannianMismatch(
                self.space.k,
                self.space.n,
                other.space.k,
                other.space.n,
            ));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_space(other)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &T) -> Self {
        let mut out = Self::zero(&self.space);
        for (p, v) in &self.terms {
            out.add_term(p.clone(), v.clone() * c.clone());
        }
        out
    }

    /// Littlewood–Richardson product truncated to the box.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.check_space(other)?;
        let g = &self.space;
        let mut acc: BTreeMap<usize, T> = BTreeMap::new();
        for (p, a) in &self.terms {
            let i = g.index[p];
            for (q, b) in &other.terms {
                let j = g.index[q];
                let ab = a.clone() * b.clone();
                for &(l, c) in &g.table[i][j] {
                    let e = acc.entry(l).or_insert_with(T::zero);
                    *e = e.clone() + ab.clone() * T::from(c);
                }
            }
        }
        Ok(SchubertElement {
            space: Arc::clone(g),
            terms: acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(l, c)| (g.basis[l].clone(), c))
                .collect(),
        })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(&self.space);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Degree map: the coefficient of the point class.
    pub fn integrate(&self) -> T {
        self.terms
            .get(&self.space.point())
            .cloned()
            .unwrap_or_else(T::zero)
    }

    /// Inverse of a class with constant term 1.
    pub fn inverse_unipotent(&self) -> Result<Self> {
        let one = Self::one(&self.space);
        if self.graded_piece(0) != one {
            return Err(Error::Consistency(format!(
                "cannot invert {self}: constant term is not 1"
            )));
        }
        let x = self - &one;
        let mut out = one.clone();
        let mut power = one;
        for _ in 0..self.space.dim() {
            power = &power * &(-&x);
            out = &out + &power;
        }
        Ok(out)
    }

    pub fn map_coeffs<U: Coeff>(&self, f: impl Fn(&T) -> U) -> SchubertElement<U> {
        let mut out = SchubertElement::<U>::zero(&self.space);
        for (p, c) in &self.terms {
            out.add_term(p.clone(), f(c));
        }
        out
    }

    /// Rewrites the class as a polynomial in the special classes
    /// `σ_1,…,σ_{n-k}` using Jacobi–Trudi, `σ_λ = det[σ_{λ_i - i + j}]`.
    /// Keys are factor indices sorted ascending, e.g. `[1,3]` for `σ_1σ_3`.
    pub fn to_special_monomials(&self) -> BTreeMap<Vec<u32>, T> {
        let k = self.space.k;
        let top = (self.space.n - self.space.k) as i64;
        let mut out: BTreeMap<Vec<u32>, T> = BTreeMap::new();
        for (p, c) in &self.terms {
            let rows = p.length().max(1).min(k);
            for (sign, factors) in jacobi_trudi_terms(p, rows, top) {
                let coeff = if sign > 0 { c.clone() } else { -c.clone() };
                let e = out.entry(factors).or_insert_with(T::zero);
                *e = e.clone() + coeff;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// `27σ₂² − 9σ₁σ₃ − 18σ₄`-style rendering of [`Self::to_special_monomials`].
    pub fn special_form(&self) -> String {
        let mut monos: Vec<(Vec<u32>, T)> = self.to_special_monomials().into_iter().collect();
        monos.sort_by(|(a, _), (b, _)| b.len().cmp(&a.len()).then_with(|| b.cmp(a)));
        render_terms(monos.into_iter().map(|(m, c)| (render_special_monomial(&m), c)))
    }
}

fn jacobi_trudi_terms(p: &Partition, rows: usize, top: i64) -> Vec<(i32, Vec<u32>)> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..rows).collect();
    permutations(&mut perm, 0, &mut |perm, sign| {
        let mut factors = Vec::new();
        for (i, &j) in perm.iter().enumerate() {
            let idx = p.part(i) as i64 - i as i64 + j as i64;
            if idx < 0 || idx > top {
                return;
            }
            if idx > 0 {
                factors.push(idx as u32);
            }
        }
        factors.sort_unstable();
        out.push((sign, factors));
    });
    out
}

fn permutations(v: &mut Vec<usize>, start: usize, f: &mut impl FnMut(&[usize], i32)) {
    fn rec(v: &mut Vec<usize>, start: usize, sign: i32, f: &mut impl FnMut(&[usize], i32)) {
        if start == v.len() {
            f(v, sign);
            return;
        }
        for i in start..v.len() {
            v.swap(start, i);
            rec(v, start + 1, if i == start { sign } else { -sign }, f);
            v.swap(start, i);
        }
    }
    rec(v, start, 1, f);
}

const SUBSCRIPTS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
const SUPERSCRIPTS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];

fn digits(n: u32, table: &[char; 10]) -> String {
    n.to_string()
        .chars()
        .map(|c| table[c.to_digit(10).unwrap() as usize])
        .collect()
}

fn render_special_monomial(factors: &[u32]) -> String {
    let mut s = String::new();
    let mut i = 0;
    while i < factors.len() {
        let mut j = i;
        while j < factors.len() && factors[j] == factors[i] {
            j += 1;
        }
        s.push('σ');
        s.push_str(&digits(factors[i], &SUBSCRIPTS));
        if j - i > 1 {
            s.push_str(&digits((j - i) as u32, &SUPERSCRIPTS));
        }
        i = j;
    }
    s
}

fn render_schubert(p: &Partition) -> String {
    match p.parts() {
        [] => String::new(),
        [a] => format!("σ{}", digits(*a, &SUBSCRIPTS)),
        parts => {
            let inner: Vec<String> = parts.iter().map(|x| x.to_string()).collect();
            format!("σ_{{{}}}", inner.join(","))
        }
    }
}

fn render_terms<T: Coeff>(terms: impl Iterator<Item = (String, T)>) -> String {
    let mut out = String::new();
    for (i, (name, c)) in terms.enumerate() {
        let text = c.to_string();
        let (negative, magnitude) = match text.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, text),
        };
        if i == 0 {
            if negative {
                out.push('−');
            }
        } else {
            out.push_str(if negative { " − " } else { " + " });
        }
        if name.is_empty() {
            out.push_str(&magnitude);
        } else {
            if magnitude != "1" {
                out.push_str(&magnitude);
            }
            out.push_str(&name);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl<T: Coeff> fmt::Display for SchubertElement<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(&Partition, &T)> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| a.size().cmp(&b.size()).then_with(|| a.cmp(b)));
        let s = render_terms(terms.into_iter().map(|(p, c)| (render_schubert(p), c.clone())));
        write!(f, "{s}")
    }
}

impl<T: Coeff> Add for &SchubertElement<T> {
    type Output = SchubertElement<T>;
    fn add(self, rhs: Self) -> SchubertElement<T> {
        self.try_add(rhs).expect("grassmannian mismatch")
    }
}

impl<T: Coeff> Sub for &SchubertElement<T> {
    type Output = SchubertElement<T>;
    fn sub(self, rhs: Self) -> SchubertElement<T> {
        self.try_add(&-rhs).expect("grassmannian mismatch")
    }
}

impl<T: Coeff> Neg for &SchubertElement<T> {
    type Output = SchubertElement<T>;
    fn neg(self) -> SchubertElement<T> {
        self.scale(&(-T::one()))
    }
}

impl<T: Coeff> Mul for &SchubertElement<T> {
    type Output = SchubertElement<T>;
    fn mul(self, rhs: Self) -> SchubertElement<T> {
        self.product(rhs).expect("grassmannian mismatch")
    }
}

/// `[F] = c_4(Sym³U*)` on `G(2,6)`, the class of the Fano scheme of lines
/// on a cubic fourfold.
pub fn class_of_f() -> Result<Class> {
    let sym3 = crate::bwb::HomogeneousBundle::new(
        2,
        6,
        crate::charring::CharElement::standard(2).symmetric_power(3)?,
        crate::charring::CharElement::trivial(4),
    )?;
    let c = chern_classes(&RootBundle::from_bundle(&sym3)?)?;
    Ok(c[4].clone())
}

/// `[S] = 5σ_2`, to be restricted to F by intersecting with [`class_of_f`].
pub fn class_of_s() -> Result<Class> {
    Ok(Class::special(&Grassmannian::get(2, 6)?, 2).scale(&5))
}

impl Class {
    pub fn to_rational(&self) -> RationalClass {
        self.map_coeffs(|c| Rational::from_integer(*c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g26() -> Arc<Grassmannian> {
        Grassmannian::get(2, 6).unwrap()
    }

    fn s(parts: &[u32]) -> Class {
        Class::sigma(&g26(), parts).unwrap()
    }

    #[test]
    fn pieri_square() {
        assert_eq!(&s(&[1]) * &s(&[1]), &s(&[2]) + &s(&[1, 1]));
        assert!((&s(&[4, 4]) * &s(&[1])).is_zero());
    }

    #[test]
    fn class_of_f_forms_agree() {
        let s1 = s(&[1]);
        let s11 = s(&[1, 1]);
        let lhs = &(&s1.pow(2) * &s11).scale(&18) + &s11.pow(2).scale(&9);
        let rhs = &(&s(&[2]).pow(2).scale(&27) - &(&s1 * &s(&[3])).scale(&9)) - &s(&[4]).scale(&18);
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.special_form(), "27σ₂² − 9σ₁σ₃ − 18σ₄");
        assert_eq!(lhs.to_string(), "27σ_{2,2} + 18σ_{3,1}");
    }

    #[test]
    fn integration() {
        assert_eq!(s(&[4, 4]).integrate(), 1);
        assert_eq!(s(&[4, 3]).integrate(), 0);
        // Degree of G(2,6) in the Plücker embedding.
        assert_eq!(s(&[1]).pow(8).integrate(), 14);
    }

    #[test]
    fn mismatch_is_error() {
        let other = Class::sigma(&Grassmannian::get(2, 5).unwrap(), &[1]).unwrap();
        assert!(matches!(
            s(&[1]).product(&other),
            Err(Error::GrassmannianMismatch(2, 6, 2, 5))
        ));
        assert!(Class::sigma(&g26(), &[5]).is_err());
    }

    #[test]
    fn inverse_of_total_class() {
        let g = g26();
        let c = &Class::one(&g) + &s(&[1]);
        let inv = c.inverse_unipotent().unwrap();
        assert_eq!(&c * &inv, Class::one(&g));
    }
}
