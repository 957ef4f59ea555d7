//! Small recursive-descent parsers for the command line.
//!
//! Bundles on `G(k,n)`:
//!
//! ```text
//! bundle := factor ('*' factor)*
//! factor := 'U' | 'Q' | 'O' | 'H(' int ')' | 'dual(' bundle ')'
//!         | 'sym(' int ',' bundle ')' | 'wedge(' int ',' bundle ')' | '(' bundle ')'
//! ```
//!
//! `H = det U*`. `sym` and `wedge` apply to bundles built from one
//! tautological factor only.
//!
//! Classes on `G(k,n)`:
//!
//! ```text
//! class  := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' int)?
//! atom   := int | 's' digits | 's(' int (',' int)* ')' | 'H' | 'classF' | 'classS'
//!         | 'chern(' int ',' bundle ')' | '(' class ')'
//! ```
//!
//! `s21` is `σ_{2,1}`, `H = σ_1`; `classF` and `classS` live on `G(2,6)`.
//!
//! Schur characters: `(1,-1)`, `(0,-6) + (-1,-5) + 2(-2,-4)`, or the JSON list
//! form `[{"weight":[1,-1],"mult":1}]`.

use std::sync::Arc;

use crate::bwb::HomogeneousBundle;
use crate::charring::CharElement;
use crate::error::{Error, Result};
use crate::schubert::{chern_classes, class_of_f, class_of_s, Class, Grassmannian, RootBundle};
use crate::weights::IntegerWeight;

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.rest().chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            self.err(format!("expected '{token}'"))
        }
    }

    /// A keyword followed by a non-identifier character.
    fn eat_word(&mut self, word: &str) -> bool {
        self.skip_ws();
        let rest = self.rest();
        if rest.starts_with(word)
            && !rest[word.len()..]
                .chars()
                .next()
                .is_some_and(|c| c.is_alphanumeric() || c == '_')
        {
            self.pos += word.len();
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let rest = self.rest();
        let mut len = 0;
        for (i, c) in rest.char_indices() {
            if c.is_ascii_digit() || (i == 0 && (c == '-' || c == '+')) {
                len = i + 1;
            } else {
                break;
            }
        }
        match rest[..len].parse() {
            Ok(v) => {
                self.pos += len;
                Ok(v)
            }
            Err(_) => self.err("expected an integer"),
        }
    }

    fn unsigned(&mut self) -> Result<usize> {
        let v = self.int()?;
        usize::try_from(v).or_else(|_| self.err("expected a non-negative integer"))
    }

    fn finish(&mut self) -> Result<()> {
        self.skip_ws();
        if self.pos < self.src.len() {
            return self.err("unexpected trailing input");
        }
        Ok(())
    }
}

pub fn parse_bundle(src: &str, k: usize, n: usize) -> Result<HomogeneousBundle> {
    if k == 0 || k >= n {
        return Err(Error::InvalidGrassmannian { k, n });
    }
    let mut c = Cursor::new(src);
    let b = bundle(&mut c, k, n)?;
    c.finish()?;
    Ok(b)
}

fn bundle(c: &mut Cursor, k: usize, n: usize) -> Result<HomogeneousBundle> {
    let mut acc = bundle_factor(c, k, n)?;
    while c.eat("*") {
        acc = acc.tensor(&bundle_factor(c, k, n)?)?;
    }
    Ok(acc)
}

fn bundle_factor(c: &mut Cursor, k: usize, n: usize) -> Result<HomogeneousBundle> {
    let sub = |x: CharElement| HomogeneousBundle::new(k, n, x, CharElement::trivial(n - k));
    let quot = |x: CharElement| HomogeneousBundle::new(k, n, CharElement::trivial(k), x);
    if c.eat_word("U") {
        return sub(CharElement::standard(k).dual());
    }
    if c.eat_word("Q") {
        return quot(CharElement::standard(n - k).dual());
    }
    if c.eat_word("O") {
        return HomogeneousBundle::trivial(k, n);
    }
    if c.eat("H(") {
        let t = c.int()?;
        c.expect(")")?;
        return sub(CharElement::determinant(k, t));
    }
    if c.eat("dual(") {
        let b = bundle(c, k, n)?;
        c.expect(")")?;
        return Ok(b.dual());
    }
    for (name, is_sym) in [("sym(", true), ("wedge(", false)] {
        if c.eat(name) {
            let m = c.unsigned()?;
            c.expect(",")?;
            let start = c.pos;
            let b = bundle(c, k, n)?;
            c.expect(")")?;
            let apply = |x: &CharElement| {
                if is_sym {
                    x.symmetric_power(m)
                } else {
                    x.exterior_power(m)
                }
            };
            return if b.quot_part().is_trivial() {
                sub(apply(b.sub_part())?)
            } else if b.sub_part().is_trivial() {
                quot(apply(b.quot_part())?)
            } else {
                Err(Error::Parse {
                    offset: start,
                    message: "sym/wedge of a bundle mixing U and Q factors is not supported".into(),
                })
            };
        }
    }
    if c.eat("(") {
        let b = bundle(c, k, n)?;
        c.expect(")")?;
        return Ok(b);
    }
    c.err("expected U, Q, O, H(t), dual(..), sym(m,..), wedge(p,..) or '('")
}

pub fn parse_class(src: &str, k: usize, n: usize) -> Result<Class> {
    let space = Grassmannian::get(k, n)?;
    let mut c = Cursor::new(src);
    let v = class_sum(&mut c, &space)?;
    c.finish()?;
    Ok(v)
}

fn class_sum(c: &mut Cursor, g: &Arc<Grassmannian>) -> Result<Class> {
    let mut acc = class_term(c, g)?;
    loop {
        if c.eat("+") {
            acc = &acc + &class_term(c, g)?;
        } else if c.peek() == Some('-') {
            c.eat("-");
            acc = &acc - &class_term(c, g)?;
        } else {
            return Ok(acc);
        }
    }
}

fn class_term(c: &mut Cursor, g: &Arc<Grassmannian>) -> Result<Class> {
    let mut acc = class_unary(c, g)?;
    while c.eat("*") {
        acc = &acc * &class_unary(c, g)?;
    }
    Ok(acc)
}

fn class_unary(c: &mut Cursor, g: &Arc<Grassmannian>) -> Result<Class> {
    if c.peek() == Some('-') {
        c.eat("-");
        return Ok(-&class_unary(c, g)?);
    }
    let base = class_atom(c, g)?;
    if c.eat("^") {
        let e = c.unsigned()?;
        return Ok(base.pow(e as u32));
    }
    Ok(base)
}

fn on_g26(c: &Cursor, g: &Arc<Grassmannian>, name: &str) -> Result<()> {
    if (g.k(), g.n()) != (2, 6) {
        return c.err(format!("{name} is only defined on G(2,6)"));
    }
    Ok(())
}

fn class_atom(c: &mut Cursor, g: &Arc<Grassmannian>) -> Result<Class> {
    if c.eat("(") {
        let v = class_sum(c, g)?;
        c.expect(")")?;
        return Ok(v);
    }
    if c.peek().is_some_and(|ch| ch.is_ascii_digit()) {
        let v = c.int()?;
        return Ok(Class::constant(g, v as i128));
    }
    if c.eat_word("classF") {
        on_g26(c, g, "classF")?;
        return class_of_f();
    }
    if c.eat_word("classS") {
        on_g26(c, g, "classS")?;
        return class_of_s();
    }
    if c.eat_word("H") {
        return Ok(Class::special(g, 1));
    }
    if c.eat("chern(") {
        let i = c.unsigned()?;
        c.expect(",")?;
        let b = bundle(c, g.k(), g.n())?;
        c.expect(")")?;
        let classes = chern_classes(&RootBundle::from_bundle(&b)?)?;
        return Ok(classes.get(i).cloned().unwrap_or_else(|| Class::zero(g)));
    }
    if c.eat("s(") {
        let mut parts = vec![c.unsigned()? as u32];
        while c.eat(",") {
            parts.push(c.unsigned()? as u32);
        }
        c.expect(")")?;
        return sigma(c, g, &parts);
    }
    c.skip_ws();
    let rest = c.rest();
    if let Some(digits) = rest.strip_prefix('s') {
        let len = digits.chars().take_while(|ch| ch.is_ascii_digit()).count();
        if len > 0 {
            let parts: Vec<u32> = digits[..len].chars().map(|d| d.to_digit(10).unwrap()).collect();
            c.pos += 1 + len;
            return sigma(c, g, &parts);
        }
    }
    c.err("expected a class: integer, s<digits>, s(..), H, classF, classS, chern(i, bundle) or '('")
}

fn sigma(c: &Cursor, g: &Arc<Grassmannian>, parts: &[u32]) -> Result<Class> {
    if parts.windows(2).any(|w| w[0] < w[1]) {
        return c.err(format!("{parts:?} is not a partition"));
    }
    Class::sigma(g, parts)
}

/// A character of rank `rank`: JSON list form or `m(w) + …` tuples.
pub fn parse_character(src: &str, rank: usize) -> Result<CharElement> {
    let trimmed = src.trim_start();
    if trimmed.starts_with('[') {
        let x: CharElement = serde_json::from_str(trimmed).map_err(|e| Error::Parse {
            offset: e.column(),
            message: e.to_string(),
        })?;
        if x.rank() != rank {
            return Err(Error::RankMismatch(x.rank(), rank));
        }
        return Ok(x);
    }
    let mut c = Cursor::new(src);
    let mut out = CharElement::zero(rank);
    loop {
        let mult = if c.peek().is_some_and(|ch| ch.is_ascii_digit()) {
            let m = c.int()?;
            c.eat("*");
            m
        } else {
            1
        };
        c.expect("(")?;
        let mut w = vec![c.int()?];
        while c.eat(",") {
            w.push(c.int()?);
        }
        c.expect(")")?;
        let term = CharElement::from_terms(rank, [(IntegerWeight::new(w), mult)])?;
        out = out.add(&term)?;
        if !c.eat("+") {
            break;
        }
    }
    c.finish()?;
    Ok(out)
}

/// A `GL(rank)` character expression, decomposed into irreducibles:
///
/// ```text
/// expr   := prod ('+' prod)*
/// prod   := factor ('*' factor)*
/// factor := 'V' | 'det(' int ')' | '(' int (',' int)* ')' | 'dual(' expr ')'
///         | 'sym(' int ',' expr ')' | 'wedge(' int ',' expr ')' | '[' expr ']'
/// ```
///
/// `V` is the standard representation; a bare tuple is the irreducible of
/// that highest weight.
pub fn parse_representation(src: &str, rank: usize) -> Result<CharElement> {
    let mut c = Cursor::new(src);
    let x = rep_sum(&mut c, rank)?;
    c.finish()?;
    Ok(x)
}

fn rep_sum(c: &mut Cursor, rank: usize) -> Result<CharElement> {
    let mut acc = rep_product(c, rank)?;
    while c.eat("+") {
        acc = acc.add(&rep_product(c, rank)?)?;
    }
    Ok(acc)
}

fn rep_product(c: &mut Cursor, rank: usize) -> Result<CharElement> {
    let mut acc = rep_factor(c, rank)?;
    while c.eat("*") {
        acc = acc.multiply(&rep_factor(c, rank)?)?;
    }
    Ok(acc)
}

fn rep_factor(c: &mut Cursor, rank: usize) -> Result<CharElement> {
    if c.eat_word("V") {
        return Ok(CharElement::standard(rank));
    }
    if c.eat("det(") {
        let t = c.int()?;
        c.expect(")")?;
        return Ok(CharElement::determinant(rank, t));
    }
    if c.eat("dual(") {
        let x = rep_sum(c, rank)?;
        c.expect(")")?;
        return Ok(x.dual());
    }
    if c.eat("sym(") {
        let m = c.unsigned()?;
        c.expect(",")?;
        let x = rep_sum(c, rank)?;
        c.expect(")")?;
        return x.symmetric_power(m);
    }
    if c.eat("wedge(") {
        let p = c.unsigned()?;
        c.expect(",")?;
        let x = rep_sum(c, rank)?;
        c.expect(")")?;
        return x.exterior_power(p);
    }
    if c.eat("[") {
        let x = rep_sum(c, rank)?;
        c.expect("]")?;
        return Ok(x);
    }
    if c.eat("(") {
        let mut w = vec![c.int()?];
        while c.eat(",") {
            w.push(c.int()?);
        }
        c.expect(")")?;
        if w.len() != rank {
            return Err(Error::LengthMismatch {
                expected: rank,
                actual: w.len(),
            });
        }
        return CharElement::irreducible(IntegerWeight::new(w));
    }
    c.err("expected V, det(t), a weight tuple, dual(..), sym(m,..), wedge(p,..) or '['")
}
